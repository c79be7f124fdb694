use landau_core::linalg::{eigvals, hausdorff, spectral_norm};
use landau_core::singlesite::{
    build_q0, check_gap_assumption, compute_c_alpha, gaussian_envelope, p0_spectrum, site_operator, SiteSymbolFamily,
};
use landau_core::weyl::quantize_hermite;
use landau_core::PhaseSymbol;

#[test]
fn fourth_order_coefficients_sum_to_bilaplacian() {
    for n in 0..4 {
        let c40 = compute_c_alpha(n, [4, 0]);
        let want = (2.0 * (n * n) as f64 + 2.0 * n as f64 + 1.0) / 32.0;
        assert!((c40 - want).abs() < 1e-13);
        assert!((compute_c_alpha(n, [0, 4]) - want).abs() < 1e-13);
        assert!((compute_c_alpha(n, [2, 2]) - 2.0 * want).abs() < 1e-13);
        assert!(compute_c_alpha(n, [3, 1]).abs() < 1e-13);
        assert!(compute_c_alpha(n, [1, 0]).abs() < 1e-13);
    }
}

#[test]
fn zero_coupling_gives_zero_operator() {
    let fam = SiteSymbolFamily::new(PhaseSymbol::Gaussian { z: 1.0 }, 0, 0.1).unwrap();
    let op = site_operator(&fam, 0.0, 20).unwrap();
    assert_eq!(op.matrix.norm(), 0.0);
    assert!(site_operator(&fam, 1.5, 20).is_err());
}

#[test]
fn sign_flip_defect_is_bounded_by_quadratic_part() {
    let h = 0.1;
    let fam = SiteSymbolFamily::new(PhaseSymbol::Gaussian { z: 1.0 }, 0, h).unwrap();
    let plus = eigvals(&site_operator(&fam, 1.0, 40).unwrap().matrix).unwrap();
    let minus: Vec<f64> = eigvals(&site_operator(&fam, -1.0, 40).unwrap().matrix).unwrap().iter().map(|x| -x).collect();
    let q = quantize_hermite(&build_q0(&fam.v0, h), h, 40, 100).unwrap();
    let bound = 2.0 * spectral_norm(&q.matrix).unwrap();
    assert!(bound > 0.0);
    assert!(hausdorff(&plus, &minus) <= bound + 1e-12);
}

#[test]
fn radial_spectrum_matches_basis_diagonalization() {
    let fam = SiteSymbolFamily::new(PhaseSymbol::Gaussian { z: 1.0 }, 1, 0.1).unwrap();
    let radial = p0_spectrum(&fam).unwrap();
    let basis = eigvals(&quantize_hermite(&fam.p0, 0.1, 80, 140).unwrap().matrix).unwrap();
    for k in 0..8 {
        assert!((radial[k] - basis[k]).abs() < 1e-8, "k={k}");
    }
}

#[test]
fn cutoff_family_passes_gap_check() {
    let v0 = PhaseSymbol::CutoffGaussian { z: 1.0, start: 2.0, end: 5.0 };
    let reports = check_gap_assumption(&v0, 0, 0.3, 0.5, &[0.2, 0.1, 0.05]).unwrap();
    for r in &reports {
        assert!(r.pass, "h={} kappa={:?}", r.h, r.kappa_observed);
        assert!(r.kappa_observed.unwrap() > 0.6);
    }
}

#[test]
fn envelope_constant_grows_as_h_shrinks() {
    let e = gaussian_envelope(0, &[0.2, 0.1, 0.05], 1.0).unwrap();
    let c: Vec<f64> = e.constants.iter().map(|x| x.1).collect();
    assert!(c[0] < c[1] && c[1] < c[2]);
    assert!(!e.stable);
}
