use landau_core::mehler::{
    decay_bound_check, mehler_gaussian_eig, radial_eig_fourier, radial_eig_laguerre, FourierWindow,
};
use landau_core::RadialProfile;
use proptest::prelude::*;

#[test]
fn closed_form_values() {
    assert!((mehler_gaussian_eig(0.1, 0, 1.0) - 1.0 / 1.1).abs() < 1e-15);
    assert!((mehler_gaussian_eig(0.1, 1, 1.0) - 0.9 / 1.21).abs() < 1e-15);
    // hz = 1 annihilates every level above the ground state.
    assert_eq!(mehler_gaussian_eig(0.5, 3, 2.0), 0.0);
}

#[test]
fn three_routes_agree_for_gaussians() {
    let w = FourierWindow::default();
    for z in [0.5, 1.0, 2.0] {
        let p = RadialProfile::Exp { z };
        for h in [0.05, 0.1, 0.2] {
            for k in [0, 1, 5, 10] {
                let exact = mehler_gaussian_eig(h, k, z);
                let lag = radial_eig_laguerre(&p, h, k).unwrap();
                assert!((lag - exact).abs() < 1e-12, "z={z} h={h} k={k}");
                if k as f64 * h <= 2.0 {
                    let f = radial_eig_fourier(&p, h, k, &w).unwrap();
                    assert!((f.value - exact).abs() < 1e-8 && f.imag_residue.abs() < 1e-9, "z={z} h={h} k={k}: {f:?} vs {exact}");
                }
            }
        }
    }
}

#[test]
fn compact_profile_routes_agree() {
    let p = RadialProfile::CutoffExp { z: 1.0, start: 2.0, end: 5.0 };
    let w = FourierWindow::default();
    for k in [0, 2, 6] {
        let lag = radial_eig_laguerre(&p, 0.1, k).unwrap();
        let f = radial_eig_fourier(&p, 0.1, k, &w).unwrap();
        assert!((lag - f.value).abs() < 1e-7, "k={k}: {lag} vs {}", f.value);
    }
}

#[test]
fn gaussian_eigenvalues_decay() {
    let r = decay_bound_check(&RadialProfile::Exp { z: 1.0 }, 0.1, 0..=40).unwrap();
    assert!(!r.growing);
    assert!(r.sup <= 1.0 / 1.1 + 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn laguerre_route_matches_closed_form(h in 0.02f64..0.5, z in 0.2f64..3.0, k in 0usize..40) {
        let exact = mehler_gaussian_eig(h, k, z);
        let lag = radial_eig_laguerre(&RadialProfile::Exp { z }, h, k).unwrap();
        prop_assert!((lag - exact).abs() < 1e-10);
    }
}
