use landau_core::ensemble::{
    count_in_interval, fit_scaling, interlacing_check, run_mc, trial_couplings, CouplingDensity, FitAxis,
    LatticeGrid, LatticeOperator, LatticeSpec, McStudy, Statistic,
};
use landau_core::linalg::{eigvals, hausdorff, CMat};
use landau_core::singlesite::{site_operator, SiteSymbolFamily};
use landau_core::weyl::{default_quad_order, quantize_hermite};
use landau_core::{Complex64, PhaseSymbol};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn study(statistic: Statistic, sides: Vec<usize>, deltas: Vec<f64>, trials: usize) -> McStudy {
    McStudy {
        v0: PhaseSymbol::Gaussian { z: 3.0 },
        n: 0,
        h: 0.1,
        sides,
        deltas,
        mu0: 0.5,
        trials,
        seed: 11,
        statistic,
        density: CouplingDensity::Uniform,
    }
}

#[test]
fn zero_couplings_assemble_to_zero() {
    let fam = SiteSymbolFamily::new(PhaseSymbol::Gaussian { z: 1.0 }, 0, 0.2).unwrap();
    let op = LatticeOperator::new(fam, LatticeSpec::line(3).unwrap(), LatticeGrid::for_h(0.2)).unwrap();
    assert_eq!(op.assemble(&[0.0; 3]).unwrap().norm(), 0.0);
    assert!(op.assemble(&[0.0; 2]).is_err());
}

#[test]
fn single_site_lattice_matches_basis_operator() {
    let h = 0.1;
    let fam = SiteSymbolFamily::new(PhaseSymbol::Gaussian { z: 1.0 }, 0, h).unwrap();
    let op = LatticeOperator::new(fam.clone(), LatticeSpec::square(1).unwrap(), LatticeGrid::for_h(h)).unwrap();
    for w in [0.8, -0.6] {
        let big = |v: Vec<f64>| -> Vec<f64> { v.into_iter().filter(|e| e.abs() > 0.05).collect() };
        let grid = big(op.spectrum(&[w]).unwrap().eigenvalues);
        let basis = big(eigvals(&site_operator(&fam, w, 40).unwrap().matrix).unwrap());
        assert_eq!(grid.len(), basis.len());
        assert!(hausdorff(&grid, &basis) < 1e-6, "w={w}: {grid:?} vs {basis:?}");
    }
}

#[test]
fn rank_one_example_interlaces() {
    let a = CMat::from_fn(2, 2, |i, j| Complex64::new(if i == j { [2.0, 1.0][i] } else { 0.0 }, 0.0));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phi = [Complex64::new(s, 0.0), Complex64::new(s, 0.0)];
    let r = interlacing_check(&a, &phi, 1.0).unwrap();
    assert!(r.holds);
    // A − φφ* = [[1.5, −0.5], [−0.5, 0.5]].
    let want = [1.0 + 0.5f64.sqrt(), 1.0 - 0.5f64.sqrt()];
    assert!((r.perturbed[0] - want[0]).abs() < 1e-12 && (r.perturbed[1] - want[1]).abs() < 1e-12);
    assert!(interlacing_check(&a, &[phi[0]; 2].map(|z| z * 2.0), 1.0).is_err());
}

fn random_instance(n: usize, seed: u64) -> (CMat, Vec<Complex64>, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = || Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
    let x = CMat::from_fn(n, n, |_, _| g());
    let a = (&x + x.adjoint()) * Complex64::new(0.5, 0.0);
    let mut phi: Vec<Complex64> = (0..n).map(|_| g()).collect();
    let norm = phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    phi.iter_mut().for_each(|z| *z /= norm);
    let mu = 5.0 * ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a).random::<f64>();
    (a, phi, mu)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn rank_one_downdates_interlace(n in 10usize..=50, seed in any::<u64>()) {
        let (a, phi, mu) = random_instance(n, seed);
        let r = interlacing_check(&a, &phi, mu).unwrap();
        prop_assert!(r.holds, "violation {}", r.worst_violation);
    }
}

#[test]
fn counts_grow_with_the_interval() {
    let ev = [0.9, 0.61, 0.55, 0.5, 0.2];
    let mut last = 0;
    for d in [0.01, 0.05, 0.1, 0.4] {
        let c = count_in_interval(&ev, 0.5 - d, 0.5 + d);
        assert!(c >= last);
        last = c;
    }
    assert_eq!(last, 5);
}

#[test]
fn couplings_are_reproducible_and_in_range() {
    let a = trial_couplings(CouplingDensity::CosineBump, 9, 3, 1, 7);
    assert_eq!(a, trial_couplings(CouplingDensity::CosineBump, 9, 3, 1, 7));
    assert_ne!(a, trial_couplings(CouplingDensity::CosineBump, 9, 3, 1, 8));
    assert!(a.iter().all(|w| w.abs() <= 1.0));
}

#[test]
fn small_studies_are_reproducible_and_consistent() {
    let w = run_mc(&study(Statistic::Wegner, vec![1, 2], vec![0.05, 0.1], 100)).unwrap();
    assert_eq!(w, run_mc(&study(Statistic::Wegner, vec![1, 2], vec![0.05, 0.1], 100)).unwrap());
    let m = run_mc(&study(Statistic::Minami, vec![1, 2], vec![0.05, 0.1], 100)).unwrap();
    for (a, b) in w.cells.iter().zip(&m.cells) {
        assert_eq!((a.volume, a.delta), (b.volume, b.delta));
        assert!(b.p_hat <= a.p_hat);
    }
    // One site with gaps of at least κh > |I| never has two eigenvalues in I.
    assert!(m.cells.iter().filter(|c| c.volume == 1 && c.delta == 0.05).all(|c| c.successes == 0));
    assert!(run_mc(&study(Statistic::Wegner, vec![1], vec![0.05], 50)).is_err());
}

#[test]
fn single_site_probability_matches_coupling_scan() {
    // Oracle: the Hermite-basis operator ω P + ω² Q on a 2000-point ω grid.
    let s = study(Statistic::Wegner, vec![1], vec![0.04], 500);
    let fam = SiteSymbolFamily::new(s.v0.clone(), 0, s.h).unwrap();
    let p = quantize_hermite(&fam.p0, s.h, 40, default_quad_order(40)).unwrap().matrix;
    let q = quantize_hermite(&fam.q0, s.h, 40, default_quad_order(40)).unwrap().matrix;
    let n = 2000;
    let hits = (0..n)
        .filter(|i| {
            let w = -1.0 + (*i as f64 + 0.5) * 2.0 / n as f64;
            let m = &p * Complex64::new(w, 0.0) + &q * Complex64::new(w * w, 0.0);
            count_in_interval(&eigvals(&m).unwrap(), s.mu0 - 0.04, s.mu0 + 0.04) > 0
        })
        .count();
    let oracle = hits as f64 / n as f64;
    let cell = &run_mc(&s).unwrap().cells[0];
    assert!(cell.wilson.0 <= oracle && oracle <= cell.wilson.1, "{oracle} vs {:?}", cell.wilson);
}

#[test]
fn band_edge_matches_closed_form() {
    let s = study(Statistic::BandEdge, vec![2, 3], vec![0.05, 0.1], 1000);
    let r = run_mc(&s).unwrap();
    for c in &r.cells {
        let exact = 1.0 - (1.0 - c.delta).powi(c.volume as i32);
        assert!(c.wilson.0 <= exact && exact <= c.wilson.1, "{c:?}");
    }
}

#[test]
fn fit_recovers_band_edge_exponents() {
    let s = study(Statistic::BandEdge, vec![1, 2, 3], vec![0.01, 0.02, 0.04], 4000);
    let f = fit_scaling(&run_mc(&s).unwrap(), FitAxis::Both).unwrap();
    let (v, i) = (f.volume.unwrap().0, f.interval.unwrap().0);
    assert!((v - 1.0).abs() < 0.15 && (i - 1.0).abs() < 0.15, "{v} {i}");
}
