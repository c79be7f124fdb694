use landau_core::grushin::{
    bellissard_check, bellissard_convergence, build_w, counting_bound_check, q_series, residual_scaling,
    GrushinOperators, TensorBasisSpec,
};
use landau_core::linalg::CMat;
use landau_core::{Complex64, Error, PhaseSymbol};


fn gaussian() -> PhaseSymbol {
    PhaseSymbol::Gaussian { z: 1.0 }
}

#[test]
fn basis_validation() {
    assert!(TensorBasisSpec::new(2, 8, 0).is_err());
    assert!(TensorBasisSpec::new(4, 8, 1).is_ok());
    assert!(matches!(TensorBasisSpec::new(100, 100, 0), Err(Error::CapExceeded { .. })));
}

#[test]
fn injection_is_isometric_and_killed_by_reduced_resolvent() {
    let ops = GrushinOperators::new(&gaussian(), 0.1, TensorBasisSpec::new(6, 8, 1).unwrap()).unwrap();
    let r = ops.rn();
    let eye = CMat::identity(8, 8);
    assert!((r.adjoint() * &r - eye).norm() < 1e-15);
    assert!((ops.e0(0.4) * &r).norm() == 0.0);
}

#[test]
fn w_is_hermitian() {
    let w = build_w(&gaussian(), 0.1, &TensorBasisSpec::new(6, 12, 0).unwrap(), None).unwrap();
    assert!((w.adjoint() - &w).norm() < 1e-12);
}

#[test]
fn constant_potential_is_exact() {
    let c = PhaseSymbol::Constant(0.4);
    let basis = TensorBasisSpec::new(5, 6, 0).unwrap();
    let ops = GrushinOperators::new(&c, 0.1, basis).unwrap();
    let s = q_series(&ops, 0.1, 6).unwrap();
    assert!((s.matrix - CMat::identity(6, 6) * Complex64::new(0.3, 0.0)).norm() < 1e-14);
    let r = residual_scaling(&c, basis, 0.1, &[0.2, 0.1, 0.025], 6).unwrap();
    assert!(r.exact && r.slope.is_none());
    let b = bellissard_check(&c, 0.1, basis, 6).unwrap();
    assert!(b.distance < 1e-12);
    assert!(b.roots.iter().all(|m| (m - 0.4).abs() < 1e-12));
}

#[test]
fn zero_potential_gives_minus_mu() {
    let ops = GrushinOperators::new(&PhaseSymbol::Constant(0.0), 0.1, TensorBasisSpec::new(4, 5, 0).unwrap()).unwrap();
    let s = q_series(&ops, -0.3, 4).unwrap();
    assert!((s.matrix - CMat::identity(5, 5) * Complex64::new(0.3, 0.0)).norm() < 1e-15);
}

#[test]
fn series_is_hermitian_within_tail() {
    let ops = GrushinOperators::new(&gaussian(), 0.05, TensorBasisSpec::new(8, 16, 0).unwrap()).unwrap();
    let s = q_series(&ops, 0.5, 8).unwrap();
    assert!(s.contraction < 0.5);
    assert!(s.defect <= s.tail.max(1e-12));
}

#[test]
fn leading_entry_of_first_term() {
    // With no corrections the ground entry is the Gaussian average over the
    // n = 0 cyclotron orbit at scale √(2h): 1/(1 + 2h).
    let h = 0.1;
    let ops = GrushinOperators::new(&gaussian(), h, TensorBasisSpec::new(6, 8, 0).unwrap()).unwrap();
    let s = q_series(&ops, 0.0, 0).unwrap();
    let want = 1.0 / (1.0 + 2.0 * h);
    assert!((s.matrix[(0, 0)].re - want).abs() < 1e-10, "{} vs {want}", s.matrix[(0, 0)].re);
}

#[test]
fn non_analytic_symbols_are_rejected() {
    let v = PhaseSymbol::GradSquared { base: Box::new(gaussian()), coefficient: 1.0 };
    let r = build_w(&v, 0.1, &TensorBasisSpec::new(4, 4, 0).unwrap(), None);
    assert!(matches!(r, Err(Error::KernelTransformUnavailable)));
}

#[test]
fn band_spectrum_matches_effective_roots() {
    let v = gaussian().scaled(0.5);
    let bases = [TensorBasisSpec::new(6, 12, 0).unwrap(), TensorBasisSpec::new(8, 16, 0).unwrap()];
    let study = bellissard_convergence(&v, 0.1, &bases, 12).unwrap();
    assert!(study.monotone);
    for r in &study.reports {
        assert!(r.distance <= 5e-3 && r.leakage < 0.01);
        assert_eq!(r.band.len(), r.roots.len());
    }
}

#[test]
fn counting_bound_example() {
    let r = counting_bound_check(&gaussian(), 0.1, 0.3).unwrap();
    assert_eq!(r.count, 6);
    let bound = (std::f64::consts::PI / 2.0) / (2.0 * std::f64::consts::PI * 0.1 * 0.09);
    assert!((r.bound - bound).abs() < 1e-9 && r.holds);
}
