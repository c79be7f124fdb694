use landau_core::linalg::{eigvals, hermitian_defect, CMat};
use landau_core::weyl::{hs_norm_sq, kernel_matrix, quantize_grid, quantize_hermite, GridSpec};
use landau_core::{Complex64, PhaseSymbol};
use proptest::prelude::*;

fn mehler(h: f64, k: usize) -> f64 {
    (1.0 - h).powi(k as i32) / (1.0 + h).powi(k as i32 + 1)
}

#[test]
fn constant_quantizes_to_multiple_of_identity() {
    let op = quantize_hermite(&PhaseSymbol::Constant(0.7), 0.1, 10, 70).unwrap();
    let want = CMat::identity(10, 10) * Complex64::new(0.7, 0.0);
    assert!((op.matrix - want).norm() < 1e-15);
}

#[test]
fn gaussian_is_diagonal_with_mehler_entries() {
    for h in [0.05, 0.1, 0.2] {
        let op = quantize_hermite(&PhaseSymbol::Gaussian { z: 1.0 }, h, 60, 120).unwrap();
        let total: f64 = op.matrix.iter().map(|z| z.norm_sqr()).sum();
        let diag: f64 = (0..60).map(|k| op.matrix[(k, k)].norm_sqr()).sum();
        assert!(((total - diag) / total).sqrt() < 1e-6);
        for k in 0..=30 {
            let want = mehler(h, k);
            assert!((op.matrix[(k, k)].re - want).abs() / want < 1e-6, "h={h} k={k}");
        }
    }
}

#[test]
fn hilbert_schmidt_norm_is_l2_over_two_pi_h() {
    let h = 0.1;
    let op = quantize_hermite(&PhaseSymbol::Gaussian { z: 1.0 }, h, 120, 180).unwrap();
    let hs = hs_norm_sq(&op);
    assert!((hs - 1.0 / (4.0 * h)).abs() * 4.0 * h < 1e-5);
    // ‖e^{-q}‖² = π/2.
    let l2 = std::f64::consts::FRAC_PI_2;
    assert!((hs - l2 / (2.0 * std::f64::consts::PI * h)).abs() * 4.0 * h < 1e-5);
}

#[test]
fn grid_and_basis_spectra_agree() {
    let sym = PhaseSymbol::CutoffGaussian { z: 1.0, start: 2.0, end: 5.0 };
    let h = 0.1;
    let grid = GridSpec::with_spacing(-3.0, 3.0, 0.04).unwrap();
    let g = eigvals(&quantize_grid(&sym, h, &grid).unwrap().matrix).unwrap();
    let b = eigvals(&quantize_hermite(&sym, h, 80, 300).unwrap().matrix).unwrap();
    for k in 0..6 {
        assert!((g[k] - b[k]).abs() < 1e-6, "k={k}: {} vs {}", g[k], b[k]);
    }
}

#[test]
fn shifted_symbol_on_grid_is_hermitian() {
    let sym = PhaseSymbol::Gaussian { z: 1.0 }.shifted([0, 1]);
    let grid = GridSpec::with_spacing(-4.0, 4.0, 0.04).unwrap();
    let m = kernel_matrix(&sym, 0.1, &grid).unwrap();
    assert!(hermitian_defect(&m) < 1e-14);
    let top = eigvals(&m).unwrap()[0];
    assert!((top - 1.0 / 1.1).abs() < 1e-6);
}

#[test]
fn underresolved_probe_is_reported() {
    // Eight nodes cannot integrate level-20 cross-Wigner functions.
    let r = quantize_hermite(&PhaseSymbol::Gaussian { z: 1.0 }, 0.1, 20, 8);
    assert!(matches!(r, Err(landau_core::Error::QuadratureUnderresolved { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn quantization_is_linear(a in -1.0f64..1.0, b in -1.0f64..1.0, z in 0.5f64..2.0) {
        let g = PhaseSymbol::Gaussian { z };
        let c = PhaseSymbol::CutoffGaussian { z: 1.0, start: 2.0, end: 5.0 };
        let sum = PhaseSymbol::Sum(vec![g.clone().scaled(a), c.clone().scaled(b)]);
        let h = 0.2;
        let m = quantize_hermite(&sum, h, 12, 200).unwrap().matrix;
        let parts = quantize_hermite(&g, h, 12, 200).unwrap().matrix * Complex64::new(a, 0.0)
            + quantize_hermite(&c, h, 12, 200).unwrap().matrix * Complex64::new(b, 0.0);
        prop_assert!((m - parts).norm() < 1e-10);
    }
}
