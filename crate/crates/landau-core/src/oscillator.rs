//! Hermite functions, ladder matrices and Gauss rules.
//!
//! `ψ_l` uses the standard phase (positive leading coefficient).

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{tridiagonal_eigenvalues, RMat};
use crate::math::{exp, ln, ln_factorial, sqrt, PI};
use crate::{Error, Result};

/// Basis `x ↦ s^{-1/2} ψ_k(x/s)` for `k < size`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HermiteBasisSpec {
    /// Number of levels.
    pub size: usize,
    /// Length scale; `√h` gives the semiclassical basis.
    pub scale: f64,
}

impl HermiteBasisSpec {
    /// Validated constructor.
    pub fn new(size: usize, scale: f64) -> Result<Self> {
        if size == 0 || !(scale > 0.0) {
            return Err(Error::invalid("basis needs size >= 1 and scale > 0"));
        }
        Ok(HermiteBasisSpec { size, scale })
    }
}

/// Nodes and weights for `∫ f(x) e^{-x²} dx` (Hermite) or `∫_0^∞ f(u) e^{-u} du` (Laguerre).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    /// Nodes, ascending.
    pub nodes: Vec<f64>,
    /// Positive weights for the weighted integral.
    pub weights: Vec<f64>,
    /// Weights with the weight function divided out, for unweighted integrands.
    pub plain_weights: Vec<f64>,
}

impl QuadratureRule {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True for a rule without nodes.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `ψ_l(x)` by the normalized three-term recurrence.
pub fn hermite_eval(l: usize, x: f64) -> f64 {
    let mut buf = vec![0.0; l + 1];
    hermite_fill(x, &mut buf);
    buf[l]
}

/// Writes `ψ_0(x) .. ψ_{n-1}(x)` into `out`.
///
/// The seed `e^{-x²/2}` is rescaled on the fly so that large `|x|` with high
/// levels does not underflow before the levels where the function lives.
pub fn hermite_fill(x: f64, out: &mut [f64]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    // Carry values as mantissa * e^{log_scale}.
    let mut log_scale = -0.5 * x * x - 0.25 * ln(PI);
    let mut prev = 0.0;
    let mut cur = 1.0;
    out[0] = exp(log_scale);
    for l in 0..n - 1 {
        let lf = l as f64;
        let next = sqrt(2.0 / (lf + 1.0)) * x * cur - sqrt(lf / (lf + 1.0)) * prev;
        prev = cur;
        cur = next;
        let a = cur.abs();
        if a > 1e100 || (a < 1e-100 && a > 0.0) {
            let s = ln(a);
            log_scale += s;
            prev /= a;
            cur /= a;
        }
        out[l + 1] = if log_scale < -745.0 { 0.0 } else { cur * exp(log_scale) };
    }
}

/// Ladder matrices `(J₊, J₋)` with `J₊ψ_k = √(2(k+1)) ψ_{k+1}`.
pub fn ladder_matrices(n: usize) -> Result<(RMat, RMat)> {
    if n < 2 {
        return Err(Error::invalid("ladder matrices need N >= 2"));
    }
    let mut jp = RMat::zeros(n, n);
    for k in 0..n - 1 {
        jp[(k + 1, k)] = sqrt(2.0 * (k as f64 + 1.0));
    }
    let jm = jp.transpose();
    Ok((jp, jm))
}

/// Position matrix `⟨ψ_j, x ψ_k⟩` in the standard phase.
pub fn position_matrix(n: usize) -> RMat {
    RMat::from_fn(n, n, |j, k| {
        if j + 1 == k {
            sqrt(k as f64 / 2.0)
        } else if k + 1 == j {
            sqrt(j as f64 / 2.0)
        } else {
            0.0
        }
    })
}

/// Gauss–Hermite rule with `n` nodes.
pub fn gauss_hermite(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > 400 {
        return Err(Error::invalid("Gauss-Hermite node count must be in 1..=400"));
    }
    let d = vec![0.0; n];
    let e: Vec<f64> = (1..n).map(|k| sqrt(k as f64 / 2.0)).collect();
    let mut nodes = tridiagonal_eigenvalues(&d, &e)?;
    let mut buf = vec![0.0; n + 1];
    for x in nodes.iter_mut() {
        // Newton polish on ψ_n, whose derivative is √(2n) ψ_{n-1} - x ψ_n.
        for _ in 0..3 {
            hermite_fill(*x, &mut buf);
            let f = buf[n];
            let df = sqrt(2.0 * n as f64) * buf[n - 1] - *x * f;
            if df == 0.0 {
                break;
            }
            *x -= f / df;
        }
    }
    // Symmetrize against rounding.
    for i in 0..n / 2 {
        let m = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -m;
        nodes[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let mut weights = Vec::with_capacity(n);
    let mut plain = Vec::with_capacity(n);
    for &x in &nodes {
        // Christoffel: w e^{x²} = 1 / Σ_k ψ_k(x)².
        hermite_fill(x, &mut buf[..n]);
        let s: f64 = buf[..n].iter().map(|v| v * v).sum();
        let pw = 1.0 / s;
        plain.push(pw);
        weights.push(pw * exp(-x * x));
    }
    Ok(QuadratureRule { nodes, weights, plain_weights: plain })
}

/// Orthonormal Laguerre functions `ℓ_j^{(α)}(t)` for `j < out.len()`.
///
/// `ℓ_j^{(α)}(t) = √(j!/(j+α)!) t^{α/2} e^{-t/2} L_j^{(α)}(t)`.
pub fn laguerre_functions(alpha: usize, t: f64, out: &mut [f64]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    let a = alpha as f64;
    if t <= 0.0 {
        // Only ℓ_j^{(0)}(0) = 1 survives.
        for v in out.iter_mut() {
            *v = if alpha == 0 { 1.0 } else { 0.0 };
        }
        return;
    }
    // Carry values as mantissa * e^{log_scale}.
    let mut log_scale = 0.5 * a * ln(t) - 0.5 * t - 0.5 * ln_factorial(alpha);
    let emit = |m: f64, ls: f64| if ls < -745.0 { 0.0 } else { m * exp(ls) };
    let mut prev = 0.0;
    let mut cur = 1.0;
    out[0] = emit(cur, log_scale);
    for j in 0..n - 1 {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - t) * cur - sqrt(jf * (jf + a)) * prev)
            / sqrt((jf + 1.0) * (jf + 1.0 + a));
        prev = cur;
        cur = next;
        let m = cur.abs();
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            log_scale += ln(m);
            prev /= m;
            cur /= m;
        }
        out[j + 1] = emit(cur, log_scale);
    }
}

/// Gauss–Laguerre rule (weight `e^{-u}` on `[0, ∞)`) with `n` nodes.
pub fn gauss_laguerre(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > 400 {
        return Err(Error::invalid("Gauss-Laguerre node count must be in 1..=400"));
    }
    let d: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0).collect();
    let e: Vec<f64> = (1..n).map(|k| -(k as f64)).collect();
    let mut nodes = tridiagonal_eigenvalues(&d, &e)?;
    let mut buf = vec![0.0; n + 1];
    for x in nodes.iter_mut() {
        // Newton on L_n; with ℓ_k = e^{-t/2} L_k: t L_n' = n(L_n - L_{n-1}).
        for _ in 0..3 {
            laguerre_functions(0, *x, &mut buf);
            let f = buf[n];
            let df = n as f64 * (buf[n] - buf[n - 1]) / *x;
            if df == 0.0 || !df.is_finite() {
                break;
            }
            *x -= f / df;
        }
    }
    let mut weights = Vec::with_capacity(n);
    let mut plain = Vec::with_capacity(n);
    for &x in &nodes {
        laguerre_functions(0, x, &mut buf[..n]);
        // Christoffel with ℓ_k = e^{-u/2} L_k: w e^{u} = 1 / Σ ℓ_k².
        let s: f64 = buf[..n].iter().map(|v| v * v).sum();
        plain.push(1.0 / s);
        weights.push(exp(-x) / s);
    }
    Ok(QuadratureRule { nodes, weights, plain_weights: plain })
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > 1000 {
        return Err(Error::invalid("Gauss-Legendre node count must be in 1..=1000"));
    }
    let d = vec![0.0; n];
    let e: Vec<f64> = (1..n).map(|k| k as f64 / sqrt(4.0 * (k * k) as f64 - 1.0)).collect();
    let mut nodes = tridiagonal_eigenvalues(&d, &e)?;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, d1) = legendre(n, *x);
            *x -= p / d1;
        }
        let (_, d1) = legendre(n, *x);
        weights.push(2.0 / ((1.0 - *x * *x) * d1 * d1));
    }
    Ok(QuadratureRule { plain_weights: weights.clone(), nodes, weights })
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_hermite_small() {
        let r = gauss_hermite(1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert!((r.weights[0] - sqrt(PI)).abs() < 1e-14);
        let r = gauss_hermite(2).unwrap();
        assert!((r.nodes[1] - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((r.weights[0] - 0.5 * sqrt(PI)).abs() < 1e-15);
    }

    #[test]
    fn laguerre_moments() {
        let r = gauss_laguerre(30).unwrap();
        for k in 0..10 {
            let est: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * libm::pow(*x, k as f64)).sum();
            let exact = crate::math::factorial(k);
            assert!((est - exact).abs() < 1e-11 * exact);
        }
    }

    #[test]
    fn legendre_integrates_cos() {
        let r = gauss_legendre(20).unwrap();
        let est: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * libm::cos(*x)).sum();
        assert!((est - 2.0 * libm::sin(1.0)).abs() < 1e-14);
    }
}
