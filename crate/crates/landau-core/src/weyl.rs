//! Semiclassical Weyl quantization
//! `â u(y) = (2πh)^{-1} ∫∫ e^{i(y-y')η/h} a((y+y')/2, η) u(y') dy' dη`.
//!
//! Two representations:
//!
//! * Hermite basis `φ_k(y) = h^{-1/4} ψ_k(y/√h)`. Entries are phase-plane
//!   integrals of the symbol against cross-Wigner functions, which are closed
//!   forms in Laguerre functions; only a 2D Gauss–Hermite sum remains.
//! * Nyström kernel grid. The η-transform of the symbol is tabulated once per
//!   distinct midpoint and separation of the uniform grid.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::linalg::{eigh, eigvals, hermitize, CMat};
use crate::math::{atan2, ceil, cos, exp, sin, sqrt, PI};
use crate::oscillator::{gauss_hermite, laguerre_functions, HermiteBasisSpec, QuadratureRule};
use crate::symbol::{PhaseSymbol, SupportBox};
use crate::{Error, Result};

/// Largest probe-entry change tolerated under quadrature-order doubling.
pub const PROBE_TOL: f64 = 1e-7;
/// Relative shift of the top eigenvalues tolerated under ×1.5 grid refinement.
pub const REFINE_TOL: f64 = 1e-5;

/// Uniform grid `lo, lo + Δ, …, hi` with `n` points.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSpec {
    /// First point.
    pub lo: f64,
    /// Last point.
    pub hi: f64,
    /// Number of points.
    pub n: usize,
}

impl GridSpec {
    /// Validated constructor.
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 || !(hi > lo) {
            return Err(Error::invalid("grid needs n >= 2 and hi > lo"));
        }
        Ok(GridSpec { lo, hi, n })
    }

    /// Grid with spacing at most `dx` covering `[lo, hi]`.
    pub fn with_spacing(lo: f64, hi: f64, dx: f64) -> Result<Self> {
        let n = ceil((hi - lo) / dx - 1e-9) as usize + 1;
        Self::new(lo, hi, n)
    }

    /// Spacing.
    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    /// Points.
    pub fn points(&self) -> Vec<f64> {
        let d = self.step();
        (0..self.n).map(|i| self.lo + i as f64 * d).collect()
    }

    /// The same interval with about 1.5 times as many points.
    pub fn refined(&self) -> Self {
        GridSpec { lo: self.lo, hi: self.hi, n: ceil(1.5 * (self.n - 1) as f64) as usize + 1 }
    }
}

/// Where a quantized matrix lives.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Representation {
    /// Scaled Hermite basis.
    HermiteBasis(HermiteBasisSpec),
    /// Nyström grid with quadrature weights.
    KernelGrid {
        /// Grid points.
        points: Vec<f64>,
        /// Weights.
        weights: Vec<f64>,
    },
}

/// A quantized symbol.
#[derive(Debug, Clone)]
pub struct QuantOperator {
    /// Semiclassical parameter.
    pub h: f64,
    /// Basis or grid.
    pub representation: Representation,
    /// Hermitian matrix.
    pub matrix: CMat,
    /// The symbol that was quantized.
    pub symbol: PhaseSymbol,
}

/// Sorted spectrum with convenience queries.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumReport {
    /// Eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Semiclassical parameter of the operator.
    pub h: f64,
    /// Largest `‖Mv − λv‖ / ‖M‖` over eigenpairs, when vectors were computed.
    pub max_residual: Option<f64>,
}

impl SpectrumReport {
    /// Report for an already sorted list.
    pub fn from_sorted(eigenvalues: Vec<f64>, h: f64) -> Self {
        SpectrumReport { eigenvalues, h, max_residual: None }
    }

    /// Number of eigenvalues `≥ b`.
    pub fn count_above(&self, b: f64) -> usize {
        self.eigenvalues.iter().filter(|&&x| x >= b).count()
    }

    /// Consecutive differences among eigenvalues `≥ b`.
    pub fn gaps_above(&self, b: f64) -> Vec<f64> {
        let top: Vec<f64> = self.eigenvalues.iter().copied().filter(|&x| x >= b).collect();
        top.windows(2).map(|w| w[0] - w[1]).collect()
    }
}

fn check_h(h: f64) -> Result<()> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::invalid("h must lie in (0, 1)"));
    }
    Ok(())
}

/// Default Gauss–Hermite order for an `n`-level basis.
pub fn default_quad_order(n: usize) -> usize {
    n + 60
}

/// `⟨φ_j, â φ_k⟩` for all `j, k < n`, by the cross-Wigner pairing on a tensor rule.
///
/// With `x, p` the basis-scaled phase variables,
/// `M_jk = (2π)^{-1} ∫∫ a(√h x, √h p) F_jk(x, p) dx dp` and, for `k ≥ j`,
/// `F_jk = 2(-1)^j e^{-i(k-j)θ} ℓ_j^{(k-j)}(2r²)`, `F_kj = conj(F_jk)`.
fn hermite_entries(
    symbol: &PhaseSymbol,
    h: f64,
    n: usize,
    rule: &QuadratureRule,
    pairs: Option<&[(usize, usize)]>,
) -> Result<CMat> {
    let sh = sqrt(h);
    let mut acc = CMat::zeros(n, n);
    let mut lag = vec![0.0; n];
    let nodes = &rule.nodes;
    let w = &rule.plain_weights;
    for (a, &x) in nodes.iter().enumerate() {
        for (b, &p) in nodes.iter().enumerate() {
            let r2 = x * x + p * p;
            // The cross-Wigner functions of levels < n are below 1e-300 here.
            if r2 > 4.0 * n as f64 + 750.0 {
                continue;
            }
            let av = symbol.eval(sh * x, sh * p)?;
            if av == 0.0 {
                continue;
            }
            let val = w[a] * w[b] * av / PI;
            let t = 2.0 * r2;
            let th = atan2(p, x);
            let rot = Complex64::new(cos(th), -sin(th));
            match pairs {
                None => {
                    let mut phase = Complex64::new(val, 0.0);
                    for d in 0..n {
                        let m = n - d;
                        laguerre_functions(d, t, &mut lag[..m]);
                        for j in 0..m {
                            let s = if j % 2 == 0 { lag[j] } else { -lag[j] };
                            acc[(j, j + d)] += phase * s;
                        }
                        phase *= rot;
                    }
                }
                Some(list) => {
                    for &(j, k) in list {
                        let (lo, hi) = if k >= j { (j, k) } else { (k, j) };
                        let d = hi - lo;
                        laguerre_functions(d, t, &mut lag[..lo + 1]);
                        let s = if lo % 2 == 0 { lag[lo] } else { -lag[lo] };
                        let ph = Complex64::new(cos(d as f64 * th), -sin(d as f64 * th));
                        acc[(lo, hi)] += ph * (val * s);
                    }
                }
            }
        }
    }
    for j in 0..n {
        for k in 0..j {
            acc[(j, k)] = acc[(k, j)].conj();
        }
        acc[(j, j)].im = 0.0;
    }
    Ok(acc)
}

/// Quantizes `symbol` in the `n`-level basis at scale `√h`.
///
/// Fails with [`Error::QuadratureUnderresolved`] when the 3×3 block of the
/// highest levels moves by more than [`PROBE_TOL`] when the order is doubled.
pub fn quantize_hermite(symbol: &PhaseSymbol, h: f64, n: usize, quad_order: usize) -> Result<QuantOperator> {
    check_h(h)?;
    if n < 4 {
        return Err(Error::invalid("Hermite quantization needs N >= 4"));
    }
    let spec = HermiteBasisSpec::new(n, sqrt(h))?;
    let representation = Representation::HermiteBasis(spec);
    if let PhaseSymbol::Constant(c) = symbol {
        let matrix = CMat::identity(n, n) * Complex64::new(*c, 0.0);
        return Ok(QuantOperator { h, representation, matrix, symbol: symbol.clone() });
    }
    let rule = gauss_hermite(quad_order)?;
    let mut m = hermite_entries(symbol, h, n, &rule, None)?;
    let probe: Vec<(usize, usize)> =
        (n - 3..n).flat_map(|j| (j..n).map(move |k| (j, k))).collect();
    let fine = gauss_hermite((2 * quad_order).min(400))?;
    let pm = hermite_entries(symbol, h, n, &fine, Some(&probe))?;
    let change = probe
        .iter()
        .map(|&(j, k)| (pm[(j, k)] - m[(j, k)]).norm())
        .fold(0.0_f64, f64::max);
    if change > PROBE_TOL {
        return Err(Error::QuadratureUnderresolved { change });
    }
    if symbol.even_in_eta() {
        m.iter_mut().for_each(|z| z.im = 0.0);
    }
    Ok(QuantOperator { h, representation, matrix: m, symbol: symbol.clone() })
}

/// Accumulates `factor · Δ · K` of one leaf symbol into `out`, with the leaf
/// displaced by `(j₁, j₂)`.
struct GridCtx<'a> {
    h: f64,
    pts: &'a [f64],
    step: f64,
}

fn accumulate(ctx: &GridCtx<'_>, symbol: &PhaseSymbol, shift: [f64; 2], factor: f64, out: &mut CMat) -> Result<()> {
    match symbol {
        PhaseSymbol::Constant(c) => {
            // δ(y - y') on the grid: Δ · δ_pq / Δ.
            for i in 0..ctx.pts.len() {
                out[(i, i)] += Complex64::new(factor * c, 0.0);
            }
            Ok(())
        }
        PhaseSymbol::Scaled { base, factor: f } => accumulate(ctx, base, shift, factor * f, out),
        PhaseSymbol::Sum(xs) => {
            for x in xs {
                accumulate(ctx, x, shift, factor, out)?;
            }
            Ok(())
        }
        PhaseSymbol::Shifted { base, j } => {
            accumulate(ctx, base, [shift[0] + j[0] as f64, shift[1] + j[1] as f64], factor, out)
        }
        _ if factor == 0.0 || symbol.is_zero() => Ok(()),
        PhaseSymbol::Gaussian { z } => {
            let m = ctx.pts.len();
            let pre = factor * ctx.step / (2.0 * PI * ctx.h) * sqrt(PI / z);
            for p in 0..m {
                for q in 0..m {
                    let u = 0.5 * (ctx.pts[p] + ctx.pts[q]) - shift[0];
                    let s = ctx.pts[p] - ctx.pts[q];
                    let mag = pre * exp(-z * u * u - s * s / (4.0 * z * ctx.h * ctx.h));
                    let ph = s * shift[1] / ctx.h;
                    out[(p, q)] += Complex64::new(mag * cos(ph), mag * sin(ph));
                }
            }
            Ok(())
        }
        _ => accumulate_tabulated(ctx, symbol, shift, factor, out),
    }
}

/// Trapezoid rule in η for `G(u, s) = ∫ e^{isη/h} a(u, η) dη`, refined by
/// doubling until two successive tables agree.
fn accumulate_tabulated(
    ctx: &GridCtx<'_>,
    symbol: &PhaseSymbol,
    shift: [f64; 2],
    factor: f64,
    out: &mut CMat,
) -> Result<()> {
    let bx: SupportBox = symbol.extent().ok_or(Error::KernelTransformUnavailable)?;
    if bx.is_empty() {
        return Ok(());
    }
    let m = ctx.pts.len();
    let nu = 2 * m - 1;
    // Midpoints u_i = lo + iΔ/2 and separations s_k = (k - (m-1))Δ.
    let us: Vec<f64> = (0..nu).map(|i| ctx.pts[0] + 0.5 * i as f64 * ctx.step - shift[0]).collect();
    let ss: Vec<f64> = (0..nu).map(|k| (k as f64 - (m - 1) as f64) * ctx.step).collect();
    let active: Vec<usize> = (0..nu).filter(|&i| us[i] >= bx.y_lo && us[i] <= bx.y_hi).collect();
    if active.is_empty() {
        return Ok(());
    }
    let even = symbol.even_in_eta() && bx.eta_lo == -bx.eta_hi;
    let width = bx.eta_hi - bx.eta_lo;
    let smax = ss[nu - 1];
    // Start near two points per oscillation at the largest separation.
    let mut n_eta = (ceil(width * smax / ctx.h / PI) as usize).max(32) + 1;
    let table = |n_eta: usize| -> Result<Vec<Complex64>> {
        let de = width / (n_eta - 1) as f64;
        let etas: Vec<f64> = (0..n_eta).map(|k| bx.eta_lo + k as f64 * de).collect();
        let mut vals = vec![0.0; active.len() * n_eta];
        for (ai, &i) in active.iter().enumerate() {
            for (k, &e) in etas.iter().enumerate() {
                vals[ai * n_eta + k] = symbol.eval(us[i], e)?;
            }
        }
        let mut g = vec![Complex64::new(0.0, 0.0); active.len() * nu];
        let mut cs = vec![0.0; n_eta];
        let mut sn = vec![0.0; n_eta];
        for (k, &s) in ss.iter().enumerate() {
            for (l, &e) in etas.iter().enumerate() {
                let ph = s * e / ctx.h;
                let wt = if l == 0 || l + 1 == n_eta { 0.5 * de } else { de };
                cs[l] = wt * cos(ph);
                sn[l] = if even { 0.0 } else { wt * sin(ph) };
            }
            for ai in 0..active.len() {
                let row = &vals[ai * n_eta..(ai + 1) * n_eta];
                let mut re = 0.0;
                let mut im = 0.0;
                for l in 0..n_eta {
                    re += cs[l] * row[l];
                    im += sn[l] * row[l];
                }
                g[ai * nu + k] = Complex64::new(re, im);
            }
        }
        Ok(g)
    };
    let mut g = table(n_eta)?;
    let scale = g.iter().fold(0.0_f64, |a, z| a.max(z.norm())).max(1e-300);
    loop {
        let n2 = 2 * n_eta - 1;
        let g2 = table(n2)?;
        let diff = g.iter().zip(&g2).fold(0.0_f64, |a, (x, y)| a.max((x - y).norm()));
        g = g2;
        n_eta = n2;
        if diff <= 1e-10 * scale {
            break;
        }
        if n_eta > 20_000 {
            return Err(Error::QuadratureUnderresolved { change: diff / scale });
        }
    }
    let mut slot = vec![usize::MAX; nu];
    for (ai, &i) in active.iter().enumerate() {
        slot[i] = ai;
    }
    let pre = factor * ctx.step / (2.0 * PI * ctx.h);
    for p in 0..m {
        for q in 0..m {
            let ai = slot[p + q];
            if ai == usize::MAX {
                continue;
            }
            let k = p + m - 1 - q;
            let s = ss[k];
            let ph = s * shift[1] / ctx.h;
            let v = g[ai * nu + k] * Complex64::new(cos(ph), sin(ph)) * pre;
            out[(p, q)] += v;
        }
    }
    Ok(())
}

/// Weighted Nyström kernel matrix `√w_p K(y_p, y_q) √w_q` on a uniform grid,
/// without the refinement check.
pub fn kernel_matrix(symbol: &PhaseSymbol, h: f64, grid: &GridSpec) -> Result<CMat> {
    check_h(h)?;
    let pts = grid.points();
    let ctx = GridCtx { h, pts: &pts, step: grid.step() };
    let mut out = DMatrix::zeros(grid.n, grid.n);
    accumulate(&ctx, symbol, [0.0, 0.0], 1.0, &mut out)?;
    Ok(hermitize(&out))
}

/// Largest relative shift of the top ten eigenvalues between two matrices.
pub fn top_shift(a: &CMat, b: &CMat) -> Result<f64> {
    let ea = eigvals(a)?;
    let eb = eigvals(b)?;
    let scale = ea.iter().chain(&eb).fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let k = ea.len().min(eb.len()).min(10);
    Ok((0..k).map(|i| (ea[i] - eb[i]).abs()).fold(0.0, f64::max) / scale)
}

/// Nyström quantization with the ×1.5 refinement check.
pub fn quantize_grid(symbol: &PhaseSymbol, h: f64, grid: &GridSpec) -> Result<QuantOperator> {
    let matrix = kernel_matrix(symbol, h, grid)?;
    let fine = kernel_matrix(symbol, h, &grid.refined())?;
    let shift = top_shift(&matrix, &fine)?;
    if shift > REFINE_TOL {
        return Err(Error::GridUnderresolved { shift });
    }
    let d = grid.step();
    Ok(QuantOperator {
        h,
        representation: Representation::KernelGrid { points: grid.points(), weights: vec![d; grid.n] },
        matrix,
        symbol: symbol.clone(),
    })
}

/// `Σ |M_pq|²`.
pub fn hs_norm_sq(op: &QuantOperator) -> f64 {
    op.matrix.iter().map(|z| z.norm_sqr()).sum()
}

/// Full spectrum with eigenvector residual check.
pub fn spectrum(op: &QuantOperator) -> Result<SpectrumReport> {
    spectrum_of(&op.matrix, op.h)
}

/// Spectrum of a bare Hermitian matrix.
pub fn spectrum_of(m: &CMat, h: f64) -> Result<SpectrumReport> {
    let e = eigh(m, true)?;
    let v = e.vectors.as_ref().expect("vectors requested");
    let norm = e.values.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    let mut worst = 0.0_f64;
    if norm > 0.0 {
        let mv = m * v;
        for (k, &lam) in e.values.iter().enumerate() {
            let r: f64 = (0..m.nrows()).map(|i| (mv[(i, k)] - v[(i, k)] * lam).norm_sqr()).sum();
            worst = worst.max(sqrt(r) / norm);
        }
    }
    if worst > 1e-9 {
        return Err(Error::NoConvergence { sweeps: crate::linalg::MAX_SWEEPS });
    }
    Ok(SpectrumReport { eigenvalues: e.values, h, max_residual: Some(worst) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_gaussian_is_mehler_diagonal() {
        let h = 0.1;
        let op = quantize_hermite(&PhaseSymbol::Gaussian { z: 1.0 }, h, 30, 90).unwrap();
        for k in 0..20 {
            let exact = crate::math::powi(1.0 - h, k as i32) / crate::math::powi(1.0 + h, k as i32 + 1);
            assert!((op.matrix[(k, k)].re - exact).abs() < 1e-10, "k={k}");
        }
        let off: f64 = (0..30).flat_map(|j| (0..30).map(move |k| (j, k))).filter(|(j, k)| j != k)
            .map(|(j, k)| op.matrix[(j, k)].norm()).fold(0.0, f64::max);
        assert!(off < 1e-10);
    }

    #[test]
    fn grid_gaussian_top_eigenvalue() {
        let g = GridSpec::new(-6.0, 6.0, 600).unwrap();
        let op = quantize_grid(&PhaseSymbol::Gaussian { z: 1.0 }, 0.1, &g).unwrap();
        let s = spectrum(&op).unwrap();
        assert!((s.eigenvalues[0] - 1.0 / 1.1).abs() < 1e-6);
    }
}
