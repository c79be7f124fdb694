//! Grushin reduction of the Landau band `n` to an effective Hamiltonian on the `y`-line.
//!
//! The perturbation `W` acts on `ψ_a(x) ⊗ φ_m(y)` as the joint function
//! `V(Y, E)` of the commuting operators `Y = y + √h x` and `E = hD_y − √h D_x`.
//! A 45° rotation of the pair `(√h x, y)` turns `Y` into a position and `E`
//! into a momentum of two independent modes, so every matrix element is a
//! finite sum of the 2D integrals
//! `T[k,k',l,l'] = ∫∫ V(Y, E) ψ_k ψ_k'(Y) ψ_l ψ_l'(E)` at scale `√(2h)`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::linalg::{eigh_fast, eigvals, hausdorff, hermitian_defect, hermitize, spectral_norm, CMat};
use crate::math::{binomial, factorial, ln, sqrt, PI};
use crate::mehler::composite_legendre;
use crate::oscillator::{gauss_hermite, gauss_legendre, hermite_fill};
use crate::singlesite::SiteSymbolFamily;
use crate::symbol::PhaseSymbol;
use crate::weyl::{default_quad_order, quantize_hermite, PROBE_TOL};
use crate::{Error, Result};

/// Largest tensor basis `Nx · Ny`.
pub const TENSOR_CAP: usize = 4000;

/// Band eigenvectors may put at most this mass on the top `x`-level.
pub const LEAKAGE_TOL: f64 = 0.01;

/// Residuals below this are rounding, not remainder.
pub const NOISE_FLOOR: f64 = 1e-11;

/// Distances below this count as equal when judging monotone improvement.
pub const DISTANCE_FLOOR: f64 = 1e-9;

/// Root accuracy in `μ`.
pub const ROOT_TOL: f64 = 1e-8;

/// Truncated tensor basis `ψ_a ⊗ φ_m`, `a < Nx`, `m < Ny`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TensorBasisSpec {
    /// Oscillator levels in `x`.
    pub nx: usize,
    /// Scaled Hermite levels in `y`.
    pub ny: usize,
    /// Landau index.
    pub n: usize,
}

impl TensorBasisSpec {
    /// Checks `Nx ≥ n + 3`, `Ny ≥ 1` and the size cap.
    pub fn new(nx: usize, ny: usize, n: usize) -> Result<Self> {
        if nx < n + 3 || ny == 0 {
            return Err(Error::invalid("need Nx >= n + 3 and Ny >= 1"));
        }
        if nx * ny > TENSOR_CAP {
            return Err(Error::CapExceeded { what: "tensor basis", requested: nx * ny, cap: TENSOR_CAP });
        }
        Ok(TensorBasisSpec { nx, ny, n })
    }

    /// `Nx · Ny`.
    pub fn dim(&self) -> usize {
        self.nx * self.ny
    }

    /// Flat index of `ψ_a ⊗ φ_m`.
    pub fn index(&self, a: usize, m: usize) -> usize {
        a * self.ny + m
    }
}

/// True for kinds whose pointwise values are available without derivatives.
fn analytic(v: &PhaseSymbol) -> bool {
    match v {
        PhaseSymbol::DerivativeSum { .. } | PhaseSymbol::GradSquared { .. } => false,
        PhaseSymbol::Shifted { base, .. } | PhaseSymbol::Scaled { base, .. } => analytic(base),
        PhaseSymbol::Sum(xs) => xs.iter().all(analytic),
        _ => true,
    }
}

/// Rotation coefficients `B^{am}_{kl}`, `k + l = a + m`:
/// `ψ_a ⊗ φ_m = Σ_k B^{am}_{k,a+m−k} |k⟩_s |a+m−k⟩_t`.
fn beam_splitter(a: usize, m: usize) -> Vec<f64> {
    let s = a + m;
    let pre = crate::math::powi(2.0, -(s as i32)) / (factorial(a) * factorial(m));
    (0..=s)
        .map(|k| {
            let l = s - k;
            let mut acc = 0.0;
            for p in k.saturating_sub(m)..=k.min(a) {
                let sign = if (a - p) % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * binomial(a, p) * binomial(m, k - p);
            }
            acc * sqrt(pre * factorial(k) * factorial(l))
        })
        .collect()
}

/// Hermite functions of levels `< levels` at the nodes, one row per node.
fn hermite_table(nodes: &[f64], levels: usize) -> Vec<Vec<f64>> {
    nodes
        .iter()
        .map(|&x| {
            let mut row = vec![0.0; levels];
            hermite_fill(x, &mut row);
            row
        })
        .collect()
}

/// `T` as a `K² × K²` matrix indexed `(k·K + k', l·K + l')`.
fn transform_tensor(v: &PhaseSymbol, h: f64, levels: usize, order: usize) -> Result<DMatrix<f64>> {
    let rule = gauss_hermite(order)?;
    let q = rule.len();
    let sc = sqrt(2.0 * h);
    let psi = hermite_table(&rule.nodes, levels);
    let k2 = levels * levels;
    let mut vals = DMatrix::zeros(q, q);
    for i in 0..q {
        for j in 0..q {
            vals[(i, j)] = v.eval(sc * rule.nodes[i], sc * rule.nodes[j])?;
        }
    }
    // Pair products weighted by the plain rule: P[(k,k'), i].
    let pairs = DMatrix::from_fn(k2, q, |r, i| rule.plain_weights[i] * psi[i][r / levels] * psi[i][r % levels]);
    Ok(&pairs * vals * pairs.transpose())
}

/// One tensor entry by direct summation at another order.
fn transform_entry(v: &PhaseSymbol, h: f64, idx: [usize; 4], order: usize) -> Result<f64> {
    let rule = gauss_hermite(order)?;
    let sc = sqrt(2.0 * h);
    let top = idx.iter().copied().max().unwrap_or(0) + 1;
    let psi = hermite_table(&rule.nodes, top);
    let mut acc = 0.0;
    for (i, &y) in rule.nodes.iter().enumerate() {
        let fy = rule.plain_weights[i] * psi[i][idx[0]] * psi[i][idx[1]];
        if fy == 0.0 {
            continue;
        }
        for (j, &e) in rule.nodes.iter().enumerate() {
            acc += fy * rule.plain_weights[j] * psi[j][idx[2]] * psi[j][idx[3]] * v.eval(sc * y, sc * e)?;
        }
    }
    Ok(acc)
}

/// Matrix of `W` on the tensor basis.
///
/// `quad_order` defaults to `Nx + Ny + 60` Gauss–Hermite nodes per axis. A probe
/// of corner entries of `T` is recomputed at twice the order and must move by
/// at most [`PROBE_TOL`].
pub fn build_w(v: &PhaseSymbol, h: f64, basis: &TensorBasisSpec, quad_order: Option<usize>) -> Result<CMat> {
    if !(h > 0.0) {
        return Err(Error::invalid("h must be positive"));
    }
    if !analytic(v) {
        return Err(Error::KernelTransformUnavailable);
    }
    let d = basis.dim();
    if let PhaseSymbol::Constant(c) = v {
        return Ok(CMat::identity(d, d) * Complex64::new(*c, 0.0));
    }
    let levels = basis.nx + basis.ny - 1;
    let order = quad_order.unwrap_or(levels + 60);
    let t = transform_tensor(v, h, levels, order)?;
    let hi = levels - 1;
    let mut change = 0.0_f64;
    for idx in [[0, 0, hi, hi], [hi, hi, 0, 0], [hi, hi, hi, hi], [hi, hi - 1, hi, hi - 1]] {
        let fine = transform_entry(v, h, idx, (2 * order).min(400))?;
        change = change.max((fine - t[(idx[0] * levels + idx[1], idx[2] * levels + idx[3])]).abs());
    }
    if change > PROBE_TOL {
        return Err(Error::QuadratureUnderresolved { change });
    }
    let coeffs: Vec<Vec<f64>> =
        (0..d).map(|r| beam_splitter(r / basis.ny, r % basis.ny)).collect();
    // (−i)^{l'−l} for the momentum-side Hermite functions.
    let phase = |dl: i64| match dl.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    let mut w = CMat::zeros(d, d);
    for r in 0..d {
        let br = &coeffs[r];
        let sr = br.len() - 1;
        for c in r..d {
            let bc = &coeffs[c];
            let sc = bc.len() - 1;
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &b1) in br.iter().enumerate() {
                if b1 == 0.0 {
                    continue;
                }
                let l = sr - k;
                let mut inner = Complex64::new(0.0, 0.0);
                for (k2, &b2) in bc.iter().enumerate() {
                    let l2 = sc - k2;
                    let tv = t[(k * levels + k2, l * levels + l2)];
                    if tv != 0.0 && b2 != 0.0 {
                        inner += phase(l2 as i64 - l as i64) * (b2 * tv);
                    }
                }
                acc += inner * b1;
            }
            w[(r, c)] = acc;
            w[(c, r)] = acc.conj();
        }
        w[(r, r)].im = 0.0;
    }
    Ok(w)
}

/// `W`, `R_n` and `E₀(μ)` for one potential, `h` and basis.
#[derive(Debug, Clone)]
pub struct GrushinOperators {
    /// Basis.
    pub basis: TensorBasisSpec,
    /// Semiclassical parameter.
    pub h: f64,
    /// Perturbation on the tensor basis.
    pub w: CMat,
    /// `‖W‖`.
    pub w_norm: f64,
}

impl GrushinOperators {
    /// Builds `W` with the default quadrature order.
    pub fn new(v: &PhaseSymbol, h: f64, basis: TensorBasisSpec) -> Result<Self> {
        let w = build_w(v, h, &basis, None)?;
        let w_norm = spectral_norm(&w)?;
        Ok(GrushinOperators { basis, h, w, w_norm })
    }

    /// Injection `R_n`: column `m` is `ψ_n ⊗ φ_m`.
    pub fn rn(&self) -> CMat {
        let b = self.basis;
        let mut r = CMat::zeros(b.dim(), b.ny);
        for m in 0..b.ny {
            r[(b.index(b.n, m), m)] = Complex64::new(1.0, 0.0);
        }
        r
    }

    /// Diagonal of `E₀(μ)`: `1/(2(l−n) − hμ)` on level `l ≠ n`, zero on `n`.
    pub fn e0_diag(&self, mu: f64) -> Vec<f64> {
        let b = self.basis;
        let mut out = vec![0.0; b.dim()];
        for l in (0..b.nx).filter(|&l| l != b.n) {
            let val = 1.0 / (2.0 * (l as f64 - b.n as f64) - self.h * mu);
            for m in 0..b.ny {
                out[b.index(l, m)] = val;
            }
        }
        out
    }

    /// `E₀(μ)` as a matrix.
    pub fn e0(&self, mu: f64) -> CMat {
        let d = self.e0_diag(mu);
        CMat::from_fn(d.len(), d.len(), |i, j| if i == j { Complex64::new(d[i], 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    /// `‖E₀(μ)‖` on the truncation.
    pub fn e0_norm(&self, mu: f64) -> f64 {
        self.e0_diag(mu).iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// `h ‖E₀(μ)‖ ‖W‖`.
    pub fn contraction(&self, mu: f64) -> f64 {
        self.h * self.e0_norm(mu) * self.w_norm
    }

    /// `h⁻¹ L ⊗ I + W` with `L ψ_l = (2l+1) ψ_l`.
    pub fn full_operator(&self) -> CMat {
        let b = self.basis;
        let mut m = self.w.clone();
        for l in 0..b.nx {
            for j in 0..b.ny {
                let i = b.index(l, j);
                m[(i, i)] += (2.0 * l as f64 + 1.0) / self.h;
            }
        }
        m
    }
}

/// Output of [`q_series`].
#[derive(Debug, Clone)]
pub struct SeriesValue {
    /// `Q_V(μ)` after symmetrization.
    pub matrix: CMat,
    /// Bound on the dropped terms.
    pub tail: f64,
    /// Largest entrywise Hermitian defect before symmetrization.
    pub defect: f64,
    /// `h ‖E₀‖ ‖W‖`.
    pub contraction: f64,
}

/// `−μ I + Σ_{j ≤ j_max} (−h)^j R_n* W (E₀(μ) W)^j R_n`.
pub fn q_series(ops: &GrushinOperators, mu: f64, j_max: usize) -> Result<SeriesValue> {
    if !(mu.abs() <= 1.0) {
        return Err(Error::invalid("mu must lie in [-1, 1]"));
    }
    let factor = ops.contraction(mu);
    if !(factor < 0.5) {
        return Err(Error::SeriesDivergent { factor });
    }
    let b = ops.basis;
    let e0 = ops.e0_diag(mu);
    let lo = b.index(b.n, 0);
    // Slab X_j = W (E₀ W)^j R_n.
    let mut x = ops.w.columns(lo, b.ny).into_owned();
    let mut q = CMat::identity(b.ny, b.ny) * Complex64::new(-mu, 0.0);
    let mut coef = 1.0;
    for j in 0..=j_max {
        q += x.rows(lo, b.ny) * Complex64::new(coef, 0.0);
        if j == j_max {
            break;
        }
        for (r, e) in e0.iter().enumerate() {
            x.row_mut(r).scale_mut(*e);
        }
        x = &ops.w * x;
        coef *= -ops.h;
    }
    let tail = crate::math::powi(factor, j_max as i32 + 1) / (1.0 - factor) * ops.w_norm;
    let defect = hermitian_defect(&q);
    Ok(SeriesValue { matrix: hermitize(&q), tail, defect, contraction: factor })
}

/// `V̂ − μ + h V̂₁ + h² V̂₂` on `Ny` levels, with `V₁ = ((2n+1)/4)ΔV` and
/// `V₂ = −¼|∇V|² + Σ c_α ∂^α V`.
pub fn q_expansion(v: &PhaseSymbol, n: usize, h: f64, mu: f64, ny: usize) -> Result<CMat> {
    let fam = SiteSymbolFamily::new(v.clone(), n, h)?;
    let op = quantize_hermite(&fam.symbol(1.0), h, ny, default_quad_order(ny))?;
    Ok(op.matrix - CMat::identity(ny, ny) * Complex64::new(mu, 0.0))
}

/// How [`EffectiveHamiltonian`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EffectiveMode {
    /// Neumann series up to the given order.
    Series(usize),
    /// Closed second-order expansion.
    Expansion,
}

/// `μ ↦ Q_V(μ)` on the `y`-basis.
#[derive(Debug, Clone)]
pub struct EffectiveHamiltonian {
    /// Potential.
    pub v: PhaseSymbol,
    /// Operators.
    pub ops: GrushinOperators,
    /// Evaluation mode.
    pub mode: EffectiveMode,
}

impl EffectiveHamiltonian {
    /// `Q_V(μ)`.
    pub fn eval(&self, mu: f64) -> Result<CMat> {
        match self.mode {
            EffectiveMode::Series(j) => Ok(q_series(&self.ops, mu, j)?.matrix),
            EffectiveMode::Expansion => q_expansion(&self.v, self.ops.basis.n, self.ops.h, mu, self.ops.basis.ny),
        }
    }
}

/// Output of [`residual_scaling`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ResidualReport {
    /// `(h, r(h), series tail)`.
    pub points: Vec<(f64, f64, f64)>,
    /// Least-squares slope of `ln r` against `ln h`; `None` when exact.
    pub slope: Option<f64>,
    /// True for potentials whose residual vanishes identically.
    pub exact: bool,
    /// Size of the compared leading block.
    pub block: usize,
}

/// Ordinary least-squares slope.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| ln(*x)).collect();
    let ly: Vec<f64> = ys.iter().map(|y| ln(*y)).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `r(h) = ‖q_series − q_expansion‖` on the leading `Ny/2` block, and its log-log slope.
///
/// Products inside the series lose the levels above `Ny`, which pollutes the
/// last rows at order `h`; the leading half of the block is clear of that.
pub fn residual_scaling(
    v: &PhaseSymbol,
    basis: TensorBasisSpec,
    mu: f64,
    hs: &[f64],
    j_max: usize,
) -> Result<ResidualReport> {
    if hs.len() < 2 {
        return Err(Error::invalid("need at least two values of h"));
    }
    let (lo, hi) = hs.iter().fold((f64::INFINITY, 0.0_f64), |(a, b), &h| (a.min(h), b.max(h)));
    if hi < 8.0 * lo * (1.0 - 1e-12) {
        return Err(Error::invalid("h list must span a factor of 8"));
    }
    let block = (basis.ny / 2).max(1);
    if let PhaseSymbol::Constant(_) = v {
        return Ok(ResidualReport { points: hs.iter().map(|&h| (h, 0.0, 0.0)).collect(), slope: None, exact: true, block });
    }
    let mut points = Vec::with_capacity(hs.len());
    for &h in hs {
        let ops = GrushinOperators::new(v, h, basis)?;
        let s = q_series(&ops, mu, j_max)?;
        let e = q_expansion(v, basis.n, h, mu, basis.ny)?;
        let diff = (s.matrix - e).view((0, 0), (block, block)).into_owned();
        let r = spectral_norm(&diff)?;
        if r < NOISE_FLOOR {
            return Err(Error::ResidualAtNoiseFloor { h, residual: r });
        }
        points.push((h, r, s.tail));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    Ok(ResidualReport { slope: Some(loglog_slope(&xs, &ys)), points, exact: false, block })
}

/// Output of [`bellissard_check`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BellissardReport {
    /// Basis.
    pub basis: TensorBasisSpec,
    /// Band eigenvalues of `h⁻¹L⊗I + W`, shifted by `−(2n+1)/h`, descending.
    pub band: Vec<f64>,
    /// Roots `μ` of the eigenvalue branches of `Q_V(μ)`, descending.
    pub roots: Vec<f64>,
    /// Hausdorff distance between the two sets.
    pub distance: f64,
    /// Largest mass of a band eigenvector on the top `x`-level.
    pub leakage: f64,
}

/// Root of the `k`-th (descending) eigenvalue branch of `Q_V(μ)`.
///
/// `Q_V(μ) + μ` depends on `μ` only through `E₀`, at order `h³`, so the fixed
/// point of `μ ↦ ν_k(Q_V(μ) + μ)` is found by direct iteration and then
/// confirmed by a sign change across `±ROOT_TOL`.
fn branch_root(ops: &GrushinOperators, k: usize, j_max: usize) -> Result<f64> {
    let branch = |mu: f64| -> Result<f64> { Ok(eigvals(&q_series(ops, mu, j_max)?.matrix)?[k]) };
    let mut mu = 0.0;
    for _ in 0..60 {
        let next = (branch(mu)? + mu).clamp(-1.0, 1.0);
        let done = (next - mu).abs() < 1e-13;
        mu = next;
        if done {
            break;
        }
    }
    let (a, b) = ((mu - ROOT_TOL).max(-1.0), (mu + ROOT_TOL).min(1.0));
    let (fa, fb) = (branch(a)?, branch(b)?);
    if fa < 0.0 || fb > 0.0 {
        return Err(Error::NoConvergence { sweeps: 60 });
    }
    Ok(mu)
}

/// Compares the band spectrum of the enlarged operator with the roots of `Q_V`.
pub fn bellissard_check(v: &PhaseSymbol, h: f64, basis: TensorBasisSpec, j_max: usize) -> Result<BellissardReport> {
    let ops = GrushinOperators::new(v, h, basis)?;
    let full = ops.full_operator();
    let eig = eigh_fast(&full)?;
    let vecs = eig.vectors.as_ref().ok_or(Error::NoConvergence { sweeps: 0 })?;
    let centre = (2.0 * basis.n as f64 + 1.0) / h;
    let top = basis.nx - 1;
    let mut band = Vec::new();
    let mut leakage = 0.0_f64;
    for (i, &e) in eig.values.iter().enumerate() {
        let mu = e - centre;
        if mu.abs() <= 1.0 {
            band.push(mu);
            let mass: f64 = (0..basis.ny).map(|m| vecs[(basis.index(top, m), i)].norm_sqr()).sum();
            leakage = leakage.max(mass);
        }
    }
    if leakage > LEAKAGE_TOL {
        return Err(Error::BandTruncationLeakage { mass: leakage });
    }
    let roots = (0..basis.ny).map(|k| branch_root(&ops, k, j_max)).collect::<Result<Vec<_>>>()?;
    let distance = hausdorff(&band, &roots);
    Ok(BellissardReport { basis, band, roots, distance, leakage })
}

/// Distances under basis enlargement.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceStudy {
    /// One report per basis, in the order given.
    pub reports: Vec<BellissardReport>,
    /// Each distance is at most the previous one plus [`DISTANCE_FLOOR`].
    pub monotone: bool,
}

/// Runs [`bellissard_check`] on a sequence of growing bases.
pub fn bellissard_convergence(v: &PhaseSymbol, h: f64, bases: &[TensorBasisSpec], j_max: usize) -> Result<ConvergenceStudy> {
    let reports = bases.iter().map(|b| bellissard_check(v, h, *b, j_max)).collect::<Result<Vec<_>>>()?;
    let monotone = reports.windows(2).all(|w| w[1].distance <= w[0].distance + DISTANCE_FLOOR);
    Ok(ConvergenceStudy { reports, monotone })
}

/// `‖V‖²_{L²}` over the phase plane; `None` for non-decaying symbols.
pub fn l2_norm_sq(v: &PhaseSymbol) -> Result<Option<f64>> {
    if v.is_zero() {
        return Ok(Some(0.0));
    }
    let rule = gauss_legendre(20)?;
    if let Some(p) = v.as_radial() {
        // ∫∫ Ψ(y²+η²)² = π ∫_0^∞ Ψ(u)² du.
        let Some(edge) = p.extent() else { return Ok(None) };
        let panels = crate::math::ceil(4.0 * edge).max(4.0) as usize;
        let (xs, ws) = composite_legendre(0.0, edge, panels, &rule);
        let mut acc = 0.0;
        for (u, w) in xs.iter().zip(&ws) {
            let f = p.value(*u)?;
            acc += w * f * f;
        }
        return Ok(Some(PI * acc));
    }
    let Some(bx) = v.extent() else { return Ok(None) };
    let py = (crate::math::ceil(4.0 * (bx.y_hi - bx.y_lo)) as usize).max(4);
    let pe = (crate::math::ceil(4.0 * (bx.eta_hi - bx.eta_lo)) as usize).max(4);
    let (ys, wy) = composite_legendre(bx.y_lo, bx.y_hi, py, &rule);
    let (es, we) = composite_legendre(bx.eta_lo, bx.eta_hi, pe, &rule);
    let mut acc = 0.0;
    for (y, a) in ys.iter().zip(&wy) {
        for (e, b) in es.iter().zip(&we) {
            let f = v.eval(*y, *e)?;
            acc += a * b * f * f;
        }
    }
    Ok(Some(acc))
}

/// Levels used by [`counting_bound_check`].
pub const COUNT_BASIS: usize = 80;

/// Output of [`counting_bound_check`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CountingReport {
    /// `#{λ ∈ σ(V̂) : λ ≥ b₀}`.
    pub count: usize,
    /// `‖V‖²/(2π h b₀²)`; infinite for non-decaying symbols.
    pub bound: f64,
    /// `count ≤ bound`.
    pub holds: bool,
}

/// Counts eigenvalues of `V̂` at or above `b₀` against the Hilbert–Schmidt bound.
pub fn counting_bound_check(v: &PhaseSymbol, h: f64, b0: f64) -> Result<CountingReport> {
    if !(b0 > 0.0) || !(h > 0.0) {
        return Err(Error::invalid("need b0 > 0 and h > 0"));
    }
    let count = if v.is_zero() {
        0
    } else {
        let op = quantize_hermite(v, h, COUNT_BASIS, default_quad_order(COUNT_BASIS))?;
        eigvals(&op.matrix)?.iter().filter(|&&e| e >= b0).count()
    };
    let bound = match l2_norm_sq(v)? {
        Some(n2) => n2 / (2.0 * PI * h * b0 * b0),
        None => f64::INFINITY,
    };
    Ok(CountingReport { count, bound, holds: count as f64 <= bound })
}
