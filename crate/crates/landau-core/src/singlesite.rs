//! Corrected single-site symbols and the spectral gap assumption.
//!
//! For a site potential `v₀` at Landau index `n`:
//! `p₀ = v₀ + ((2n+1)/4) h Δv₀ + h² Σ_{|α|=4} c_α ∂^α v₀` and
//! `q₀ = (h²/4)|∇v₀|²`, so the local symbol at coupling `ω` is `ω p₀ + ω² q₀`.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{eigvals, to_complex, CMat};
use crate::mehler::radial_eig_laguerre;
use crate::oscillator::ladder_matrices;
use crate::symbol::{MultiIndex, PhaseSymbol};
use crate::weyl::{default_quad_order, quantize_hermite, QuantOperator};
use crate::{Error, Result};

/// Levels below this distance count as degenerate.
pub const SIMPLICITY_TOL: f64 = 1e-8;

/// Upper level index tabulated when the spectrum comes from the radial formula.
pub const RADIAL_LEVELS: usize = 60;

/// Basis size for non-radial corrected symbols.
pub const NONRADIAL_BASIS: usize = 80;

/// `c_α` for `|α| ≤ 4` at one Landau index.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CAlphaTable {
    /// Landau index.
    pub n: usize,
    /// `(α, c_α)` in graded lexicographic order.
    pub entries: Vec<(MultiIndex, f64)>,
}

impl CAlphaTable {
    /// All `|α| ≤ 4`.
    pub fn new(n: usize) -> Self {
        let mut entries = Vec::new();
        for d in 0..=4 {
            for a in (0..=d).rev() {
                let alpha = [a, d - a];
                entries.push((alpha, compute_c_alpha(n, alpha)));
            }
        }
        CAlphaTable { n, entries }
    }

    /// Coefficient for `α`, zero when not tabulated.
    pub fn get(&self, alpha: MultiIndex) -> f64 {
        self.entries.iter().find(|e| e.0 == alpha).map_or(0.0, |e| e.1)
    }
}

/// Average of all distinct products of `a` copies of `x` and `b` copies of `p`.
fn weyl_product(x: &CMat, p: &CMat, a: usize, b: usize) -> CMat {
    let n = x.nrows();
    let total = a + b;
    let mut acc = CMat::zeros(n, n);
    let mut count = 0usize;
    // Each ordering is a bitmask with exactly `b` bits set marking the `p` slots.
    for mask in 0u32..(1u32 << total) {
        if mask.count_ones() as usize != b {
            continue;
        }
        let mut m = CMat::identity(n, n);
        for slot in 0..total {
            m = if mask & (1 << slot) != 0 { &m * p } else { &m * x };
        }
        acc += m;
        count += 1;
    }
    acc / Complex64::new(count as f64, 0.0)
}

/// `c_α = (1/α!) ⟨ψ_n, Op^W(x^{α₁}(−ξ)^{α₂}) ψ_n⟩` at unit semiclassical parameter.
///
/// Exactly zero when either component of `α` is odd.
pub fn compute_c_alpha(n: usize, alpha: MultiIndex) -> f64 {
    let [a, b] = alpha;
    if a % 2 == 1 || b % 2 == 1 {
        return 0.0;
    }
    if a + b == 0 {
        return 1.0;
    }
    let size = n + a + b + 2;
    let (jp, jm) = ladder_matrices(size).expect("size >= 2");
    let x = to_complex(&(&jp + &jm)) * Complex64::new(-0.5, 0.0);
    let xi = to_complex(&(&jp - &jm)) * Complex64::new(0.0, 0.5);
    let minus_xi = -xi;
    let m = weyl_product(&x, &minus_xi, a, b);
    m[(n, n)].re / (crate::math::factorial(a) * crate::math::factorial(b))
}

/// `v₀ + ((2n+1)/4) h Δv₀ + h² Σ_{|α|=4} c_α ∂^α v₀`.
pub fn build_p0(v0: &PhaseSymbol, n: usize, h: f64) -> Result<PhaseSymbol> {
    if h == 0.0 {
        return Ok(v0.clone());
    }
    if !v0.is_zero() && !matches!(v0, PhaseSymbol::Constant(_)) {
        // Fourth derivatives must exist somewhere; probe the origin.
        v0.jet2(0.0, 0.0)?;
    }
    let table = CAlphaTable::new(n);
    let lap = (2.0 * n as f64 + 1.0) / 4.0 * h;
    let mut terms = vec![([0, 0], 1.0), ([2, 0], lap), ([0, 2], lap)];
    for (alpha, c) in &table.entries {
        if alpha[0] + alpha[1] == 4 && *c != 0.0 {
            terms.push((*alpha, h * h * c));
        }
    }
    Ok(PhaseSymbol::DerivativeSum { base: Box::new(v0.clone()), terms })
}

/// `−(h²/4)|∇v₀|²`, the second-order coupling to the neighbouring levels.
pub fn build_q0(v0: &PhaseSymbol, h: f64) -> PhaseSymbol {
    PhaseSymbol::GradSquared { base: Box::new(v0.clone()), coefficient: -0.25 * h * h }
}

/// Base potential together with its corrected symbols.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SiteSymbolFamily {
    /// Base potential.
    pub v0: PhaseSymbol,
    /// Landau index.
    pub n: usize,
    /// Semiclassical parameter.
    pub h: f64,
    /// Linear part.
    pub p0: PhaseSymbol,
    /// Quadratic part.
    pub q0: PhaseSymbol,
}

impl SiteSymbolFamily {
    /// Builds `p₀` and `q₀`.
    pub fn new(v0: PhaseSymbol, n: usize, h: f64) -> Result<Self> {
        if !(h >= 0.0) {
            return Err(Error::invalid("h must be nonnegative"));
        }
        let p0 = build_p0(&v0, n, h)?;
        let q0 = build_q0(&v0, h);
        Ok(SiteSymbolFamily { v0, n, h, p0, q0 })
    }

    /// Same base potential at another `h`.
    pub fn at(&self, h: f64) -> Result<Self> {
        SiteSymbolFamily::new(self.v0.clone(), self.n, h)
    }

    /// `ω p₀ + ω² q₀`.
    pub fn symbol(&self, omega: f64) -> PhaseSymbol {
        if omega == 0.0 {
            return PhaseSymbol::Constant(0.0);
        }
        PhaseSymbol::Sum(vec![self.p0.clone().scaled(omega), self.q0.clone().scaled(omega * omega)])
    }
}

/// Hermite-basis quantization of `ω p₀ + ω² q₀` with `basis` levels.
pub fn site_operator(family: &SiteSymbolFamily, omega: f64, basis: usize) -> Result<QuantOperator> {
    if !(omega.abs() <= 1.0) {
        return Err(Error::invalid("coupling must lie in [-1, 1]"));
    }
    quantize_hermite(&family.symbol(omega), family.h, basis, default_quad_order(basis))
}

/// Spectrum of `p̂₀`, descending.
///
/// Radial symbols are diagonal in the Hermite basis, so levels `k ≤ 60` come
/// from the Laguerre form; other symbols are diagonalized on 80 levels.
pub fn p0_spectrum(family: &SiteSymbolFamily) -> Result<Vec<f64>> {
    if let Some(profile) = family.p0.as_radial() {
        let mut out = Vec::with_capacity(RADIAL_LEVELS + 1);
        for k in 0..=RADIAL_LEVELS {
            out.push(radial_eig_laguerre(&profile, family.h, k)?);
        }
        out.sort_by(|a, b| b.total_cmp(a));
        return Ok(out);
    }
    let op = quantize_hermite(&family.p0, family.h, NONRADIAL_BASIS, default_quad_order(NONRADIAL_BASIS))?;
    eigvals(&op.matrix)
}

/// Outcome of the spectral gap check at one `h`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GapReport {
    /// Semiclassical parameter.
    pub h: f64,
    /// Threshold.
    pub b0: f64,
    /// Required gap constant.
    pub kappa: f64,
    /// Minimum gap over `h` among eigenvalues `≥ b₀`; `None` with fewer than two.
    pub kappa_observed: Option<f64>,
    /// No two eigenvalues `≥ b₀` within [`SIMPLICITY_TOL`].
    pub simple: bool,
    /// `simple` and `kappa_observed ≥ kappa`.
    pub pass: bool,
    /// Eigenvalues `≥ b₀`, descending.
    pub eigenvalues: Vec<f64>,
}

/// Gap report for one precomputed spectrum.
pub fn gap_report(spectrum: &[f64], h: f64, b0: f64, kappa: f64) -> GapReport {
    let mut above: Vec<f64> = spectrum.iter().copied().filter(|&e| e >= b0).collect();
    above.sort_by(|a, b| b.total_cmp(a));
    let min_gap = above.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    let simple = !(min_gap <= SIMPLICITY_TOL);
    let kappa_observed = (above.len() >= 2).then(|| min_gap / h);
    let pass = simple && kappa_observed.map_or(true, |k| k >= kappa);
    GapReport { h, b0, kappa, kappa_observed, simple, pass, eigenvalues: above }
}

/// Gap reports for `p̂₀` at each `h`.
pub fn check_gap_assumption(v0: &PhaseSymbol, n: usize, b0: f64, kappa: f64, hs: &[f64]) -> Result<Vec<GapReport>> {
    if !(b0 > 0.0 && b0 < 1.0) || !(kappa > 0.0) {
        return Err(Error::invalid("need 0 < b0 < 1 and kappa > 0"));
    }
    hs.iter()
        .map(|&h| {
            let fam = SiteSymbolFamily::new(v0.clone(), n, h)?;
            Ok(gap_report(&p0_spectrum(&fam)?, h, b0, kappa))
        })
        .collect()
}

/// Ratio bound between the largest and smallest envelope constant.
pub const ENVELOPE_STABILITY: f64 = 1.5;

/// Envelope constants for `μ_k(h) ≈ e^{-(2k+1)h}(1 − (2n+1)h)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnvelopeReport {
    /// Landau index.
    pub n: usize,
    /// `(h, C(h), k_max)` with `C(h) = max_k |μ_k e^{(2k+1)h} − (1 − (2n+1)h)| / h²`.
    pub constants: Vec<(f64, f64, usize)>,
    /// Same maximum restricted to `k ≤ 2`, where the envelope is uniform.
    pub fixed_level_constants: Vec<(f64, f64)>,
    /// `max C / min C ≤` [`ENVELOPE_STABILITY`].
    pub stable: bool,
}

/// Checks the Gaussian eigenvalue envelope over `k` with `(2k+1)h ≤ window`.
pub fn gaussian_envelope(n: usize, hs: &[f64], window: f64) -> Result<EnvelopeReport> {
    let v0 = PhaseSymbol::Gaussian { z: 1.0 };
    let mut constants = Vec::new();
    let mut fixed = Vec::new();
    for &h in hs {
        let fam = SiteSymbolFamily::new(v0.clone(), n, h)?;
        let profile = fam.p0.as_radial().ok_or(Error::DerivativesUnavailable)?;
        let target = 1.0 - (2.0 * n as f64 + 1.0) * h;
        let mut worst = 0.0_f64;
        let mut worst_fixed = 0.0_f64;
        let mut k = 0;
        while (2.0 * k as f64 + 1.0) * h <= window {
            let mu = radial_eig_laguerre(&profile, h, k)?;
            let dev = (mu * crate::math::exp((2.0 * k as f64 + 1.0) * h) - target).abs() / (h * h);
            worst = worst.max(dev);
            if k <= 2 {
                worst_fixed = worst_fixed.max(dev);
            }
            k += 1;
        }
        constants.push((h, worst, k.saturating_sub(1)));
        fixed.push((h, worst_fixed));
    }
    let hi = constants.iter().map(|c| c.1).fold(0.0_f64, f64::max);
    let lo = constants.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let stable = lo > 0.0 && hi / lo <= ENVELOPE_STABILITY;
    Ok(EnvelopeReport { n, constants, fixed_level_constants: fixed, stable })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_and_fourth_order_coefficients() {
        for n in 0..6 {
            let nf = n as f64;
            assert_eq!(compute_c_alpha(n, [0, 0]), 1.0);
            assert!((compute_c_alpha(n, [2, 0]) - (2.0 * nf + 1.0) / 4.0).abs() < 1e-13);
            assert!((compute_c_alpha(n, [0, 2]) - (2.0 * nf + 1.0) / 4.0).abs() < 1e-13);
            let c4 = (2.0 * nf * nf + 2.0 * nf + 1.0) / 32.0;
            assert!((compute_c_alpha(n, [4, 0]) - c4).abs() < 1e-13);
            assert!((compute_c_alpha(n, [0, 4]) - c4).abs() < 1e-13);
            assert!((compute_c_alpha(n, [2, 2]) - 2.0 * c4).abs() < 1e-13);
        }
    }

    #[test]
    fn p0_at_origin_for_gaussian() {
        let p0 = build_p0(&PhaseSymbol::Gaussian { z: 1.0 }, 0, 0.1).unwrap();
        // Δe^{-q} = −4 and Δ²e^{-q} = 32 at the origin; c₄₀ = 1/32.
        let expect = 1.0 - 0.1 + 0.01 * 32.0 / 32.0;
        assert!((p0.eval(0.0, 0.0).unwrap() - expect).abs() < 1e-12);
    }
}
