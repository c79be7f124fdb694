//! Real symbols on the phase plane `(y, η)`.
//!
//! Radial symbols are `Ψ(q)` with `q = y² + η²`. Derivatives through fourth
//! order come from Taylor jets, never from differencing.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::jet::{Jet, Jet2};
use crate::math::{exp, ln, sqrt};
use crate::{Error, Result};

/// Values below this are treated as numerically absent when sizing supports.
pub const NEGLIGIBLE: f64 = 1e-17;

/// Multi-index `(α₁, α₂)` for `∂_y^{α₁} ∂_η^{α₂}`.
pub type MultiIndex = [usize; 2];

/// Profile `Ψ` on `[0, ∞)`, evaluated at `u = y² + η²`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RadialProfile {
    /// `e^{-z u}`.
    Exp {
        /// Decay rate.
        z: f64,
    },
    /// `χ(u) e^{-z u}` with `χ = 1` on `[0, start]` and `0` beyond `end`.
    CutoffExp {
        /// Decay rate.
        z: f64,
        /// End of the plateau.
        start: f64,
        /// Start of the zero region.
        end: f64,
    },
    /// Smooth bump supported in `(lo, hi)`, equal to 1 at the midpoint.
    Bump {
        /// Left edge.
        lo: f64,
        /// Right edge.
        hi: f64,
    },
    /// `Σ c_i u^i`.
    Poly(Vec<f64>),
    /// `factor · Ψ`.
    Scaled(Box<RadialProfile>, f64),
    /// `Σ Ψ_i`.
    Sum(Vec<RadialProfile>),
    /// `Ψ + a·ΔΨ + b·Δ²Ψ` read as a profile:
    /// `ΔΨ = 4Ψ' + 4uΨ''`, `Δ²Ψ = 32Ψ'' + 64uΨ''' + 16u²Ψ''''`.
    Corrected {
        /// Profile being corrected.
        base: Box<RadialProfile>,
        /// Laplacian coefficient.
        a: f64,
        /// Bi-Laplacian coefficient.
        b: f64,
    },
    /// `c·|∇Ψ(q)|² = 4c·uΨ'(u)²`.
    GradSquared {
        /// Profile being differentiated.
        base: Box<RadialProfile>,
        /// Coefficient `c`.
        c: f64,
    },
}

/// `e^{-1/t}` for `t > 0`, else 0, as a jet in the underlying variable.
fn smooth_edge(t: Jet) -> Jet {
    if t.value() <= 2e-3 {
        return Jet::constant(0.0);
    }
    (-t.recip()).exp()
}

/// Smooth step: 0 for `t ≤ 0`, 1 for `t ≥ 1`.
pub(crate) fn smooth_step(t: Jet) -> Jet {
    let t0 = t.value();
    if t0 <= 0.0 {
        return Jet::constant(0.0);
    }
    if t0 >= 1.0 {
        return Jet::constant(1.0);
    }
    let f = smooth_edge(t);
    let g = smooth_edge(Jet::constant(1.0) - t);
    f.div(f + g)
}

impl RadialProfile {
    /// Taylor jet at `u0`.
    pub fn jet(&self, u0: f64) -> Result<Jet> {
        Ok(match self {
            RadialProfile::Exp { z } => Jet::variable(u0).scale(-z).exp(),
            RadialProfile::CutoffExp { z, start, end } => {
                if u0 >= *end {
                    Jet::constant(0.0)
                } else {
                    let t = (Jet::constant(*end) - Jet::variable(u0)).scale(1.0 / (end - start));
                    smooth_step(t) * Jet::variable(u0).scale(-z).exp()
                }
            }
            RadialProfile::Bump { lo, hi } => {
                if u0 <= *lo || u0 >= *hi {
                    Jet::constant(0.0)
                } else {
                    let s = (Jet::variable(u0) - Jet::constant(*lo)).scale(1.0 / (hi - lo));
                    let peak = exp(-4.0);
                    (smooth_edge(s) * smooth_edge(Jet::constant(1.0) - s)).scale(1.0 / peak)
                }
            }
            RadialProfile::Poly(c) => {
                let x = Jet::variable(u0);
                let mut acc = Jet::constant(0.0);
                for &ci in c.iter().rev() {
                    acc = acc * x + Jet::constant(ci);
                }
                acc
            }
            RadialProfile::Scaled(p, f) => p.jet(u0)?.scale(*f),
            RadialProfile::Sum(ps) => {
                let mut acc = Jet::constant(0.0);
                for p in ps {
                    acc = acc + p.jet(u0)?;
                }
                acc
            }
            RadialProfile::Corrected { .. } | RadialProfile::GradSquared { .. } => {
                return Err(Error::DerivativesUnavailable)
            }
        })
    }

    /// `Ψ(u)`.
    pub fn value(&self, u: f64) -> Result<f64> {
        let v = match self {
            RadialProfile::Corrected { base, a, b } => {
                let j = base.jet(u)?;
                let d = |k| j.derivative(k);
                d(0) + a * (4.0 * d(1) + 4.0 * u * d(2))
                    + b * (32.0 * d(2) + 64.0 * u * d(3) + 16.0 * u * u * d(4))
            }
            RadialProfile::GradSquared { base, c } => {
                let d1 = base.jet(u)?.derivative(1);
                4.0 * c * u * d1 * d1
            }
            RadialProfile::Scaled(p, f) => f * p.value(u)?,
            RadialProfile::Sum(ps) => {
                let mut s = 0.0;
                for p in ps {
                    s += p.value(u)?;
                }
                s
            }
            _ => self.jet(u)?.value(),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::ProfileNotEvaluable)
        }
    }

    /// `u` beyond which the profile is below [`NEGLIGIBLE`]; `None` if it never decays.
    pub fn extent(&self) -> Option<f64> {
        match self {
            RadialProfile::Exp { z } => (*z > 0.0).then(|| -ln(NEGLIGIBLE) / z),
            RadialProfile::CutoffExp { z, end, .. } => {
                Some(if *z > 0.0 { end.min(-ln(NEGLIGIBLE) / z) } else { *end })
            }
            RadialProfile::Bump { hi, .. } => Some(*hi),
            RadialProfile::Poly(c) => c.iter().all(|x| *x == 0.0).then_some(0.0),
            RadialProfile::Scaled(p, f) => {
                if *f == 0.0 {
                    Some(0.0)
                } else {
                    p.extent()
                }
            }
            RadialProfile::Sum(ps) => ps.iter().try_fold(0.0_f64, |m, p| p.extent().map(|e| m.max(e))),
            RadialProfile::Corrected { base, .. } | RadialProfile::GradSquared { base, .. } => base.extent(),
        }
    }

    /// True if the profile vanishes identically beyond a finite `u`.
    pub fn compact(&self) -> bool {
        match self {
            RadialProfile::Exp { .. } => false,
            RadialProfile::CutoffExp { .. } | RadialProfile::Bump { .. } => true,
            RadialProfile::Poly(c) => c.iter().all(|x| *x == 0.0),
            RadialProfile::Scaled(p, f) => *f == 0.0 || p.compact(),
            RadialProfile::Sum(ps) => ps.iter().all(|p| p.compact()),
            RadialProfile::Corrected { base, .. } | RadialProfile::GradSquared { base, .. } => base.compact(),
        }
    }
}

/// A real symbol `a(y, η)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PhaseSymbol {
    /// `c`.
    Constant(f64),
    /// `e^{-z q}`.
    Gaussian {
        /// Decay rate.
        z: f64,
    },
    /// `χ(q) e^{-z q}`, plateau to `start`, zero from `end` on.
    CutoffGaussian {
        /// Decay rate.
        z: f64,
        /// End of the plateau.
        start: f64,
        /// Start of the zero region.
        end: f64,
    },
    /// `Ψ(q)` for an arbitrary profile.
    Radial(RadialProfile),
    /// `Σ c_α ∂^α base`.
    DerivativeSum {
        /// Differentiated symbol.
        base: Box<PhaseSymbol>,
        /// `(α, c_α)` pairs.
        terms: Vec<(MultiIndex, f64)>,
    },
    /// `c |∇ base|²`.
    GradSquared {
        /// Differentiated symbol.
        base: Box<PhaseSymbol>,
        /// Coefficient.
        coefficient: f64,
    },
    /// `base(y - j₁, η - j₂)`.
    Shifted {
        /// Unshifted symbol.
        base: Box<PhaseSymbol>,
        /// Lattice offset.
        j: [i32; 2],
    },
    /// `ω · base`.
    Scaled {
        /// Symbol being scaled.
        base: Box<PhaseSymbol>,
        /// Factor.
        factor: f64,
    },
    /// `Σ a_i`.
    Sum(Vec<PhaseSymbol>),
}

/// Axis-aligned box `[y_lo, y_hi] × [η_lo, η_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SupportBox {
    /// Lower `y`.
    pub y_lo: f64,
    /// Upper `y`.
    pub y_hi: f64,
    /// Lower `η`.
    pub eta_lo: f64,
    /// Upper `η`.
    pub eta_hi: f64,
}

impl SupportBox {
    fn centered(r: f64) -> Self {
        SupportBox { y_lo: -r, y_hi: r, eta_lo: -r, eta_hi: r }
    }

    fn union(self, o: SupportBox) -> Self {
        SupportBox {
            y_lo: self.y_lo.min(o.y_lo),
            y_hi: self.y_hi.max(o.y_hi),
            eta_lo: self.eta_lo.min(o.eta_lo),
            eta_hi: self.eta_hi.max(o.eta_hi),
        }
    }

    fn empty() -> Self {
        SupportBox { y_lo: f64::INFINITY, y_hi: -f64::INFINITY, eta_lo: f64::INFINITY, eta_hi: -f64::INFINITY }
    }

    /// True when the box contains no point.
    pub fn is_empty(&self) -> bool {
        !(self.y_lo <= self.y_hi && self.eta_lo <= self.eta_hi)
    }

    /// Largest `|η|` in the box.
    pub fn eta_max(&self) -> f64 {
        self.eta_lo.abs().max(self.eta_hi.abs())
    }
}

impl PhaseSymbol {
    /// Convenience constructor for `Shifted`.
    pub fn shifted(self, j: [i32; 2]) -> Self {
        PhaseSymbol::Shifted { base: Box::new(self), j }
    }

    /// Convenience constructor for `Scaled`.
    pub fn scaled(self, factor: f64) -> Self {
        PhaseSymbol::Scaled { base: Box::new(self), factor }
    }

    /// The profile when the symbol is radial about the origin.
    pub fn as_radial(&self) -> Option<RadialProfile> {
        match self {
            PhaseSymbol::Constant(c) => Some(RadialProfile::Poly(alloc::vec![*c])),
            PhaseSymbol::Gaussian { z } => Some(RadialProfile::Exp { z: *z }),
            PhaseSymbol::CutoffGaussian { z, start, end } => {
                Some(RadialProfile::CutoffExp { z: *z, start: *start, end: *end })
            }
            PhaseSymbol::Radial(p) => Some(p.clone()),
            PhaseSymbol::Scaled { base, factor } => {
                base.as_radial().map(|p| RadialProfile::Scaled(Box::new(p), *factor))
            }
            PhaseSymbol::Sum(xs) => xs.iter().map(|x| x.as_radial()).collect::<Option<Vec<_>>>().map(RadialProfile::Sum),
            PhaseSymbol::GradSquared { base, coefficient } => {
                let p = base.as_radial()?;
                Some(RadialProfile::GradSquared { base: Box::new(p), c: *coefficient })
            }
            PhaseSymbol::DerivativeSum { base, terms } => {
                let p = base.as_radial()?;
                let c = |a: usize, b: usize| {
                    terms.iter().filter(|(m, _)| *m == [a, b]).map(|(_, v)| *v).sum::<f64>()
                };
                // Radial only for combinations of 1, Δ and Δ².
                let ok = terms.iter().all(|(m, _)| matches!(m, [0, 0] | [2, 0] | [0, 2] | [4, 0] | [2, 2] | [0, 4]));
                let a = c(2, 0);
                let b = c(4, 0);
                let tol = 1e-14 * (a.abs() + b.abs() + 1.0);
                if !ok || (c(0, 2) - a).abs() > tol || (c(0, 4) - b).abs() > tol || (c(2, 2) - 2.0 * b).abs() > tol {
                    return None;
                }
                let c0 = c(0, 0);
                let corrected = RadialProfile::Corrected { base: Box::new(p.clone()), a, b };
                Some(if c0 == 1.0 {
                    corrected
                } else {
                    RadialProfile::Sum(alloc::vec![
                        corrected,
                        RadialProfile::Scaled(Box::new(p), c0 - 1.0)
                    ])
                })
            }
            PhaseSymbol::Shifted { base, j } => {
                if *j == [0, 0] {
                    base.as_radial()
                } else {
                    None
                }
            }
        }
    }

    /// `a(y, η)`.
    pub fn eval(&self, y: f64, eta: f64) -> Result<f64> {
        match self {
            PhaseSymbol::Constant(c) => Ok(*c),
            PhaseSymbol::Gaussian { z } => Ok(exp(-z * (y * y + eta * eta))),
            PhaseSymbol::CutoffGaussian { z, start, end } => {
                RadialProfile::CutoffExp { z: *z, start: *start, end: *end }.value(y * y + eta * eta)
            }
            PhaseSymbol::Radial(p) => p.value(y * y + eta * eta),
            PhaseSymbol::DerivativeSum { base, terms } => {
                let j = base.jet2(y, eta)?;
                Ok(terms.iter().map(|(m, c)| c * j.partial(m[0], m[1])).sum())
            }
            PhaseSymbol::GradSquared { base, coefficient } => {
                let j = base.jet2(y, eta)?;
                let (gy, ge) = (j.partial(1, 0), j.partial(0, 1));
                Ok(coefficient * (gy * gy + ge * ge))
            }
            PhaseSymbol::Shifted { base, j } => base.eval(y - j[0] as f64, eta - j[1] as f64),
            PhaseSymbol::Scaled { base, factor } => Ok(factor * base.eval(y, eta)?),
            PhaseSymbol::Sum(xs) => {
                let mut s = 0.0;
                for x in xs {
                    s += x.eval(y, eta)?;
                }
                Ok(s)
            }
        }
    }

    /// Bivariate jet through fourth order at `(y, η)`.
    pub fn jet2(&self, y: f64, eta: f64) -> Result<Jet2> {
        match self {
            PhaseSymbol::Constant(c) => Ok(Jet2::constant(*c)),
            PhaseSymbol::Gaussian { z } => {
                let q = Jet2::radius_squared(y, eta);
                Ok(q.compose(&Jet::variable(q.value()).scale(-z).exp()))
            }
            PhaseSymbol::CutoffGaussian { z, start, end } => {
                let q = Jet2::radius_squared(y, eta);
                let p = RadialProfile::CutoffExp { z: *z, start: *start, end: *end };
                Ok(q.compose(&p.jet(q.value())?))
            }
            PhaseSymbol::Radial(p) => {
                let q = Jet2::radius_squared(y, eta);
                Ok(q.compose(&p.jet(q.value())?))
            }
            PhaseSymbol::DerivativeSum { .. } | PhaseSymbol::GradSquared { .. } => Err(Error::DerivativesUnavailable),
            PhaseSymbol::Shifted { base, j } => base.jet2(y - j[0] as f64, eta - j[1] as f64),
            PhaseSymbol::Scaled { base, factor } => Ok(base.jet2(y, eta)?.scale(*factor)),
            PhaseSymbol::Sum(xs) => {
                let mut acc = Jet2::zero();
                for x in xs {
                    acc.axpy(1.0, &x.jet2(y, eta)?);
                }
                Ok(acc)
            }
        }
    }

    /// Partial derivative `∂^α a(y, η)` for `|α| ≤ 4`.
    pub fn partial(&self, alpha: MultiIndex, y: f64, eta: f64) -> Result<f64> {
        if alpha[0] + alpha[1] > crate::jet::JET2_DEGREE {
            return Err(Error::DerivativesUnavailable);
        }
        Ok(self.jet2(y, eta)?.partial(alpha[0], alpha[1]))
    }

    /// Box outside which the symbol is below [`NEGLIGIBLE`].
    ///
    /// `None` for symbols that do not decay (constants, polynomials).
    pub fn extent(&self) -> Option<SupportBox> {
        match self {
            PhaseSymbol::Constant(c) => (*c == 0.0).then(SupportBox::empty),
            PhaseSymbol::Gaussian { z } => RadialProfile::Exp { z: *z }.extent().map(|u| SupportBox::centered(sqrt(u))),
            PhaseSymbol::CutoffGaussian { z, start, end } => RadialProfile::CutoffExp { z: *z, start: *start, end: *end }
                .extent()
                .map(|u| SupportBox::centered(sqrt(u))),
            PhaseSymbol::Radial(p) => p.extent().map(|u| SupportBox::centered(sqrt(u))),
            PhaseSymbol::DerivativeSum { base, .. } | PhaseSymbol::GradSquared { base, .. } => base.extent(),
            PhaseSymbol::Shifted { base, j } => base.extent().map(|b| {
                if b.is_empty() {
                    b
                } else {
                    SupportBox {
                        y_lo: b.y_lo + j[0] as f64,
                        y_hi: b.y_hi + j[0] as f64,
                        eta_lo: b.eta_lo + j[1] as f64,
                        eta_hi: b.eta_hi + j[1] as f64,
                    }
                }
            }),
            PhaseSymbol::Scaled { base, factor } => {
                if *factor == 0.0 {
                    Some(SupportBox::empty())
                } else {
                    base.extent()
                }
            }
            PhaseSymbol::Sum(xs) => xs.iter().try_fold(SupportBox::empty(), |acc, x| x.extent().map(|b| acc.union(b))),
        }
    }

    /// True when the symbol is identically zero by construction.
    pub fn is_zero(&self) -> bool {
        match self {
            PhaseSymbol::Constant(c) => *c == 0.0,
            PhaseSymbol::Scaled { base, factor } => *factor == 0.0 || base.is_zero(),
            PhaseSymbol::Sum(xs) => xs.iter().all(|x| x.is_zero()),
            PhaseSymbol::Shifted { base, .. } => base.is_zero(),
            PhaseSymbol::DerivativeSum { base, terms } => base.is_zero() || terms.iter().all(|t| t.1 == 0.0),
            PhaseSymbol::GradSquared { base, coefficient } => *coefficient == 0.0 || base.is_zero(),
            _ => false,
        }
    }

    /// True when `a(y, -η) = a(y, η)` holds by construction.
    pub fn even_in_eta(&self) -> bool {
        match self {
            PhaseSymbol::Constant(_)
            | PhaseSymbol::Gaussian { .. }
            | PhaseSymbol::CutoffGaussian { .. }
            | PhaseSymbol::Radial(_) => true,
            PhaseSymbol::DerivativeSum { base, terms } => base.even_in_eta() && terms.iter().all(|(m, _)| m[1] % 2 == 0),
            PhaseSymbol::GradSquared { base, .. } => base.even_in_eta(),
            PhaseSymbol::Shifted { base, j } => j[1] == 0 && base.even_in_eta(),
            PhaseSymbol::Scaled { base, .. } => base.even_in_eta(),
            PhaseSymbol::Sum(xs) => xs.iter().all(|x| x.even_in_eta()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_partial(s: &PhaseSymbol, a: MultiIndex, y: f64, e: f64) -> f64 {
        // Central differences, step 1e-4 in each direction.
        let h = 1e-4;
        match a {
            [1, 0] => (s.eval(y + h, e).unwrap() - s.eval(y - h, e).unwrap()) / (2.0 * h),
            [0, 1] => (s.eval(y, e + h).unwrap() - s.eval(y, e - h).unwrap()) / (2.0 * h),
            [2, 0] => (s.eval(y + h, e).unwrap() - 2.0 * s.eval(y, e).unwrap() + s.eval(y - h, e).unwrap()) / (h * h),
            _ => unreachable!(),
        }
    }

    #[test]
    fn jets_match_finite_differences() {
        let syms = [
            PhaseSymbol::Gaussian { z: 1.3 },
            PhaseSymbol::CutoffGaussian { z: 1.0, start: 0.3, end: 1.0 },
            PhaseSymbol::Radial(RadialProfile::Bump { lo: 0.2, hi: 0.9 }),
        ];
        for s in &syms {
            for &(y, e) in &[(0.3, 0.2), (-0.5, 0.6), (0.1, -0.7)] {
                for a in [[1, 0], [0, 1], [2, 0]] {
                    let exact = s.partial(a, y, e).unwrap();
                    let fd = fd_partial(s, a, y, e);
                    assert!((exact - fd).abs() < 1e-6 * (1.0 + exact.abs()), "{s:?} {a:?}: {exact} vs {fd}");
                }
            }
        }
    }

    #[test]
    fn cutoff_plateau_and_zero() {
        let s = PhaseSymbol::CutoffGaussian { z: 1.0, start: 0.3, end: 1.0 };
        assert!((s.eval(0.3, 0.3).unwrap() - exp(-0.18)).abs() < 1e-15);
        assert_eq!(s.eval(0.8, 0.8).unwrap(), 0.0);
    }

    #[test]
    fn derivative_sum_of_laplacian_pattern_is_radial() {
        let base = PhaseSymbol::Gaussian { z: 1.0 };
        let s = PhaseSymbol::DerivativeSum {
            base: Box::new(base),
            terms: alloc::vec![([0, 0], 1.0), ([2, 0], 0.25), ([0, 2], 0.25)],
        };
        let p = s.as_radial().unwrap();
        let (y, e) = (0.4, 0.3);
        assert!((p.value(y * y + e * e).unwrap() - s.eval(y, e).unwrap()).abs() < 1e-13);
    }
}
