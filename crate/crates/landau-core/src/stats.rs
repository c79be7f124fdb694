//! Binomial intervals, power-law fits and per-trial seeding.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::math::{ln, sqrt};
use crate::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval `(lo, hi)` for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = k as f64 / nf;
    let z2 = z * z;
    let den = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / den;
    let half = z * sqrt(p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)) / den;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Seed for one trial, a pure function of its coordinates.
pub fn trial_seed(master: u64, cell: u64, trial: u64) -> u64 {
    let mut x = master;
    for v in [cell, trial] {
        x = mix(x ^ mix(v.wrapping_add(0x9e37_79b9_7f4a_7c15)));
    }
    x
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Weighted least squares `y ≈ b₀ + Σ_i b_i x_i`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinearFit {
    /// Intercept followed by one coefficient per regressor.
    pub coefficients: Vec<f64>,
    /// Standard errors in the same order.
    pub std_errors: Vec<f64>,
}

/// Fits rows `(x, y, w)` with `w` the inverse variance of `y`.
///
/// Standard errors come from the weighted normal equations, scaled by the
/// reduced chi-square when there are spare degrees of freedom and it exceeds one.
pub fn weighted_least_squares(rows: &[(Vec<f64>, f64, f64)]) -> Result<LinearFit> {
    let p = rows.first().map_or(0, |r| r.0.len()) + 1;
    if rows.len() < p {
        return Err(Error::InsufficientCells { found: rows.len() });
    }
    let x = DMatrix::from_fn(rows.len(), p, |i, j| if j == 0 { 1.0 } else { rows[i].0[j - 1] });
    let y = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let w = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.2));
    let mut xtw = x.transpose();
    for (j, wj) in w.iter().enumerate() {
        xtw.column_mut(j).scale_mut(*wj);
    }
    let normal = &xtw * &x;
    let cov = normal.try_inverse().ok_or(Error::InsufficientCells { found: rows.len() })?;
    let beta = &cov * (&xtw * &y);
    let resid = &y - &x * &beta;
    let dof = rows.len() - p;
    let chi2: f64 = resid.iter().zip(w.iter()).map(|(r, wi)| wi * r * r).sum();
    let inflate = if dof > 0 { (chi2 / dof as f64).max(1.0) } else { 1.0 };
    Ok(LinearFit {
        coefficients: beta.iter().copied().collect(),
        std_errors: (0..p).map(|i| sqrt(cov[(i, i)] * inflate)).collect(),
    })
}

/// Inverse variance of `ln p̂` from a Wilson interval.
pub fn log_weight(lo: f64, hi: f64) -> f64 {
    if lo <= 0.0 || hi <= lo {
        return 0.0;
    }
    let sd = (ln(hi) - ln(lo)) / (2.0 * Z95);
    1.0 / (sd * sd)
}
