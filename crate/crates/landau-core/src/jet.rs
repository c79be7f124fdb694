//! Truncated Taylor arithmetic.
//!
//! [`Jet`] carries `f(u0 + t) = Σ c_k t^k` through order [`JET_ORDER`];
//! [`Jet2`] carries a bivariate expansion through total degree [`JET2_DEGREE`].
//! Derivatives of symbols are read off these coefficients, so they are exact up
//! to rounding.

use core::ops::{Add, Mul, Neg, Sub};

use crate::math::exp;

/// Highest Taylor order tracked by [`Jet`].
pub const JET_ORDER: usize = 6;
const NJ: usize = JET_ORDER + 1;

/// Univariate truncated Taylor series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    /// Taylor coefficients; `c[k] = f^(k)(u0) / k!`.
    pub c: [f64; NJ],
}

impl Jet {
    /// The constant `a`.
    pub fn constant(a: f64) -> Self {
        let mut c = [0.0; NJ];
        c[0] = a;
        Jet { c }
    }

    /// The identity `u0 + t`.
    pub fn variable(u0: f64) -> Self {
        let mut c = [0.0; NJ];
        c[0] = u0;
        c[1] = 1.0;
        Jet { c }
    }

    /// Value at the expansion point.
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for i in 2..=k {
            f *= i as f64;
        }
        self.c[k] * f
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(self, s: f64) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|x| *x *= s);
        Jet { c }
    }

    /// `exp` of the series.
    pub fn exp(self) -> Self {
        // e' = e * f'  =>  k e_k = Σ_{j=1..k} j f_j e_{k-j}
        let mut e = [0.0; NJ];
        e[0] = exp(self.c[0]);
        for k in 1..NJ {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * self.c[j] * e[k - j];
            }
            e[k] = s / k as f64;
        }
        Jet { c: e }
    }

    /// `1 / f`; the value must be nonzero.
    pub fn recip(self) -> Self {
        let mut r = [0.0; NJ];
        r[0] = 1.0 / self.c[0];
        for k in 1..NJ {
            let mut s = 0.0;
            for j in 1..=k {
                s += self.c[j] * r[k - j];
            }
            r[k] = -s * r[0];
        }
        Jet { c: r }
    }

    /// `f / g`.
    pub fn div(self, g: Jet) -> Self {
        self * g.recip()
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(o.c) {
            *x += y;
        }
        Jet { c }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; NJ];
        for i in 0..NJ {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..NJ - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }
}

/// Highest total degree tracked by [`Jet2`].
pub const JET2_DEGREE: usize = 4;
const N2: usize = JET2_DEGREE + 1;

/// Bivariate truncated Taylor series in `(dy, dη)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    /// `c[i][j]` multiplies `dy^i dη^j`; entries with `i + j > 4` stay zero.
    pub c: [[f64; N2]; N2],
}

impl Jet2 {
    /// The zero series.
    pub fn zero() -> Self {
        Jet2 { c: [[0.0; N2]; N2] }
    }

    /// The constant `a`.
    pub fn constant(a: f64) -> Self {
        let mut j = Self::zero();
        j.c[0][0] = a;
        j
    }

    /// Value at the expansion point.
    pub fn value(&self) -> f64 {
        self.c[0][0]
    }

    /// Partial derivative `∂_y^a ∂_η^b` at the expansion point (`a + b ≤ 4`).
    pub fn partial(&self, a: usize, b: usize) -> f64 {
        if a + b > JET2_DEGREE {
            return f64::NAN;
        }
        let fa: f64 = (1..=a).map(|i| i as f64).product();
        let fb: f64 = (1..=b).map(|i| i as f64).product();
        self.c[a][b] * fa * fb
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(mut self, s: f64) -> Self {
        self.c.iter_mut().flatten().for_each(|x| *x *= s);
        self
    }

    /// Truncated product.
    pub fn mul(&self, o: &Jet2) -> Jet2 {
        let mut r = Jet2::zero();
        for i in 0..N2 {
            for j in 0..N2 - i {
                let a = self.c[i][j];
                if a == 0.0 {
                    continue;
                }
                for k in 0..N2 - i - j {
                    for l in 0..N2 - i - j - k {
                        r.c[i + k][j + l] += a * o.c[k][l];
                    }
                }
            }
        }
        r
    }

    /// Adds `s * o` in place.
    pub fn axpy(&mut self, s: f64, o: &Jet2) {
        for i in 0..N2 {
            for j in 0..N2 {
                self.c[i][j] += s * o.c[i][j];
            }
        }
    }

    /// Expansion of `q = y² + η²` around `(y0, η0)`.
    pub fn radius_squared(y0: f64, e0: f64) -> Self {
        let mut j = Self::zero();
        j.c[0][0] = y0 * y0 + e0 * e0;
        j.c[1][0] = 2.0 * y0;
        j.c[0][1] = 2.0 * e0;
        j.c[2][0] = 1.0;
        j.c[0][2] = 1.0;
        j
    }

    /// Composes a univariate expansion `f` taken at this series' value.
    pub fn compose(&self, f: &Jet) -> Jet2 {
        let mut d = *self;
        d.c[0][0] = 0.0;
        let mut out = Jet2::constant(f.c[0]);
        let mut pow = Jet2::constant(1.0);
        for m in 1..N2 {
            pow = pow.mul(&d);
            out.axpy(f.c[m], &pow);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_linear() {
        let j = Jet::variable(0.3).scale(-2.0).exp();
        for k in 0..=JET_ORDER {
            let exact = libm::pow(-2.0, k as f64) * libm::exp(-0.6);
            assert!((j.derivative(k) - exact).abs() < 1e-12 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn recip_of_linear() {
        // 1/u at u = 2: derivatives (-1)^k k! / 2^(k+1)
        let j = Jet::variable(2.0).recip();
        for k in 0..=JET_ORDER {
            let fk: f64 = (1..=k).map(|i| i as f64).product();
            let exact = if k % 2 == 0 { 1.0 } else { -1.0 } * fk / libm::pow(2.0, (k + 1) as f64);
            assert!((j.derivative(k) - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn bilaplacian_of_gaussian() {
        // Δ²e^{-q} = (32 - 64q + 16q²)e^{-q}
        let (y, e) = (0.4, -0.7);
        let q = Jet2::radius_squared(y, e);
        let f = Jet::variable(q.value()).scale(-1.0).exp();
        let g = q.compose(&f);
        let bil = g.partial(4, 0) + 2.0 * g.partial(2, 2) + g.partial(0, 4);
        let qq = y * y + e * e;
        let exact = (32.0 - 64.0 * qq + 16.0 * qq * qq) * libm::exp(-qq);
        assert!((bil - exact).abs() < 1e-12);
    }
}
