//! Dense eigensolvers and matrix helpers.
//!
//! Hermitian matrices are diagonalized through the real-symmetric embedding
//! `[[A, -B], [B, A]]` of `A + iB`, which doubles every eigenvalue; pairs are
//! then merged. One cyclic Jacobi solver serves both cases.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::math::{hypot, sqrt};
use crate::{Error, Result};

/// Real dense matrix.
pub type RMat = DMatrix<f64>;
/// Complex dense matrix.
pub type CMat = DMatrix<Complex64>;

/// Sweep budget for cyclic Jacobi.
pub const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a real symmetric or complex Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigh {
    /// Eigenvalues, descending; ties keep the solver's index order.
    pub values: Vec<f64>,
    /// Matching unit eigenvectors as columns, when requested.
    pub vectors: Option<CMat>,
}

/// Cyclic Jacobi on a symmetric matrix stored row-major.
///
/// Returns unsorted eigenvalues and, when requested, eigenvectors stored as
/// rows of the second buffer (row `k` pairs with value `k`).
fn jacobi_raw(a: &mut [f64], n: usize, want: bool) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut v = if want {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        v
    } else {
        Vec::new()
    };
    let frob = sqrt(a.iter().map(|x| x * x).sum::<f64>());
    if frob == 0.0 || n < 2 {
        return Ok(((0..n).map(|i| a[i * n + i]).collect(), v));
    }
    let skip = 1e-300_f64.max(f64::EPSILON * 1e-3 * frob);
    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if sqrt(off) <= 1e-15 * frob {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= skip {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_finite() {
                    let r = hypot(theta, 1.0);
                    if theta >= 0.0 {
                        1.0 / (theta + r)
                    } else {
                        -1.0 / (-theta + r)
                    }
                } else {
                    0.5 / theta
                };
                if t == 0.0 {
                    continue;
                }
                rotated = true;
                let c = 1.0 / hypot(t, 1.0);
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let np = c * akp - s * akq;
                    let nq = s * akp + c * akq;
                    a[k * n + p] = np;
                    a[p * n + k] = np;
                    a[k * n + q] = nq;
                    a[q * n + k] = nq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if want {
                    let (lo, hi) = v.split_at_mut(q * n);
                    let vp = &mut lo[p * n..p * n + n];
                    let vq = &mut hi[..n];
                    for k in 0..n {
                        let x = vp[k];
                        let y = vq[k];
                        vp[k] = c * x - s * y;
                        vq[k] = s * x + c * y;
                    }
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    Ok(((0..n).map(|i| a[i * n + i]).collect(), v))
}

/// Indices ordering `values` descending, ties by index.
fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    idx
}

/// Eigen-decomposition of a real symmetric matrix (upper triangle mirrored).
pub fn eigh_real(m: &RMat, want_vectors: bool) -> Result<Eigh> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::invalid("matrix must be square"));
    }
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (m[(i, j)] + m[(j, i)]);
        }
    }
    let (vals, vecs) = jacobi_raw(&mut a, n, want_vectors)?;
    let order = descending_order(&vals);
    let values = order.iter().map(|&i| vals[i]).collect();
    let vectors = want_vectors.then(|| {
        CMat::from_fn(n, n, |r, c| Complex64::new(vecs[order[c] * n + r], 0.0))
    });
    Ok(Eigh { values, vectors })
}

/// Eigen-decomposition of a complex Hermitian matrix via the real embedding.
///
/// The input is Hermitized as `(M + M*)/2` first.
pub fn eigh(m: &CMat, want_vectors: bool) -> Result<Eigh> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::invalid("matrix must be square"));
    }
    if is_real(m) {
        return eigh_real(&m.map(|z| z.re), want_vectors);
    }
    let n2 = 2 * n;
    let mut a = vec![0.0; n2 * n2];
    for i in 0..n {
        for j in 0..n {
            let z = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            a[i * n2 + j] = z.re;
            a[(i + n) * n2 + j + n] = z.re;
            a[i * n2 + j + n] = -z.im;
            a[(i + n) * n2 + j] = z.im;
        }
    }
    let (vals, vecs) = jacobi_raw(&mut a, n2, want_vectors)?;
    let order = descending_order(&vals);
    let values: Vec<f64> = (0..n).map(|k| 0.5 * (vals[order[2 * k]] + vals[order[2 * k + 1]])).collect();
    if !want_vectors {
        return Ok(Eigh { values, vectors: None });
    }
    // Clusters of the embedding collapse onto complex eigenspaces of half the
    // dimension; orthonormalize within each cluster to pick a basis.
    let scale = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1e-300);
    let mut out = CMat::zeros(n, n);
    let mut col = 0;
    let mut start = 0;
    while start < n2 {
        let mut end = start + 1;
        while end < n2 && (vals[order[end - 1]] - vals[order[end]]).abs() <= 1e-9 * scale {
            end += 1;
        }
        let need = (end - start) / 2;
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(need);
        for &r in &order[start..end] {
            if basis.len() == need {
                break;
            }
            let mut x: Vec<Complex64> =
                (0..n).map(|i| Complex64::new(vecs[r * n2 + i], vecs[r * n2 + i + n])).collect();
            for b in &basis {
                let proj: Complex64 = b.iter().zip(&x).map(|(bi, xi)| bi.conj() * xi).sum();
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= proj * bi;
                }
            }
            let nrm = sqrt(x.iter().map(|z| z.norm_sqr()).sum::<f64>());
            if nrm > 0.5 {
                for xi in x.iter_mut() {
                    *xi /= nrm;
                }
                basis.push(x);
            }
        }
        if basis.len() != need {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
        for b in basis {
            for (i, z) in b.into_iter().enumerate() {
                out[(i, col)] = z;
            }
            col += 1;
        }
        start = end;
    }
    Ok(Eigh { values, vectors: Some(out) })
}

/// Eigenvalues of a Hermitian matrix, descending.
///
/// Eigenvalue-only queries go through Householder tridiagonalization and
/// implicit QR, which is far cheaper than Jacobi on the doubled embedding.
pub fn eigvals(m: &CMat) -> Result<Vec<f64>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::invalid("matrix must be square"));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut v: Vec<f64> = if is_real(m) {
        let r = m.map(|z| z.re);
        let r = (&r + r.transpose()) * 0.5;
        r.symmetric_eigenvalues().iter().copied().collect()
    } else {
        hermitize(m).symmetric_eigenvalues().iter().copied().collect()
    };
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

/// Eigenpairs through nalgebra's tridiagonal QR, values descending.
///
/// Cheaper than [`eigh`] on large matrices; vectors are orthonormal to
/// working precision but degenerate clusters get no special treatment.
pub fn eigh_fast(m: &CMat) -> Result<Eigh> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::invalid("matrix must be square"));
    }
    let e = hermitize(m).symmetric_eigen();
    if e.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| e.eigenvalues[b].total_cmp(&e.eigenvalues[a]));
    let values = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(n, n, |r, c| e.eigenvectors[(r, order[c])]);
    Ok(Eigh { values, vectors: Some(vectors) })
}

/// True when every imaginary part vanishes exactly.
pub fn is_real(m: &CMat) -> bool {
    m.iter().all(|z| z.im == 0.0)
}

/// Largest singular value, from the top eigenvalue of `M* M`.
pub fn spectral_norm(m: &CMat) -> Result<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0.0);
    }
    let g = m.adjoint() * m;
    let top = eigvals(&g)?.first().copied().unwrap_or(0.0);
    Ok(sqrt(top.max(0.0)))
}

/// Frobenius norm.
pub fn frobenius(m: &CMat) -> f64 {
    sqrt(m.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// Largest entrywise deviation from Hermitian symmetry.
pub fn hermitian_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Returns `(M + M*)/2`.
pub fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Lifts a real matrix.
pub fn to_complex(m: &RMat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Hausdorff distance between two finite point sets on the line.
///
/// Two empty sets are at distance 0; one empty set gives infinity.
pub fn hausdorff(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let one_sided = |x: &[f64], y: &[f64]| {
        x.iter()
            .map(|p| y.iter().fold(f64::INFINITY, |m, q| m.min((p - q).abs())))
            .fold(0.0_f64, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e.len() == d.len() - 1`), ascending, by implicit QL.
pub fn tridiagonal_eigenvalues(d: &[f64], e: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if e.len() + 1 != n {
        return Err(Error::invalid("off-diagonal length must be n - 1"));
    }
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e.iter().copied().chain(core::iter::once(0.0)).collect();
    const MAX_ITER: usize = 60;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::NoConvergence { sweeps: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let rr = (d[i] - g) * s + 2.0 * c * b;
                p = s * rr;
                d[i + 1] = g + p;
                g = c * rr - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}
