//! Heap-backed square complex matrices of small dimension (≤ 16), with the
//! pieces the dilation needs: a Hermitian eigensolver and an inverse.

use std::ops::{Index, IndexMut, Mul, Sub};

use crate::qutrit::Mat;
use crate::{Error, Result, C64};

pub const MAX_DIM: usize = 16;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct MatN {
    n: usize,
    data: Vec<C64>,
}

impl MatN {
    pub fn zeros(n: usize) -> Self {
        MatN { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        MatN { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        MatN { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn diag_real(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i].into() } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale_re(&self, s: f64) -> Self {
        MatN { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &MatN) -> f64 {
        (self - other).max_abs()
    }

    pub fn unitarity_defect(&self) -> f64 {
        (&self.dagger() * self).max_abs_diff(&Self::identity(self.n))
    }

    /// `rows × cols` sub-block starting at `(row0, col0)`.
    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Rect {
        Rect::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    /// Determinant and inverse by Gauss-Jordan elimination with partial
    /// pivoting.
    pub fn det_and_inverse(&self) -> (C64, Option<MatN>) {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap();
            if a[(pivot, col)].norm() == 0.0 {
                return (ZERO, None);
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[(col, col)];
            det *= p;
            for j in 0..n {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for row in (0..n).filter(|&r| r != col) {
                let f = a[(row, col)];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[(col, j)], inv[(col, j)]);
                    a[(row, j)] -= f * ac;
                    inv[(row, j)] -= f * ic;
                }
            }
        }
        (det, Some(inv))
    }

    pub fn det(&self) -> C64 {
        self.det_and_inverse().0
    }

    /// Inverse, refusing matrices with `|det| ≤ tol`.
    pub fn inverse(&self, tol: f64) -> Result<MatN> {
        match self.det_and_inverse() {
            (det, Some(inv)) if det.norm() > tol => Ok(inv),
            (det, _) => Err(Error::Singular(det.norm())),
        }
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Eigenvalues are returned in descending order, with the
    /// matching eigenvectors as the columns of the returned matrix.
    ///
    /// Only the Hermitian part of `self` is used.
    pub fn eigh(&self) -> (Vec<f64>, MatN) {
        let n = self.n;
        let mut a = Self::from_fn(n, |i, j| 0.5 * (self[(i, j)] + self[(j, i)].conj()));
        let mut v = Self::identity(n);
        let scale = a.max_abs().max(f64::MIN_POSITIVE);

        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum();
            if off.sqrt() <= 1e-17 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let g = a[(p, q)];
                    let b = g.norm();
                    if b <= 1e-300 {
                        continue;
                    }
                    // Phase the (p, q) entry to the real axis, then apply a real
                    // Jacobi rotation.
                    let phase = (g / b).conj();
                    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let gpp = C64::from(c);
                    let gpq = C64::from(s);
                    let gqp = -phase * s;
                    let gqq = phase * c;

                    for k in 0..n {
                        let (akp, akq) = (a[(k, p)], a[(k, q)]);
                        a[(k, p)] = akp * gpp + akq * gqp;
                        a[(k, q)] = akp * gpq + akq * gqq;
                        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                        v[(k, p)] = vkp * gpp + vkq * gqp;
                        v[(k, q)] = vkp * gpq + vkq * gqq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                    }
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    a[(p, p)] = a[(p, p)].re.into();
                    a[(q, q)] = a[(q, q)].re.into();
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| a[(y, y)].re.total_cmp(&a[(x, x)].re));
        let values = order.iter().map(|&k| a[(k, k)].re).collect();
        let vectors = Self::from_fn(n, |i, j| v[(i, order[j])]);
        (values, vectors)
    }

    /// Largest singular value, from the top eigenvalue of `A†A`.
    pub fn sigma_max(&self) -> f64 {
        let (vals, _) = (&self.dagger() * self).eigh();
        vals.first().copied().unwrap_or(0.0).max(0.0).sqrt()
    }
}

impl Index<(usize, usize)> for MatN {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for MatN {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &MatN {
    type Output = MatN;
    fn mul(self, rhs: &MatN) -> MatN {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        MatN::from_fn(n, |i, j| (0..n).map(|k| self[(i, k)] * rhs[(k, j)]).sum())
    }
}

impl Sub for &MatN {
    type Output = MatN;
    fn sub(self, rhs: &MatN) -> MatN {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        MatN {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<const N: usize> From<&Mat<N>> for MatN {
    fn from(m: &Mat<N>) -> Self {
        MatN::from_fn(N, |i, j| m.0[i][j])
    }
}

/// Rectangular helper for the off-diagonal blocks of a dilation.
#[derive(Clone, Debug, PartialEq)]
pub struct Rect {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C64>,
}

impl Rect {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Rect { rows, cols, data }
    }

    pub fn dagger(&self) -> Rect {
        Rect::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &Rect) -> Rect {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Rect::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * rhs[(k, j)]).sum()
        })
    }

    pub fn scale(&self, z: C64) -> Rect {
        Rect { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * z).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl From<&MatN> for Rect {
    fn from(m: &MatN) -> Self {
        Rect::from_fn(m.n, m.n, |i, j| m[(i, j)])
    }
}

impl Index<(usize, usize)> for Rect {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}
