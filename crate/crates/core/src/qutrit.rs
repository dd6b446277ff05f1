//! Dense complex algebra for 2- and 3-level systems.
//!
//! Matrices are small `Copy` values stored row-major; every operation returns
//! a new value.

use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix of fixed dimension `N`, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat<const N: usize>(pub [[C64; N]; N]);

pub type Mat2 = Mat<2>;
pub type Mat3 = Mat<3>;

impl<const N: usize> Mat<N> {
    pub const fn zero() -> Self {
        Mat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..N {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn diag(d: [C64; N]) -> Self {
        let mut m = Self::zero();
        for (k, z) in d.into_iter().enumerate() {
            m.0[k][k] = z;
        }
        m
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for x in row.iter_mut() {
                *x = f(*x);
            }
        }
        out
    }

    pub fn scale(&self, z: C64) -> Self {
        self.map(|x| x * z)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.map(|x| x * s)
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.0[j][i] = self.0[i][j];
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] = (0..N).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.0[k][k]).sum()
    }

    pub fn apply(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|k| self.0[i][k] * v[k]).sum();
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Max-abs entry of `m†m - 1`.
    pub fn unitarity_defect(&self) -> f64 {
        self.dagger().matmul(self).max_abs_diff(&Self::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

impl<const N: usize> Add for Mat<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Mat<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for Mat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.matmul(&rhs)
    }
}

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat([[a, b], [c, d]])
    }

    pub fn sigma_x() -> Self {
        Mat2::new(ZERO, ONE, ONE, ZERO)
    }

    pub fn sigma_y() -> Self {
        Mat2::new(ZERO, -I, I, ZERO)
    }

    pub fn sigma_z() -> Self {
        Mat2::new(ONE, ZERO, ZERO, -ONE)
    }

    /// `e^{-iθσx/2}`.
    pub fn rx(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Mat2::new(c.into(), -I * s, -I * s, c.into())
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Singular value decomposition from the closed-form eigen-decomposition
    /// of `m†m`.
    ///
    /// Right vectors are exact eigenvectors of the Hermitian 2×2 `m†m`; the
    /// first left vector is `m v₁ / σ₊` and the second is its orthogonal
    /// complement with the phase of `u₂† m v₂` absorbed, so the factors stay
    /// unitary even when `σ₋` is tiny.
    pub fn svd(&self) -> Svd2 {
        let g = self.dagger().matmul(self);
        let p = g.0[0][0].re;
        let s = g.0[1][1].re;
        let q = g.0[0][1];

        let v1 = if q.norm() == 0.0 {
            if p >= s {
                [ONE, ZERO]
            } else {
                [ZERO, ONE]
            }
        } else {
            let half_gap = 0.5 * (p - s);
            let lam_plus = 0.5 * (p + s) + half_gap.hypot(q.norm());
            // Two algebraically equivalent eigenvectors; take the one with the
            // larger norm to avoid cancellation.
            let a = [q, C64::from(lam_plus - p)];
            let b = [C64::from(lam_plus - s), q.conj()];
            let na = vec_norm(&a);
            let nb = vec_norm(&b);
            if na >= nb {
                [a[0] / na, a[1] / na]
            } else {
                [b[0] / nb, b[1] / nb]
            }
        };
        let v2 = [-v1[1].conj(), v1[0].conj()];

        let mv1 = self.apply(&v1);
        let sigma_plus = vec_norm(&mv1);
        let u1 = if sigma_plus > 0.0 {
            [mv1[0] / sigma_plus, mv1[1] / sigma_plus]
        } else {
            [ONE, ZERO]
        };
        let mut u2 = [-u1[1].conj(), u1[0].conj()];
        let mv2 = self.apply(&v2);
        let z = u2[0].conj() * mv2[0] + u2[1].conj() * mv2[1];
        let sigma_minus = z.norm();
        if sigma_minus > 0.0 {
            let ph = z / sigma_minus;
            u2 = [u2[0] * ph, u2[1] * ph];
        }

        Svd2 {
            sigma_plus,
            sigma_minus,
            left: Mat2::new(u1[0], u2[0], u1[1], u2[1]),
            right: Mat2::new(v1[0], v2[0], v1[1], v2[1]),
        }
    }

    /// Embeds into levels `(0, 1)` of a qutrit, leaving level 2 untouched.
    pub fn embed01(&self) -> Mat3 {
        let m = &self.0;
        Mat([
            [m[0][0], m[0][1], ZERO],
            [m[1][0], m[1][1], ZERO],
            [ZERO, ZERO, ONE],
        ])
    }
}

impl Mat3 {
    /// Top-left 2×2 block.
    pub fn top_left(&self) -> Mat2 {
        Mat2::new(self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1])
    }

    /// `min_{|z|=1} max_ij |a_ij - z b_ij|`.
    ///
    /// Each entry contributes `g_k(α) = A_k - 2|w_k| cos(α + β_k)` with
    /// `w_k = conj(a_k) b_k`; the minimum of the upper envelope sits either at
    /// the minimum of one `g_k` or where two of them cross, so it suffices to
    /// evaluate those candidate phases.
    pub fn dist_up_to_global_phase(&self, other: &Mat3) -> f64 {
        let pairs: Vec<(f64, C64)> = self
            .0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a.norm_sqr() + b.norm_sqr(), a.conj() * b))
            .collect();
        let mut candidates = vec![0.0];
        let tr = other.dagger().matmul(self).trace();
        if tr.norm() > 0.0 {
            candidates.push(-(tr.conj()).arg());
        }
        for (k, (ak, wk)) in pairs.iter().enumerate() {
            if wk.norm() > 0.0 {
                candidates.push(-wk.arg());
            }
            for (al, wl) in &pairs[k + 1..] {
                let w = (wk - wl) * 2.0;
                let rhs = ak - al;
                if w.norm() == 0.0 || rhs.abs() > w.norm() {
                    continue;
                }
                let delta = (rhs / w.norm()).clamp(-1.0, 1.0).acos();
                candidates.push(-w.arg() + delta);
                candidates.push(-w.arg() - delta);
            }
        }
        // The squared form cancels near zero, so candidates are scored on
        // the entries themselves.
        candidates
            .into_iter()
            .map(|alpha| self.max_abs_diff(&other.scale(C64::from_polar(1.0, alpha))))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Singular value decomposition `m = left · diag(σ₊, σ₋) · right†`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Svd2 {
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    pub left: Mat2,
    pub right: Mat2,
}

impl Svd2 {
    pub fn reconstruct(&self) -> Mat2 {
        let d = Mat2::diag([self.sigma_plus.into(), self.sigma_minus.into()]);
        self.left * d * self.right.dagger()
    }
}

pub fn svd2(m: &Mat2) -> Svd2 {
    m.svd()
}

pub fn dist_up_to_global_phase(a: &Mat3, b: &Mat3) -> f64 {
    a.dist_up_to_global_phase(b)
}

fn vec_norm<const N: usize>(v: &[C64; N]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `|amplitude_k|²` for each level.
pub fn populations<const N: usize>(amps: &[C64; N]) -> [f64; N] {
    amps.map(|z| z.norm_sqr())
}

/// A normalised qutrit state vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QutritState([C64; 3]);

impl QutritState {
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(amplitudes: [C64; 3]) -> Result<Self> {
        let norm_sq: f64 = populations(&amplitudes).iter().sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(QutritState(amplitudes))
    }

    pub fn basis(level: usize) -> Self {
        assert!(level < 3, "qutrit level {level} out of range");
        let mut a = [ZERO; 3];
        a[level] = ONE;
        QutritState(a)
    }

    /// Embeds a qubit state into levels `(0, 1)`.
    pub fn embed(psi: [C64; 2]) -> Result<Self> {
        Self::new([psi[0], psi[1], ZERO])
    }

    pub fn amplitudes(&self) -> &[C64; 3] {
        &self.0
    }

    pub fn populations(&self) -> [f64; 3] {
        populations(&self.0)
    }
}

/// `u · s`. The result is only a state when `u` is unitary, so the raw
/// amplitudes are returned.
pub fn apply(u: &Mat3, s: &QutritState) -> [C64; 3] {
    u.apply(&s.0)
}
