use super::matn::{MatN, Rect, MAX_DIM};
use crate::{Error, Result, C64};

/// Eigenvalues of `1 - A†A` at or below this are treated as zero.
pub const RANK_TOL: f64 = 1e-12;

/// `|det A|` at or below this is treated as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

const ZERO_MATRIX_TOL: f64 = 1e-14;

/// A unitary `u` of size `n + m` whose top-left `n×n` block is `A/λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dilation {
    pub u: MatN,
    pub n: usize,
    pub m: usize,
    pub lambda: f64,
}

impl Dilation {
    pub fn unitarity_defect(&self) -> f64 {
        self.u.unitarity_defect()
    }

    /// Max-abs difference between the top-left block and `a/λ`.
    pub fn block_defect(&self, a: &MatN) -> f64 {
        let n = self.n;
        let target = a.scale_re(1.0 / self.lambda);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.u[(i, j)] - target[(i, j)]).norm());
            }
        }
        worst
    }
}

/// `(A/σ_max, σ_max)`.
pub fn rescale_to_contraction(a: &MatN) -> Result<(MatN, f64)> {
    let sigma_max = a.sigma_max();
    if sigma_max.is_nan() || sigma_max < ZERO_MATRIX_TOL {
        return Err(Error::ZeroMatrix(sigma_max));
    }
    Ok((a.scale_re(1.0 / sigma_max), sigma_max))
}

/// Completes the contraction `a` to a unitary
///
/// ```text
/// U = | A  B |      C = √Λ_m W_m†          (from 1 - A†A = W Λ W†)
///     | C  D |      K = C A⁻¹ (C A⁻¹)† + 1 = W_K diag(k) W_K†
///                   D = W_K diag(1/√k),   B = -(A†)⁻¹ C† D
/// ```
///
/// which requires `‖A‖ ≤ 1`, `rank(1 - A†A) ≤ m` and an invertible `A`.
pub fn general_dilation(a: &MatN, m: usize) -> Result<Dilation> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::InvalidParams("cannot dilate an empty matrix".into()));
    }
    if n + m > MAX_DIM {
        return Err(Error::DimensionTooLarge(n + m));
    }
    if !a.is_finite() {
        return Err(Error::InvalidParams("matrix has non-finite entries".into()));
    }

    let defect = &MatN::identity(n) - &(&a.dagger() * a);
    let (mut lam, w) = defect.eigh();
    let smallest = lam.last().copied().unwrap_or(0.0);
    if smallest < -RANK_TOL {
        return Err(Error::NormTooLarge(smallest));
    }
    for l in lam.iter_mut() {
        if *l <= RANK_TOL {
            *l = l.max(0.0);
        }
    }
    let rank = lam.iter().filter(|&&l| l > RANK_TOL).count();
    if rank > m {
        return Err(Error::RankTooLarge { rank, m });
    }
    let a_inv = a.inverse(SINGULAR_TOL)?;

    // Rows beyond the available eigenpairs (m > n) stay zero.
    let c = Rect::from_fn(m, n, |k, j| {
        if k < n {
            w[(j, k)].conj() * lam[k].sqrt()
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let ca = c.matmul(&Rect::from(&a_inv));
    let kk = ca.matmul(&ca.dagger());
    let k = MatN::from_fn(m, |i, j| kk[(i, j)] + if i == j { 1.0 } else { 0.0 });
    let (kvals, kvecs) = k.eigh();
    let d = Rect::from_fn(m, m, |i, j| kvecs[(i, j)] / kvals[j].sqrt());
    let b = Rect::from(&a_inv.dagger())
        .matmul(&c.dagger())
        .matmul(&d)
        .scale(C64::new(-1.0, 0.0));

    let u = MatN::from_fn(n + m, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (true, false) => b[(i, j - n)],
        (false, true) => c[(i - n, j)],
        (false, false) => d[(i - n, j - n)],
    });
    Ok(Dilation { u, n, m, lambda: 1.0 })
}
