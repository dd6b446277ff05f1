//! Independent reference computations for the integration tests. Nothing in
//! here calls the closed forms under test.

#![allow(dead_code)]

use ptq_core::qutrit::{Mat2, Mat3};
use ptq_core::C64;

pub fn i() -> C64 {
    C64::new(0.0, 1.0)
}

/// `e^{M}` by scaling and squaring around a 30-term Taylor series.
pub fn expm2(m: &Mat2) -> Mat2 {
    let norm: f64 = m.0.iter().flatten().map(|z| z.norm()).sum();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = m.scale_re(0.5f64.powi(squarings as i32));
    let mut sum = Mat2::identity();
    let mut term = Mat2::identity();
    for k in 1..=30 {
        term = term.matmul(&scaled).scale_re(1.0 / k as f64);
        sum = sum + term;
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

/// `e^{-iHt}` for `H = [[ir, 1], [1, -ir]]`, summed numerically.
pub fn series_evolution(r: f64, t: f64) -> Mat2 {
    let h = Mat2::new(C64::new(0.0, r), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, -r));
    expm2(&h.scale(C64::new(0.0, -t)))
}

/// Singular values of a 2×2 matrix from the eigenvalues of `m†m`; the small
/// one is recovered from `det(m†m)` to avoid cancellation.
pub fn oracle_singular_values(m: &Mat2) -> (f64, f64) {
    let g = m.dagger().matmul(m);
    let tr = g.0[0][0].re + g.0[1][1].re;
    let det = m.det().norm_sqr();
    let half = tr / 2.0;
    let big = half + (half * half - det).max(0.0).sqrt();
    (big.sqrt(), (det / big).sqrt())
}

/// Product of explicit two-level rotations, built without the gate IR.
pub fn rx_embedded(lo: usize, hi: usize, theta: f64) -> Mat3 {
    let mut m = Mat3::identity();
    let (s, c) = (theta / 2.0).sin_cos();
    m.0[lo][lo] = c.into();
    m.0[hi][hi] = c.into();
    m.0[lo][hi] = C64::new(0.0, -s);
    m.0[hi][lo] = C64::new(0.0, -s);
    m
}
