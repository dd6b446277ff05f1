//! Unitary embeddings of non-unitary operators.
//!
//! [`qutrit_circuit`] realises `V(t)/σ₊` as the top-left block of a qutrit
//! unitary built from three two-level rotations; [`general_dilation`]
//! embeds any invertible contraction `A` (`n×n`) into an `(n+m)`-dimensional
//! unitary, given enough auxiliary dimensions.

mod check;
mod dilation;
mod matn;

use crate::pt_model::{self, PTParams};
use crate::qutrit::{Mat2, Mat3};
use crate::transpiler::{Circuit, Gate};
use crate::{Error, Result};

pub use check::{dilation_check, random_contraction, DilationReport};
pub use dilation::{general_dilation, rescale_to_contraction, Dilation, RANK_TOL, SINGULAR_TOL};
pub use matn::{MatN, Rect, MAX_DIM};

/// `[Rx01(φ₁), Rx12(θ), Rx01(φ₂)]` in application order, so that
/// `U = Rx01(φ₂) · Rx12(θ) · Rx01(φ₁)` carries `V(t)/σ₊` in its top-left
/// block. `φ₁ = φ₂ = φ` whenever `sin(ht) ≥ 0`; see [`pt_model::Angles::outer`].
pub fn qutrit_circuit(p: &PTParams) -> Circuit {
    let ang = pt_model::angles(p);
    let (first, last) = ang.outer();
    Circuit::new(vec![Gate::rx(0, 1, first), Gate::rx(1, 2, ang.theta), Gate::rx(0, 1, last)])
}

pub fn qutrit_unitary(p: &PTParams) -> Mat3 {
    qutrit_circuit(p).unitary()
}

/// `u` is unitary and its top-left 2×2 block equals `v/λ`, both within `tol`.
pub fn embed_check(u: &Mat3, v: &Mat2, lambda: f64, tol: f64) -> bool {
    u.is_unitary(tol) && u.top_left().max_abs_diff(&v.scale_re(1.0 / lambda)) <= tol
}

/// Max-abs difference between the post-selected ground-state population
/// evolved by the shifted Hamiltonian `H - iμ` (evolution `e^{-μt} V(t)`)
/// and by `H` itself. The shift must bring the evolution inside the unit
/// ball.
pub fn hamiltonian_shift_equivalence(p: &PTParams, mu: f64) -> Result<f64> {
    let damping = (-mu * p.t()).exp();
    let norm = damping * pt_model::singular_values(p).sigma_plus;
    if !norm.is_finite() || norm > 1.0 + pt_model::LAMBDA_SLACK {
        return Err(Error::ShiftTooSmall { mu, norm });
    }
    let shifted = pt_model::evolution(p).scale_re(damping);
    Ok((pt_model::postselected_from(&shifted) - pt_model::postselected_population(p)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn pt(r: f64, t: f64) -> PTParams {
        PTParams::new(r, t).unwrap()
    }

    #[test]
    fn hermitian_limit_circuit() {
        let c = qutrit_circuit(&pt(0.0, 0.4));
        assert_eq!(c.gates(), &[Gate::rx(0, 1, 0.4), Gate::rx(1, 2, 0.0), Gate::rx(0, 1, 0.4)]);
        let u = qutrit_unitary(&pt(0.0, 2.0));
        assert!(u.max_abs_diff(&Gate::rx(0, 1, 4.0).matrix()) < 1e-12);
        let u = qutrit_unitary(&pt(0.0, 4.0));
        assert!(u.max_abs_diff(&Gate::rx(0, 1, 8.0).matrix()) < 1e-12);
    }

    #[test]
    fn zero_time_is_identity() {
        for &r in &[0.0, 0.5, 1.0, 1.3] {
            let c = qutrit_circuit(&pt(r, 0.0));
            for g in c.gates() {
                if let Gate::Rx { theta, .. } = g {
                    assert_eq!(*theta, 0.0);
                }
            }
            assert!(qutrit_unitary(&pt(r, 0.0)).max_abs_diff(&Mat3::identity()) < 1e-15);
        }
    }

    #[test]
    fn exceptional_point_theta() {
        let ratio = (SQRT_2 - 1.0) / (SQRT_2 + 1.0);
        let expect = -2.0 * ratio.acos();
        match qutrit_circuit(&pt(1.0, 1.0)).gates()[1] {
            Gate::Rx { theta, .. } => {
                assert!((theta - expect).abs() < 1e-12);
                assert!((theta + 2.7968).abs() < 1e-4);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn embedding_in_both_phases() {
        for &(r, t) in &[(0.8, 2.0), (0.5, 6.0), (0.2, 4.5), (1.0, 3.0), (1.5, 2.5)] {
            let p = pt(r, t);
            let sp = pt_model::singular_values(&p).sigma_plus;
            assert!(embed_check(&qutrit_unitary(&p), &pt_model::evolution(&p), sp, 1e-10), "r={r} t={t}");
        }
    }

    #[test]
    fn embed_check_rejects_mismatch() {
        assert!(embed_check(&Mat3::identity(), &Mat2::identity(), 1.0, 1e-12));
        assert!(!embed_check(&Mat3::identity(), &Mat2::sigma_x(), 1.0, 1e-12));
        assert!(!embed_check(&Mat3::diag([1.0.into(), 1.0.into(), 2.0.into()]), &Mat2::identity(), 1.0, 1e-12));
    }

    #[test]
    fn shift_equivalence() {
        let p = pt(0.5, 1.0);
        let mu = pt_model::singular_values(&p).sigma_plus.ln() / p.t();
        assert!(hamiltonian_shift_equivalence(&p, mu).unwrap() < 1e-12);
        assert!(hamiltonian_shift_equivalence(&pt(1.2, 2.0), 2.0).unwrap() <= 1e-10);
        assert!(matches!(
            hamiltonian_shift_equivalence(&pt(1.2, 2.0), 0.0),
            Err(Error::ShiftTooSmall { .. })
        ));
    }
}
