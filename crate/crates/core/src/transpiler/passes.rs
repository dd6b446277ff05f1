use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::{Circuit, Gate, GateSet, Subspace};
use crate::{Error, Result};

/// Rewrites `Rx` rotations into trapped-ion native `R(φ, θ)` gates.
///
/// `Rx(0j)(θ) = R(0j)(0, θ)` and `Rx(12)(θ) = Ry(01)(π) Rx(02)(θ) Ry(01)(-π)`
/// with `Ry(0i)(θ) = R(0i)(π/2, θ)`. Both identities are exact, so the
/// circuit unitary is preserved entrywise.
pub fn transpile_ion(c: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::default();
    for g in c.gates() {
        match *g {
            Gate::Rx { sub, theta } if sub.lo() == 0 => {
                out.push(Gate::RIon { sub, phi: 0.0, theta })
            }
            Gate::Rx { sub, theta } => {
                debug_assert_eq!(sub, Subspace::S12);
                out.push(Gate::RIon { sub: Subspace::S01, phi: FRAC_PI_2, theta: -PI });
                out.push(Gate::RIon { sub: Subspace::S02, phi: 0.0, theta });
                out.push(Gate::RIon { sub: Subspace::S01, phi: FRAC_PI_2, theta: PI });
            }
            Gate::Ry { sub, theta } if sub.lo() == 0 => {
                out.push(Gate::RIon { sub, phi: FRAC_PI_2, theta })
            }
            g if GateSet::Ion.admits(&g) => out.push(g),
            g => return Err(Error::UnsupportedGate(format!("{g:?}"))),
        }
    }
    Ok(out)
}

/// How the transmon pass realises the two-level phase `(e^{iλ})^{(01)}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TransmonPhase {
    /// Emit `Rz(01)(0) Rz(12)(-λ)`, which equals `(e^{iλ})^{(01)}` only up
    /// to the global qutrit phase `e^{iλ}`, and cancel the accumulated global
    /// phase once at the end of the circuit with `Rx(π/2)` pairs.
    #[default]
    Exact,
    /// Emit `Rz(01)(0) Rz(12)(-λ)` and drop the global phase; two physical
    /// gates per expanded rotation.
    UpToGlobalPhase,
}

/// Rewrites a circuit into `Rx(π/2)` plus virtual `Rz` on `(01)`/`(12)`,
/// preserving the unitary entrywise.
pub fn transpile_transmon(c: &Circuit) -> Result<Circuit> {
    transpile_transmon_with(c, TransmonPhase::Exact)
}

/// `Rx(θ) = (e^{-iθ/2}) · H Rz(θ) H` with `H = Rz(π/2) Rx(π/2) Rz(π/2)`, the
/// two-level phase then rewritten into `Rz` gates.
pub fn transpile_transmon_with(c: &Circuit, mode: TransmonPhase) -> Result<Circuit> {
    let mut out = Circuit::default();
    let mut global = 0.0;
    for g in c.gates() {
        match *g {
            g if GateSet::Transmon.admits(&g) => out.push(g),
            Gate::Rx { sub, theta } if sub == Subspace::S01 || sub == Subspace::S12 => {
                push_hadamard_like(&mut out, sub);
                out.push(Gate::Rz { sub, phi: theta });
                push_hadamard_like(&mut out, sub);
                global += push_phase2(&mut out, sub, -theta / 2.0);
            }
            Gate::Phase2 { sub, lambda } if sub == Subspace::S01 || sub == Subspace::S12 => {
                global += push_phase2(&mut out, sub, lambda);
            }
            g => return Err(Error::UnsupportedGate(format!("{g:?}"))),
        }
    }
    if mode == TransmonPhase::Exact {
        let residual = global.rem_euclid(TAU);
        if residual != 0.0 {
            push_global_phase(&mut out, residual);
        }
    }
    Ok(out)
}

fn push_hadamard_like(out: &mut Circuit, sub: Subspace) {
    out.push(Gate::Rz { sub, phi: FRAC_PI_2 });
    out.push(Gate::Rx { sub, theta: FRAC_PI_2 });
    out.push(Gate::Rz { sub, phi: FRAC_PI_2 });
}

/// Appends the `Rz` form of `(e^{iλ})^{sub}` and returns the global phase it
/// leaves unaccounted for.
fn push_phase2(out: &mut Circuit, sub: Subspace, lambda: f64) -> f64 {
    if sub == Subspace::S01 {
        out.push(Gate::Rz { sub: Subspace::S01, phi: 0.0 });
        out.push(Gate::Rz { sub: Subspace::S12, phi: -lambda });
        lambda
    } else {
        out.push(Gate::Rz { sub: Subspace::S12, phi: lambda });
        out.push(Gate::Rz { sub: Subspace::S01, phi: lambda });
        0.0
    }
}

/// `e^{iΛ}·1 = (e^{iΛ})^{(01)} Rz(12)(Λ)`, where
/// `(e^{iΛ})^{(01)} = Rz(01)(μ) Rx(01)(π) Rz(01)(μ) Rx(01)(π)` with `μ = Λ - π`
/// and each `Rx(π)` built from two `Rx(π/2)`.
fn push_global_phase(out: &mut Circuit, lambda: f64) {
    let mu = lambda - PI;
    for _ in 0..2 {
        out.push(Gate::Rz { sub: Subspace::S01, phi: mu });
        out.push(Gate::Rx { sub: Subspace::S01, theta: FRAC_PI_2 });
        out.push(Gate::Rx { sub: Subspace::S01, theta: FRAC_PI_2 });
    }
    out.push(Gate::Rz { sub: Subspace::S12, phi: lambda });
}
