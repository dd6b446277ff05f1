//! Gate IR for subspace rotations on a qutrit and the native-gate-set passes.
//!
//! Circuits list gates in application order: the first gate listed acts first
//! on the state, so the circuit unitary is `g_n ⋯ g_2 g_1`.

mod passes;
mod text;

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::qutrit::Mat3;
use crate::{Error, Result, C64};

pub use passes::{transpile_ion, transpile_transmon, transpile_transmon_with, TransmonPhase};
pub use text::{parse_circuit, write_circuit};

/// Ordered pair of qutrit levels `(lo, hi)` with `lo < hi ≤ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    lo: usize,
    hi: usize,
}

impl Subspace {
    pub const S01: Subspace = Subspace { lo: 0, hi: 1 };
    pub const S02: Subspace = Subspace { lo: 0, hi: 2 };
    pub const S12: Subspace = Subspace { lo: 1, hi: 2 };

    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo < hi && hi <= 2 {
            Ok(Subspace { lo, hi })
        } else {
            Err(Error::InvalidParams(format!("invalid subspace ({lo}, {hi})")))
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    RIon,
    Phase2,
}

/// A two-level rotation on one subspace of the qutrit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Rx { sub: Subspace, theta: f64 },
    Ry { sub: Subspace, theta: f64 },
    /// Virtual phase gate: `e^{iφ}` on the upper level of the subspace.
    Rz { sub: Subspace, phi: f64 },
    /// Trapped-ion native `R(φ, θ)`.
    RIon { sub: Subspace, phi: f64, theta: f64 },
    /// Two-level global phase `e^{iλ}` on both levels of the subspace.
    Phase2 { sub: Subspace, lambda: f64 },
}

impl Gate {
    pub fn rx(lo: usize, hi: usize, theta: f64) -> Gate {
        Gate::Rx { sub: Subspace::new(lo, hi).expect("valid subspace"), theta }
    }

    pub fn ry(lo: usize, hi: usize, theta: f64) -> Gate {
        Gate::Ry { sub: Subspace::new(lo, hi).expect("valid subspace"), theta }
    }

    pub fn rz(lo: usize, hi: usize, phi: f64) -> Gate {
        Gate::Rz { sub: Subspace::new(lo, hi).expect("valid subspace"), phi }
    }

    pub fn r_ion(lo: usize, hi: usize, phi: f64, theta: f64) -> Gate {
        Gate::RIon { sub: Subspace::new(lo, hi).expect("valid subspace"), phi, theta }
    }

    pub fn phase2(lo: usize, hi: usize, lambda: f64) -> Gate {
        Gate::Phase2 { sub: Subspace::new(lo, hi).expect("valid subspace"), lambda }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Rx { .. } => GateKind::Rx,
            Gate::Ry { .. } => GateKind::Ry,
            Gate::Rz { .. } => GateKind::Rz,
            Gate::RIon { .. } => GateKind::RIon,
            Gate::Phase2 { .. } => GateKind::Phase2,
        }
    }

    pub fn subspace(&self) -> Subspace {
        match *self {
            Gate::Rx { sub, .. }
            | Gate::Ry { sub, .. }
            | Gate::Rz { sub, .. }
            | Gate::RIon { sub, .. }
            | Gate::Phase2 { sub, .. } => sub,
        }
    }

    /// Rotations that take physical time on hardware.
    pub fn is_physical(&self) -> bool {
        matches!(self.kind(), GateKind::Rx | GateKind::Ry | GateKind::RIon)
    }

    pub fn is_virtual(&self) -> bool {
        self.kind() == GateKind::Rz
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            Gate::Rx { theta, .. } | Gate::Ry { theta, .. } => theta.is_finite(),
            Gate::Rz { phi, .. } => phi.is_finite(),
            Gate::RIon { phi, theta, .. } => phi.is_finite() && theta.is_finite(),
            Gate::Phase2 { lambda, .. } => lambda.is_finite(),
        }
    }

    /// Exact 3×3 matrix; the level outside the subspace is untouched.
    pub fn matrix(&self) -> Mat3 {
        let sub = self.subspace();
        let block = match *self {
            Gate::Rx { theta, .. } => ion_block(0.0, theta),
            Gate::Ry { theta, .. } => ion_block(FRAC_PI_2, theta),
            Gate::RIon { phi, theta, .. } => ion_block(phi, theta),
            Gate::Rz { phi, .. } => [
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                [C64::new(0.0, 0.0), C64::from_polar(1.0, phi)],
            ],
            Gate::Phase2 { lambda, .. } => {
                let z = C64::from_polar(1.0, lambda);
                [[z, C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), z]]
            }
        };
        let mut m = Mat3::identity();
        let idx = [sub.lo, sub.hi];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.0[i][j] = block[a][b];
            }
        }
        m
    }
}

/// `[[cos θ/2, -i e^{-iφ} sin θ/2], [-i e^{iφ} sin θ/2, cos θ/2]]`.
fn ion_block(phi: f64, theta: f64) -> [[C64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let mi = C64::new(0.0, -1.0);
    [
        [c.into(), mi * C64::from_polar(s, -phi)],
        [mi * C64::from_polar(s, phi), c.into()],
    ]
}

pub fn gate_matrix(g: &Gate) -> Mat3 {
    g.matrix()
}

/// Hardware target whose native gates a circuit may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateSet {
    /// `R(φ, θ)` on `(0,1)`, `(0,2)` plus virtual `Rz` on the same pairs.
    Ion,
    /// `Rx(π/2)` on `(0,1)`, `(1,2)` plus virtual `Rz` on the same pairs.
    Transmon,
    Abstract,
}

impl GateSet {
    pub fn admits(&self, g: &Gate) -> bool {
        let sub = g.subspace();
        match self {
            GateSet::Abstract => true,
            GateSet::Ion => {
                matches!(g, Gate::RIon { .. } | Gate::Rz { .. })
                    && (sub == Subspace::S01 || sub == Subspace::S02)
            }
            GateSet::Transmon => {
                let pair_ok = sub == Subspace::S01 || sub == Subspace::S12;
                match g {
                    Gate::Rx { theta, .. } => pair_ok && *theta == FRAC_PI_2,
                    Gate::Rz { .. } => pair_ok,
                    _ => false,
                }
            }
        }
    }

    pub fn admits_circuit(&self, c: &Circuit) -> bool {
        c.gates().iter().all(|g| self.admits(g))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(gates: Vec<Gate>) -> Self {
        Circuit { gates }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn unitary(&self) -> Mat3 {
        self.gates.iter().fold(Mat3::identity(), |acc, g| g.matrix() * acc)
    }

    pub fn stats(&self) -> CircuitStats {
        let physical_count = self.gates.iter().filter(|g| g.is_physical()).count();
        CircuitStats {
            gate_count: self.gates.len(),
            physical_count,
            virtual_count: self.gates.iter().filter(|g| g.is_virtual()).count(),
            depth: physical_count,
        }
    }
}

impl FromIterator<Gate> for Circuit {
    fn from_iter<I: IntoIterator<Item = Gate>>(iter: I) -> Self {
        Circuit { gates: iter.into_iter().collect() }
    }
}

pub fn circuit_unitary(c: &Circuit) -> Mat3 {
    c.unitary()
}

/// Gate counts. `depth` counts time steps of nonzero duration; on a single
/// qutrit that is the number of physical gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircuitStats {
    pub gate_count: usize,
    pub physical_count: usize,
    pub virtual_count: usize,
    pub depth: usize,
}

pub fn stats(c: &Circuit) -> CircuitStats {
    c.stats()
}

/// Compares circuit unitaries entrywise, or modulo a global phase.
pub fn equivalent(c1: &Circuit, c2: &Circuit, tol: f64, up_to_phase: bool) -> bool {
    let (u1, u2) = (c1.unitary(), c2.unitary());
    let d = if up_to_phase {
        u1.dist_up_to_global_phase(&u2)
    } else {
        u1.max_abs_diff(&u2)
    };
    d <= tol
}
