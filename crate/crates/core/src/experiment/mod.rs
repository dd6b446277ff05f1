//! Simulated hardware runs of the qutrit circuit: backend-specific
//! transpilation, per-ion over-rotation, readout confusion, finite-shot
//! sampling, post-selection and `(r, t)` grid sweeps.

mod confusion;
mod sampling;

use std::fmt;
use std::str::FromStr;

use crate::block_encoding::qutrit_circuit;
use crate::pt_model::PTParams;
use crate::qutrit::populations;
use crate::transpiler::{transpile_ion, transpile_transmon, Circuit, Gate};
use crate::{Error, Result, C64};

pub use confusion::{ConfusionMatrix, FILE_STOCHASTIC_TOL, STOCHASTIC_TOL};
pub use sampling::{expected_counts, sample_counts, StreamKey, NEGATIVE_TOL};

pub const DEFAULT_ION_COUNT: usize = 5;
pub const DEFAULT_EPSILON: [f64; 5] = [0.02, -0.015, 0.01, -0.02, 0.005];
pub const ION_SHOTS: u64 = 512;
pub const TRANSMON_SHOTS: u64 = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BackendKind {
    Theory,
    Ion,
    Transmon,
}

impl BackendKind {
    pub fn default_shots(&self) -> u64 {
        match self {
            BackendKind::Ion => ION_SHOTS,
            BackendKind::Theory | BackendKind::Transmon => TRANSMON_SHOTS,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            BackendKind::Theory => "theory",
            BackendKind::Ion => "ion",
            BackendKind::Transmon => "transmon",
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "theory" => Ok(BackendKind::Theory),
            "ion" => Ok(BackendKind::Ion),
            "transmon" => Ok(BackendKind::Transmon),
            other => Err(Error::InvalidParams(format!("unknown backend `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BackendConfig {
    pub kind: BackendKind,
    pub shots: u64,
    /// Readout model shared by all ions unless `ion_confusion` is set.
    pub confusion: ConfusionMatrix,
    /// Per-ion readout models, indexed like `epsilon`. Empty means "use
    /// `confusion` everywhere".
    pub ion_confusion: Vec<ConfusionMatrix>,
    pub ion_count: usize,
    /// Fractional over-rotation of every physical pulse, per ion.
    pub epsilon: Vec<f64>,
    pub seed: u64,
    /// Report expected rather than sampled counts (infinite-shot limit).
    pub exact: bool,
}

impl BackendConfig {
    /// Noise-free closed-form backend.
    pub fn theory() -> Self {
        BackendConfig {
            kind: BackendKind::Theory,
            shots: BackendKind::Theory.default_shots(),
            confusion: ConfusionMatrix::identity(),
            ion_confusion: Vec::new(),
            ion_count: DEFAULT_ION_COUNT,
            epsilon: vec![0.0; DEFAULT_ION_COUNT],
            seed: 0,
            exact: false,
        }
    }

    /// Trapped-ion chain with the synthetic default noise.
    pub fn ion() -> Self {
        BackendConfig {
            kind: BackendKind::Ion,
            shots: ION_SHOTS,
            confusion: ConfusionMatrix::ion_default(),
            epsilon: DEFAULT_EPSILON.to_vec(),
            ..Self::theory()
        }
    }

    /// Transmon with the synthetic default readout error.
    pub fn transmon() -> Self {
        BackendConfig {
            kind: BackendKind::Transmon,
            shots: TRANSMON_SHOTS,
            confusion: ConfusionMatrix::transmon_default(),
            ..Self::theory()
        }
    }

    pub fn for_kind(kind: BackendKind) -> Self {
        match kind {
            BackendKind::Theory => Self::theory(),
            BackendKind::Ion => Self::ion(),
            BackendKind::Transmon => Self::transmon(),
        }
    }

    /// Same backend with identity readout and no over-rotation.
    pub fn noiseless(mut self) -> Self {
        self.confusion = ConfusionMatrix::identity();
        self.ion_confusion.clear();
        self.epsilon.iter_mut().for_each(|e| *e = 0.0);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::InvalidParams("shots must be at least 1".into()));
        }
        if self.kind == BackendKind::Ion {
            if self.ion_count == 0 {
                return Err(Error::InvalidParams("ion count must be at least 1".into()));
            }
            if self.epsilon.len() != self.ion_count {
                return Err(Error::InvalidParams(format!(
                    "{} epsilon value(s) given for {} ions",
                    self.epsilon.len(),
                    self.ion_count
                )));
            }
            if !self.ion_confusion.is_empty() && self.ion_confusion.len() != self.ion_count {
                return Err(Error::InvalidParams(format!(
                    "{} confusion matrices given for {} ions",
                    self.ion_confusion.len(),
                    self.ion_count
                )));
            }
        }
        if let Some(e) = self.epsilon.iter().find(|e| e.is_nan() || e.abs() >= 0.5) {
            return Err(Error::InvalidParams(format!("epsilon {e} must satisfy |epsilon| < 0.5")));
        }
        Ok(())
    }

    /// Readout model seen through ion `ion` (ignored off the ion backend).
    pub fn confusion_for(&self, ion: Option<usize>) -> &ConfusionMatrix {
        match ion {
            Some(k) if self.kind == BackendKind::Ion && !self.ion_confusion.is_empty() => &self.ion_confusion[k],
            _ => &self.confusion,
        }
    }

    fn epsilon_for(&self, ion: Option<usize>) -> f64 {
        match ion {
            Some(k) if self.kind == BackendKind::Ion => self.epsilon[k],
            _ => 0.0,
        }
    }

    fn check_ion(&self, ion: Option<usize>) -> Result<()> {
        match (self.kind, ion) {
            (BackendKind::Ion, Some(k)) if k < self.ion_count => Ok(()),
            (BackendKind::Ion, _) => Err(Error::InvalidParams(format!(
                "ion index {ion:?} out of range for {} ions",
                self.ion_count
            ))),
            _ => Ok(()),
        }
    }
}

impl Default for BackendConfig {
    fn default() -> Self {
        Self::theory()
    }
}

/// Scales the rotation angle of every physical pulse by `1 + eps`. Phases
/// (`Rz`, the `φ` of ion gates) are untouched.
pub fn miscalibrate(c: &Circuit, eps: f64) -> Circuit {
    let k = 1.0 + eps;
    c.gates()
        .iter()
        .map(|g| match *g {
            Gate::Rx { sub, theta } => Gate::Rx { sub, theta: theta * k },
            Gate::Ry { sub, theta } => Gate::Ry { sub, theta: theta * k },
            Gate::RIon { sub, phi, theta } => Gate::RIon { sub, phi, theta: theta * k },
            g => g,
        })
        .collect()
}

/// The circuit a backend actually runs at `p`, including over-rotation.
pub fn backend_circuit(p: &PTParams, backend: &BackendConfig, ion: Option<usize>) -> Result<Circuit> {
    let abstract_circuit = qutrit_circuit(p);
    Ok(match backend.kind {
        BackendKind::Theory => abstract_circuit,
        BackendKind::Ion => miscalibrate(&transpile_ion(&abstract_circuit)?, backend.epsilon_for(ion)),
        BackendKind::Transmon => transpile_transmon(&abstract_circuit)?,
    })
}

/// Outcome distribution observed on `backend` for the initial state `|0⟩`:
/// `C · |U|0⟩|²`.
pub fn exact_probabilities(p: &PTParams, backend: &BackendConfig, ion: Option<usize>) -> Result<[f64; 3]> {
    backend.check_ion(ion)?;
    let u = backend_circuit(p, backend, ion)?.unitary();
    let col = [u.get(0, 0), u.get(1, 0), u.get(2, 0)];
    let truth = normalise(populations::<3>(&col));
    Ok(match backend.kind {
        BackendKind::Theory => truth,
        _ => backend.confusion_for(ion).apply(&truth),
    })
}

fn normalise(p: [f64; 3]) -> [f64; 3] {
    let s: f64 = p.iter().sum();
    p.map(|x| x / s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentPoint {
    pub r: f64,
    pub t: f64,
    /// Ion that ran this point (ion backend only).
    pub ion: Option<usize>,
    pub p_exact: [f64; 3],
    pub counts: [u64; 3],
    pub shots: u64,
    pub p0_raw: f64,
    /// `None` when no shot landed in `{|0⟩, |1⟩}`.
    pub p0_postselected: Option<f64>,
    pub postselect_kept: u64,
}

impl ExperimentPoint {
    pub fn postselected(&self) -> Result<f64> {
        self.p0_postselected.ok_or(Error::EmptyPostselection)
    }
}

/// Simulates one grid point. `key` selects the random stream; `ion` is
/// required on the ion backend and ignored elsewhere.
///
/// In exact mode the counts are the largest-remainder rounding of
/// `p_exact · shots`, while `p0_raw` and `p0_postselected` come straight
/// from `p_exact`.
pub fn run_point(p: &PTParams, backend: &BackendConfig, ion: Option<usize>, key: StreamKey) -> Result<ExperimentPoint> {
    let ion = if backend.kind == BackendKind::Ion { ion } else { None };
    let p_exact = exact_probabilities(p, backend, ion)?;
    let shots = backend.shots;
    let (counts, p0_raw, p0_postselected, kept) = if backend.exact {
        let counts = expected_counts(&p_exact, shots);
        let denom = p_exact[0] + p_exact[1];
        let post = (denom > 0.0).then(|| p_exact[0] / denom);
        (counts, p_exact[0], post, counts[0] + counts[1])
    } else {
        let counts = sample_counts(&p_exact, shots, key)?;
        let kept = counts[0] + counts[1];
        let post = (kept > 0).then(|| counts[0] as f64 / kept as f64);
        (counts, counts[0] as f64 / shots as f64, post, kept)
    };
    Ok(ExperimentPoint {
        r: p.r(),
        t: p.t(),
        ion,
        p_exact,
        counts,
        shots,
        p0_raw,
        p0_postselected,
        postselect_kept: kept,
    })
}

/// Inclusive uniform `(r, t)` grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub r_min: f64,
    pub r_max: f64,
    pub r_steps: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { r_min: 0.0, r_max: 1.2, r_steps: 61, t_min: 0.0, t_max: 5.0, t_steps: 101 }
    }
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        if self.r_steps == 0 || self.t_steps == 0 {
            return Err(Error::InvalidParams("grid needs at least one step per axis".into()));
        }
        if self.r_steps > u32::MAX as usize || self.t_steps > u32::MAX as usize {
            return Err(Error::InvalidParams("grid is too large".into()));
        }
        for (name, lo, hi) in [("r", self.r_min, self.r_max), ("t", self.t_min, self.t_max)] {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidParams(format!("{name} range must be finite")));
            }
            if lo < 0.0 || hi < lo {
                return Err(Error::InvalidParams(format!("{name} range [{lo}, {hi}] is invalid")));
            }
        }
        Ok(())
    }

    pub fn r_at(&self, i: usize) -> f64 {
        axis(self.r_min, self.r_max, self.r_steps, i)
    }

    pub fn t_at(&self, j: usize) -> f64 {
        axis(self.t_min, self.t_max, self.t_steps, j)
    }

    pub fn len(&self) -> usize {
        self.r_steps * self.t_steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn axis(lo: f64, hi: f64, steps: usize, i: usize) -> f64 {
    if steps <= 1 || i == 0 {
        lo
    } else if i + 1 == steps {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (steps - 1) as f64
    }
}

/// Runs every grid point, r-major. Column `j` always runs on ion
/// `j mod ion_count`. Each point draws from its own stream keyed by its grid
/// indices, so the output does not depend on how the work is scheduled.
pub fn sweep(grid: &Grid, backend: &BackendConfig) -> Result<Vec<ExperimentPoint>> {
    grid.validate()?;
    backend.validate()?;
    let point = |idx: usize| {
        let (i, j) = (idx / grid.t_steps, idx % grid.t_steps);
        let p = PTParams::new(grid.r_at(i), grid.t_at(j))?;
        let ion = (backend.kind == BackendKind::Ion).then(|| j % backend.ion_count);
        run_point(&p, backend, ion, StreamKey::grid(backend.seed, i as u32, j as u32))
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..grid.len()).into_par_iter().map(point).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..grid.len()).map(point).collect()
    }
}

/// Calibrates the backend's readout by preparing each basis state
/// `preparations` times and histogramming the declared outcomes.
pub fn estimate_confusion(backend: &BackendConfig, preparations: u64) -> Result<ConfusionMatrix> {
    estimate_confusion_of(backend.confusion_for(Some(0)), preparations, backend.seed)
}

pub fn estimate_confusion_of(truth: &ConfusionMatrix, preparations: u64, seed: u64) -> Result<ConfusionMatrix> {
    if preparations == 0 {
        return Err(Error::InvalidParams("need at least one preparation per state".into()));
    }
    let mut entries = [[0.0; 3]; 3];
    for j in 0..3 {
        let key = StreamKey { seed, domain: StreamKey::CALIBRATION, stream: j as u64 };
        let counts = sample_counts(&truth.column(j), preparations, key)?;
        for (row, &n) in entries.iter_mut().zip(&counts) {
            row[j] = n as f64 / preparations as f64;
        }
    }
    ConfusionMatrix::new(entries)
}

/// Populations of `U|0⟩` for an arbitrary circuit, normalised.
pub fn circuit_populations(c: &Circuit) -> [f64; 3] {
    let u = c.unitary();
    let zero = C64::new(0.0, 0.0);
    let col = u.apply(&[C64::new(1.0, 0.0), zero, zero]);
    normalise(populations::<3>(&col))
}
