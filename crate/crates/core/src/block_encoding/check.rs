use rand::Rng;

use super::dilation::{general_dilation, rescale_to_contraction};
use super::matn::MatN;
use crate::experiment::StreamKey;
use crate::{Error, Result, C64};

/// Worst-case defects over a batch of random dilations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DilationReport {
    pub trials: usize,
    pub succeeded: usize,
    pub max_unitarity_defect: f64,
    pub max_block_defect: f64,
    /// `(trial, error)` for every trial that could not be dilated.
    pub failures: Vec<(usize, Error)>,
}

impl DilationReport {
    /// Every trial dilated with both defects below `tol`.
    pub fn passed(&self, tol: f64) -> bool {
        self.failures.is_empty() && self.max_unitarity_defect < tol && self.max_block_defect < tol
    }
}

/// Random `n×n` contraction: complex entries uniform in the unit square,
/// rescaled so that `σ_max = 1`.
pub fn random_contraction(n: usize, key: StreamKey) -> Result<MatN> {
    let mut rng = key.rng();
    let raw = MatN::from_fn(n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    Ok(rescale_to_contraction(&raw)?.0)
}

/// Dilates `trials` random contractions of size `n` into `n + m` dimensions
/// and records the largest unitarity and block defects.
pub fn dilation_check(n: usize, m: usize, trials: usize, seed: u64) -> Result<DilationReport> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    if n + m > super::MAX_DIM {
        return Err(Error::DimensionTooLarge(n + m));
    }
    let mut report = DilationReport { trials, ..Default::default() };
    for trial in 0..trials {
        let key = StreamKey { seed, domain: StreamKey::DILATION, stream: trial as u64 };
        let a = random_contraction(n, key)?;
        match general_dilation(&a, m) {
            Ok(d) => {
                report.succeeded += 1;
                report.max_unitarity_defect = report.max_unitarity_defect.max(d.unitarity_defect());
                report.max_block_defect = report.max_block_defect.max(d.block_defect(&a));
            }
            Err(e) => report.failures.push((trial, e)),
        }
    }
    Ok(report)
}
