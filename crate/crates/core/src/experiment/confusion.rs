use std::fmt;

use crate::{Error, Result};

/// Column sums must be within this of 1 for [`ConfusionMatrix::new`].
pub const STOCHASTIC_TOL: f64 = 1e-9;

/// Looser column-sum tolerance accepted when reading a matrix from text.
pub const FILE_STOCHASTIC_TOL: f64 = 1e-6;

/// Readout error model: `entries[i][j] = P(declared i | prepared j)`.
///
/// Columns are normalised exactly on construction, so [`apply`](Self::apply)
/// preserves total probability to rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConfusionMatrix {
    entries: [[f64; 3]; 3],
}

impl ConfusionMatrix {
    pub fn new(entries: [[f64; 3]; 3]) -> Result<Self> {
        Self::with_tolerance(entries, STOCHASTIC_TOL)
    }

    fn with_tolerance(mut entries: [[f64; 3]; 3], tol: f64) -> Result<Self> {
        for (i, row) in entries.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() || !(-tol..=1.0 + tol).contains(&x) {
                    return Err(Error::BadConfusion(format!("entry ({i},{j}) = {x} is not a probability")));
                }
            }
        }
        for j in 0..3 {
            let sum: f64 = (0..3).map(|i| entries[i][j]).sum();
            if (sum - 1.0).abs() > tol {
                return Err(Error::BadConfusion(format!("column {j} sums to {sum}")));
            }
            for row in entries.iter_mut() {
                row[j] = row[j].clamp(0.0, 1.0) / sum;
            }
        }
        Ok(ConfusionMatrix { entries })
    }

    pub fn identity() -> Self {
        Self::uniform(1.0)
    }

    /// Diagonal `fidelity`, the remaining mass of each column split evenly
    /// between the two wrong outcomes.
    pub fn uniform(fidelity: f64) -> Self {
        let f = fidelity.clamp(0.0, 1.0);
        let off = (1.0 - f) / 2.0;
        let mut entries = [[off; 3]; 3];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = f;
        }
        ConfusionMatrix { entries }
    }

    /// Synthetic transmon default, average readout fidelity 0.876.
    pub fn transmon_default() -> Self {
        Self::uniform(0.876)
    }

    /// Synthetic trapped-ion placeholder with fidelity 0.97.
    pub fn ion_default() -> Self {
        Self::uniform(0.97)
    }

    /// Nine whitespace-separated reals, row-major.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split_whitespace()
            .map(|s| s.parse::<f64>().map_err(|e| Error::BadConfusion(format!("bad number `{s}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if values.len() != 9 {
            return Err(Error::BadConfusion(format!("expected 9 numbers, found {}", values.len())));
        }
        let mut entries = [[0.0; 3]; 3];
        for (k, v) in values.into_iter().enumerate() {
            entries[k / 3][k % 3] = v;
        }
        Self::with_tolerance(entries, FILE_STOCHASTIC_TOL)
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    pub fn get(&self, declared: usize, prepared: usize) -> f64 {
        self.entries[declared][prepared]
    }

    /// Column `prepared` as a distribution over declared outcomes.
    pub fn column(&self, prepared: usize) -> [f64; 3] {
        [0, 1, 2].map(|i| self.entries[i][prepared])
    }

    /// `C · p`.
    pub fn apply(&self, p: &[f64; 3]) -> [f64; 3] {
        [0, 1, 2].map(|i| (0..3).map(|j| self.entries[i][j] * p[j]).sum())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).abs());
            }
        }
        worst
    }
}

impl Default for ConfusionMatrix {
    fn default() -> Self {
        Self::identity()
    }
}

impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            writeln!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}
