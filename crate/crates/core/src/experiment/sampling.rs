use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::Binomial;

use crate::{Error, Result};

/// Negative probabilities down to this are treated as rounding noise.
pub const NEGATIVE_TOL: f64 = 1e-9;

/// Addresses one independent random stream.
///
/// Each `(seed, domain, stream)` triple selects its own ChaCha keystream, so
/// draws never depend on evaluation order or thread count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub seed: u64,
    pub domain: u32,
    pub stream: u64,
}

impl StreamKey {
    pub const GRID: u32 = 0;
    pub const CALIBRATION: u32 = 1;
    pub const DILATION: u32 = 2;

    /// Stream for grid point `(r_idx, t_idx)`.
    pub fn grid(seed: u64, r_idx: u32, t_idx: u32) -> Self {
        StreamKey { seed, domain: Self::GRID, stream: (u64::from(r_idx) << 32) | u64::from(t_idx) }
    }

    pub fn rng(&self) -> ChaCha12Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..12].copy_from_slice(&self.domain.to_le_bytes());
        let mut rng = ChaCha12Rng::from_seed(key);
        rng.set_stream(self.stream);
        rng
    }
}

/// Multinomial draw of `shots` outcomes from `probs`, as a chain of binomial
/// draws on the conditional probabilities.
pub fn sample_counts(probs: &[f64; 3], shots: u64, key: StreamKey) -> Result<[u64; 3]> {
    if let Some(&bad) = probs.iter().find(|p| !p.is_finite() || **p < -NEGATIVE_TOL) {
        return Err(Error::BadDistribution(format!("component {bad}")));
    }
    let p = probs.map(|x| x.max(0.0));
    let total: f64 = p.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::BadDistribution("all components are zero".into()));
    }
    let mut rng = key.rng();
    let mut counts = [0u64; 3];
    let mut left = shots;
    let mut mass = total;
    for k in 0..2 {
        if left == 0 {
            break;
        }
        let q = if mass > 0.0 { (p[k] / mass).clamp(0.0, 1.0) } else { 0.0 };
        let draw = Binomial::new(left, q).map_err(|e| Error::BadDistribution(e.to_string()))?;
        counts[k] = rng.sample(draw);
        left -= counts[k];
        mass -= p[k];
    }
    counts[2] = left;
    Ok(counts)
}

/// Counts closest to `probs · shots` that still sum to `shots`, by largest
/// remainder.
pub fn expected_counts(probs: &[f64; 3], shots: u64) -> [u64; 3] {
    let scaled = probs.map(|p| p.max(0.0) * shots as f64);
    let mut counts = scaled.map(|x| x.floor() as u64);
    let mut order = [0, 1, 2];
    order.sort_by(|&a, &b| (scaled[b] - scaled[b].floor()).total_cmp(&(scaled[a] - scaled[a].floor())));
    let mut assigned: u64 = counts.iter().sum();
    for &k in order.iter().cycle() {
        if assigned >= shots {
            break;
        }
        counts[k] += 1;
        assigned += 1;
    }
    while assigned > shots {
        let k = (0..3).max_by_key(|&k| counts[k]).unwrap_or(0);
        counts[k] -= 1;
        assigned -= 1;
    }
    counts
}
