use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const BATCH_SIZE: u64 = 1 << 14;
pub const MAX_REJECTION_RATE: f64 = 1e-3;

/// Running mean and second central moment of complex samples.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct McStats {
    pub count: u64,
    pub mean: Complex64,
    /// Σ |x − mean|².
    pub m2: f64,
    pub rejected: u64,
}

impl McStats {
    pub fn push(&mut self, x: Complex64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += (delta.conj() * (x - self.mean)).re;
    }

    pub fn merge(a: McStats, b: McStats) -> McStats {
        let count = a.count + b.count;
        if count == 0 {
            return McStats { rejected: a.rejected + b.rejected, ..McStats::default() };
        }
        let (na, nb) = (a.count as f64, b.count as f64);
        let delta = b.mean - a.mean;
        McStats {
            count,
            mean: a.mean + delta * (nb / count as f64),
            m2: a.m2 + b.m2 + delta.norm_sqr() * na * nb / count as f64,
            rejected: a.rejected + b.rejected,
        }
    }

    /// Standard error of the mean, sqrt((Var Re + Var Im)/n).
    pub fn std_error(&self) -> f64 {
        if self.count < 2 {
            return f64::INFINITY;
        }
        let n = self.count as f64;
        (self.m2 / (n - 1.0) / n).sqrt()
    }
}

fn tree_merge(stats: &[McStats]) -> McStats {
    match stats.len() {
        0 => McStats::default(),
        1 => stats[0],
        len => {
            let (left, right) = stats.split_at(len / 2);
            McStats::merge(tree_merge(left), tree_merge(right))
        }
    }
}

/// Mean of `f` over `n_samples` draws.
///
/// Batch b draws from ChaCha8 seeded with `seed` on stream b, so the result
/// does not depend on thread count. [`Error::KernelSingular`] from `f`
/// rejects the draw; any other error aborts.
pub fn mc_mean<F>(n_samples: u64, seed: u64, f: F) -> Result<McStats>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Complex64> + Sync,
{
    let batches = n_samples.div_ceil(BATCH_SIZE);
    let per_batch: Vec<McStats> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let size = BATCH_SIZE.min(n_samples - b * BATCH_SIZE);
            let mut stats = McStats::default();
            for _ in 0..size {
                match f(&mut rng) {
                    Ok(x) => stats.push(x),
                    Err(Error::KernelSingular) => stats.rejected += 1,
                    Err(e) => return Err(e),
                }
            }
            Ok(stats)
        })
        .collect::<Result<_>>()?;
    let total = tree_merge(&per_batch);
    if total.rejected as f64 >= MAX_REJECTION_RATE * n_samples as f64 {
        return Err(Error::ExcessiveRejection { rejected: total.rejected, samples: n_samples });
    }
    Ok(total)
}
