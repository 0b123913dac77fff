use serde::{Deserialize, Serialize};

use super::{Chain, ChainStats, SamplerConfig};
use crate::error::{Error, Result};
use crate::lattice::{GridDomain, Walk};

/// Number of batches used for batch-means error bars.
pub const DEFAULT_BATCHES: usize = 20;

/// Sample mean and (n−1)-normalised standard deviation.
pub fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Mean of a correlated series and its batch-means standard error.
///
/// Value `i` of `n` goes to batch `⌊i·k/n⌋`, so batches differ in size by at most one.
pub fn batch_means(values: &[f64], batches: usize) -> (f64, f64) {
    let k = batches.min(values.len()).max(1);
    let mut sums = vec![(0.0, 0usize); k];
    for (i, v) in values.iter().enumerate() {
        let b = i * k / values.len();
        sums[b].0 += v;
        sums[b].1 += 1;
    }
    let means: Vec<f64> = sums.iter().map(|(s, c)| s / *c as f64).collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if k < 2 {
        return (mean, f64::NAN);
    }
    (mean, mean_and_std(&means).1 / (k as f64).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McmcRun {
    pub samples: Vec<Walk>,
    pub stats: ChainStats,
}

/// `n_samples` walks from one chain (stream 0) after burn-in and thinning.
pub fn sample_mcmc(domain: &GridDomain, config: &SamplerConfig, n_samples: usize) -> Result<McmcRun> {
    let mut chain = Chain::new(domain, config, 0)?;
    let samples = chain.run(config.burn_in, config.thinning, n_samples)?;
    Ok(McmcRun { samples, stats: chain.stats().clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaEstimate {
    pub mean_density: f64,
    pub std_error: f64,
    pub mean_length: f64,
    pub length_std_error: f64,
    pub acceptance_rate: f64,
}

/// Mean of `|γ| / |Ω|` over chain samples with a batch-means error.
pub fn estimate_theta(domain: &GridDomain, x: f64, n_samples: usize, config: &SamplerConfig) -> Result<ThetaEstimate> {
    if n_samples == 0 {
        return Err(Error::PreconditionViolation("n_samples must be positive".into()));
    }
    let config = SamplerConfig { x, ..config.clone() };
    let run = sample_mcmc(domain, &config, n_samples)?;
    let lengths: Vec<f64> = run.samples.iter().map(|w| w.len() as f64).collect();
    let (mean_length, length_std_error) = batch_means(&lengths, DEFAULT_BATCHES);
    let size = domain.len() as f64;
    Ok(ThetaEstimate {
        mean_density: mean_length / size,
        std_error: length_std_error / size,
        mean_length,
        length_std_error,
        acceptance_rate: run.stats.acceptance_rate(),
    })
}
