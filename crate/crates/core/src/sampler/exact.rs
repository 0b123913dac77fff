use rand::Rng;

use super::SamplerConfig;
use crate::enumerate::{enumerate_domain_walks, Budget};
use crate::error::{Error, Result};
use crate::lattice::{GridDomain, Walk};

/// All walks of a domain with their cumulative weights.
#[derive(Clone, Debug)]
pub struct ExactSampler {
    walks: Vec<Walk>,
    cumulative: Vec<f64>,
    x: f64,
}

impl ExactSampler {
    pub fn new(domain: &GridDomain, x: f64, budget: &Budget) -> Result<Self> {
        SamplerConfig::default().with_x(x).validate()?;
        let mut walks = enumerate_domain_walks(domain, budget)?;
        walks.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.encode().cmp(&b.encode())));
        if walks.is_empty() {
            return Err(Error::InvalidDomain("no walk joins the marked sites".into()));
        }
        // weights relative to the longest walk avoid overflow for large x
        let top = walks.iter().map(Walk::len).max().unwrap_or(0) as f64;
        let mut acc = 0.0;
        let cumulative = walks
            .iter()
            .map(|w| {
                acc += ((w.len() as f64 - top) * x.ln()).exp();
                acc
            })
            .collect();
        Ok(ExactSampler { walks, cumulative, x })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// Walks sorted by length, then by encoding.
    pub fn walks(&self) -> &[Walk] {
        &self.walks
    }

    pub fn probability(&self, i: usize) -> f64 {
        let prev = if i == 0 { 0.0 } else { self.cumulative[i - 1] };
        (self.cumulative[i] - prev) / self.total()
    }

    fn total(&self) -> f64 {
        *self.cumulative.last().expect("nonempty")
    }

    /// Index of a walk drawn from the measure.
    pub fn draw_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u = rng.random::<f64>() * self.total();
        self.cumulative.partition_point(|&c| c <= u).min(self.walks.len() - 1)
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> &Walk {
        &self.walks[self.draw_index(rng)]
    }

    /// Mean length under the measure.
    pub fn mean_length(&self) -> f64 {
        (0..self.walks.len()).map(|i| self.probability(i) * self.walks[i].len() as f64).sum()
    }
}

/// One draw with the configured seed.
pub fn sample_exact(domain: &GridDomain, config: &SamplerConfig, budget: &Budget) -> Result<Walk> {
    config.validate()?;
    let sampler = ExactSampler::new(domain, config.x, budget)?;
    Ok(sampler.draw(&mut config.rng(0)).clone())
}
