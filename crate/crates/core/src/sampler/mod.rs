//! Sampling walks from `P(γ) = x^|γ| / Z(x)` between the marked sites of a domain.
//!
//! [`ExactSampler`] enumerates the walks once and draws by inversion, which is
//! only viable on tiny domains. [`Chain`] is a fixed-endpoint Metropolis chain
//! with local moves (kink insertion/deletion and corner flips).

mod chain;
mod exact;
mod stats;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chain::{acceptance_probability, propose, Chain, ChainStats, MoveKind, Proposal};
pub use exact::{sample_exact, ExactSampler};
pub use stats::{batch_means, estimate_theta, mean_and_std, sample_mcmc, McmcRun, ThetaEstimate};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Step weight.
    pub x: f64,
    pub seed: u64,
    /// Sweeps discarded before the first sample. A sweep is `|Ω|` attempted moves.
    pub burn_in: usize,
    /// Sweeps between consecutive samples.
    pub thinning: usize,
    /// Proposals that would make the walk longer than this are rejected.
    pub max_length: usize,
    /// Consecutive rejected attempts after which the chain is declared frozen.
    pub frozen_window: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { x: 1.0, seed: 0, burn_in: 100, thinning: 1, max_length: usize::MAX, frozen_window: 1_000_000 }
    }
}

impl SamplerConfig {
    pub fn with_x(mut self, x: f64) -> Self {
        self.x = x;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x > 0.0 && self.x.is_finite()) {
            return Err(Error::PreconditionViolation(format!("step weight x = {} must be positive", self.x)));
        }
        if self.frozen_window == 0 {
            return Err(Error::PreconditionViolation("frozen_window must be positive".into()));
        }
        Ok(())
    }

    /// Generator for chain number `stream` under this seed.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}
