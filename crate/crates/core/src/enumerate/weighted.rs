use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Exact tally of configurations by length.
///
/// The counts are the source of truth; [`WeightedCount::evaluate`] turns them
/// into a partition function value `Σ count[n]·x^n` in `f64`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedCount {
    counts: BTreeMap<usize, BigUint>,
}

impl WeightedCount {
    pub fn new() -> Self {
        Self::default()
    }

    /// `counts[n]` is the number of configurations of length `n`.
    pub fn from_counts(counts: &[u64]) -> Self {
        let mut w = WeightedCount::new();
        for (n, &c) in counts.iter().enumerate() {
            w.add_count(n, c);
        }
        w
    }

    pub fn add_count(&mut self, length: usize, count: impl Into<BigUint>) {
        let count = count.into();
        if count.is_zero() {
            return;
        }
        *self.counts.entry(length).or_default() += count;
    }

    pub fn get(&self, length: usize) -> BigUint {
        self.counts.get(&length).cloned().unwrap_or_default()
    }

    pub fn get_u64(&self, length: usize) -> u64 {
        self.get(length).to_u64().expect("count fits in u64")
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Non-zero `(length, count)` pairs in increasing length.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> + '_ {
        self.counts.iter().map(|(&n, c)| (n, c))
    }

    pub fn min_length(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    /// `Σ count[n]·x^n`.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.counts.iter().map(|(&n, c)| to_f64(c) * x.powi(n as i32)).sum()
    }

    /// Mean length under the weights `x^n`.
    pub fn mean_length(&self, x: f64) -> f64 {
        let (num, den) = self.log_weights(x).fold((0.0, 0.0), |(a, b), (n, w)| (a + n as f64 * w, b + w));
        num / den
    }

    /// Probability of each length under the weights `x^n`.
    pub fn length_distribution(&self, x: f64) -> Vec<(usize, f64)> {
        let w: Vec<(usize, f64)> = self.log_weights(x).collect();
        let z: f64 = w.iter().map(|p| p.1).sum();
        w.into_iter().map(|(n, p)| (n, p / z)).collect()
    }

    // Weights rescaled by the largest term so large x or long walks do not overflow.
    fn log_weights(&self, x: f64) -> impl Iterator<Item = (usize, f64)> + '_ {
        let lx = x.ln();
        let terms: Vec<(usize, f64)> =
            self.counts.iter().map(|(&n, c)| (n, ln_count(c) + n as f64 * lx)).collect();
        let top = terms.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
        terms.into_iter().map(move |(n, l)| (n, (l - top).exp()))
    }

    /// True when every coefficient of `self` is at least the one in `other`.
    pub fn dominates(&self, other: &WeightedCount) -> bool {
        other.counts.iter().all(|(n, c)| self.counts.get(n).is_some_and(|s| s >= c))
    }
}

fn to_f64(c: &BigUint) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}

/// Natural log of a count too large for `f64`.
pub fn ln_count(c: &BigUint) -> f64 {
    match c.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = c.bits();
            let shifted = c >> (bits - 64);
            shifted.to_f64().unwrap().ln() + (bits - 64) as f64 * std::f64::consts::LN_2
        }
    }
}

impl Add for &WeightedCount {
    type Output = WeightedCount;
    fn add(self, other: &WeightedCount) -> WeightedCount {
        let mut out = self.clone();
        for (&n, c) in &other.counts {
            out.add_count(n, c.clone());
        }
        out
    }
}

/// Product of generating functions (convolution of the length tallies).
impl Mul for &WeightedCount {
    type Output = WeightedCount;
    fn mul(self, other: &WeightedCount) -> WeightedCount {
        let mut out = WeightedCount::new();
        for (&n, c) in &self.counts {
            for (&k, d) in &other.counts {
                out.add_count(n + k, c * d);
            }
        }
        out
    }
}
