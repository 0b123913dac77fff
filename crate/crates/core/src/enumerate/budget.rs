use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Limits for the exponential enumerations.
///
/// Size limits are checked up front; the time limit is polled while the
/// search runs and aborts it with [`Error::ResourceLimit`].
#[derive(Clone, Debug, PartialEq)]
pub struct Budget {
    pub max_seconds: Option<f64>,
    /// Largest walk length / animal size.
    pub max_n: usize,
    /// Largest box half-size `m` for polygon enumeration.
    pub max_m: usize,
    /// Largest number of boxes in a family.
    pub max_family: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_seconds: None, max_n: 14, max_m: 2, max_family: 3 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_seconds: None, max_n: usize::MAX, max_m: usize::MAX, max_family: usize::MAX }
    }

    pub fn with_seconds(mut self, secs: f64) -> Self {
        self.max_seconds = Some(secs);
        self
    }

    pub fn with_max_n(mut self, n: usize) -> Self {
        self.max_n = n;
        self
    }

    pub(crate) fn check_n(&self, n: usize, what: &str) -> Result<()> {
        if n > self.max_n {
            return Err(Error::ResourceLimit(format!("{what}: n = {n} exceeds max_n = {}", self.max_n)));
        }
        Ok(())
    }

    pub(crate) fn check_m(&self, m: usize) -> Result<()> {
        if m > self.max_m {
            return Err(Error::ResourceLimit(format!("m = {m} exceeds max_m = {}", self.max_m)));
        }
        Ok(())
    }

    pub(crate) fn check_family(&self, size: usize) -> Result<()> {
        if size > self.max_family {
            return Err(Error::ResourceLimit(format!(
                "family of {size} boxes exceeds max_family = {}",
                self.max_family
            )));
        }
        Ok(())
    }

    pub(crate) fn guard(&self) -> Guard {
        Guard {
            deadline: self.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
            tripped: AtomicBool::new(false),
        }
    }
}

/// Shared stop flag for one enumeration run.
#[derive(Debug)]
pub(crate) struct Guard {
    deadline: Option<Instant>,
    tripped: AtomicBool,
}

impl Guard {
    pub(crate) const POLL_MASK: u64 = (1 << 14) - 1;

    /// Cheap check of the sticky stop flag, for every search node.
    #[inline]
    pub(crate) fn is_tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }

    pub(crate) fn expired(&self) -> bool {
        if self.tripped.load(Ordering::Relaxed) {
            return true;
        }
        match self.deadline {
            Some(d) if Instant::now() >= d => {
                self.tripped.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }

    pub(crate) fn finish<T>(&self, value: T, what: &str) -> Result<T> {
        if self.tripped.load(Ordering::Relaxed) {
            Err(Error::ResourceLimit(format!("{what}: time budget exhausted")))
        } else {
            Ok(value)
        }
    }
}
