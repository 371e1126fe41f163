//! Materialization budgets: explicit boundaries between the exact tier and
//! the log tier.

/// Limits for materializing exact big integers.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Largest power-of-ten exponent the exact tier will materialize
    /// (10^(k!) terms require k! at or below this).
    pub max_pow10_exp: u64,
    /// Largest bit length for any single materialized integer (partial
    /// quotients, convergents, exact powers).
    pub max_int_bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pow10_exp: 1_000_000,
            max_int_bits: 40_000_000,
        }
    }
}

impl Budget {
    pub fn with_pow10_exp(mut self, e: u64) -> Self {
        self.max_pow10_exp = e;
        self
    }
}

/// Cooperative cancellation for long-running exact evaluations.
#[derive(Debug, Clone, Default)]
pub struct CancelToken {
    flag: std::sync::Arc<std::sync::atomic::AtomicBool>,
}

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.flag.store(true, std::sync::atomic::Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.flag.load(std::sync::atomic::Ordering::Relaxed)
    }

    pub(crate) fn check(&self) -> crate::error::Result<()> {
        if self.is_cancelled() {
            Err(crate::error::Error::Cancelled)
        } else {
            Ok(())
        }
    }
}
