//! Exact construction of ultra-strong Liouville numbers, evaluation of the
//! lacunary series F(z) = sum_k alpha_k z^k / 10^(k!) at their convergents,
//! and a rigorous audit of the inequalities that make F map these numbers to
//! Liouville numbers.
//!
//! Two arithmetic tiers back everything:
//! * exact big-integer / big-rational arithmetic wherever digits fit in a
//!   configurable budget, and
//! * [`bigmath::LogMag`], a sound log10-interval algebra, for magnitudes like
//!   10^(64!) that can never be written out.
//!
//! Every check is pure and deterministic; reports are reproducible
//! byte-for-byte from the same configuration.

pub mod audit;
pub mod bigmath;
pub mod budget;
pub mod cf;
mod checks;
pub mod decimal;
pub mod error;
pub mod lacunary;
pub mod liouville;
pub mod report;

pub use checks::CheckOutcome;
pub use error::{Error, Result};
