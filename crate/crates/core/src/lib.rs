//! Vanishing orders of newforms at cusps, computed from local representation data.
//!
//! The crate is layered bottom-up:
//!
//! * [`padic_chars`]: characters of Q_p^x and exhaustive searches over them;
//! * [`gauss_eps`]: additive character, Gauss sums and local root numbers;
//! * [`local_reps`]: descriptors of ramified local representations of GL(2);
//! * [`whittaker`]: local Whittaker newform values and the local vanishing order;
//! * [`cusps`]: cusps of Gamma_0(N), widths and scaling matrices;
//! * [`global`]: assembling local data into per-cusp vanishing orders;
//! * [`verify`]: self-check suites used by the `verify` subcommand.

pub mod arith;
pub mod cusps;
pub mod error;
pub mod gauss_eps;
pub mod global;
pub mod local_reps;
pub mod padic_chars;
pub mod verify;
pub mod whittaker;

pub use error::{Error, Result};

use std::sync::OnceLock;

/// Default absolute tolerance for floating-point comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Working tolerance: `CUSPVAN_TOL` if set to a positive number, else
/// [`DEFAULT_TOLERANCE`]. Read once per process.
pub fn tolerance() -> f64 {
    static TOL: OnceLock<f64> = OnceLock::new();
    *TOL.get_or_init(|| {
        std::env::var("CUSPVAN_TOL")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .unwrap_or(DEFAULT_TOLERANCE)
    })
}
