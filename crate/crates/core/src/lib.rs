//! Pricing European options on stocks that pay large discrete cash dividends.
//!
//! The crate bundles three families of pricers that are meant to be compared
//! against each other:
//!
//! * [`analytic`]: Black-Scholes style closed forms (spot, strike and hybrid
//!   dividend adjustments, their volatility-adjusted variants, a Brownian
//!   bridge implied volatility, and put-call parity violation corrections for
//!   puts).
//! * [`pde`]: a Crank-Nicolson finite-difference solver with policy-aware
//!   dividend jumps and selectable lower boundary conditions, plus a
//!   fixed-boundary PSOR American put used to referee those boundaries.
//! * [`mc`]: an antithetic Monte Carlo simulation of the jump-dividend process.
//!
//! [`harness`] ties them together into reproducible comparison scenarios.

pub mod analytic;
pub mod error;
pub mod harness;
pub mod market;
pub mod mc;
pub mod normal;
pub mod pde;

pub use analytic::{PricingMethod, SurvivorRecursion};
pub use error::{PricingError, Result};
pub use market::{Dividend, DividendPolicy, DividendSchedule, MarketParams, OptionKind};
pub use mc::{McConfig, McEstimate};
pub use normal::{norm_cdf, norm_pdf};
pub use pde::{BoundaryVariant, CnSolution, GridSpec};
