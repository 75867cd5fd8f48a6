//! Exact-rational analysis of increasing set families.
//!
//! The crate computes, as exact rationals or arbitrarily narrow rational
//! enclosures: probability thresholds, expectation thresholds (integral and
//! fractional), minimum-cost covers and their optima, and the copy-splitting
//! transform that replaces each ground element by k independent copies. A
//! verification layer checks the comparison bounds relating these quantities
//! and reports certified verdicts. No floating point participates in any
//! computation; decimals appear only in clearly marked display output.

pub mod cloning;
pub mod cover;
pub mod enclosure;
pub mod error;
pub mod expectation;
pub mod family;
pub mod format;
pub mod ground;
pub mod interval;
pub mod lp;
pub mod rational;
pub mod solver;
pub mod symmetry;
pub mod threshold;
pub mod verify;

pub use cover::Cover;
pub use enclosure::Enclosure;
pub use error::{Error, Result};
pub use family::Family;
pub use ground::{GroundSet, Mask};
