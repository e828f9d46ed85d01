//! Exact enumeration of k-noncrossing RNA structures and the limit laws of
//! their arc-count distribution.
//!
//! * [`exactcount`] counts matchings and structures in arbitrary precision.
//! * [`series`] checks the bivariate functional equation coefficientwise over
//!   exact rationals.
//! * [`oracle`] is the exponential brute-force ground truth.
//! * [`limitlaw`] evaluates the dominant singularity, the limit constants and
//!   the central/local limit distances of the exact distributions.
//! * [`cli`] is the `knc` command-line front end.

pub mod cli;
pub mod error;
pub mod exactcount;
pub mod limitlaw;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
