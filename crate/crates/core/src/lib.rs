//! Fractional repetition (FR) codes for distributed storage.
//!
//! An FR code places replicated packets (points) on storage nodes (blocks).
//! This crate builds codes from regular graphs and combinatorial designs,
//! computes their exact supported file size, repair locality and minimum
//! distance by exhaustive search, and evaluates the recursive file-size bounds
//! and the minimum-distance upper bounds together with their attainment
//! conditions.
//!
//! The exhaustive kernels are data-parallel over contiguous ranges of the
//! subset space when the `parallel` feature (on by default) is enabled; the
//! results are identical to sequential execution.

mod arith;
mod bits;
pub mod designs;
pub mod distance;
pub mod error;
pub mod filesize;
pub mod graphs;
pub mod incidence;
pub mod search;

pub use arith::{binomial, is_prime};
pub use error::{FrError, Result};
pub use incidence::{dual, validate_fr, CodeParams, FrCode, IncidenceStructure};
pub use search::{Execution, SearchOptions};
