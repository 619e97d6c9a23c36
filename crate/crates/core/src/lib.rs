//! Powered, powerful and smooth numbers in short intervals.
//!
//! - [`arith`]: exact predicates on a single factorization.
//! - [`sieve`]: factoring and classifying every integer of an interval `(x, x+y]`.
//! - [`lab`]: counting experiments with bound-ratio reports.
//! - [`abc_ap`]: the identity-based abc triples, progression search, and `r_k(N)`.
//! - [`cli`]: the `powered` command-line front end.

pub mod abc_ap;
pub mod arith;
pub mod cli;
pub(crate) mod dec;
mod error;
pub mod lab;
pub mod sieve;

pub use error::{Error, Result};
