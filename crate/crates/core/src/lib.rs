//! Explanation-guided belief revision over finite first-order belief bases.
//!
//! A prior base `B` is revised by an explanation `E` of some observed fact
//! `phi`: the two are unioned, and a correction set is retracted so that the
//! remainder is consistent and still entails `phi`. A kernel-revision
//! baseline, the belief-change measure, postulate checkers and a small
//! scenario corpus sit alongside.

pub mod baseline;
pub mod corpus;
pub mod dsl;
pub mod error;
pub mod logic;
pub mod metrics;
pub mod postulates;
pub mod report;
pub mod revision;

pub use error::{Error, Result};
