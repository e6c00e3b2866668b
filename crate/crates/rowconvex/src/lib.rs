//! Exact enumeration of fixed row-convex polyominoes.
//!
//! A polyomino is row-convex when the cells of every row form one contiguous
//! run. This crate counts them by area along four independent routes
//! (partition formula, composition sum, quadratic transfer DP, linear
//! recurrence), expands the rational generating function
//! `x (1 - x)^3 / (1 - 5x + 7x^2 - 4x^3)` exactly, cross-checks everything
//! against a brute-force grid enumerator, and analyses the dominant
//! singularity for growth-rate and leading-term estimates.
//!
//! The counting sequence 1, 2, 6, 19, 61, 196, ... is OEIS A001169.

pub mod analysis;
pub mod counting;
pub mod error;
pub mod genfunc;
pub mod oracle;
pub mod partitions;

pub use error::{Error, Result};
