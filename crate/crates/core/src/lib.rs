//! Exact-arithmetic toolkit for low-discrepancy point sets.
//!
//! Everything here computes with exact rationals and explicit digit
//! expansions: construction of Halton sequences and digital nets, exhaustive
//! net and admissibility verification, exact local and star discrepancy, and
//! the classical lower-bound constructions (anchored boxes with prescribed
//! digit patterns, residue windows for the Halton sequence) at desk scale.
//!
//! No floating point ever decides a verdict; decimal output is display-only.

pub mod acceptance;
pub mod badic;
pub mod discrepancy;
pub mod error;
pub mod generators;
pub mod levin_halton;
pub mod levin_net;
pub mod netcheck;
pub mod rational;

pub use badic::{BAdicNumber, BAdicPoint};
pub use error::{Error, Result};
pub use rational::Rational;
