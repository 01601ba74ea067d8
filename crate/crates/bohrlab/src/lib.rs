//! Numerical laboratory for Bohr-type power-series radii on unit balls of
//! `l^n_q`.
//!
//! The library computes, brackets, and cross-checks two families of
//! quantities for holomorphic functions with positive real part and
//! `f(0) = 1` (the Caratheodory class):
//!
//! * the p-Bohr radius `H^n_p` of a ball `B_{l^n_q}`: the largest scale `r`
//!   such that the p-power majorant sum of every class member stays below 1
//!   on `r B_{l^n_q}`;
//! * the arithmetic Bohr radius `A_p`: the largest coordinate mean of a
//!   nonnegative radius vector admissible for the whole class.
//!
//! The infinite class is replaced by finite, reproducible batteries of
//! extremal and composed test functions ([`cara`]); radii are solved by
//! certified bisection and constrained ascent ([`engine`]); closed forms and
//! published bounds ([`catalog`]) tag every number with the side of the truth
//! it sits on.
//!
//! Start with the runnable examples (`cargo run --example radius_disk`), or
//! the `bohrlab` binary for batch tables.

pub mod cara;
pub mod catalog;
pub mod cli;
pub mod domains;
pub mod engine;
pub mod error;
pub mod report;
pub mod series;

pub use cara::{TestBattery, TestFunction};
pub use domains::{Exponent, LqBall, Posynomial};
pub use engine::{ArithEstimate, BohrParams, RadiusInterval};
pub use error::{Error, Result};
pub use series::{MultiIndex, TruncatedSeries};
