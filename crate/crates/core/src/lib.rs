//! Weighted and weak Orlicz (Luxemburg) norms of simple functions on ℝⁿ,
//! plus numerical checks of the inclusion, translation and Hölder
//! inequalities between weighted Orlicz spaces.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is a pure
//! function of its inputs; randomized checks take an explicit seed.
#![no_std]
// `!(x > 0.0)` is used on purpose so NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod math;

pub mod certificate;
pub mod corpus;
pub mod domain;
pub mod error;
pub mod grid;
pub mod inclusion;
pub mod norms;
pub mod quadrature;
pub mod report;
pub mod young;

pub use corpus::{Corpus, CorpusSpec};
pub use certificate::{Counterexample, Outcome, Trend, Witness};
pub use domain::{Ball, BoxRegion, Piece, Region, SimpleFunction, Weight};
pub use error::{Error, Result};
pub use grid::{LogGrid, Tolerance};
pub use norms::{Mode, NormResult, QuadratureSpec};
pub use report::{Hypothesis, InstanceRecord, TheoremReport, Verdict};
pub use young::YoungFunction;
