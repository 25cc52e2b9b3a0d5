//! Evidence objects shared by the certificate searches.

use alloc::string::String;
use alloc::vec::Vec;

/// Result of a search that either certifies an inequality on a grid or
/// exhibits a point where it fails.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome<C> {
    Certified(C),
    Refuted(Counterexample),
}

impl<C> Outcome<C> {
    pub fn certificate(&self) -> Option<&C> {
        match self {
            Outcome::Certified(c) => Some(c),
            Outcome::Refuted(_) => None,
        }
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Outcome::Certified(_) => None,
            Outcome::Refuted(c) => Some(c),
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Outcome::Certified(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Scalar(f64),
    Point(Vec<f64>),
    Pair { x: Vec<f64>, y: Vec<f64> },
    Function { index: usize, label: String },
}

/// Where along the sampled axis a violation sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    /// Violated at the smallest grid point: persists as t → 0.
    TowardZero,
    /// Violated at the largest grid point: persists as t → ∞.
    TowardInfinity,
    BothEnds,
    Interior,
    /// Ratio grows across the top decades of the grid.
    Unbounded,
}

impl Trend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Trend::TowardZero => "t->0",
            Trend::TowardInfinity => "t->inf",
            Trend::BothEnds => "both",
            Trend::Interior => "interior",
            Trend::Unbounded => "unbounded",
        }
    }
}

/// `lhs > rhs` at `witness` for the inequality `lhs <= rhs` being refuted.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub witness: Witness,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    /// Constant that was being tested when the violation was found.
    pub constant: Option<f64>,
    pub trend: Option<Trend>,
}
