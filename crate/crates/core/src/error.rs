use alloc::boxed::Box;
use alloc::string::String;

use crate::certificate::Counterexample;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what} is out of domain: {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported dimension {0} (supported: 1, 2, 3)")]
    UnsupportedDimension(usize),
    #[error("unsupported region: {0}")]
    UnsupportedRegion(&'static str),
    #[error("pieces {0} and {1} overlap")]
    OverlappingRegions(usize, usize),
    #[error("unsupported weight: {0}")]
    UnsupportedWeight(&'static str),
    #[error("norm bracket left the representable range (b = {0:e})")]
    Overflow(f64),
    #[error("hypothesis not established: {hypothesis}")]
    HypothesisNotEstablished {
        hypothesis: &'static str,
        counterexample: Option<Box<Counterexample>>,
    },
    #[error("no witness found: {0}")]
    NoWitness(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
