//! Machine-checkable outcome of a theorem check.

use alloc::string::String;
use alloc::vec::Vec;

use crate::domain::{Ball, DominationCertificate, SubmultiplicativeReport, Weight};
use crate::grid;
use crate::young::{GridCheck, PrecedenceCertificate, YoungFunction};

/// Hypothesis established before a conclusion was checked.
#[derive(Clone, Debug, PartialEq)]
pub enum Hypothesis {
    /// `Φ₁ ≺ Φ₂`
    Precedence {
        phi1: YoungFunction,
        phi2: YoungFunction,
        certificate: PrecedenceCertificate,
    },
    /// `u₁ ⪯ u₂`
    Domination {
        u1: Weight,
        u2: Weight,
        certificate: DominationCertificate,
    },
    /// `u(x+y) ≤ u(x)·u(y)`
    Submultiplicative { u: Weight, report: SubmultiplicativeReport },
    /// `Φ₁⁻¹·Φ₂⁻¹ ≤ Φ₃⁻¹`
    InverseProduct {
        phi1: YoungFunction,
        phi2: YoungFunction,
        phi3: YoungFunction,
        check: GridCheck,
    },
    /// `u₃ ≤ u₁·u₂` on samples.
    WeightProduct {
        u1: Weight,
        u2: Weight,
        u3: Weight,
        samples: usize,
        max_ratio: f64,
    },
    /// `lower ≤ upper` on samples from `region`.
    WeightOrder {
        lower: Weight,
        upper: Weight,
        region: Ball,
        samples: usize,
        max_ratio: f64,
    },
    /// `1 ≤ p₂ < p₁ < ∞`
    ExponentOrder { p1: f64, p2: f64 },
}

impl Hypothesis {
    pub fn kind(&self) -> &'static str {
        match self {
            Hypothesis::Precedence { .. } => "precedence",
            Hypothesis::Domination { .. } => "domination",
            Hypothesis::Submultiplicative { .. } => "submultiplicative",
            Hypothesis::InverseProduct { .. } => "inverse_product",
            Hypothesis::WeightProduct { .. } => "weight_product",
            Hypothesis::WeightOrder { .. } => "weight_order",
            Hypothesis::ExponentOrder { .. } => "exponent_order",
        }
    }
}

/// One checked inequality `lhs ≤ constant·rhs` (or, for agreement checks,
/// `lhs ≈ rhs`).
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceRecord {
    pub index: usize,
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    /// `lhs / rhs`, with `0/0 = 0`.
    pub ratio: f64,
    pub passed: bool,
    pub degenerate: bool,
}

impl InstanceRecord {
    pub fn new(index: usize, label: String, lhs: f64, rhs: f64, constant: f64, passed: bool) -> Self {
        Self {
            index,
            label,
            lhs,
            rhs,
            constant,
            ratio: grid::ratio(lhs, rhs),
            passed,
            degenerate: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    pub instances: usize,
    /// Largest `lhs/rhs` over non-degenerate instances.
    pub max_ratio: f64,
    /// Instance attaining `max_ratio`, or the worst failing one.
    pub witness: Option<InstanceRecord>,
    pub verdict: Verdict,
    pub seed: Option<u64>,
    pub degenerate: usize,
    /// Named constants used by the check.
    pub parameters: Vec<(String, f64)>,
    pub records: Vec<InstanceRecord>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Collects instance records; `merge` is associative so partial results
/// from independent workers combine in any grouping.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Accumulator {
    records: Vec<InstanceRecord>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: InstanceRecord) {
        self.records.push(record);
    }

    pub fn merge(mut self, other: Accumulator) -> Accumulator {
        self.records.extend(other.records);
        self
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn finish(
        self,
        theorem: impl Into<String>,
        hypotheses: Vec<Hypothesis>,
        seed: Option<u64>,
        parameters: Vec<(String, f64)>,
    ) -> TheoremReport {
        let mut max_ratio = 0.0f64;
        let mut best: Option<&InstanceRecord> = None;
        let mut worst_fail: Option<&InstanceRecord> = None;
        let mut degenerate = 0;
        for r in &self.records {
            if r.degenerate {
                degenerate += 1;
            } else if best.is_none_or(|b| r.ratio > b.ratio) {
                best = Some(r);
                max_ratio = r.ratio;
            }
            if !r.passed && worst_fail.is_none_or(|w| r.ratio > w.ratio) {
                worst_fail = Some(r);
            }
        }
        let verdict = if worst_fail.is_some() { Verdict::Fail } else { Verdict::Pass };
        let witness = worst_fail.or(best).cloned();
        TheoremReport {
            theorem: theorem.into(),
            hypotheses,
            instances: self.records.len(),
            max_ratio,
            witness,
            verdict,
            seed,
            degenerate,
            parameters,
            records: self.records,
        }
    }
}
