//! Theorem-level checks. Each verifier first establishes (or re-validates)
//! its hypotheses and refuses to run otherwise, then checks the conclusion
//! on every instance and returns a [`TheoremReport`].

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{Counterexample, Outcome, Trend, Witness};
use crate::corpus::Corpus;
use crate::domain::{
    self, check_submultiplicative, weight_dominates, Ball, DominationCertificate, Region, Sampling,
    SimpleFunction, SubmultiplicativeReport, Weight,
};
use crate::error::{invalid, Error, Result};
use crate::grid::{self, LogGrid, Tolerance};
use crate::math;
use crate::norms::{self, luxemburg_norm, weak_luxemburg_norm, Mode, NormResult, QuadratureSpec};
use crate::report::{Accumulator, Hypothesis, InstanceRecord, TheoremReport};
use crate::young::{inverse_product_dominated, PrecedenceCertificate, YoungFunction};

pub mod ids {
    pub const YOUNG_INVERSE: &str = "young_inverse";
    pub const CHAR_NORM: &str = "char_norm";
    pub const PHI_INCLUSION: &str = "phi_inclusion";
    pub const TRANSLATION_BOUNDS: &str = "translation_bounds";
    pub const WEIGHT_INCLUSION: &str = "weight_inclusion";
    pub const NO_INCLUSION: &str = "no_inclusion";
    pub const HOLDER: &str = "holder";
    pub const BALL_EMBEDDING: &str = "ball_embedding";
    pub const STRONG_TO_WEAK: &str = "strong_to_weak";
}

/// Hölder constant.
pub const HOLDER_CONSTANT: f64 = 2.0;

fn not_established(hypothesis: &'static str, ce: Option<Counterexample>) -> Error {
    Error::HypothesisNotEstablished { hypothesis, counterexample: ce.map(Box::new) }
}

fn tolerance_for(modes: &[Mode]) -> Tolerance {
    if modes.contains(&Mode::Quadrature) {
        Tolerance::QUADRATURE_PATH
    } else {
        Tolerance::EXACT_PATH
    }
}

/// Precedence certificate on the default grids, or the search's
/// counterexample as a hypothesis error.
pub fn establish_precedence(phi1: &YoungFunction, phi2: &YoungFunction) -> Result<PrecedenceCertificate> {
    match phi1.precedes(phi2, LogGrid::default_t(), &grid::default_c_grid())? {
        Outcome::Certified(c) => Ok(c),
        Outcome::Refuted(ce) => Err(not_established("phi1 precedes phi2", Some(ce))),
    }
}

pub fn establish_domination(u1: &Weight, u2: &Weight, sampling: Sampling) -> Result<DominationCertificate> {
    match weight_dominates(u1, u2, sampling, &grid::default_c_grid())? {
        Outcome::Certified(c) => Ok(c),
        Outcome::Refuted(ce) => Err(not_established("u1 dominated by u2", Some(ce))),
    }
}

pub fn establish_submultiplicative(u: &Weight, sampling: Sampling) -> Result<SubmultiplicativeReport> {
    let report = check_submultiplicative(u, sampling)?;
    match &report.violation {
        None => Ok(report),
        Some(ce) => Err(not_established("submultiplicative weight", Some(ce.clone()))),
    }
}

fn revalidate_precedence(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    cert: &PrecedenceCertificate,
) -> Result<Hypothesis> {
    if !cert.holds_for(phi1, phi2) {
        return Err(not_established("phi1 precedes phi2", None));
    }
    Ok(Hypothesis::Precedence { phi1: phi1.clone(), phi2: phi2.clone(), certificate: cert.clone() })
}

fn revalidate_domination(u1: &Weight, u2: &Weight, cert: &DominationCertificate) -> Result<Hypothesis> {
    if !cert.holds_for(u1, u2) {
        return Err(not_established("u1 dominated by u2", None));
    }
    Ok(Hypothesis::Domination { u1: u1.clone(), u2: u2.clone(), certificate: cert.clone() })
}

fn norm(f: &SimpleFunction, phi: &YoungFunction, u: &Weight, q: QuadratureSpec) -> Result<NormResult> {
    luxemburg_norm(f, phi, u, q)
}

/// `‖f‖_{Φ₁,u} ≤ C·‖f‖_{Φ₂,u}` on the corpus, with `C` from the precedence
/// certificate.
pub fn verify_phi_inclusion(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    u: &Weight,
    cert: &PrecedenceCertificate,
    corpus: &Corpus,
    q: QuadratureSpec,
) -> Result<TheoremReport> {
    let hyp = revalidate_precedence(phi1, phi2, cert)?;
    let mut acc = Accumulator::new();
    for (i, f) in corpus.functions.iter().enumerate() {
        let n1 = norm(f, phi1, u, q)?;
        let n2 = norm(f, phi2, u, q)?;
        let tol = tolerance_for(&[n1.mode, n2.mode]);
        let passed = tol.leq(n1.value, cert.c * n2.value);
        acc.push(InstanceRecord::new(i, format!("f{i}"), n1.value, n2.value, cert.c, passed));
    }
    Ok(acc.finish(ids::PHI_INCLUSION, vec![hyp], Some(corpus.spec.seed), vec![("C".into(), cert.c)]))
}

/// Searches balls `B(0, r)` for `‖χ_B‖_{Φ₁} > C·‖χ_B‖_{Φ₂}`, the witness
/// used when `Φ₁ ≺ Φ₂` fails. Returns the largest violation on the grid.
pub fn falsify_phi_inclusion(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    c: f64,
    dim: usize,
    r_grid: LogGrid,
) -> Result<Option<Counterexample>> {
    domain::check_dim(dim)?;
    let tol = Tolerance::EXACT_PATH;
    let mut worst: Option<Counterexample> = None;
    for r in r_grid.values() {
        let ball = Ball::centered(dim, r)?;
        let lhs = norms::char_norm_closed_form(phi1, &ball);
        let rhs = c * norms::char_norm_closed_form(phi2, &ball);
        let ratio = grid::ratio(lhs, rhs);
        if !tol.leq(lhs, rhs) && worst.as_ref().is_none_or(|w| ratio > w.ratio) {
            worst = Some(Counterexample {
                witness: Witness::Scalar(r),
                lhs,
                rhs,
                ratio,
                constant: Some(c),
                trend: None,
            });
        }
    }
    Ok(worst)
}

/// `‖f‖_{Φ₁,u₁} ≤ C₁·C₂·‖f‖_{Φ₂,u₂}` with `C₁` from `Φ₁ ≺ Φ₂` and `C₂`
/// from `u₁ ⪯ u₂`.
#[allow(clippy::too_many_arguments)]
pub fn verify_weight_inclusion(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    u1: &Weight,
    u2: &Weight,
    prec: &PrecedenceCertificate,
    dom: &DominationCertificate,
    corpus: &Corpus,
    q: QuadratureSpec,
) -> Result<TheoremReport> {
    let hyps = vec![revalidate_precedence(phi1, phi2, prec)?, revalidate_domination(u1, u2, dom)?];
    let c = prec.c * dom.c;
    let mut acc = Accumulator::new();
    for (i, f) in corpus.functions.iter().enumerate() {
        let n1 = norm(f, phi1, u1, q)?;
        let n2 = norm(f, phi2, u2, q)?;
        let tol = tolerance_for(&[n1.mode, n2.mode]);
        let passed = tol.leq(n1.value, c * n2.value);
        acc.push(InstanceRecord::new(i, format!("f{i}"), n1.value, n2.value, c, passed));
    }
    let params = vec![("C1".into(), prec.c), ("C2".into(), dom.c), ("C".into(), c)];
    Ok(acc.finish(ids::WEIGHT_INCLUSION, hyps, Some(corpus.spec.seed), params))
}

/// Searches translates `T_x f` for `‖T_x f‖_{Φ₁,u₁} > C·‖T_x f‖_{Φ₂,u₂}`,
/// the witness used when `u₁ ⪯ u₂` fails.
#[allow(clippy::too_many_arguments)]
pub fn falsify_weight_inclusion(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    u1: &Weight,
    u2: &Weight,
    c: f64,
    f: &SimpleFunction,
    xs: &[Vec<f64>],
    q: QuadratureSpec,
) -> Result<Option<Counterexample>> {
    let mut worst: Option<Counterexample> = None;
    for x in xs {
        let g = f.translate(x)?;
        let n1 = norm(&g, phi1, u1, q)?;
        let n2 = norm(&g, phi2, u2, q)?;
        let tol = tolerance_for(&[n1.mode, n2.mode]);
        let rhs = c * n2.value;
        let ratio = grid::ratio(n1.value, rhs);
        if !tol.leq(n1.value, rhs) && worst.as_ref().is_none_or(|w| ratio > w.ratio) {
            worst = Some(Counterexample {
                witness: Witness::Point(x.clone()),
                lhs: n1.value,
                rhs,
                ratio,
                constant: Some(c),
                trend: None,
            });
        }
    }
    Ok(worst)
}

/// Translation bounds for a submultiplicative weight:
/// `‖T_x f‖_{Φ,u} ≤ u(x)·‖f‖_{Φ,u}` and
/// `‖T_x f‖_{Φ,u} ≥ u(x)·‖f‖_{Φ} / sup_{v ∈ supp f} u(−v)`.
///
/// The supremum is taken over the support of `f` only; over all of ℝⁿ it is
/// infinite for every unbounded weight.
pub fn translation_bounds_check(
    f: &SimpleFunction,
    phi: &YoungFunction,
    u: &Weight,
    xs: &[Vec<f64>],
    submult: &SubmultiplicativeReport,
    q: QuadratureSpec,
) -> Result<TheoremReport> {
    if !submult.passed() {
        return Err(not_established("submultiplicative weight", submult.violation.clone()));
    }
    if f.is_zero() {
        return Err(invalid("translation bounds need a nonzero function"));
    }
    if !f.is_box_only() {
        return Err(Error::UnsupportedRegion("translation bounds need a box-only function"));
    }
    let weighted = norm(f, phi, u, q)?;
    let plain = norm(f, phi, &Weight::ONE, q)?;
    let sup = u.sup_over_support(f);
    let mut acc = Accumulator::new();
    for (i, x) in xs.iter().enumerate() {
        let t = norm(&f.translate(x)?, phi, u, q)?;
        let ux = u.eval(x);
        let tol = tolerance_for(&[t.mode, weighted.mode]);
        let upper = ux * weighted.value;
        acc.push(InstanceRecord::new(
            i,
            format!("upper x={x:?}"),
            t.value,
            upper,
            1.0,
            tol.leq(t.value, upper),
        ));
        let lower = ux * plain.value / sup;
        acc.push(InstanceRecord::new(
            i,
            format!("lower x={x:?}"),
            lower,
            t.value,
            1.0,
            tol.leq(lower, t.value),
        ));
    }
    let two_sided = weighted.value.max(sup / plain.value);
    let params = vec![
        ("norm_f_weighted".into(), weighted.value),
        ("norm_f".into(), plain.value),
        ("sup_u_minus_v".into(), sup),
        ("C".into(), two_sided),
    ];
    let hyp = Hypothesis::Submultiplicative { u: u.clone(), report: submult.clone() };
    Ok(acc.finish(ids::TRANSLATION_BOUNDS, vec![hyp], None, params))
}

/// Young functions and weights of a Hölder check: `Φ₃, u₃` govern the
/// product.
#[derive(Clone, Debug, PartialEq)]
pub struct HolderSetup {
    pub phi: [YoungFunction; 3],
    pub u: [Weight; 3],
}

/// `‖f₁f₂‖_{Φ₃,u₃} ≤ 2·‖f₁‖_{Φ₁,u₁}·‖f₂‖_{Φ₂,u₂}` given
/// `Φ₁⁻¹·Φ₂⁻¹ ≤ Φ₃⁻¹` and `u₃ ≤ u₁·u₂`. Pairs where a factor vanishes are
/// counted as degenerate.
pub fn holder_check(
    setup: &HolderSetup,
    pairs: &[(SimpleFunction, SimpleFunction)],
    sampling: Sampling,
    q: QuadratureSpec,
    seed: Option<u64>,
) -> Result<TheoremReport> {
    let [phi1, phi2, phi3] = &setup.phi;
    let [u1, u2, u3] = &setup.u;
    let check = inverse_product_dominated(phi1, phi2, phi3, &LogGrid::default_t().values());
    if !check.passed() {
        return Err(not_established("inverse product dominated", check.first_violation));
    }
    let tol = Tolerance::DEFAULT;
    let points = sampling.points();
    let mut max_ratio = 0.0f64;
    for x in &points {
        let lhs = u3.eval(x);
        let rhs = u1.eval(x) * u2.eval(x);
        max_ratio = max_ratio.max(lhs / rhs);
        if !tol.leq(lhs, rhs) {
            return Err(not_established(
                "u3 <= u1*u2",
                Some(Counterexample {
                    witness: Witness::Point(x.clone()),
                    lhs,
                    rhs,
                    ratio: lhs / rhs,
                    constant: None,
                    trend: None,
                }),
            ));
        }
    }
    let hyps = vec![
        Hypothesis::InverseProduct {
            phi1: phi1.clone(),
            phi2: phi2.clone(),
            phi3: phi3.clone(),
            check,
        },
        Hypothesis::WeightProduct {
            u1: u1.clone(),
            u2: u2.clone(),
            u3: u3.clone(),
            samples: points.len(),
            max_ratio,
        },
    ];
    let mut acc = Accumulator::new();
    for (i, (f1, f2)) in pairs.iter().enumerate() {
        let prod = f1.pointwise_product(f2)?;
        let lhs = norm(&prod, phi3, u3, q)?;
        let a = norm(f1, phi1, u1, q)?;
        let b = norm(f2, phi2, u2, q)?;
        let rhs = a.value * b.value;
        let tol = tolerance_for(&[lhs.mode, a.mode, b.mode]);
        let mut rec = InstanceRecord::new(
            i,
            format!("pair{i}"),
            lhs.value,
            rhs,
            HOLDER_CONSTANT,
            tol.leq(lhs.value, HOLDER_CONSTANT * rhs),
        );
        rec.degenerate = rhs == 0.0;
        acc.push(rec);
    }
    Ok(acc.finish(ids::HOLDER, hyps, seed, vec![("C".into(), HOLDER_CONSTANT)]))
}

fn points_in_ball(x: &Ball, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = x.radius();
    let mut out = vec![x.center().to_vec()];
    while out.len() < count + 1 {
        let p: Vec<f64> = x.center().iter().map(|c| c + rng.gen_range(-r..r)).collect();
        if x.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn supported_in(f: &SimpleFunction, x: &Ball) -> bool {
    let r2 = x.radius() * x.radius() * (1.0 + 1e-12);
    f.pieces().iter().filter(|p| p.value != 0.0).all(|p| match &p.region {
        Region::Box(b) => {
            let far: f64 = b
                .lo()
                .iter()
                .zip(b.hi())
                .zip(x.center())
                .map(|((l, h), c)| {
                    let d = (l - c).abs().max((h - c).abs());
                    d * d
                })
                .sum();
            far <= r2
        }
        Region::Ball(b) => {
            let d = math::norm(
                &b.center().iter().zip(x.center()).map(|(a, c)| a - c).collect::<Vec<_>>(),
            );
            d + b.radius() <= x.radius() * (1.0 + 1e-12)
        }
    })
}

/// Lebesgue-space embedding on a ball `X` for `1 ≤ p₂ < p₁ < ∞`:
/// `‖f‖_{L_{p₂}^{u₂}(X)} ≤ 2·|X|^{(p₁−p₂)/(p₁p₂)}·‖f‖_{L_{p₁}^{u₁}(X)}`.
///
/// The weight hypothesis checked on `X` is `u₂ ≤ u₁`: with `u₁ ≤ u₂` and
/// `u₂ ≫ u₁` the inequality fails already for `f = χ_X`.
#[allow(clippy::too_many_arguments)]
pub fn ball_embedding_check(
    p1: f64,
    p2: f64,
    u1: &Weight,
    u2: &Weight,
    x: &Ball,
    corpus: &Corpus,
    sampling: Sampling,
    q: QuadratureSpec,
) -> Result<TheoremReport> {
    if !(1.0 <= p2 && p2 < p1 && p1.is_finite()) {
        return Err(invalid(format!("exponents must satisfy 1 <= p2 < p1 < inf, got p1={p1}, p2={p2}")));
    }
    let tol = Tolerance::DEFAULT;
    let points = points_in_ball(x, sampling.sample_count, sampling.seed);
    let mut max_ratio = 0.0f64;
    for pt in &points {
        let (lo, hi) = (u2.eval(pt), u1.eval(pt));
        max_ratio = max_ratio.max(lo / hi);
        if !tol.leq(lo, hi) {
            return Err(not_established(
                "u2 <= u1 on X",
                Some(Counterexample {
                    witness: Witness::Point(pt.clone()),
                    lhs: lo,
                    rhs: hi,
                    ratio: lo / hi,
                    constant: None,
                    trend: None,
                }),
            ));
        }
    }
    let hyps = vec![
        Hypothesis::ExponentOrder { p1, p2 },
        Hypothesis::WeightOrder {
            lower: u2.clone(),
            upper: u1.clone(),
            region: x.clone(),
            samples: points.len(),
            max_ratio,
        },
    ];
    let phi1 = YoungFunction::power(p1, 1.0)?;
    let phi2 = YoungFunction::power(p2, 1.0)?;
    let constant = HOLDER_CONSTANT * math::powf(x.volume(), (p1 - p2) / (p1 * p2));
    let mut acc = Accumulator::new();
    for (i, f) in corpus.functions.iter().enumerate() {
        if !supported_in(f, x) {
            return Err(invalid(format!("corpus member {i} is not supported in X")));
        }
        let lhs = norm(f, &phi2, u2, q)?;
        let rhs = norm(f, &phi1, u1, q)?;
        let tol = tolerance_for(&[lhs.mode, rhs.mode]);
        acc.push(InstanceRecord::new(
            i,
            format!("f{i}"),
            lhs.value,
            rhs.value,
            constant,
            tol.leq(lhs.value, constant * rhs.value),
        ));
    }
    Ok(acc.finish(
        ids::BALL_EMBEDDING,
        hyps,
        Some(corpus.spec.seed),
        vec![("C".into(), constant), ("volume".into(), x.volume())],
    ))
}

/// Witness that `L_{p₁}` and `L_{p₂}` are not comparable on ℝⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct NoInclusionWitness {
    pub radius: f64,
    /// `|B|^{1/p₁ − 1/p₂}`
    pub closed_form_ratio: f64,
    /// `‖χ_B‖_{p₁} / ‖χ_B‖_{p₂}` from the bisection engine.
    pub engine_ratio: f64,
    pub counterexample: Counterexample,
}

/// Finds `r` with `‖χ_{B(0,r)}‖_{p₁} / ‖χ_{B(0,r)}‖_{p₂} > threshold`.
///
/// The ratio is `|B|^{1/p₁ − 1/p₂}`: the search walks the grid from `r = 1`
/// toward `∞` when the exponent is positive and toward `0` otherwise.
pub fn no_inclusion_falsifier(
    p1: f64,
    p2: f64,
    threshold: f64,
    r_grid: LogGrid,
    dim: usize,
) -> Result<NoInclusionWitness> {
    if p1 == p2 {
        return Err(invalid("p1 = p2 gives ratio 1 identically"));
    }
    if !(p1 >= 1.0 && p2 >= 1.0 && p1.is_finite() && p2.is_finite()) {
        return Err(invalid("exponents must be finite and >= 1"));
    }
    domain::check_dim(dim)?;
    let exponent = 1.0 / p1 - 1.0 / p2;
    let mut radii = r_grid.values();
    let trend = if exponent > 0.0 {
        radii.retain(|r| *r >= 1.0);
        Trend::TowardInfinity
    } else {
        radii.retain(|r| *r <= 1.0);
        radii.reverse();
        Trend::TowardZero
    };
    let phi1 = YoungFunction::power(p1, 1.0)?;
    let phi2 = YoungFunction::power(p2, 1.0)?;
    for r in radii {
        let ball = Ball::centered(dim, r)?;
        let closed = math::powf(ball.volume(), exponent);
        if closed > threshold {
            let chi = SimpleFunction::indicator(Region::Ball(ball))?;
            let q = QuadratureSpec::default();
            let n1 = luxemburg_norm(&chi, &phi1, &Weight::ONE, q)?.value;
            let n2 = luxemburg_norm(&chi, &phi2, &Weight::ONE, q)?.value;
            let engine = n1 / n2;
            return Ok(NoInclusionWitness {
                radius: r,
                closed_form_ratio: closed,
                engine_ratio: engine,
                counterexample: Counterexample {
                    witness: Witness::Scalar(r),
                    lhs: n1,
                    rhs: threshold * n2,
                    ratio: engine / threshold,
                    constant: Some(threshold),
                    trend: Some(trend),
                },
            });
        }
    }
    Err(Error::NoWitness(format!("no radius on the grid gives a ratio above {threshold}")))
}

/// Report form of [`no_inclusion_falsifier`] over several exponent pairs:
/// each instance compares the closed-form ratio with the engine ratio.
pub fn no_inclusion_check(
    pairs: &[(f64, f64)],
    threshold: f64,
    r_grid: LogGrid,
    dim: usize,
) -> Result<TheoremReport> {
    let tol = Tolerance::relative(1e-9);
    let mut acc = Accumulator::new();
    for (i, &(p1, p2)) in pairs.iter().enumerate() {
        let w = no_inclusion_falsifier(p1, p2, threshold, r_grid, dim)?;
        let agree = tol.leq(w.engine_ratio, w.closed_form_ratio) && tol.geq(w.engine_ratio, w.closed_form_ratio);
        acc.push(InstanceRecord::new(
            i,
            format!("p1={p1} p2={p2} r={}", w.radius),
            w.engine_ratio,
            w.closed_form_ratio,
            1.0,
            agree && w.engine_ratio > threshold,
        ));
    }
    Ok(acc.finish(ids::NO_INCLUSION, Vec::new(), None, vec![("M".into(), threshold)]))
}

/// Strong/weak inclusion square for constant weights: both vertical arrows
/// `‖f‖_{wΦᵢ,uᵢ} ≤ ‖f‖_{Φᵢ,uᵢ}`, both horizontal arrows with constant
/// `C = C₁·C₂`, and the diagonal `‖f‖_{wΦ₁,u₁} ≤ C·‖f‖_{Φ₂,u₂}`.
pub fn strong_to_weak_check(
    corpus: &Corpus,
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    u1: &Weight,
    u2: &Weight,
    prec: &PrecedenceCertificate,
    dom: &DominationCertificate,
) -> Result<TheoremReport> {
    if !(u1.is_constant() && u2.is_constant()) {
        return Err(Error::UnsupportedWeight("weak norms need constant weights"));
    }
    let hyps = vec![revalidate_precedence(phi1, phi2, prec)?, revalidate_domination(u1, u2, dom)?];
    let c = prec.c * dom.c;
    let q = QuadratureSpec::default();
    let tol = Tolerance::EXACT_PATH;
    let mut acc = Accumulator::new();
    for (i, f) in corpus.functions.iter().enumerate() {
        let s1 = norm(f, phi1, u1, q)?.value;
        let s2 = norm(f, phi2, u2, q)?.value;
        let w1 = weak_luxemburg_norm(f, phi1, u1)?.value;
        let w2 = weak_luxemburg_norm(f, phi2, u2)?.value;
        let arrows = [
            ("strong1->weak1", w1, s1, 1.0),
            ("strong2->weak2", w2, s2, 1.0),
            ("strong2->strong1", s1, s2, c),
            ("weak2->weak1", w1, w2, c),
            ("strong2->weak1", w1, s2, c),
        ];
        for (name, lhs, rhs, k) in arrows {
            let mut rec =
                InstanceRecord::new(i, format!("f{i} {name}"), lhs, rhs, k, tol.leq(lhs, k * rhs));
            rec.degenerate = rhs == 0.0;
            acc.push(rec);
        }
    }
    Ok(acc.finish(ids::STRONG_TO_WEAK, hyps, Some(corpus.spec.seed), vec![("C".into(), c)]))
}

/// Bisection norm of `χ_{B(0,r)}` against `1/Φ⁻¹(1/|B|)` on every
/// `(Φ, n, r)` combination; agreement to `1e-9` relative.
pub fn char_norm_check(phis: &[YoungFunction], dims: &[usize], radii: &[f64]) -> Result<TheoremReport> {
    let tol = Tolerance::relative(1e-9);
    let mut acc = Accumulator::new();
    let mut i = 0;
    for phi in phis {
        for &n in dims {
            for &r in radii {
                let ball = Ball::centered(n, r)?;
                let closed = norms::char_norm_closed_form(phi, &ball);
                let chi = SimpleFunction::indicator(Region::Ball(ball))?;
                let engine = luxemburg_norm(&chi, phi, &Weight::ONE, QuadratureSpec::default())?.value;
                let passed = tol.leq(engine, closed) && tol.geq(engine, closed);
                acc.push(InstanceRecord::new(i, format!("{phi} n={n} r={r}"), engine, closed, 1.0, passed));
                i += 1;
            }
        }
    }
    Ok(acc.finish(ids::CHAR_NORM, Vec::new(), None, Vec::new()))
}

fn random_young(rng: &mut ChaCha8Rng) -> YoungFunction {
    match rng.gen_range(0..4) {
        0 => YoungFunction::Power { p: rng.gen_range(1.0..6.0), c: rng.gen_range(0.1..10.0) },
        1 => YoungFunction::ExpPower { p: rng.gen_range(1.0..3.0) },
        2 => YoungFunction::Sum(vec![
            (rng.gen_range(0.1..3.0), YoungFunction::Power { p: rng.gen_range(1.0..4.0), c: 1.0 }),
            (rng.gen_range(0.1..3.0), YoungFunction::ExpPower { p: 1.0 }),
        ]),
        _ => {
            let k = rng.gen_range(1..5);
            let mut t = vec![0.0];
            let mut s = Vec::new();
            let mut slope = if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..1.0) };
            for _ in 0..k {
                let last = *t.last().unwrap();
                t.push(last + rng.gen_range(0.1..3.0));
                s.push(slope);
                slope += rng.gen_range(0.1..2.0);
            }
            if s[k - 1] == 0.0 {
                s[k - 1] = slope;
            }
            YoungFunction::piecewise_linear(t, s).expect("generated pwl is valid")
        }
    }
}

/// Randomized generalized-inverse properties: monotonicity and
/// `Φ(Φ⁻¹(s)) ≤ s ≤ Φ⁻¹(Φ(s))`, each to `1e-9` relative.
pub fn young_inverse_check(samples: usize, seed: u64) -> TheoremReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = Tolerance::relative(1e-9);
    let mut acc = Accumulator::new();
    let (a, b) = (math::ln(1e-8), math::ln(1e8));
    for i in 0..samples {
        let phi = random_young(&mut rng);
        let draw = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.02) {
                0.0
            } else {
                math::exp(rng.gen_range(a..b))
            }
        };
        let (s1, s2) = {
            let x = draw(&mut rng);
            let y = draw(&mut rng);
            if x <= y {
                (x, y)
            } else {
                (y, x)
            }
        };
        let (i1, i2) = (phi.inverse_value(s1), phi.inverse_value(s2));
        acc.push(InstanceRecord::new(i, format!("monotone {phi} s={s1},{s2}"), i1, i2, 1.0, i1 <= i2));
        let back = phi.value(i2);
        acc.push(InstanceRecord::new(i, format!("below {phi} s={s2}"), back, s2, 1.0, tol.leq(back, s2)));
        let round = phi.inverse_value(phi.value(s2));
        acc.push(InstanceRecord::new(i, format!("above {phi} s={s2}"), s2, round, 1.0, tol.leq(s2, round)));
    }
    acc.finish(ids::YOUNG_INVERSE, Vec::new(), Some(seed), vec![("samples".into(), samples as f64)])
}
