//! Modular integrals and (weak) Luxemburg norms of weighted simple functions.
//!
//! Constant weights take the exact path: the modular of a simple function is
//! a finite sum `Σ Φ(c·|cᵢ|/b)·|Eᵢ|`. Other weights integrate
//! `x ↦ Φ(u(x)·|cᵢ|/b)` piece by piece with a composite Gauss–Legendre rule.
//! Either way the integrand is reduced once to a list of `(weight, magnitude)`
//! nodes, so the bisection over `b` only re-evaluates `Φ`.

use alloc::vec::Vec;

use crate::domain::{self, Ball, BoxRegion, Region, SimpleFunction, Weight};
use crate::error::{invalid, Error, Result};
use crate::quadrature::{tensor_nodes, GaussLegendre};
use crate::young::YoungFunction;

const BISECTION_REL_WIDTH: f64 = 1e-10;
const MAX_BISECTION_STEPS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Quadrature,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Quadrature => "quadrature",
        }
    }
}

/// Composite Gauss–Legendre settings.
///
/// Each box axis is split into `2^(depth−1)` equal cells with
/// `points_per_axis` nodes each. The error proxy compares against the rule
/// one level coarser.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub points_per_axis: usize,
    pub depth: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { points_per_axis: 64, depth: 2 }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if self.points_per_axis < 2 {
            return Err(invalid("quadrature needs at least 2 points per axis"));
        }
        if self.depth < 1 || self.depth > 8 {
            return Err(invalid("quadrature depth must be in 1..=8"));
        }
        Ok(())
    }

    // (points, cells) for the fine and the coarse rule
    fn levels(&self) -> ((usize, usize), (usize, usize)) {
        let cells = 1usize << (self.depth - 1);
        let fine = (self.points_per_axis, cells);
        let coarse = if cells > 1 {
            (self.points_per_axis, cells / 2)
        } else {
            ((self.points_per_axis / 2).max(1), 1)
        };
        (fine, coarse)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularValue {
    pub value: f64,
    pub mode: Mode,
    pub abs_error_estimate: f64,
}

/// Value of a Luxemburg-type infimum.
///
/// `value` is the upper end of the final bisection bracket, so the defining
/// constraint (modular ≤ 1) holds at `value` up to quadrature error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub mode: Mode,
    pub abs_error_estimate: f64,
    pub bisection_iterations: usize,
}

impl NormResult {
    fn zero() -> Self {
        Self { value: 0.0, mode: Mode::Exact, abs_error_estimate: 0.0, bisection_iterations: 0 }
    }
}

/// Pointwise factor multiplying `|f|` inside `Φ`.
#[derive(Clone, Copy)]
pub enum Multiplier<'a> {
    Weight(&'a Weight),
    /// Arbitrary positive factor; only boxes are supported.
    Custom(&'a dyn Fn(&[f64]) -> f64),
}

impl Multiplier<'_> {
    fn at(&self, x: &[f64]) -> f64 {
        match self {
            Multiplier::Weight(u) => u.eval(x),
            Multiplier::Custom(g) => g(x),
        }
    }
}

/// Integrand reduced to `(quadrature weight, |u·f|)` pairs.
struct Nodes {
    fine: Vec<(f64, f64)>,
    coarse: Option<Vec<(f64, f64)>>,
    mode: Mode,
}

impl Nodes {
    fn prepare(f: &SimpleFunction, mult: Multiplier<'_>, q: QuadratureSpec) -> Result<Self> {
        if let Multiplier::Weight(u) = mult {
            if u.is_constant() {
                let c = u.radial(0.0);
                let fine = f
                    .pieces()
                    .iter()
                    .filter(|p| p.value != 0.0)
                    .map(|p| (p.region.measure(), c * p.value.abs()))
                    .collect();
                return Ok(Self { fine, coarse: None, mode: Mode::Exact });
            }
        }
        q.validate()?;
        let ((fp, fc), (cp, cc)) = q.levels();
        let fine_rule = GaussLegendre::new(fp);
        let coarse_rule = if cp == fp { fine_rule.clone() } else { GaussLegendre::new(cp) };
        let mut fine = Vec::new();
        let mut coarse = Vec::new();
        for p in f.pieces().iter().filter(|p| p.value != 0.0) {
            let v = p.value.abs();
            match &p.region {
                Region::Box(b) => {
                    push_box_nodes(&mut fine, &fine_rule, fc, b, v, mult);
                    push_box_nodes(&mut coarse, &coarse_rule, cc, b, v, mult);
                }
                Region::Ball(b) => {
                    let u = match mult {
                        Multiplier::Weight(u) if b.is_origin_centered() => u,
                        _ => {
                            return Err(Error::UnsupportedRegion(
                                "balls under a non-constant weight must be centred at the origin",
                            ))
                        }
                    };
                    push_radial_nodes(&mut fine, &fine_rule, fc, b, v, u);
                    push_radial_nodes(&mut coarse, &coarse_rule, cc, b, v, u);
                }
            }
        }
        Ok(Self { fine, coarse: Some(coarse), mode: Mode::Quadrature })
    }

    fn modular(&self, phi: &YoungFunction, b: f64) -> f64 {
        modular_sum(&self.fine, phi, b)
    }

    fn modular_error(&self, phi: &YoungFunction, b: f64) -> f64 {
        match &self.coarse {
            Some(c) => (modular_sum(&self.fine, phi, b) - modular_sum(c, phi, b)).abs(),
            None => 0.0,
        }
    }
}

fn modular_sum(nodes: &[(f64, f64)], phi: &YoungFunction, b: f64) -> f64 {
    nodes.iter().map(|(w, m)| w * phi.value(m / b)).sum()
}

fn push_box_nodes(
    out: &mut Vec<(f64, f64)>,
    rule: &GaussLegendre,
    cells: usize,
    b: &BoxRegion,
    value: f64,
    mult: Multiplier<'_>,
) {
    // |x| has a kink on every axis hyperplane; split there so each sub-box
    // integrand is smooth
    for sub in b.split_at_axes() {
        for (x, w) in tensor_nodes(rule, sub.lo(), sub.hi(), cells) {
            out.push((w, mult.at(&x) * value));
        }
    }
}

// ∫_B g(|x|) dx = |S^{n-1}| ∫_0^r g(ρ) ρ^{n-1} dρ for B centred at 0
fn push_radial_nodes(
    out: &mut Vec<(f64, f64)>,
    rule: &GaussLegendre,
    cells: usize,
    b: &Ball,
    value: f64,
    u: &Weight,
) {
    let n = b.dim();
    let area = domain::unit_sphere_area(n);
    for (rho, w) in rule.composite(0.0, b.radius(), cells) {
        let jac = area * libm::pow(rho, (n - 1) as f64);
        out.push((w * jac, u.radial(rho) * value));
    }
}

/// `∫ Φ(u(x)·|f(x)| / b) dx`.
pub fn modular(
    f: &SimpleFunction,
    phi: &YoungFunction,
    u: &Weight,
    b: f64,
    q: QuadratureSpec,
) -> Result<ModularValue> {
    if !(b > 0.0) {
        return Err(Error::Domain { what: "modular scale b", value: b });
    }
    let nodes = Nodes::prepare(f, Multiplier::Weight(u), q)?;
    Ok(ModularValue {
        value: nodes.modular(phi, b),
        mode: nodes.mode,
        abs_error_estimate: nodes.modular_error(phi, b),
    })
}

/// Bracket from `b = 1` by doubling/halving, then bisect the nonincreasing
/// map `b ↦ m(b)` until the bracket is `1e-10` wide relative to its upper
/// end. Returns `(lo, hi, bisection steps)` with `m(lo) > 1 ≥ m(hi)`.
fn unit_level_infimum(m: impl Fn(f64) -> f64) -> Result<(f64, f64, usize)> {
    let (mut lo, mut hi);
    if m(1.0) <= 1.0 {
        hi = 1.0;
        loop {
            let half = hi * 0.5;
            if half < f64::MIN_POSITIVE {
                return Err(Error::Overflow(half));
            }
            if m(half) > 1.0 {
                lo = half;
                break;
            }
            hi = half;
        }
    } else {
        lo = 1.0;
        loop {
            let double = lo * 2.0;
            if !double.is_finite() {
                return Err(Error::Overflow(double));
            }
            if m(double) <= 1.0 {
                hi = double;
                break;
            }
            lo = double;
        }
    }
    let mut steps = 0;
    while hi - lo > BISECTION_REL_WIDTH * hi && steps < MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if m(mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    Ok((lo, hi, steps))
}

fn norm_from_nodes(nodes: &Nodes, phi: &YoungFunction) -> Result<NormResult> {
    if nodes.fine.is_empty() {
        return Ok(NormResult::zero());
    }
    let (lo, hi, steps) = unit_level_infimum(|b| nodes.modular(phi, b))?;
    let mut err = hi - lo;
    if nodes.mode == Mode::Quadrature {
        let dm = nodes.modular_error(phi, hi);
        let h = hi * 1e-6;
        let slope = (nodes.modular(phi, hi) - nodes.modular(phi, hi + h)) / h;
        err += if slope > 0.0 { dm / slope } else { dm * hi };
    }
    Ok(NormResult { value: hi, mode: nodes.mode, abs_error_estimate: err, bisection_iterations: steps })
}

/// Weighted Luxemburg norm `inf { b > 0 : ∫ Φ(|u·f|/b) ≤ 1 }`.
pub fn luxemburg_norm(
    f: &SimpleFunction,
    phi: &YoungFunction,
    u: &Weight,
    q: QuadratureSpec,
) -> Result<NormResult> {
    let nodes = Nodes::prepare(f, Multiplier::Weight(u), q)?;
    norm_from_nodes(&nodes, phi)
}

/// Luxemburg norm of `g·f` for an arbitrary positive factor `g`, always by
/// quadrature. Box pieces only.
pub fn luxemburg_norm_with(
    f: &SimpleFunction,
    phi: &YoungFunction,
    factor: &dyn Fn(&[f64]) -> f64,
    q: QuadratureSpec,
) -> Result<NormResult> {
    let nodes = Nodes::prepare(f, Multiplier::Custom(factor), q)?;
    norm_from_nodes(&nodes, phi)
}

/// `‖χ_B‖_{L_Φ} = 1 / Φ⁻¹(1/|B|)`.
pub fn char_norm_closed_form(phi: &YoungFunction, ball: &Ball) -> f64 {
    1.0 / phi.inverse_value(1.0 / ball.volume())
}

// distinct nonzero magnitudes with the measure where |u·f| reaches them
fn distribution(f: &SimpleFunction, u: &Weight) -> Result<Vec<(f64, f64)>> {
    if !u.is_constant() {
        return Err(Error::UnsupportedWeight("weak norms need a constant weight"));
    }
    let c = u.radial(0.0);
    let mut levels: Vec<(f64, f64)> = f
        .pieces()
        .iter()
        .filter(|p| p.value != 0.0)
        .map(|p| (c * p.value.abs(), p.region.measure()))
        .collect();
    levels.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(levels.len());
    let mut acc = 0.0;
    for (v, m) in levels {
        acc += m;
        match out.last_mut() {
            Some(last) if last.0 == v => last.1 = acc,
            _ => out.push((v, acc)),
        }
    }
    Ok(out)
}

fn weak_modular_from(levels: &[(f64, f64)], phi: &YoungFunction, b: f64) -> f64 {
    levels
        .iter()
        .map(|(v, d)| phi.value(v / b) * d)
        .fold(0.0, f64::max)
}

/// `sup_{t>0} Φ(t)·μ{ |u·f|/b > t }`, exact for constant weights.
///
/// With distinct levels `v₁ < … < v_k` of `|u·f|/b`, the distribution
/// function is constant `d_j = μ{|u·f|/b ≥ v_j}` on `[v_{j−1}, v_j)`, so the
/// supremum is `max_j Φ(v_j)·d_j` for continuous `Φ`.
pub fn weak_modular(f: &SimpleFunction, phi: &YoungFunction, u: &Weight, b: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::Domain { what: "modular scale b", value: b });
    }
    Ok(weak_modular_from(&distribution(f, u)?, phi, b))
}

/// `inf { b > 0 : sup_t Φ(t)·μ{|u·f|/b > t} ≤ 1 }`.
pub fn weak_luxemburg_norm(f: &SimpleFunction, phi: &YoungFunction, u: &Weight) -> Result<NormResult> {
    let levels = distribution(f, u)?;
    if levels.is_empty() {
        return Ok(NormResult::zero());
    }
    let (lo, hi, steps) = unit_level_infimum(|b| weak_modular_from(&levels, phi, b))?;
    Ok(NormResult {
        value: hi,
        mode: Mode::Exact,
        abs_error_estimate: hi - lo,
        bisection_iterations: steps,
    })
}
