//! Parametric Young functions: evaluation, generalized inverse, the Δ₂
//! condition and the precedence relation `Φ₁ ≺ Φ₂`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::certificate::{Counterexample, Outcome, Trend, Witness};
use crate::error::{invalid, Error, Result};
use crate::grid::{self, LogGrid, Tolerance};
use crate::math;

const INVERSE_MAX_ITERATIONS: usize = 200;
const INVERSE_REL_TOL: f64 = 1e-12;
const DELTA2_MARGIN: f64 = 1e-9;

/// A convex, nondecreasing gauge `Φ: [0, ∞) → [0, ∞]` with `Φ(0) = 0` and
/// `Φ(t) → ∞`.
///
/// Values are built through the checked constructors (or [`validate`]d
/// after direct construction); the numerical routines assume a valid value.
///
/// [`validate`]: YoungFunction::validate
#[derive(Clone, Debug, PartialEq)]
pub enum YoungFunction {
    /// `c · tᵖ`
    Power { p: f64, c: f64 },
    /// `exp(tᵖ) − 1`
    ExpPower { p: f64 },
    /// `Σ aᵢ Φᵢ(t)`
    Sum(Vec<(f64, YoungFunction)>),
    PiecewiseLinear(PiecewiseLinear),
}

/// Continuous piecewise-linear convex gauge.
///
/// Breakpoints `0 = t₀ < t₁ < … < t_k`, slope `sᵢ` on `[tᵢ₋₁, tᵢ]`, and
/// slope `s_k` continues past `t_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinear {
    breakpoints: Vec<f64>,
    slopes: Vec<f64>,
    // Φ at each breakpoint
    values: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(breakpoints: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 || slopes.len() != breakpoints.len() - 1 {
            return Err(invalid(
                "pwl needs k+1 breakpoints starting at 0 and k slopes (k >= 1)",
            ));
        }
        if breakpoints[0] != 0.0 {
            return Err(invalid("pwl breakpoints must start at 0"));
        }
        if breakpoints.iter().chain(&slopes).any(|v| !v.is_finite()) {
            return Err(invalid("pwl parameters must be finite"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("pwl breakpoints must be strictly increasing"));
        }
        if slopes[0] < 0.0 || slopes.windows(2).any(|w| w[0] > w[1]) {
            return Err(invalid("pwl slopes must be nonnegative and nondecreasing"));
        }
        if *slopes.last().unwrap() <= 0.0 {
            return Err(invalid("pwl final slope must be positive"));
        }
        let mut values = Vec::with_capacity(breakpoints.len());
        values.push(0.0);
        for i in 0..slopes.len() {
            let next = values[i] + slopes[i] * (breakpoints[i + 1] - breakpoints[i]);
            values.push(next);
        }
        Ok(Self { breakpoints, slopes, values })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    fn eval(&self, t: f64) -> f64 {
        if t == f64::INFINITY {
            return f64::INFINITY;
        }
        let k = self.slopes.len();
        let i = self.breakpoints.partition_point(|&b| b <= t).saturating_sub(1);
        let slope = self.slopes[i.min(k - 1)];
        self.values[i] + slope * (t - self.breakpoints[i])
    }

    // inf { r ≥ 0 : Φ(r) > s }, exact from the breakpoint table
    fn inverse(&self, s: f64) -> f64 {
        let k = self.slopes.len();
        let i = (0..k).find(|&i| s < self.values[i + 1]).unwrap_or(k);
        let slope = self.slopes[i.min(k - 1)];
        let mut r = self.breakpoints[i] + (s - self.values[i]) / slope;
        // rounding in the line above can land a few ulps past the infimum
        while r > self.breakpoints[i] && self.eval(r) > s {
            r = r.next_down();
        }
        r
    }
}

impl YoungFunction {
    pub fn power(p: f64, c: f64) -> Result<Self> {
        let phi = YoungFunction::Power { p, c };
        phi.validate()?;
        Ok(phi)
    }

    pub fn exp_power(p: f64) -> Result<Self> {
        let phi = YoungFunction::ExpPower { p };
        phi.validate()?;
        Ok(phi)
    }

    pub fn sum(terms: Vec<(f64, YoungFunction)>) -> Result<Self> {
        let phi = YoungFunction::Sum(terms);
        phi.validate()?;
        Ok(phi)
    }

    pub fn piecewise_linear(breakpoints: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        Ok(YoungFunction::PiecewiseLinear(PiecewiseLinear::new(
            breakpoints,
            slopes,
        )?))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            YoungFunction::Power { p, c } => {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(invalid(format!("power exponent must be >= 1, got {p}")));
                }
                if !(c.is_finite() && *c > 0.0) {
                    return Err(invalid(format!("power scale must be > 0, got {c}")));
                }
            }
            YoungFunction::ExpPower { p } => {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(invalid(format!("exppower exponent must be >= 1, got {p}")));
                }
            }
            YoungFunction::Sum(terms) => {
                if terms.is_empty() {
                    return Err(invalid("sum needs at least one term"));
                }
                for (a, phi) in terms {
                    if !(a.is_finite() && *a >= 0.0) {
                        return Err(invalid(format!("sum coefficient must be >= 0, got {a}")));
                    }
                    phi.validate()?;
                }
                if !terms.iter().any(|(a, _)| *a > 0.0) {
                    return Err(invalid("sum needs a positive coefficient"));
                }
            }
            YoungFunction::PiecewiseLinear(pwl) => {
                PiecewiseLinear::new(pwl.breakpoints.clone(), pwl.slopes.clone())?;
            }
        }
        Ok(())
    }

    /// `Φ(t)`; `+∞` when the value overflows `f64`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain { what: "Young function argument", value: t });
        }
        Ok(self.value(t))
    }

    pub(crate) fn value(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        match self {
            YoungFunction::Power { p, c } => c * math::powf(t, *p),
            YoungFunction::ExpPower { p } => math::expm1(math::powf(t, *p)),
            YoungFunction::Sum(terms) => terms
                .iter()
                .filter(|(a, _)| *a > 0.0)
                .map(|(a, phi)| a * phi.value(t))
                .sum(),
            YoungFunction::PiecewiseLinear(pwl) => pwl.eval(t),
        }
    }

    /// Generalized inverse `Φ⁻¹(s) = inf { r ≥ 0 : Φ(r) > s }`.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(Error::Domain { what: "inverse argument", value: s });
        }
        Ok(self.inverse_value(s))
    }

    pub(crate) fn inverse_value(&self, s: f64) -> f64 {
        if s == f64::INFINITY {
            return f64::INFINITY;
        }
        match self {
            YoungFunction::Power { p, c } => {
                if *p == 1.0 {
                    s / c
                } else {
                    math::powf(s / c, 1.0 / p)
                }
            }
            YoungFunction::ExpPower { p } => {
                let l = math::ln_1p(s);
                if *p == 1.0 {
                    l
                } else {
                    math::powf(l, 1.0 / p)
                }
            }
            YoungFunction::PiecewiseLinear(pwl) => pwl.inverse(s),
            YoungFunction::Sum(terms) if s == 0.0 => terms
                .iter()
                .filter(|(a, _)| *a > 0.0)
                .map(|(_, phi)| phi.inverse_value(0.0))
                .fold(f64::INFINITY, f64::min),
            YoungFunction::Sum(_) => self.bisect_inverse(s),
        }
    }

    fn bisect_inverse(&self, s: f64) -> f64 {
        let exceeds = |r: f64| self.value(r) > s;
        let (mut lo, mut hi);
        if exceeds(1.0) {
            hi = 1.0;
            loop {
                let half = hi * 0.5;
                if half == 0.0 {
                    return 0.0;
                }
                if !exceeds(half) {
                    lo = half;
                    break;
                }
                hi = half;
            }
        } else {
            lo = 1.0;
            loop {
                let double = lo * 2.0;
                if exceeds(double) {
                    hi = double;
                    break;
                }
                if !double.is_finite() {
                    return f64::INFINITY;
                }
                lo = double;
            }
        }
        for _ in 0..INVERSE_MAX_ITERATIONS {
            if hi - lo <= INVERSE_REL_TOL * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if exceeds(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Searches for `K` with `Φ(2t) ≤ K·Φ(t)` on a log grid over
    /// `[t_max·1e-12, t_max]`.
    ///
    /// Refuted when `Φ(t) = 0 < Φ(2t)` somewhere, or when the per-decade
    /// maximum of `Φ(2t)/Φ(t)` grows by at least 1.5× across each of the
    /// top three decades.
    pub fn check_delta2(&self, t_max: f64, grid_size: usize) -> Result<Outcome<Delta2Certificate>> {
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(invalid("t_max must be positive and finite"));
        }
        if grid_size < 2 {
            return Err(invalid("grid_size must be at least 2"));
        }
        let grid = LogGrid::new(t_max * 1e-12, t_max, grid_size);
        let mut k_hat = 0.0f64;
        // (max ratio, argmax t) per decade, index 0 = top decade
        let mut decades = [(0.0f64, 0.0f64); 3];
        for t in grid.values() {
            let lhs = self.value(2.0 * t);
            let rhs = self.value(t);
            if rhs == 0.0 {
                if lhs > 0.0 {
                    return Ok(Outcome::Refuted(Counterexample {
                        witness: Witness::Scalar(t),
                        lhs,
                        rhs,
                        ratio: f64::INFINITY,
                        constant: None,
                        trend: Some(Trend::Unbounded),
                    }));
                }
                continue;
            }
            let r = lhs / rhs;
            if !r.is_finite() {
                return Ok(Outcome::Refuted(Counterexample {
                    witness: Witness::Scalar(t),
                    lhs,
                    rhs,
                    ratio: r,
                    constant: None,
                    trend: Some(Trend::Unbounded),
                }));
            }
            k_hat = k_hat.max(r);
            let d = grid::decade_below(t_max, t);
            if d < 3 && r > decades[d].0 {
                decades[d] = (r, t);
            }
        }
        let maxima = [decades[2].0, decades[1].0, decades[0].0];
        if grid::grows_across_top_decades(maxima, grid::GROWTH_FACTOR) {
            let (_, t) = decades[0];
            let k_fit = decades[1].0;
            let lhs = self.value(2.0 * t);
            let rhs = k_fit * self.value(t);
            return Ok(Outcome::Refuted(Counterexample {
                witness: Witness::Scalar(t),
                lhs,
                rhs,
                ratio: lhs / rhs,
                constant: Some(k_fit),
                trend: Some(Trend::Unbounded),
            }));
        }
        Ok(Outcome::Certified(Delta2Certificate {
            k: k_hat * (1.0 + DELTA2_MARGIN),
            grid,
        }))
    }

    /// Smallest `C` on `c_grid` (ascending) with `self(t) ≤ other(C·t)` at
    /// every grid `t`.
    ///
    /// On failure, the counterexample carries the `t` of largest violation
    /// at the largest `C` and whether the violation sits at the small or the
    /// large end of the `t` grid.
    pub fn precedes(
        &self,
        other: &YoungFunction,
        t_grid: LogGrid,
        c_grid: &[f64],
    ) -> Result<Outcome<PrecedenceCertificate>> {
        if !t_grid.is_valid() || c_grid.is_empty() {
            return Err(invalid("precedence grids must be nonempty"));
        }
        if c_grid.iter().any(|c| !(*c > 0.0)) {
            return Err(invalid("precedence constants must be positive"));
        }
        let ts = t_grid.values();
        let lhs: Vec<f64> = ts.iter().map(|&t| self.value(t)).collect();
        let tol = Tolerance::RELATIVE;
        let mut sorted: Vec<f64> = c_grid.to_vec();
        sorted.sort_by(|a, b| a.total_cmp(b));
        for &c in &sorted {
            let mut max_ratio = 0.0f64;
            let mut ok = true;
            for (t, l) in ts.iter().zip(&lhs) {
                let r = other.value(c * t);
                if !tol.leq(*l, r) {
                    ok = false;
                    break;
                }
                max_ratio = max_ratio.max(grid::ratio(*l, r));
            }
            if ok {
                return Ok(Outcome::Certified(PrecedenceCertificate {
                    c,
                    checked_grid: t_grid,
                    max_ratio,
                }));
            }
        }
        let c = *sorted.last().unwrap();
        let mut worst = (0usize, 0.0f64);
        let mut violated = Vec::with_capacity(ts.len());
        for (i, (t, l)) in ts.iter().zip(&lhs).enumerate() {
            let r = other.value(c * t);
            let v = !tol.leq(*l, r);
            violated.push(v);
            let ratio = grid::ratio(*l, r);
            if v && ratio > worst.1 {
                worst = (i, ratio);
            }
        }
        let trend = match (violated[0], *violated.last().unwrap()) {
            (true, true) => Trend::BothEnds,
            (true, false) => Trend::TowardZero,
            (false, true) => Trend::TowardInfinity,
            (false, false) => Trend::Interior,
        };
        let t = ts[worst.0];
        Ok(Outcome::Refuted(Counterexample {
            witness: Witness::Scalar(t),
            lhs: lhs[worst.0],
            rhs: other.value(c * t),
            ratio: worst.1,
            constant: Some(c),
            trend: Some(trend),
        }))
    }
}

impl fmt::Display for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YoungFunction::Power { p, c } => write!(f, "power(p={p},c={c})"),
            YoungFunction::ExpPower { p } => write!(f, "exppower(p={p})"),
            YoungFunction::Sum(terms) => {
                f.write_str("sum(")?;
                for (i, (a, phi)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}*{phi}")?;
                }
                f.write_str(")")
            }
            YoungFunction::PiecewiseLinear(pwl) => {
                f.write_str("pwl(t=[")?;
                write_list(f, &pwl.breakpoints)?;
                f.write_str("],s=[")?;
                write_list(f, &pwl.slopes)?;
                f.write_str("])")
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[f64]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// `Φ(2t) ≤ K·Φ(t)` on `grid`.
#[derive(Clone, Debug, PartialEq)]
pub struct Delta2Certificate {
    pub k: f64,
    pub grid: LogGrid,
}

/// `Φ₁(t) ≤ Φ₂(C·t)` at every point of `checked_grid`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecedenceCertificate {
    pub c: f64,
    pub checked_grid: LogGrid,
    /// Largest `Φ₁(t) / Φ₂(C·t)` seen on the grid; `1` means tight.
    pub max_ratio: f64,
}

impl PrecedenceCertificate {
    /// Re-checks the certificate for a concrete pair on its own grid.
    pub fn holds_for(&self, phi1: &YoungFunction, phi2: &YoungFunction) -> bool {
        let tol = Tolerance::RELATIVE;
        self.checked_grid
            .values()
            .into_iter()
            .all(|t| tol.leq(phi1.value(t), phi2.value(self.c * t)))
    }

    /// `(Φ₁ ≺ Φ₂, C)` and `(Φ₂ ≺ Φ₃, C′)` give `(Φ₁ ≺ Φ₃, C·C′)`.
    pub fn compose(&self, next: &PrecedenceCertificate) -> PrecedenceCertificate {
        PrecedenceCertificate {
            c: self.c * next.c,
            checked_grid: LogGrid::new(
                self.checked_grid.lo.max(next.checked_grid.lo),
                self.checked_grid.hi.min(next.checked_grid.hi),
                self.checked_grid.points.min(next.checked_grid.points),
            ),
            max_ratio: self.max_ratio.max(next.max_ratio),
        }
    }
}

/// Outcome of a pointwise sweep over a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridCheck {
    pub points_checked: usize,
    /// Largest `lhs / rhs` over the grid.
    pub max_ratio: f64,
    pub first_violation: Option<Counterexample>,
}

impl GridCheck {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks `Φ₁⁻¹(t)·Φ₂⁻¹(t) ≤ Φ₃⁻¹(t)` at each grid point.
pub fn inverse_product_dominated(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    t_grid: &[f64],
) -> GridCheck {
    let tol = Tolerance::DEFAULT;
    let mut max_ratio = 0.0f64;
    let mut first_violation = None;
    for &t in t_grid {
        let lhs = phi1.inverse_value(t) * phi2.inverse_value(t);
        let rhs = phi3.inverse_value(t);
        let r = grid::ratio(lhs, rhs);
        max_ratio = max_ratio.max(r);
        if first_violation.is_none() && !tol.leq(lhs, rhs) {
            first_violation = Some(Counterexample {
                witness: Witness::Scalar(t),
                lhs,
                rhs,
                ratio: r,
                constant: None,
                trend: None,
            });
        }
    }
    GridCheck { points_checked: t_grid.len(), max_ratio, first_violation }
}

/// One grid point of [`inverse_comparison_implies_precedence`].
#[derive(Clone, Debug, PartialEq)]
pub struct ImplicationPoint {
    pub s: f64,
    pub hypothesis: bool,
    /// `t = Φ₂⁻¹(s)`
    pub t: f64,
    /// `Φ₁(t / C₁)`
    pub lhs: f64,
    /// `C₂·Φ₂(t)`
    pub rhs: f64,
    pub conclusion: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImplicationReport {
    pub points: Vec<ImplicationPoint>,
}

impl ImplicationReport {
    /// The implication holds wherever its hypothesis does.
    pub fn passed(&self) -> bool {
        self.points.iter().all(|p| !p.hypothesis || p.conclusion)
    }
}

/// For each `s`: if `Φ₂⁻¹(s) ≤ C₁·Φ₁⁻¹(C₂·s)` then, with `t = Φ₂⁻¹(s)`,
/// checks `Φ₁(t/C₁) ≤ C₂·Φ₂(t)`.
pub fn inverse_comparison_implies_precedence(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    c1: f64,
    c2: f64,
    s_grid: &[f64],
) -> Result<ImplicationReport> {
    if !(c1 > 0.0 && c2 > 0.0) {
        return Err(invalid("C1 and C2 must be positive"));
    }
    let tol = Tolerance::DEFAULT;
    let mut points = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        if !(s >= 0.0) {
            return Err(Error::Domain { what: "s", value: s });
        }
        let t = phi2.inverse_value(s);
        let hypothesis = tol.leq(t, c1 * phi1.inverse_value(c2 * s));
        let lhs = phi1.value(t / c1);
        let rhs = c2 * phi2.value(t);
        points.push(ImplicationPoint {
            s,
            hypothesis,
            t,
            lhs,
            rhs,
            conclusion: tol.leq(lhs, rhs),
        });
    }
    Ok(ImplicationReport { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pow(p: f64) -> YoungFunction {
        YoungFunction::power(p, 1.0).unwrap()
    }

    fn all_variants() -> Vec<YoungFunction> {
        vec![
            pow(2.0),
            YoungFunction::power(1.5, 3.0).unwrap(),
            YoungFunction::exp_power(1.0).unwrap(),
            YoungFunction::exp_power(2.0).unwrap(),
            YoungFunction::sum(vec![(1.0, pow(2.0)), (0.5, YoungFunction::exp_power(1.0).unwrap())])
                .unwrap(),
            YoungFunction::piecewise_linear(vec![0.0, 1.0, 3.0], vec![0.5, 1.0]).unwrap(),
        ]
    }

    #[test]
    fn eval_examples() {
        assert_eq!(pow(2.0).eval(3.0).unwrap(), 9.0);
        for phi in all_variants() {
            assert_eq!(phi.eval(0.0).unwrap(), 0.0);
        }
        let e = YoungFunction::exp_power(1.0).unwrap().eval(1.0).unwrap();
        assert!((e - 1.718281828459045).abs() < 1e-15);
        assert!(matches!(pow(2.0).eval(-1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(pow(2.0).inverse(4.0).unwrap(), 2.0);
        for phi in all_variants() {
            assert_eq!(phi.inverse(0.0).unwrap(), 0.0, "{phi}");
        }
        let r = YoungFunction::exp_power(1.0)
            .unwrap()
            .inverse(core::f64::consts::E - 1.0)
            .unwrap();
        assert!((r - 1.0).abs() < 1e-15);
        assert!(pow(2.0).inverse(-1.0).is_err());
    }

    #[test]
    fn pwl_flat_start_uses_strict_exceedance() {
        // Φ = 0 on [0, 1], slope 2 afterwards
        let phi = YoungFunction::piecewise_linear(vec![0.0, 1.0], vec![0.0]);
        assert!(phi.is_err(), "final slope must be positive");
        let phi = YoungFunction::piecewise_linear(vec![0.0, 1.0, 2.0], vec![0.0, 2.0]).unwrap();
        assert_eq!(phi.eval(0.5).unwrap(), 0.0);
        assert_eq!(phi.eval(1.5).unwrap(), 1.0);
        assert_eq!(phi.eval(3.0).unwrap(), 4.0);
        assert_eq!(phi.inverse(0.0).unwrap(), 1.0);
        assert_eq!(phi.inverse(1.0).unwrap(), 1.5);
        assert_eq!(phi.inverse(4.0).unwrap(), 3.0);
    }

    #[test]
    fn sum_inverse_by_bisection() {
        let phi = YoungFunction::sum(vec![(1.0, pow(1.0)), (1.0, pow(2.0))]).unwrap();
        // t + t² = 2 at t = 1
        let r = phi.inverse(2.0).unwrap();
        assert!((r - 1.0).abs() < 1e-11);
        // tiny s needs downward bracketing
        let r = phi.inverse(1e-200).unwrap();
        assert!((r / 1e-200 - 1.0).abs() < 1e-11);
    }

    #[test]
    fn delta2_examples() {
        match pow(2.0).check_delta2(1e3, 400).unwrap() {
            Outcome::Certified(c) => assert!((c.k - 4.0).abs() < 1e-8),
            o => panic!("{o:?}"),
        }
        match YoungFunction::power(1.0, 5.0).unwrap().check_delta2(1e3, 400).unwrap() {
            Outcome::Certified(c) => assert!((c.k - 2.0).abs() < 1e-8),
            o => panic!("{o:?}"),
        }
        let e = YoungFunction::exp_power(1.0).unwrap();
        let out = e.check_delta2(50.0, 400).unwrap();
        let ce = out.counterexample().expect("unbounded");
        assert_eq!(ce.trend, Some(Trend::Unbounded));
        assert!(ce.lhs > ce.rhs);
        assert!(pow(2.0).check_delta2(0.0, 10).is_err());
        assert!(pow(2.0).check_delta2(1.0, 1).is_err());
    }

    #[test]
    fn delta2_flat_start_fails() {
        let phi = YoungFunction::piecewise_linear(vec![0.0, 1.0, 2.0], vec![0.0, 2.0]).unwrap();
        let out = phi.check_delta2(10.0, 200).unwrap();
        assert_eq!(out.counterexample().unwrap().ratio, f64::INFINITY);
    }

    #[test]
    fn precedence_examples() {
        let c = grid::default_c_grid();
        let t = LogGrid::default_t();
        let e = YoungFunction::exp_power(1.0).unwrap();
        assert_eq!(pow(1.0).precedes(&e, t, &c).unwrap().certificate().unwrap().c, 1.0);
        assert_eq!(pow(3.0).precedes(&pow(3.0), t, &c).unwrap().certificate().unwrap().c, 1.0);
        let out = pow(2.0).precedes(&pow(4.0), t, &c).unwrap();
        let ce = out.counterexample().unwrap();
        assert_eq!(ce.trend, Some(Trend::TowardZero));
        assert_eq!(ce.witness, Witness::Scalar(1e-8));
        let scaled = YoungFunction::power(2.0, 4.0).unwrap();
        assert_eq!(pow(2.0).precedes(&scaled, t, &c).unwrap().certificate().unwrap().c, 0.5);
    }

    #[test]
    fn precedence_large_t_violation() {
        let c = grid::default_c_grid();
        let out = pow(3.0).precedes(&pow(2.0), LogGrid::default_t(), &c).unwrap();
        assert_eq!(out.counterexample().unwrap().trend, Some(Trend::TowardInfinity));
        // e^t − 1 is linear near 0 and super-polynomial at ∞
        let e = YoungFunction::exp_power(1.0).unwrap();
        let out = e.precedes(&pow(2.0), LogGrid::default_t(), &c).unwrap();
        assert_eq!(out.counterexample().unwrap().trend, Some(Trend::BothEnds));
    }

    #[test]
    fn forged_certificate_is_rejected() {
        let cert = PrecedenceCertificate { c: 1.0, checked_grid: LogGrid::default_t(), max_ratio: 1.0 };
        assert!(!cert.holds_for(&pow(2.0), &pow(4.0)));
        assert!(cert.holds_for(&pow(2.0), &pow(2.0)));
    }

    #[test]
    fn inverse_product_examples() {
        let g = LogGrid::default_t().values();
        let r = inverse_product_dominated(&pow(2.0), &pow(2.0), &pow(1.0), &g);
        assert!(r.passed());
        assert!((r.max_ratio - 1.0).abs() < 1e-12);
        // 1/3 + 1/6 = 1/2
        let r = inverse_product_dominated(&pow(3.0), &pow(6.0), &pow(2.0), &g);
        assert!(r.passed());
        assert!((r.max_ratio - 1.0).abs() < 1e-12);
        let r = inverse_product_dominated(&pow(2.0), &pow(2.0), &pow(4.0), &[16.0]);
        let v = r.first_violation.unwrap();
        assert_eq!((v.lhs, v.rhs), (16.0, 2.0));
    }

    #[test]
    fn inverse_comparison_examples() {
        let r = inverse_comparison_implies_precedence(&pow(2.0), &pow(2.0), 1.0, 1.0, &[0.5, 1.0, 7.0])
            .unwrap();
        assert!(r.passed());
        assert!(r.points.iter().all(|p| p.hypothesis && p.conclusion));
        let r = inverse_comparison_implies_precedence(&pow(1.0), &pow(2.0), 2.0, 1.0, &[1.0]).unwrap();
        let p = &r.points[0];
        assert!(p.hypothesis && p.conclusion);
        assert_eq!((p.lhs, p.rhs), (0.5, 1.0));
        let e = YoungFunction::exp_power(1.0).unwrap();
        let r = inverse_comparison_implies_precedence(&e, &pow(1.0), 4.0, 4.0, &[1.0]).unwrap();
        let p = &r.points[0];
        assert!(p.hypothesis);
        assert!((p.lhs - (libm::exp(0.25) - 1.0)).abs() < 1e-15);
        assert_eq!(p.rhs, 4.0);
        assert!(r.passed());
        assert!(inverse_comparison_implies_precedence(&e, &e, 0.0, 1.0, &[1.0]).is_err());
    }

    #[test]
    fn validation() {
        assert!(YoungFunction::power(0.5, 1.0).is_err());
        assert!(YoungFunction::power(2.0, 0.0).is_err());
        assert!(YoungFunction::exp_power(0.9).is_err());
        assert!(YoungFunction::sum(vec![]).is_err());
        assert!(YoungFunction::sum(vec![(0.0, pow(2.0))]).is_err());
        assert!(YoungFunction::piecewise_linear(vec![0.0, 1.0, 1.0], vec![1.0, 2.0]).is_err());
        assert!(YoungFunction::piecewise_linear(vec![0.0, 1.0, 2.0], vec![2.0, 1.0]).is_err());
        assert!(YoungFunction::piecewise_linear(vec![0.5, 1.0], vec![1.0]).is_err());
    }
}
