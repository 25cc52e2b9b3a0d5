//! Concrete measurable functions on ℝⁿ (n ≤ 3): balls, boxes, simple
//! functions over disjoint regions, and submultiplicative weights.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{Counterexample, Outcome, Trend, Witness};
use crate::error::{invalid, Error, Result};
use crate::grid::{self, Tolerance};
use crate::math;

pub const MAX_DIM: usize = 3;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// Lebesgue measure of a ball of radius `r` in ℝⁿ.
pub fn ball_volume(n: usize, r: f64) -> Result<f64> {
    check_dim(n)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain { what: "ball radius", value: r });
    }
    Ok(match n {
        1 => 2.0 * r,
        2 => PI * r * r,
        _ => 4.0 / 3.0 * PI * r * r * r,
    })
}

/// Surface measure of the unit sphere in ℝⁿ.
pub(crate) fn unit_sphere_area(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 4.0 * PI,
    }
}

/// Open ball `B(a, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    center: Vec<f64>,
    radius: f64,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        check_dim(center.len())?;
        if center.iter().any(|c| !c.is_finite()) {
            return Err(invalid("ball center must be finite"));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain { what: "ball radius", value: radius });
        }
        Ok(Self { center, radius })
    }

    /// Ball centred at the origin.
    pub fn centered(dim: usize, radius: f64) -> Result<Self> {
        Self::new(vec![0.0; dim], radius)
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn volume(&self) -> f64 {
        // validated at construction
        ball_volume(self.dim(), self.radius).unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        dist2(&self.center, x) < self.radius * self.radius
    }

    pub fn is_origin_centered(&self) -> bool {
        self.center.iter().all(|c| *c == 0.0)
    }
}

/// Half-open box `∏ [loᵢ, hiᵢ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxRegion {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        check_dim(lo.len())?;
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        for (l, h) in lo.iter().zip(&hi) {
            if !(l.is_finite() && h.is_finite() && l < h) {
                return Err(invalid(format!("box interval [{l}, {h}) is empty or infinite")));
            }
        }
        Ok(Self { lo, hi })
    }

    /// One-dimensional interval `[lo, hi)`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo], vec![hi])
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.lo.iter().zip(&self.hi).zip(x).all(|((l, h), v)| l <= v && v < h)
    }

    pub fn intersect(&self, other: &BoxRegion) -> Option<BoxRegion> {
        let mut lo = Vec::with_capacity(self.dim());
        let mut hi = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let l = self.lo[i].max(other.lo[i]);
            let h = self.hi[i].min(other.hi[i]);
            if l >= h {
                return None;
            }
            lo.push(l);
            hi.push(h);
        }
        Some(BoxRegion { lo, hi })
    }

    // squared distance from x to the closed box
    fn dist2_to(&self, x: &[f64]) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .zip(x)
            .map(|((l, h), v)| {
                let d = if v < l {
                    l - v
                } else if v > h {
                    v - h
                } else {
                    0.0
                };
                d * d
            })
            .sum()
    }

    /// Splits the box along every coordinate hyperplane `xᵢ = 0` it crosses.
    pub(crate) fn split_at_axes(&self) -> Vec<BoxRegion> {
        let mut out = vec![self.clone()];
        for axis in 0..self.dim() {
            let mut next = Vec::with_capacity(out.len() * 2);
            for b in out {
                if b.lo[axis] < 0.0 && 0.0 < b.hi[axis] {
                    let mut left = b.clone();
                    left.hi[axis] = 0.0;
                    let mut right = b;
                    right.lo[axis] = 0.0;
                    next.push(left);
                    next.push(right);
                } else {
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Box(BoxRegion),
    Ball(Ball),
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Box(b) => b.dim(),
            Region::Ball(b) => b.dim(),
        }
    }

    pub fn measure(&self) -> f64 {
        match self {
            Region::Box(b) => b.volume(),
            Region::Ball(b) => b.volume(),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Region::Box(b) => b.contains(x),
            Region::Ball(b) => b.contains(x),
        }
    }

    pub fn translate(&self, x: &[f64]) -> Region {
        match self {
            Region::Box(b) => Region::Box(BoxRegion {
                lo: b.lo.iter().zip(x).map(|(l, v)| l + v).collect(),
                hi: b.hi.iter().zip(x).map(|(h, v)| h + v).collect(),
            }),
            Region::Ball(b) => Region::Ball(Ball {
                center: b.center.iter().zip(x).map(|(c, v)| c + v).collect(),
                radius: b.radius,
            }),
        }
    }

    /// Largest Euclidean norm over the closure of the region.
    pub fn max_norm(&self) -> f64 {
        match self {
            Region::Box(b) => math::sqrt(
                b.lo
                    .iter()
                    .zip(&b.hi)
                    .map(|(l, h)| {
                        let m = l.abs().max(h.abs());
                        m * m
                    })
                    .sum(),
            ),
            Region::Ball(b) => math::norm(&b.center) + b.radius,
        }
    }

    /// Whether the regions share a set of positive measure.
    pub fn overlaps(&self, other: &Region) -> bool {
        match (self, other) {
            (Region::Box(a), Region::Box(b)) => a.intersect(b).is_some(),
            (Region::Ball(a), Region::Ball(b)) => {
                let r = a.radius + b.radius;
                dist2(&a.center, &b.center) < r * r
            }
            (Region::Box(bx), Region::Ball(bl)) | (Region::Ball(bl), Region::Box(bx)) => {
                bx.dist2_to(&bl.center) < bl.radius * bl.radius
            }
        }
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub value: f64,
    pub region: Region,
}

/// `Σ cᵢ χ_{Eᵢ}` over pairwise disjoint boxes and balls.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleFunction {
    dim: usize,
    pieces: Vec<Piece>,
}

impl SimpleFunction {
    pub fn new(dim: usize, pieces: Vec<Piece>) -> Result<Self> {
        check_dim(dim)?;
        for p in &pieces {
            if p.region.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.region.dim() });
            }
            if !p.value.is_finite() {
                return Err(invalid("piece values must be finite"));
            }
        }
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                if pieces[i].region.overlaps(&pieces[j].region) {
                    return Err(Error::OverlappingRegions(i, j));
                }
            }
        }
        Ok(Self { dim, pieces })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    /// `value · χ_region`
    pub fn single(value: f64, region: Region) -> Result<Self> {
        Self::new(region.dim(), vec![Piece { value, region }])
    }

    pub fn indicator(region: Region) -> Result<Self> {
        Self::single(1.0, region)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.value == 0.0)
    }

    pub fn is_box_only(&self) -> bool {
        self.pieces.iter().all(|p| matches!(p.region, Region::Box(_)))
    }

    pub fn support_measure(&self) -> f64 {
        self.pieces.iter().filter(|p| p.value != 0.0).map(|p| p.region.measure()).sum()
    }

    pub fn eval_at(&self, x: &[f64]) -> f64 {
        self.pieces
            .iter()
            .find(|p| p.region.contains(x))
            .map_or(0.0, |p| p.value)
    }

    /// Largest `|v|` over the support.
    pub fn support_max_norm(&self) -> f64 {
        self.pieces
            .iter()
            .filter(|p| p.value != 0.0)
            .map(|p| p.region.max_norm())
            .fold(0.0, f64::max)
    }

    /// `T_x f(y) = f(y − x)`: every region shifted by `+x`.
    pub fn translate(&self, x: &[f64]) -> Result<Self> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(Self {
            dim: self.dim,
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { value: p.value, region: p.region.translate(x) })
                .collect(),
        })
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            dim: self.dim,
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { value: alpha * p.value, region: p.region.clone() })
                .collect(),
        }
    }

    fn boxes(&self) -> Result<Vec<(f64, &BoxRegion)>> {
        self.pieces
            .iter()
            .map(|p| match &p.region {
                Region::Box(b) => Ok((p.value, b)),
                Region::Ball(_) => Err(Error::UnsupportedRegion("ball in a box-only operation")),
            })
            .collect()
    }

    /// Pointwise product of two box-only functions; zero cells are dropped.
    pub fn pointwise_product(&self, other: &SimpleFunction) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let a = self.boxes()?;
        let b = other.boxes()?;
        let mut pieces = Vec::new();
        for (va, ba) in &a {
            for (vb, bb) in &b {
                let value = va * vb;
                if value == 0.0 {
                    continue;
                }
                if let Some(cell) = ba.intersect(bb) {
                    pieces.push(Piece { value, region: Region::Box(cell) });
                }
            }
        }
        Ok(Self { dim: self.dim, pieces })
    }

    /// `f + g` for box-only functions, on the common refinement of their
    /// box partitions.
    pub fn sum(&self, other: &SimpleFunction) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let a = self.boxes()?;
        let b = other.boxes()?;
        let mut cuts: Vec<Vec<f64>> = vec![Vec::new(); self.dim];
        for (_, bx) in a.iter().chain(&b) {
            for (c, (l, h)) in cuts.iter_mut().zip(bx.lo.iter().zip(&bx.hi)) {
                c.push(*l);
                c.push(*h);
            }
        }
        for c in &mut cuts {
            c.sort_by(|x, y| x.total_cmp(y));
            c.dedup();
        }
        let mut pieces = Vec::new();
        let mut idx = vec![0usize; self.dim];
        'cells: loop {
            let lo: Vec<f64> = (0..self.dim).map(|i| cuts[i][idx[i]]).collect();
            let hi: Vec<f64> = (0..self.dim).map(|i| cuts[i][idx[i] + 1]).collect();
            let mid: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| 0.5 * (l + h)).collect();
            let value = self.eval_at(&mid) + other.eval_at(&mid);
            if value != 0.0 {
                pieces.push(Piece { value, region: Region::Box(BoxRegion { lo, hi }) });
            }
            for i in 0..self.dim {
                idx[i] += 1;
                if idx[i] + 1 < cuts[i].len() {
                    continue 'cells;
                }
                idx[i] = 0;
            }
            break;
        }
        Ok(Self { dim: self.dim, pieces })
    }
}

/// Positive weight `u: ℝⁿ → (0, ∞)`. Every variant is a nondecreasing
/// function of `|x|`.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Constant { c: f64 },
    /// `exp(a·|x|)`
    ExpNorm { a: f64 },
    /// `(1 + |x|)^a`
    PolyNorm { a: f64 },
    Product(Vec<Weight>),
}

impl Weight {
    pub const ONE: Weight = Weight::Constant { c: 1.0 };

    pub fn constant(c: f64) -> Result<Self> {
        let w = Weight::Constant { c };
        w.validate()?;
        Ok(w)
    }

    pub fn exp_norm(a: f64) -> Result<Self> {
        let w = Weight::ExpNorm { a };
        w.validate()?;
        Ok(w)
    }

    pub fn poly_norm(a: f64) -> Result<Self> {
        let w = Weight::PolyNorm { a };
        w.validate()?;
        Ok(w)
    }

    pub fn product(ws: Vec<Weight>) -> Result<Self> {
        let w = Weight::Product(ws);
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Weight::Constant { c } if !(c.is_finite() && *c > 0.0) => {
                Err(invalid(format!("constant weight must be > 0, got {c}")))
            }
            Weight::ExpNorm { a } | Weight::PolyNorm { a } if !(a.is_finite() && *a >= 0.0) => {
                Err(invalid(format!("weight exponent must be >= 0, got {a}")))
            }
            Weight::Product(ws) => {
                if ws.is_empty() {
                    return Err(invalid("weight product needs at least one factor"));
                }
                ws.iter().try_for_each(Weight::validate)
            }
            _ => Ok(()),
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Weight::Constant { .. } => true,
            Weight::ExpNorm { a } | Weight::PolyNorm { a } => *a == 0.0,
            Weight::Product(ws) => ws.iter().all(Weight::is_constant),
        }
    }

    /// Value as a function of `s = |x|`.
    pub fn radial(&self, s: f64) -> f64 {
        match self {
            Weight::Constant { c } => *c,
            Weight::ExpNorm { a } => math::exp(a * s),
            Weight::PolyNorm { a } => math::powf(1.0 + s, *a),
            Weight::Product(ws) => ws.iter().map(|w| w.radial(s)).product(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.radial(math::norm(x))
    }

    /// `sup_{v ∈ supp f} u(−v)`; the supremum sits at the support point
    /// farthest from the origin.
    pub fn sup_over_support(&self, f: &SimpleFunction) -> f64 {
        self.radial(f.support_max_norm())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Constant { c } => write!(f, "const(c={c})"),
            Weight::ExpNorm { a } => write!(f, "expnorm(a={a})"),
            Weight::PolyNorm { a } => write!(f, "polynorm(a={a})"),
            Weight::Product(ws) => {
                f.write_str("prod(")?;
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{w}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// How random points are drawn for weight checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sampling {
    pub dim: usize,
    pub sample_count: usize,
    pub radius: f64,
    pub seed: u64,
}

impl Sampling {
    pub const DEFAULT_COUNT: usize = 20_000;
    pub const DEFAULT_RADIUS: f64 = 50.0;
    pub const DEFAULT_SEED: u64 = 42;

    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            sample_count: Self::DEFAULT_COUNT,
            radius: Self::DEFAULT_RADIUS,
            seed: Self::DEFAULT_SEED,
        }
    }

    fn validate(&self) -> Result<()> {
        check_dim(self.dim)?;
        if self.sample_count == 0 {
            return Err(invalid("sample_count must be at least 1"));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(invalid("sampling radius must be positive"));
        }
        Ok(())
    }

    fn uniform_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..self.dim).map(|_| rng.gen_range(-self.radius..=self.radius)).collect()
    }

    /// Origin, then alternating uniform-in-cube points and points with
    /// log-uniform norm in `[radius·1e-3, radius]`, so every decade of `|x|`
    /// below the radius is populated in any dimension.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.sample_count + 1);
        out.push(vec![0.0; self.dim]);
        let (a, b) = (math::ln(self.radius * 1e-3), math::ln(self.radius));
        for i in 0..self.sample_count {
            if i % 2 == 0 {
                out.push(self.uniform_point(&mut rng));
            } else {
                let dir = loop {
                    let v: Vec<f64> = (0..self.dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                    let n = math::norm(&v);
                    if n > 1e-3 && n <= 1.0 {
                        break v.into_iter().map(|c| c / n).collect::<Vec<_>>();
                    }
                };
                let s = math::exp(rng.gen_range(a..=b));
                out.push(dir.into_iter().map(|c| c * s).collect());
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubmultiplicativeReport {
    pub samples: usize,
    /// Largest `u(x+y) / (u(x)·u(y))`.
    pub max_ratio: f64,
    pub violation: Option<Counterexample>,
}

impl SubmultiplicativeReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `u(x+y) ≤ u(x)·u(y)` on pairs drawn uniformly from
/// `[−radius, radius]ⁿ`.
pub fn check_submultiplicative(u: &Weight, sampling: Sampling) -> Result<SubmultiplicativeReport> {
    sampling.validate()?;
    let tol = Tolerance::DEFAULT;
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut max_ratio = 0.0f64;
    let mut worst: Option<Counterexample> = None;
    for _ in 0..sampling.sample_count {
        let x = sampling.uniform_point(&mut rng);
        let y = sampling.uniform_point(&mut rng);
        let xy: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = u.eval(&xy);
        let rhs = u.eval(&x) * u.eval(&y);
        let r = grid::ratio(lhs, rhs);
        if r > max_ratio {
            max_ratio = r;
            if !tol.leq(lhs, rhs) {
                worst = Some(Counterexample {
                    witness: Witness::Pair { x, y },
                    lhs,
                    rhs,
                    ratio: r,
                    constant: None,
                    trend: None,
                });
            }
        }
    }
    Ok(SubmultiplicativeReport { samples: sampling.sample_count, max_ratio, violation: worst })
}

/// `u₁(x) ≤ C·u₂(x)` at every sampled point.
#[derive(Clone, Debug, PartialEq)]
pub struct DominationCertificate {
    pub c: f64,
    pub sampling: Sampling,
    /// Largest observed `u₁/u₂`.
    pub max_ratio: f64,
}

impl DominationCertificate {
    pub fn holds_for(&self, u1: &Weight, u2: &Weight) -> bool {
        let tol = Tolerance::DEFAULT;
        self.sampling
            .points()
            .iter()
            .all(|x| tol.leq(u1.eval(x), self.c * u2.eval(x)))
    }

    pub fn compose(&self, next: &DominationCertificate) -> DominationCertificate {
        DominationCertificate {
            c: self.c * next.c,
            sampling: self.sampling,
            max_ratio: self.max_ratio * next.max_ratio,
        }
    }
}

/// Searches `c_grid` for the smallest `C` with `u₁ ≤ C·u₂` on the samples.
///
/// Refuted with trend [`Trend::Unbounded`] when the per-decade maximum of
/// `u₁/u₂` (decades of `|x|` below the sampling radius) grows by at least
/// 1.5× across each of the top three decades.
pub fn weight_dominates(
    u1: &Weight,
    u2: &Weight,
    sampling: Sampling,
    c_grid: &[f64],
) -> Result<Outcome<DominationCertificate>> {
    sampling.validate()?;
    if c_grid.is_empty() || c_grid.iter().any(|c| !(*c > 0.0)) {
        return Err(invalid("constant grid must be nonempty and positive"));
    }
    let points = sampling.points();
    let mut max = (0.0f64, 0usize);
    let mut decades = [(0.0f64, 0usize); 3];
    for (i, x) in points.iter().enumerate() {
        let r = u1.eval(x) / u2.eval(x);
        if r > max.0 {
            max = (r, i);
        }
        let s = math::norm(x);
        if s > 0.0 {
            let d = grid::decade_below(sampling.radius, s);
            if d < 3 && r > decades[d].0 {
                decades[d] = (r, i);
            }
        }
    }
    let maxima = [decades[2].0, decades[1].0, decades[0].0];
    if grid::grows_across_top_decades(maxima, grid::GROWTH_FACTOR) {
        let x = &points[decades[0].1];
        let fit = decades[1].0;
        let lhs = u1.eval(x);
        let rhs = fit * u2.eval(x);
        return Ok(Outcome::Refuted(Counterexample {
            witness: Witness::Point(x.clone()),
            lhs,
            rhs,
            ratio: lhs / rhs,
            constant: Some(fit),
            trend: Some(Trend::Unbounded),
        }));
    }
    let tol = Tolerance::DEFAULT;
    let mut sorted = c_grid.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    if let Some(&c) = sorted.iter().find(|&&c| tol.leq(max.0, c)) {
        return Ok(Outcome::Certified(DominationCertificate { c, sampling, max_ratio: max.0 }));
    }
    let c = *sorted.last().unwrap();
    let x = &points[max.1];
    Ok(Outcome::Refuted(Counterexample {
        witness: Witness::Point(x.clone()),
        lhs: u1.eval(x),
        rhs: c * u2.eval(x),
        ratio: max.0 / c,
        constant: Some(c),
        trend: None,
    }))
}
