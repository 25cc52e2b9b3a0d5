//! Seeded generation of test functions.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{self, Ball, BoxRegion, Piece, Region, SimpleFunction};
use crate::error::{invalid, Result};
use crate::math;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub dim: usize,
    pub size: usize,
    /// Only box pieces (required by quadrature paths and products).
    pub box_only: bool,
    /// Piece magnitudes are drawn from `[min_abs, max_abs]` with a random sign.
    pub min_abs: f64,
    pub max_abs: f64,
    pub min_pieces: usize,
    pub max_pieces: usize,
    /// Every support lies in the closed ball of this radius about the origin.
    pub support_radius: f64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            seed: 42,
            dim: 1,
            size: 50,
            box_only: false,
            min_abs: 0.01,
            max_abs: 10.0,
            min_pieces: 1,
            max_pieces: 5,
            support_radius: 3.0,
        }
    }
}

impl CorpusSpec {
    fn validate(&self) -> Result<()> {
        domain::check_dim(self.dim)?;
        if !(0.0 < self.min_abs && self.min_abs <= self.max_abs && self.max_abs.is_finite()) {
            return Err(invalid("corpus value range must satisfy 0 < min <= max"));
        }
        if !(1 <= self.min_pieces && self.min_pieces <= self.max_pieces) {
            return Err(invalid("corpus piece counts must satisfy 1 <= min <= max"));
        }
        if !(self.support_radius > 0.0 && self.support_radius.is_finite()) {
            return Err(invalid("corpus support radius must be positive"));
        }
        Ok(())
    }
}

/// A deterministic list of nonzero simple functions.
#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    pub spec: CorpusSpec,
    pub functions: Vec<SimpleFunction>,
}

struct Generator {
    rng: ChaCha8Rng,
    spec: CorpusSpec,
}

impl Generator {
    fn new(spec: CorpusSpec) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(spec.seed), spec }
    }

    fn value(&mut self) -> f64 {
        let m = self.rng.gen_range(self.spec.min_abs..=self.spec.max_abs);
        if self.rng.gen_bool(0.5) {
            m
        } else {
            -m
        }
    }

    fn piece_count(&mut self) -> usize {
        self.rng.gen_range(self.spec.min_pieces..=self.spec.max_pieces)
    }

    /// Random box inside the cube `center ± half`.
    fn box_in_cube(&mut self, center: &[f64], half: f64) -> BoxRegion {
        let mut lo = Vec::with_capacity(center.len());
        let mut hi = Vec::with_capacity(center.len());
        for &c in center {
            let a = self.rng.gen_range(-half..half);
            let b = self.rng.gen_range(-half..half);
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            // keep every side at least 5% of the cube side
            let min_side = 0.1 * half;
            let (a, b) = if b - a < min_side {
                let m = (0.5 * (a + b)).clamp(-half + 0.5 * min_side, half - 0.5 * min_side);
                (m - 0.5 * min_side, m + 0.5 * min_side)
            } else {
                (a, b)
            };
            lo.push(c + a);
            hi.push(c + b);
        }
        BoxRegion::new(lo, hi).expect("generated box is nonempty")
    }

    /// Splits `base` along `axis` into `k` consecutive slabs.
    fn slabs(&mut self, base: &BoxRegion, axis: usize, k: usize) -> Vec<BoxRegion> {
        let (a, b) = (base.lo()[axis], base.hi()[axis]);
        let mut cuts: Vec<f64> = (0..k - 1).map(|_| self.rng.gen_range(a..b)).collect();
        cuts.push(a);
        cuts.push(b);
        cuts.sort_by(|x, y| x.total_cmp(y));
        cuts.dedup();
        cuts.windows(2)
            .filter(|w| w[0] < w[1])
            .map(|w| {
                let mut lo = base.lo().to_vec();
                let mut hi = base.hi().to_vec();
                lo[axis] = w[0];
                hi[axis] = w[1];
                BoxRegion::new(lo, hi).expect("slab is nonempty")
            })
            .collect()
    }

    fn multi_piece(&mut self, base: &BoxRegion, axis: usize) -> SimpleFunction {
        let k = self.piece_count();
        let pieces = self
            .slabs(base, axis, k)
            .into_iter()
            .map(|b| Piece { value: self.value(), region: Region::Box(b) })
            .collect();
        SimpleFunction::new(self.spec.dim, pieces).expect("slabs are disjoint")
    }

    fn support_cube(&self) -> f64 {
        self.spec.support_radius / math::sqrt(self.spec.dim as f64)
    }

    fn member(&mut self, i: usize) -> SimpleFunction {
        let n = self.spec.dim;
        let half = self.support_cube();
        let origin = vec![0.0; n];
        match i % 3 {
            2 if !self.spec.box_only => {
                let r = self.rng.gen_range(0.05 * self.spec.support_radius..0.5 * self.spec.support_radius);
                let reach = (self.spec.support_radius - r) / math::sqrt(n as f64);
                let center: Vec<f64> = (0..n).map(|_| self.rng.gen_range(-reach..=reach)).collect();
                let ball = Ball::new(center, r).expect("generated ball is valid");
                SimpleFunction::single(self.value(), Region::Ball(ball)).expect("single piece")
            }
            1 => {
                let b = self.box_in_cube(&origin, half);
                SimpleFunction::single(self.value(), Region::Box(b)).expect("single piece")
            }
            _ => {
                let base = self.box_in_cube(&origin, half);
                self.multi_piece(&base, 0)
            }
        }
    }
}

impl Corpus {
    /// Cycles through multi-piece box functions, indicator multiples of
    /// boxes and (unless `box_only`) indicator multiples of balls.
    pub fn generate(spec: CorpusSpec) -> Result<Self> {
        spec.validate()?;
        let mut g = Generator::new(spec);
        let functions = (0..spec.size).map(|i| g.member(i)).collect();
        Ok(Self { spec, functions })
    }

    /// Box functions supported in the cube inscribed in `x`.
    pub fn inside_ball(spec: CorpusSpec, x: &Ball) -> Result<Self> {
        let spec = CorpusSpec { dim: x.dim(), box_only: true, ..spec };
        spec.validate()?;
        let mut g = Generator::new(spec);
        let half = x.radius() / math::sqrt(x.dim() as f64);
        let functions = (0..spec.size)
            .map(|i| {
                let base = g.box_in_cube(x.center(), half);
                if i % 2 == 0 {
                    g.multi_piece(&base, 0)
                } else {
                    SimpleFunction::single(g.value(), Region::Box(base)).expect("single piece")
                }
            })
            .collect();
        Ok(Self { spec, functions })
    }

    /// Box-only pairs sharing a base box, partitioned independently, so
    /// products are nonzero.
    pub fn pairs(spec: CorpusSpec) -> Result<Vec<(SimpleFunction, SimpleFunction)>> {
        let spec = CorpusSpec { box_only: true, ..spec };
        spec.validate()?;
        let mut g = Generator::new(spec);
        let half = g.support_cube();
        let origin = vec![0.0; spec.dim];
        Ok((0..spec.size)
            .map(|_| {
                let base = g.box_in_cube(&origin, half);
                let f1 = g.multi_piece(&base, 0);
                let f2 = g.multi_piece(&base, spec.dim - 1);
                (f1, f2)
            })
            .collect())
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for dim in 1..=3 {
            let spec = CorpusSpec { dim, ..CorpusSpec::default() };
            let a = Corpus::generate(spec).unwrap();
            let b = Corpus::generate(spec).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.len(), 50);
            for f in &a.functions {
                assert!(!f.is_zero());
                assert!((1..=5).contains(&f.pieces().len()));
                assert!(f.support_max_norm() <= 3.0 + 1e-12);
                for p in f.pieces() {
                    let v = p.value.abs();
                    assert!((0.01..=10.0).contains(&v));
                }
            }
            assert!(a.functions.iter().any(|f| !f.is_box_only()));
        }
    }

    #[test]
    fn seeds_differ() {
        let a = Corpus::generate(CorpusSpec::default()).unwrap();
        let b = Corpus::generate(CorpusSpec { seed: 7, ..CorpusSpec::default() }).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn box_only_and_inside_ball() {
        let a = Corpus::generate(CorpusSpec { box_only: true, ..CorpusSpec::default() }).unwrap();
        assert!(a.functions.iter().all(SimpleFunction::is_box_only));
        let x = Ball::new(vec![1.0, -1.0], 0.5).unwrap();
        let c = Corpus::inside_ball(CorpusSpec::default(), &x).unwrap();
        for f in &c.functions {
            for p in f.pieces() {
                if let Region::Box(b) = &p.region {
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
                    assert!(far.sqrt() <= 0.5 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn pairs_overlap() {
        let spec = CorpusSpec { dim: 2, size: 20, ..CorpusSpec::default() };
        for (f1, f2) in Corpus::pairs(spec).unwrap() {
            assert!(!f1.pointwise_product(&f2).unwrap().is_zero());
        }
    }
}
