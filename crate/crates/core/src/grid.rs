//! Sampling grids and the comparison tolerance used by every inequality check.

use alloc::vec::Vec;

use crate::math;

/// Log-spaced grid description. `points` values from `lo` to `hi` inclusive,
/// equally spaced in `log10`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl LogGrid {
    pub const fn new(lo: f64, hi: f64, points: usize) -> Self {
        Self { lo, hi, points }
    }

    /// Default `t` grid for Young-function comparisons: 401 points on
    /// `[1e-8, 1e8]`, i.e. 25 per decade with every power of ten included.
    pub const fn default_t() -> Self {
        Self::new(1e-8, 1e8, 401)
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 0 {
            return Vec::new();
        }
        if self.points == 1 {
            return alloc::vec![self.lo];
        }
        let a = math::log10(self.lo);
        let b = math::log10(self.hi);
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    self.lo
                } else if i == self.points - 1 {
                    self.hi
                } else {
                    math::powf(10.0, a + (b - a) * i as f64 / last)
                }
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.points >= 1 && self.lo > 0.0 && self.hi >= self.lo && self.hi.is_finite()
    }
}

/// Default constant grid for certificate searches: `2^(k/4)` for
/// `k = -40..=40`. Dyadic spacing keeps `1/2`, `1` and `2` on the grid.
pub fn default_c_grid() -> Vec<f64> {
    (-40..=40).map(|k| libm::exp2(k as f64 / 4.0)).collect()
}

/// Tolerance for `lhs <= rhs`: accepted when `lhs <= rhs * (1 + rel) + abs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const DEFAULT: Self = Self { rel: 1e-9, abs: 1e-12 };
    /// Used for pointwise Young-function comparisons, whose values are
    /// meaningful far below `1e-12`.
    pub const RELATIVE: Self = Self { rel: 1e-9, abs: 0.0 };
    pub const EXACT_PATH: Self = Self { rel: 1e-9, abs: 1e-12 };
    pub const QUADRATURE_PATH: Self = Self { rel: 1e-7, abs: 1e-12 };

    pub const fn relative(rel: f64) -> Self {
        Self { rel, abs: 0.0 }
    }

    pub fn leq(&self, lhs: f64, rhs: f64) -> bool {
        if lhs.is_nan() || rhs.is_nan() {
            return false;
        }
        if rhs == f64::INFINITY {
            return true;
        }
        lhs <= rhs * (1.0 + self.rel) + self.abs
    }

    /// `lhs >= rhs` with the tolerance applied on the lower side.
    pub fn geq(&self, lhs: f64, rhs: f64) -> bool {
        if lhs.is_nan() || rhs.is_nan() {
            return false;
        }
        if lhs == f64::INFINITY {
            return true;
        }
        lhs >= rhs * (1.0 - self.rel) - self.abs
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `lhs / rhs` with the conventions `0/0 = 0` and `x/0 = inf` for `x > 0`.
pub fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs == 0.0 {
        if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lhs / rhs
    }
}

/// Index of the decade (counted downward from `top`) that `x` falls in:
/// `0` for `(top/10, top]`, `1` for `(top/100, top/10]`, ...
pub(crate) fn decade_below(top: f64, x: f64) -> usize {
    if x >= top {
        return 0;
    }
    let d = math::log10(top / x);
    let k = math::floor(d);
    // x exactly at a decade boundary belongs to the decade below it
    if d == k && k > 0.0 {
        (k - 1.0) as usize
    } else {
        k as usize
    }
}

/// Growth rule shared by the Δ₂ and domination heuristics: the maxima of the
/// three top decades, ordered from lowest to highest, each grow by at least
/// `factor`.
pub(crate) fn grows_across_top_decades(maxima_low_to_high: [f64; 3], factor: f64) -> bool {
    let [m1, m2, m3] = maxima_low_to_high;
    m1 > 0.0 && m2 >= factor * m1 && m3 >= factor * m2
}

pub(crate) const GROWTH_FACTOR: f64 = 1.5;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_t_grid_hits_powers_of_ten() {
        let g = LogGrid::default_t().values();
        assert_eq!(g.len(), 401);
        assert_eq!(g[0], 1e-8);
        assert_eq!(g[400], 1e8);
        assert_eq!(g[200], 1.0);
    }

    #[test]
    fn c_grid_contains_half_one_two() {
        let g = default_c_grid();
        assert!(g.contains(&0.5));
        assert!(g.contains(&1.0));
        assert!(g.contains(&2.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn decades() {
        assert_eq!(decade_below(50.0, 50.0), 0);
        assert_eq!(decade_below(50.0, 5.1), 0);
        assert_eq!(decade_below(50.0, 4.9), 1);
        assert_eq!(decade_below(100.0, 10.0), 0);
        assert_eq!(decade_below(100.0, 9.99), 1);
    }

    #[test]
    fn tolerance_edges() {
        let t = Tolerance::DEFAULT;
        assert!(t.leq(1.0, 1.0));
        assert!(t.leq(1.0 + 1e-10, 1.0));
        assert!(!t.leq(1.0 + 1e-8, 1.0));
        assert!(t.leq(f64::INFINITY, f64::INFINITY));
        assert!(!t.leq(f64::INFINITY, 1.0));
        assert!(!t.leq(f64::NAN, 1.0));
        assert!(!Tolerance::RELATIVE.leq(1e-20, 0.0));
    }
}
