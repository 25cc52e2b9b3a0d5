//! Gauss–Legendre rules and tensor products over boxes.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math;

/// Nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = math::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// 1-D nodes mapped to `[a, b]` split into `cells` equal parts.
    pub fn composite(&self, a: f64, b: f64, cells: usize) -> Vec<(f64, f64)> {
        let h = (b - a) / cells as f64;
        let mut out = Vec::with_capacity(cells * self.nodes.len());
        for k in 0..cells {
            let lo = a + h * k as f64;
            let half = 0.5 * h;
            let mid = lo + half;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                out.push((mid + half * x, half * w));
            }
        }
        out
    }
}

// (P_n(x), P_n'(x)) by the three-term recurrence
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor-product nodes `(point, weight)` over the box `∏ [loᵢ, hiᵢ]`.
pub fn tensor_nodes(rule: &GaussLegendre, lo: &[f64], hi: &[f64], cells: usize) -> Vec<(Vec<f64>, f64)> {
    let axes: Vec<Vec<(f64, f64)>> = lo
        .iter()
        .zip(hi)
        .map(|(a, b)| rule.composite(*a, *b, cells))
        .collect();
    let mut out: Vec<(Vec<f64>, f64)> = vec![(Vec::with_capacity(lo.len()), 1.0)];
    for axis in &axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for (p, w) in &out {
            for (x, wx) in axis {
                let mut q = p.clone();
                q.push(*x);
                next.push((q, w * wx));
            }
        }
        out = next;
    }
    out
}
