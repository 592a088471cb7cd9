//! Newton divided differences, with repeated nodes for Hermite data.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::factorial;

/// Data attached to one (possibly repeated) node: value then derivatives.
pub(crate) struct NodeData<'a> {
    pub at: f64,
    pub values: &'a [f64],
}

/// Builds the Newton coefficients `f[z₀], f[z₀,z₁], …` for nodes where each
/// `NodeData` is repeated `values.len()` times. Returns the expanded node
/// list with the coefficients.
pub(crate) fn hermite_newton(nodes: &[NodeData<'_>]) -> (Vec<f64>, Vec<f64>) {
    let mut z = Vec::new();
    let mut owner = Vec::new();
    for (idx, node) in nodes.iter().enumerate() {
        for _ in 0..node.values.len() {
            z.push(node.at);
            owner.push(idx);
        }
    }
    let n = z.len();
    let mut q: Vec<f64> = owner.iter().map(|&o| nodes[o].values[0]).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            if owner[i] == owner[i - level] {
                q[i] = nodes[owner[i]].values[level] / factorial(level);
            } else {
                q[i] = (q[i] - q[i - 1]) / (z[i] - z[i - level]);
            }
        }
    }
    (z, q)
}

/// Converts a Newton form into monomial coefficients in `(t − base)`,
/// ascending degree.
pub(crate) fn newton_to_monomial(z: &[f64], q: &[f64], base: f64) -> Vec<f64> {
    let n = q.len();
    let mut poly = vec![0.0; n];
    poly[0] = q[n - 1];
    let mut degree = 0;
    for i in (0..n - 1).rev() {
        // poly <- poly * (u - c) + q[i], with u = t - base
        let c = z[i] - base;
        degree += 1;
        for j in (1..=degree).rev() {
            poly[j] = poly[j - 1] - c * poly[j];
        }
        poly[0] = q[i] - c * poly[0];
    }
    poly
}

/// Derivatives `0..=max_order` at `points[0]` of the polynomial through
/// `(points[i], values[i])`.
pub(crate) fn derivatives_at_first(points: &[f64], values: &[f64], max_order: usize) -> Vec<f64> {
    let n = points.len();
    let mut q = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            q[i] = (q[i] - q[i - 1]) / (points[i] - points[i - level]);
        }
    }
    let mono = newton_to_monomial(points, &q, points[0]);
    (0..=max_order)
        .map(|j| mono.get(j).map_or(0.0, |c| c * factorial(j)))
        .collect()
}

/// Horner evaluation of `Σ c_j u^j`.
#[inline]
pub(crate) fn horner(coefficients: &[f64], u: f64) -> f64 {
    coefficients.iter().rev().fold(0.0, |acc, &c| acc * u + c)
}
