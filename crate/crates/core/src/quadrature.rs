//! Composite Simpson quadrature.

use alloc::vec::Vec;

/// Nodes and weights of composite Simpson on `[a, b]` with `panels` panels
/// (two subintervals each).
pub fn simpson_rule(a: f64, b: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let intervals = 2 * panels;
    let h = (b - a) / intervals as f64;
    let mut nodes = Vec::with_capacity(intervals + 1);
    let mut weights = Vec::with_capacity(intervals + 1);
    for i in 0..=intervals {
        nodes.push(if i == intervals { b } else { a + i as f64 * h });
        let w = if i == 0 || i == intervals {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        weights.push(w * h / 3.0);
    }
    (nodes, weights)
}

pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let (x, w) = simpson_rule(a, b, panels);
    x.iter().zip(&w).map(|(&x, &w)| w * f(x)).sum()
}
