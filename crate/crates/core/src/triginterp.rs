//! Trigonometric interpolation through an odd number of equispaced samples
//! on `[0, 2π)`, and the normalized interpolation error.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::math::{self, TWO_PI};

/// Points used when probing the error curve.
pub const DEFAULT_ERROR_GRID: usize = 2001;

/// Samples at `t_i = i·h`, `h = 2π/M`, `i = 0..M`, with `M` odd.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::invalid("sample count", "need at least 3 samples"));
        }
        if values.len().is_multiple_of(2) {
            return Err(Error::invalid("sample count", "must be odd"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { context: "samples" });
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        TWO_PI / self.values.len() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.step()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `a0/2 + Σ_{j=1}^{J} (aⱼ cos jt + bⱼ sin jt)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrigPolynomial {
    pub a0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl TrigPolynomial {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        let (s1, c1) = math::sin_cos(t);
        self.evaluate_with(s1, c1)
    }

    /// Evaluation given `sin t` and `cos t`.
    #[inline]
    pub(crate) fn evaluate_with(&self, s1: f64, c1: f64) -> f64 {
        let (mut s, mut c) = (s1, c1);
        let mut acc = self.a0 / 2.0;
        for (aj, bj) in self.a.iter().zip(&self.b) {
            acc += aj * c + bj * s;
            let next_c = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = next_c;
        }
        acc
    }
}

/// Discrete Fourier sums of the samples; reproduces every sample exactly.
pub fn interpolate(samples: &SampleSet) -> TrigPolynomial {
    let m = samples.len();
    let order = (m - 1) / 2;
    let h = samples.step();
    // cos/sin of k·h for k = 0..m, indexed by (j·i) mod m
    let table: Vec<(f64, f64)> = (0..m).map(|k| math::sin_cos(k as f64 * h)).collect();
    let scale = 2.0 / m as f64;
    let values = samples.values();
    let a0 = scale * values.iter().sum::<f64>();
    let mut a = Vec::with_capacity(order);
    let mut b = Vec::with_capacity(order);
    for j in 1..=order {
        let (mut sa, mut sb) = (0.0, 0.0);
        for (i, &v) in values.iter().enumerate() {
            let (s, c) = table[(j * i) % m];
            sa += v * c;
            sb += v * s;
        }
        a.push(scale * sa);
        b.push(scale * sb);
    }
    TrigPolynomial { a0, a, b }
}

/// Maximum of `|ε(t)| = |f(t) − T(t)| / denom` over an equispaced grid.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErrorReport {
    pub interval_end: f64,
    pub grid: usize,
    pub max_abs_error: f64,
    pub argmax: f64,
    pub denominator: f64,
}

/// The error grid with cached target values, so repeated evaluations of
/// different polynomials share one sampling of `f`.
#[derive(Debug, Clone)]
pub struct ErrorProbe {
    points: Vec<f64>,
    rotations: Vec<(f64, f64)>,
    target: Vec<f64>,
    interval_end: f64,
    denominator: f64,
}

impl ErrorProbe {
    pub fn new<F: RealFunction + ?Sized>(f: &F, interval_end: f64, grid: usize, denominator: f64) -> Result<Self> {
        if !(interval_end > 0.0 && interval_end <= TWO_PI) {
            return Err(Error::invalid("interval", "L must lie in (0, 2π]"));
        }
        if grid < 101 {
            return Err(Error::invalid("grid", "at least 101 points are required"));
        }
        if denominator == 0.0 {
            return Err(Error::UndefinedMetric);
        }
        if !(denominator > 0.0 && denominator.is_finite()) {
            return Err(Error::invalid("denominator", "must be positive and finite"));
        }
        let step = interval_end / (grid - 1) as f64;
        let points: Vec<f64> = (0..grid)
            .map(|i| if i + 1 == grid { interval_end } else { i as f64 * step })
            .collect();
        let target: Vec<f64> = points.iter().map(|&t| f.value(t)).collect();
        if target.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "function on error grid",
            });
        }
        let rotations = points.iter().map(|&t| math::sin_cos(t)).collect();
        Ok(Self {
            points,
            rotations,
            target,
            interval_end,
            denominator,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn report(&self, poly: &TrigPolynomial) -> ErrorReport {
        let mut max = 0.0;
        let mut argmax = 0.0;
        for ((&t, &y), &(s, c)) in self.points.iter().zip(&self.target).zip(&self.rotations) {
            let e = ((y - poly.evaluate_with(s, c)) / self.denominator).abs();
            if e > max {
                max = e;
                argmax = t;
            }
        }
        ErrorReport {
            interval_end: self.interval_end,
            grid: self.points.len(),
            max_abs_error: max,
            argmax,
            denominator: self.denominator,
        }
    }

    /// Signed `ε(t)` at every grid point.
    pub fn epsilon(&self, poly: &TrigPolynomial) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .zip(&self.target)
            .zip(&self.rotations)
            .map(|((&t, &y), &(s, c))| (t, (y - poly.evaluate_with(s, c)) / self.denominator))
            .collect()
    }
}

pub fn normalized_error<F: RealFunction + ?Sized>(
    f: &F,
    poly: &TrigPolynomial,
    interval_end: f64,
    grid: usize,
    denominator: f64,
) -> Result<ErrorReport> {
    Ok(ErrorProbe::new(f, interval_end, grid, denominator)?.report(poly))
}
