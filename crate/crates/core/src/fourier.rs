//! Fourier coefficients, partial sums, the σ multiplier, jump asymptotics
//! and empirical decay orders.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extension::ExtendedFunction;
use crate::function::RealFunction;
use crate::math::{self, PI, TWO_PI};
use crate::quadrature::simpson_rule;

/// Default number of Simpson panels per smooth piece.
pub const DEFAULT_PANELS: usize = 4096;

/// Truncated trigonometric series `a0/2 + Σ (aₙ cos nt + bₙ sin nt)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FourierSeries {
    pub a0: f64,
    /// `a[n − 1]` holds `aₙ`.
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl FourierSeries {
    pub fn new(a0: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        if a.is_empty() {
            return Err(Error::invalid("order", "N must be at least 1"));
        }
        if !a0.is_finite() || a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "Fourier coefficients",
            });
        }
        Ok(Self { a0, a, b })
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `aₙ`
    pub fn cos_coefficient(&self, n: usize) -> f64 {
        self.a[n - 1]
    }

    /// `bₙ`
    pub fn sin_coefficient(&self, n: usize) -> f64 {
        self.b[n - 1]
    }

    /// `sqrt(aₙ² + bₙ²)`
    pub fn magnitude(&self, n: usize) -> f64 {
        math::hypot(self.a[n - 1], self.b[n - 1])
    }

    pub fn partial_sum(&self, t: f64) -> f64 {
        let (s1, c1) = math::sin_cos(t);
        let (mut s, mut c) = (s1, c1);
        let mut acc = self.a0 / 2.0;
        for (an, bn) in self.a.iter().zip(&self.b) {
            acc += an * c + bn * s;
            let next_c = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = next_c;
        }
        acc
    }
}

/// A 2π-periodic function made of smooth pieces on `[0, 2π]`.
pub trait PiecewiseSmooth {
    /// Sorted breakpoints including `0` and `2π`.
    fn breakpoints(&self) -> Vec<f64>;

    /// Value on piece `piece` (between breakpoints `piece` and `piece + 1`),
    /// using that piece's own formula at its endpoints.
    fn piece_value(&self, piece: usize, t: f64) -> f64;
}

impl<F: RealFunction> PiecewiseSmooth for ExtendedFunction<F> {
    fn breakpoints(&self) -> Vec<f64> {
        ExtendedFunction::breakpoints(self)
    }
    fn piece_value(&self, piece: usize, t: f64) -> f64 {
        ExtendedFunction::piece_value(self, piece, t)
    }
}

/// `f` on `[0, 2π]` continued periodically as is; the only break is the
/// wrap.
#[derive(Debug, Clone)]
pub struct OnePeriod<F>(pub F);

impl<F: RealFunction> PiecewiseSmooth for OnePeriod<F> {
    fn breakpoints(&self) -> Vec<f64> {
        alloc::vec![0.0, TWO_PI]
    }
    fn piece_value(&self, _piece: usize, t: f64) -> f64 {
        self.0.value(t)
    }
}

/// One smooth piece of a [`Piecewise`] function.
pub type Piece = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Explicit piecewise function on `[0, 2π]`.
pub struct Piecewise {
    breakpoints: Vec<f64>,
    pieces: Vec<Piece>,
}

impl Piecewise {
    /// `interior` are the breakpoints strictly inside `(0, 2π)`; there must be
    /// one more piece than interior breakpoints.
    pub fn new(interior: Vec<f64>, pieces: Vec<Piece>) -> Result<Self> {
        if pieces.len() != interior.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: interior.len() + 1,
                found: pieces.len(),
            });
        }
        let mut breakpoints = alloc::vec![0.0];
        breakpoints.extend(interior);
        breakpoints.push(TWO_PI);
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("breakpoints", "must increase strictly inside (0, 2π)"));
        }
        Ok(Self { breakpoints, pieces })
    }

    pub fn value(&self, t: f64) -> f64 {
        let r = math::wrap_two_pi(t);
        let piece = self.breakpoints[1..]
            .iter()
            .position(|&b| r < b)
            .unwrap_or(self.pieces.len() - 1);
        (self.pieces[piece])(r)
    }
}

impl PiecewiseSmooth for Piecewise {
    fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }
    fn piece_value(&self, piece: usize, t: f64) -> f64 {
        (self.pieces[piece])(t)
    }
}

/// Computes `a0, aₙ, bₙ` for `n = 1..=order` by composite Simpson on every
/// smooth piece of `f`.
pub fn compute_coefficients<F: PiecewiseSmooth + ?Sized>(f: &F, order: usize, panels: usize) -> Result<FourierSeries> {
    if order == 0 {
        return Err(Error::invalid("order", "N must be at least 1"));
    }
    if panels < 64 {
        return Err(Error::invalid("panels", "at least 64 panels per piece are required"));
    }
    if panels < 16 * order {
        return Err(Error::invalid("panels", "need at least 16 panels per harmonic"));
    }
    let breaks = f.breakpoints();
    let mut a0 = 0.0;
    let mut a = alloc::vec![0.0; order];
    let mut b = alloc::vec![0.0; order];
    for (piece, w) in breaks.windows(2).enumerate() {
        let (nodes, weights) = simpson_rule(w[0], w[1], panels);
        for (&x, &wt) in nodes.iter().zip(&weights) {
            let fx = f.piece_value(piece, x);
            if !fx.is_finite() {
                return Err(Error::NonFinite { context: "integrand" });
            }
            let v = wt * fx;
            a0 += v;
            let (s1, c1) = math::sin_cos(x);
            let (mut s, mut c) = (s1, c1);
            for n in 0..order {
                a[n] += v * c;
                b[n] += v * s;
                let next_c = c * c1 - s * s1;
                s = s * c1 + c * s1;
                c = next_c;
            }
        }
    }
    let scale = 1.0 / PI;
    FourierSeries::new(
        a0 * scale,
        a.into_iter().map(|v| v * scale).collect(),
        b.into_iter().map(|v| v * scale).collect(),
    )
}

/// Series of `x − π` on `[0, 2π]`: `bₙ = −2/n`.
pub fn sawtooth_series(order: usize) -> Result<FourierSeries> {
    if order == 0 {
        return Err(Error::invalid("order", "N must be at least 1"));
    }
    let b = (1..=order).map(|n| -2.0 / n as f64).collect();
    FourierSeries::new(0.0, alloc::vec![0.0; order], b)
}

/// `σ(n, α) = 2π/(2π − α) · sin(nα/2)/(nα/2)`, equal to 1 at `α = 0`.
pub fn sigma_factor(n: usize, alpha: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n", "must be at least 1"));
    }
    if !(0.0..TWO_PI).contains(&alpha) {
        return Err(Error::invalid("alpha", "must lie in [0, 2π)"));
    }
    if alpha == 0.0 {
        return Ok(1.0);
    }
    let x = n as f64 * alpha / 2.0;
    Ok(TWO_PI / (TWO_PI - alpha) * math::sin(x) / x)
}

/// Sawtooth coefficients multiplied by `σ(n, α)`.
pub fn blended_sawtooth_series(order: usize, alpha: f64) -> Result<FourierSeries> {
    if !(alpha > 0.0 && alpha < TWO_PI) {
        return Err(Error::invalid("alpha", "must lie in (0, 2π)"));
    }
    let mut s = sawtooth_series(order)?;
    for (n, bn) in s.b.iter_mut().enumerate() {
        *bn *= sigma_factor(n + 1, alpha)?;
    }
    Ok(s)
}

/// Discontinuity locations `ξ_μ` and jumps `δ_μ⁽ⁱ⁾ = f⁽ⁱ⁾(ξ+) − f⁽ⁱ⁾(ξ−)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct JumpData {
    points: Vec<f64>,
    /// `jumps[μ][i]`
    jumps: Vec<Vec<f64>>,
}

impl JumpData {
    pub fn new(points: Vec<f64>, jumps: Vec<Vec<f64>>) -> Result<Self> {
        if points.len() != jumps.len() {
            return Err(Error::LengthMismatch {
                expected: points.len(),
                found: jumps.len(),
            });
        }
        if points.iter().any(|&p| !(0.0..TWO_PI).contains(&p)) || points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("jump points", "must increase strictly within [0, 2π)"));
        }
        if let Some(first) = jumps.first() {
            if jumps.iter().any(|row| row.len() != first.len()) {
                return Err(Error::invalid("jump table", "every point needs the same orders"));
            }
        }
        Ok(Self { points, jumps })
    }

    pub fn empty() -> Self {
        Self {
            points: Vec::new(),
            jumps: Vec::new(),
        }
    }

    /// Jump orders available, or `None` when there are no points (any order
    /// then sums to zero).
    pub fn orders(&self) -> Option<usize> {
        self.jumps.first().map(Vec::len)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }
}

/// `(Aₙ⁽ⁱ⁾, Bₙ⁽ⁱ⁾)`: `A = −(1/π) Σ_{μ≥1} δ sin nξ`, `B = (1/π) Σ_{μ≥0} δ cos nξ`.
pub fn jump_terms(jumps: &JumpData, n: usize, order: usize) -> Result<(f64, f64)> {
    if let Some(orders) = jumps.orders() {
        if order >= orders {
            return Err(Error::invalid("order", "jump order not present"));
        }
    }
    let nf = n as f64;
    let mut a = 0.0;
    let mut b = 0.0;
    for (&xi, row) in jumps.points.iter().zip(&jumps.jumps) {
        let d = row[order];
        let (s, c) = math::sin_cos(nf * xi);
        // ξ₀ = 0 is excluded from the A-sum; it would contribute sin 0 anyway
        if xi != 0.0 {
            a -= d * s;
        }
        b += d * c;
    }
    Ok((a / PI, b / PI))
}

/// Truncated jump expansions of `(aₙ, bₙ)` through the `1/nᵏ` term, using
/// jump orders `0..k`.
///
/// ```text
/// aₙ ≈ A⁽⁰⁾/n − B⁽¹⁾/n² − A⁽²⁾/n³ + B⁽³⁾/n⁴ + …
/// bₙ ≈ B⁽⁰⁾/n + A⁽¹⁾/n² − B⁽²⁾/n³ − A⁽³⁾/n⁴ + …
/// ```
pub fn asymptotic_coefficients(jumps: &JumpData, n: usize, k: usize) -> Result<(f64, f64)> {
    if n == 0 || k == 0 {
        return Err(Error::invalid("n, k", "must be at least 1"));
    }
    if let Some(orders) = jumps.orders() {
        if orders < k {
            return Err(Error::InsufficientSamples {
                needed: k,
                found: orders,
            });
        }
    }
    let nf = n as f64;
    let mut a = 0.0;
    let mut b = 0.0;
    let mut power = 1.0;
    for i in 0..k {
        power *= nf;
        let (ai, bi) = jump_terms(jumps, n, i)?;
        // signs repeat with period 4 in i
        let (term_a, term_b) = match i % 4 {
            0 => (ai, bi),
            1 => (-bi, ai),
            2 => (-ai, -bi),
            _ => (bi, -ai),
        };
        a += term_a / power;
        b += term_b / power;
    }
    Ok((a, b))
}

/// Negated least-squares slope of `log|cₙ|` against `log n` over
/// `n ∈ [n_min, N]`, skipping `|cₙ| < 1e-14`.
///
/// Points lying more than a decade below the fitted line are dropped and the
/// fit repeated, so isolated near-zeros of oscillating factors such as
/// `sin(nα/2)` do not drag the slope.
pub fn estimate_decay_order(series: &FourierSeries, n_min: usize) -> Result<f64> {
    if n_min < 4 {
        return Err(Error::invalid("n_min", "must be at least 4"));
    }
    if series.order() < 2 * n_min {
        return Err(Error::invalid("order", "series must reach at least 2·n_min"));
    }
    let mut pts: Vec<(f64, f64)> = (n_min..=series.order())
        .filter_map(|n| {
            let c = series.magnitude(n);
            (c >= 1e-14).then(|| (math::ln(n as f64), math::ln(c)))
        })
        .collect();
    loop {
        if pts.len() < 4 {
            return Err(Error::InsufficientSamples {
                needed: 4,
                found: pts.len(),
            });
        }
        let (slope, intercept) = least_squares(&pts);
        let before = pts.len();
        pts.retain(|&(x, y)| y >= intercept + slope * x - core::f64::consts::LN_10);
        if pts.len() == before {
            return Ok(-slope);
        }
    }
}

fn least_squares(pts: &[(f64, f64)]) -> (f64, f64) {
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
