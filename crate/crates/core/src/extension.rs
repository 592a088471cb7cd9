//! Phantom boundary blends and the periodic piecewise extension of a
//! function given on `[0, 2π]`.
//!
//! The source function is linearly mapped onto the core interval
//! `[p, 2π − q]` and the remaining width `α = p + q` is filled by a
//! polynomial blend running across the periodic wrap, from the right end
//! of the data back to its left end. The single-sided form (`p = 0`,
//! `q = α`) is the canonical one.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::function::{ensure_finite_on_period, RealFunction, Rescaled};
use crate::math::{self, TWO_PI};
use crate::newton::{self, NodeData};
use crate::DerivativeSource;

/// Polynomial in monomial form about its left endpoint, valid on
/// `[base, end]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlendPolynomial {
    base: f64,
    end: f64,
    coefficients: Vec<f64>,
}

impl BlendPolynomial {
    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    /// Coefficients of `(t − base)^j`, ascending.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn value(&self, t: f64) -> f64 {
        newton::horner(&self.coefficients, t - self.base)
    }

    pub fn derivative(&self, order: usize, t: f64) -> f64 {
        let u = t - self.base;
        let mut acc = 0.0;
        for (j, &c) in self.coefficients.iter().enumerate().skip(order).rev() {
            let falling = ((j - order + 1)..=j).fold(1.0, |p, m| p * m as f64);
            acc = acc * u + c * falling;
        }
        acc
    }
}

/// Two-point Hermite interpolant: `λ⁽ʲ⁾(t0) = left[j]`, `λ⁽ʲ⁾(t1) = right[j]`.
pub fn build_hermite_blend(left: &[f64], right: &[f64], t0: f64, t1: f64) -> Result<BlendPolynomial> {
    if left.len() != right.len() {
        return Err(Error::LengthMismatch {
            expected: left.len(),
            found: right.len(),
        });
    }
    if left.is_empty() {
        return Err(Error::invalid("blend data", "at least the values are required"));
    }
    if !(t0 < t1) {
        return Err(Error::invalid("blend interval", "t0 must be less than t1"));
    }
    if left.iter().chain(right).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { context: "blend data" });
    }
    let (z, q) = newton::hermite_newton(&[NodeData { at: t0, values: left }, NodeData { at: t1, values: right }]);
    Ok(BlendPolynomial {
        base: t0,
        end: t1,
        coefficients: newton::newton_to_monomial(&z, &q, t0),
    })
}

/// Linear phantom function on `[2π − α, 2π]` joining `f1 = f(2π)` at the
/// left seam to `f0 = f(0)` at `2π`.
pub fn build_linear_blend(f0: f64, f1: f64, alpha: f64) -> Result<BlendPolynomial> {
    if !(alpha > 0.0) {
        return Err(Error::invalid("alpha", "must be positive"));
    }
    build_hermite_blend(&[f1], &[f0], TWO_PI - alpha, TWO_PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtensionConfig {
    /// Width of the region on the left of the period given to the blend.
    pub left_width: f64,
    /// Width of the region on the right of the period given to the blend.
    pub right_width: f64,
    /// Derivatives through order `smoothness − 1` are matched at the seams.
    pub smoothness: usize,
}

impl ExtensionConfig {
    pub fn single_sided(alpha: f64, smoothness: usize) -> Self {
        Self {
            left_width: 0.0,
            right_width: alpha,
            smoothness,
        }
    }

    /// `p = q = α/2`.
    pub fn symmetric(alpha: f64, smoothness: usize) -> Self {
        Self {
            left_width: alpha / 2.0,
            right_width: alpha / 2.0,
            smoothness,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.left_width + self.right_width
    }

    pub fn validate(&self) -> Result<()> {
        let (p, q) = (self.left_width, self.right_width);
        if !(p >= 0.0 && q >= 0.0) {
            return Err(Error::invalid("widths", "p and q must be non-negative"));
        }
        let alpha = p + q;
        if !(alpha > 0.0 && alpha < TWO_PI) {
            return Err(Error::invalid("alpha", "must lie in (0, 2π)"));
        }
        if self.smoothness == 0 {
            return Err(Error::invalid("smoothness", "k must be at least 1"));
        }
        Ok(())
    }
}

/// Maps `f` on `[0, 2π]` onto `[0, 2π − α]`: `g(t) = f(2π t / (2π − α))`.
pub fn rescale_to_subinterval<F: RealFunction>(f: F, alpha: f64) -> Result<Rescaled<F>> {
    if !(alpha > 0.0 && alpha < TWO_PI) {
        return Err(Error::invalid("alpha", "must lie in (0, 2π)"));
    }
    Ok(Rescaled {
        inner: f,
        scale: TWO_PI / (TWO_PI - alpha),
        offset: 0.0,
    })
}

/// The periodic function equal to the rescaled source on `[p, 2π − q]` and
/// to the blend elsewhere.
#[derive(Debug, Clone)]
pub struct ExtendedFunction<F> {
    base: Rescaled<F>,
    blend: BlendPolynomial,
    config: ExtensionConfig,
}

impl<F: RealFunction> ExtendedFunction<F> {
    pub fn base(&self) -> &Rescaled<F> {
        &self.base
    }

    pub fn blend(&self) -> &BlendPolynomial {
        &self.blend
    }

    pub fn config(&self) -> &ExtensionConfig {
        &self.config
    }

    pub fn alpha(&self) -> f64 {
        self.config.alpha()
    }

    /// Start and end of the core interval carrying the source data.
    pub fn core_interval(&self) -> (f64, f64) {
        (self.config.left_width, TWO_PI - self.config.right_width)
    }

    /// Evaluates the 2π-periodic continuation.
    pub fn eval_periodic(&self, t: f64) -> f64 {
        let r = math::wrap_two_pi(t);
        let (start, end) = self.core_interval();
        if r < start {
            self.blend.value(r + TWO_PI)
        } else if r <= end {
            self.base.value(r)
        } else {
            self.blend.value(r)
        }
    }

    /// Breakpoints of the smooth pieces inside `[0, 2π]`, both ends included.
    pub fn breakpoints(&self) -> Vec<f64> {
        let (start, end) = self.core_interval();
        let mut points = alloc::vec![0.0];
        if start > 0.0 {
            points.push(start);
        }
        points.push(end);
        points.push(TWO_PI);
        points
    }

    /// Value on smooth piece `piece`, evaluated with that piece's formula so
    /// seams are approached one-sidedly.
    pub fn piece_value(&self, piece: usize, t: f64) -> f64 {
        let two_sided = self.config.left_width > 0.0;
        match (two_sided, piece) {
            (true, 0) => self.blend.value(t + TWO_PI),
            (true, 1) | (false, 0) => self.base.value(t),
            _ => self.blend.value(t),
        }
    }
}

/// Seam data: `(left, right)` values and derivatives through `k − 1`,
/// expressed in the rescaled variable. Left seam carries `f⁽ʲ⁾(2π)`, right
/// seam `f⁽ʲ⁾(0)`.
fn seam_data<F: RealFunction>(
    f: &F,
    smoothness: usize,
    scale: f64,
    source: DerivativeSource,
    stencil: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let order = smoothness - 1;
    let (at_end, at_start) = match source {
        DerivativeSource::Analytic => {
            let mut end = Vec::with_capacity(smoothness);
            let mut start = Vec::with_capacity(smoothness);
            for j in 0..=order {
                end.push(f.derivative(j, TWO_PI).ok_or(Error::MissingDerivative { order: j })?);
                start.push(f.derivative(j, 0.0).ok_or(Error::MissingDerivative { order: j })?);
            }
            (end, start)
        }
        DerivativeSource::DividedDifference => {
            let spacing = 1e-3 * TWO_PI;
            let back: Vec<f64> = (0..stencil).map(|m| TWO_PI - m as f64 * spacing).collect();
            let fwd: Vec<f64> = (0..stencil).map(|m| m as f64 * spacing).collect();
            let vb: Vec<f64> = back.iter().map(|&x| f.value(x)).collect();
            let vf: Vec<f64> = fwd.iter().map(|&x| f.value(x)).collect();
            let mut end = newton::derivatives_at_first(&back, &vb, order);
            let mut start = newton::derivatives_at_first(&fwd, &vf, order);
            // values are known exactly
            end[0] = vb[0];
            start[0] = vf[0];
            (end, start)
        }
    };
    let scaled = |d: Vec<f64>| -> Vec<f64> {
        d.into_iter()
            .enumerate()
            .map(|(j, v)| v * math::powi(scale, j))
            .collect()
    };
    Ok((scaled(at_end), scaled(at_start)))
}

/// Builds the extension with a `k + 2` point divided-difference stencil.
pub fn assemble_extended<F: RealFunction>(
    f: F,
    config: ExtensionConfig,
    source: DerivativeSource,
) -> Result<ExtendedFunction<F>> {
    let stencil = config.smoothness + 2;
    assemble_extended_with_stencil(f, config, source, stencil)
}

/// As [`assemble_extended`], with an explicit number of evaluation points per
/// seam for divided-difference derivative estimates (at least `k + 2`).
pub fn assemble_extended_with_stencil<F: RealFunction>(
    f: F,
    config: ExtensionConfig,
    source: DerivativeSource,
    stencil: usize,
) -> Result<ExtendedFunction<F>> {
    config.validate()?;
    ensure_finite_on_period(&f)?;
    if source == DerivativeSource::DividedDifference && stencil < config.smoothness + 2 {
        return Err(Error::InsufficientSamples {
            needed: config.smoothness + 2,
            found: stencil,
        });
    }
    let alpha = config.alpha();
    let scale = TWO_PI / (TWO_PI - alpha);
    let (left, right) = seam_data(&f, config.smoothness, scale, source, stencil)?;
    let t0 = TWO_PI - config.right_width;
    let t1 = TWO_PI + config.left_width;
    let blend = build_hermite_blend(&left, &right, t0, t1)?;
    let base = Rescaled {
        inner: f,
        scale,
        offset: config.left_width,
    };
    Ok(ExtendedFunction { base, blend, config })
}
