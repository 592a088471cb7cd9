//! Scalar functions on `[0, 2π]` with optional analytic derivatives.

use alloc::string::String;

use crate::error::{Error, Result};
use crate::math::{self, PI, TWO_PI};

/// An evaluable real function, optionally carrying analytic derivatives.
pub trait RealFunction {
    fn value(&self, x: f64) -> f64;

    /// The `order`-th derivative at `x`, or `None` if it is not known in
    /// closed form. Order 0 is the value itself.
    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        if order == 0 {
            Some(self.value(x))
        } else {
            None
        }
    }

    fn label(&self) -> &str {
        "f"
    }

    /// True when derivatives through `order` are available.
    fn has_derivatives(&self, order: usize) -> bool {
        (1..=order).all(|j| self.derivative(j, 0.0).is_some())
    }
}

impl<T: RealFunction + ?Sized> RealFunction for &T {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }
    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        (**self).derivative(order, x)
    }
    fn label(&self) -> &str {
        (**self).label()
    }
}

impl<T: RealFunction + ?Sized> RealFunction for alloc::boxed::Box<T> {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }
    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        (**self).derivative(order, x)
    }
    fn label(&self) -> &str {
        (**self).label()
    }
}

/// The functions used throughout the experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Named {
    /// `x − π`
    Sawtooth,
    /// `t + 1`
    Linear,
    /// `sin(0.75 t)`
    Sin075,
    /// `0.02 eᵗ`
    Exp002,
}

impl Named {
    pub const ALL: [Named; 4] = [Named::Sawtooth, Named::Linear, Named::Sin075, Named::Exp002];

    pub fn name(self) -> &'static str {
        match self {
            Named::Sawtooth => "sawtooth",
            Named::Linear => "linear",
            Named::Sin075 => "sin075",
            Named::Exp002 => "exp002",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl RealFunction for Named {
    fn value(&self, x: f64) -> f64 {
        match self {
            Named::Sawtooth => x - PI,
            Named::Linear => x + 1.0,
            Named::Sin075 => math::sin(0.75 * x),
            Named::Exp002 => 0.02 * math::exp(x),
        }
    }

    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        Some(match (self, order) {
            (_, 0) => self.value(x),
            (Named::Sawtooth | Named::Linear, 1) => 1.0,
            (Named::Sawtooth | Named::Linear, _) => 0.0,
            (Named::Sin075, j) => math::powi(0.75, j) * math::sin(0.75 * x + j as f64 * PI / 2.0),
            (Named::Exp002, _) => 0.02 * math::exp(x),
        })
    }

    fn label(&self) -> &str {
        self.name()
    }
}

/// A constant function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub f64);

impl RealFunction for Constant {
    fn value(&self, _x: f64) -> f64 {
        self.0
    }
    fn derivative(&self, order: usize, _x: f64) -> Option<f64> {
        Some(if order == 0 { self.0 } else { 0.0 })
    }
    fn label(&self) -> &str {
        "constant"
    }
}

/// `factor · f(x)`.
#[derive(Debug, Clone)]
pub struct Scaled<F> {
    pub inner: F,
    pub factor: f64,
}

impl<F: RealFunction> RealFunction for Scaled<F> {
    fn value(&self, x: f64) -> f64 {
        self.factor * self.inner.value(x)
    }
    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        self.inner.derivative(order, x).map(|d| self.factor * d)
    }
    fn label(&self) -> &str {
        self.inner.label()
    }
}

/// `f(scale · (t − offset))`, with chain-rule derivatives.
#[derive(Debug, Clone)]
pub struct Rescaled<F> {
    pub inner: F,
    pub scale: f64,
    pub offset: f64,
}

impl<F: RealFunction> Rescaled<F> {
    /// Maps the argument back into the source variable.
    #[inline]
    pub fn source_point(&self, t: f64) -> f64 {
        self.scale * (t - self.offset)
    }
}

impl<F: RealFunction> RealFunction for Rescaled<F> {
    fn value(&self, t: f64) -> f64 {
        self.inner.value(self.source_point(t))
    }
    fn derivative(&self, order: usize, t: f64) -> Option<f64> {
        self.inner
            .derivative(order, self.source_point(t))
            .map(|d| d * math::powi(self.scale, order))
    }
    fn label(&self) -> &str {
        self.inner.label()
    }
}

/// Wraps a closure; no analytic derivatives.
pub struct FnFunction<F> {
    f: F,
    label: String,
}

impl<F: Fn(f64) -> f64> FnFunction<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        Self { f, label: label.into() }
    }
}

impl<F> core::fmt::Debug for FnFunction<F> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FnFunction")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl<F: Fn(f64) -> f64> RealFunction for FnFunction<F> {
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn label(&self) -> &str {
        &self.label
    }
}

/// Checks that every provided derivative through `max_order` agrees with a
/// central difference of the next-lower one at five probes in `[0, 2π]`.
pub fn check_derivatives<F: RealFunction + ?Sized>(f: &F, max_order: usize) -> Result<()> {
    const PROBES: [f64; 5] = [0.3, 1.7, PI, 4.4, 5.9];
    const STEP: f64 = 1e-5;
    for x in PROBES {
        if !f.value(x).is_finite() {
            return Err(Error::NonFinite {
                context: "function value",
            });
        }
    }
    for order in 1..=max_order {
        for x in PROBES {
            let Some(claimed) = f.derivative(order, x) else {
                continue;
            };
            let (Some(up), Some(down)) = (f.derivative(order - 1, x + STEP), f.derivative(order - 1, x - STEP)) else {
                return Err(Error::MissingDerivative { order: order - 1 });
            };
            let estimate = (up - down) / (2.0 * STEP);
            if (estimate - claimed).abs() > 1e-4 * claimed.abs().max(1.0) {
                return Err(Error::invalid(
                    "derivative",
                    "analytic derivative disagrees with central difference",
                ));
            }
        }
    }
    Ok(())
}

/// Sanity check used by callers that need `f` finite on the period.
pub(crate) fn ensure_finite_on_period<F: RealFunction + ?Sized>(f: &F) -> Result<()> {
    for i in 0..=16 {
        if !f.value(TWO_PI * i as f64 / 16.0).is_finite() {
            return Err(Error::NonFinite {
                context: "function value",
            });
        }
    }
    Ok(())
}
