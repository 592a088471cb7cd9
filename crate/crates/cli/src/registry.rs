//! Functions selectable by name on the command line.

use phantom_core::function::{Named, RealFunction};
use phantom_core::phantom::Sampling;

use crate::error::CliError;
use crate::expr::{self, Expr};

#[derive(Debug, Clone)]
pub enum FunctionSpec {
    Named(Named),
    Expr { source: String, expr: Expr },
}

impl FunctionSpec {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        if let Some(src) = name.strip_prefix("expr:") {
            let expr = expr::parse(src).map_err(|e| CliError::usage(format!("expression '{src}': {e}")))?;
            return Ok(FunctionSpec::Expr {
                source: name.to_string(),
                expr,
            });
        }
        Named::from_name(name).map(FunctionSpec::Named).ok_or_else(|| {
            CliError::usage(format!(
                "unknown function '{name}' (expected sawtooth, linear, sin075, exp002 or expr:<formula>)"
            ))
        })
    }

    pub fn label(&self) -> &str {
        match self {
            FunctionSpec::Named(n) => n.name(),
            FunctionSpec::Expr { source, .. } => source,
        }
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        matches!(self, FunctionSpec::Named(_))
    }

    /// Sample placement used when none is requested: the ramp is sampled at
    /// unit steps (values `1..N`), everything else across `[0, 2π]`.
    pub fn native_sampling(&self) -> Sampling {
        match self {
            FunctionSpec::Named(Named::Linear) => Sampling::Step(1.0),
            _ => Sampling::Span,
        }
    }
}

impl RealFunction for FunctionSpec {
    fn value(&self, x: f64) -> f64 {
        match self {
            FunctionSpec::Named(n) => n.value(x),
            FunctionSpec::Expr { expr, .. } => expr.eval(x),
        }
    }

    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        match self {
            FunctionSpec::Named(n) => n.derivative(order, x),
            FunctionSpec::Expr { expr, .. } => (order == 0).then(|| expr.eval(x)),
        }
    }

    fn label(&self) -> &str {
        FunctionSpec::label(self)
    }
}
