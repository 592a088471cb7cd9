//! Argument types shared by several subcommands.

use clap::ValueEnum;
use phantom_core::phantom::{Sampling, SlopeUnits};
use phantom_core::DerivativeSource;

use crate::error::{CliError, CliResult};
use crate::registry::FunctionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerivArg {
    Analytic,
    #[value(name = "divided-difference", alias = "divided_difference", alias = "dd")]
    DividedDifference,
}

impl DerivArg {
    pub fn source(self) -> DerivativeSource {
        match self {
            DerivArg::Analytic => DerivativeSource::Analytic,
            DerivArg::DividedDifference => DerivativeSource::DividedDifference,
        }
    }
}

pub fn source_name(s: DerivativeSource) -> &'static str {
    match s {
        DerivativeSource::Analytic => "analytic",
        DerivativeSource::DividedDifference => "divided-difference",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitsArg {
    /// Slopes per unit of the sample index, used directly on the grid.
    PerSample,
    /// Slopes in the grid variable, consistent with the sample placement.
    PerRadian,
}

impl UnitsArg {
    pub fn units(self) -> SlopeUnits {
        match self {
            UnitsArg::PerSample => SlopeUnits::PerSample,
            UnitsArg::PerRadian => SlopeUnits::PerRadian,
        }
    }
}

pub fn units_name(u: SlopeUnits) -> &'static str {
    match u {
        SlopeUnits::PerSample => "per-sample",
        SlopeUnits::PerRadian => "per-radian",
    }
}

/// `native`, `span` or `step:<Δ>`.
pub fn parse_sampling(text: &str, f: &FunctionSpec) -> CliResult<Sampling> {
    match text {
        "native" => Ok(f.native_sampling()),
        "span" => Ok(Sampling::Span),
        _ => {
            let d = text
                .strip_prefix("step:")
                .and_then(|v| v.parse::<f64>().ok())
                .ok_or_else(|| {
                    CliError::usage(format!("sampling '{text}': expected native, span or step:<spacing>"))
                })?;
            if !(d > 0.0 && d.is_finite()) {
                return Err(CliError::usage("sample spacing must be positive"));
            }
            Ok(Sampling::Step(d))
        }
    }
}

pub fn sampling_name(s: Sampling) -> String {
    match s {
        Sampling::Span => "span".to_string(),
        Sampling::Step(d) => format!("step:{d}"),
    }
}

/// Rejects analytic derivative requests for functions that have none.
pub fn check_analytic(f: &FunctionSpec, source: DerivativeSource, orders: usize) -> CliResult<()> {
    if orders > 0 && source == DerivativeSource::Analytic && !f.has_analytic_derivatives() {
        return Err(CliError::usage(format!(
            "'{}' has no analytic derivatives; use --deriv divided-difference",
            f.label()
        )));
    }
    Ok(())
}

/// File-name-safe form of a function label.
pub fn file_label(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}
