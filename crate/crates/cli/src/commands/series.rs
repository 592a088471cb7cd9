//! `series`: Fourier coefficients of a (blended) function and their decay.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use phantom_core::extension::{assemble_extended, ExtensionConfig};
use phantom_core::fourier::{compute_coefficients, estimate_decay_order, FourierSeries, OnePeriod, DEFAULT_PANELS};
use phantom_core::math::TWO_PI;
use serde_json::json;

use crate::args::{check_analytic, source_name, DerivArg};
use crate::error::{CliError, CliResult};
use crate::output::{num, OutputSet};
use crate::registry::FunctionSpec;

/// First index of the decay fit.
const DECAY_FROM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    /// Blend only on the right of the period.
    Single,
    /// Blend split evenly across the wrap.
    Symmetric,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, default_value = "sawtooth")]
    pub function: String,
    /// Width of the blend region.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    pub alpha: f64,
    /// Matched derivative orders plus one (values through f^(k-1)).
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Highest harmonic.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "analytic")]
    pub deriv: DerivArg,
    /// Simpson panels per smooth piece.
    #[arg(long, default_value_t = DEFAULT_PANELS)]
    pub panels: usize,
    /// Expand the raw periodic function instead of the extension.
    #[arg(long)]
    pub no_blend: bool,
    #[arg(long, value_enum, default_value = "single")]
    pub layout: Layout,
    /// Points of the partial-sum grid over [0, 2π].
    #[arg(long, default_value_t = 1001)]
    pub grid: usize,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

pub fn run(args: &SeriesArgs) -> CliResult<Vec<PathBuf>> {
    let f = FunctionSpec::parse(&args.function)?;
    if args.grid < 2 {
        return Err(CliError::usage("--grid must be at least 2"));
    }
    let source = args.deriv.source();
    let mut out = OutputSet::new(
        &args.out,
        "series",
        json!({
            "function": f.label(),
            "alpha": if args.no_blend { None } else { Some(args.alpha) },
            "k": args.k,
            "n": args.n,
            "deriv": source_name(source),
            "panels": args.panels,
            "blend": !args.no_blend,
            "layout": format!("{:?}", args.layout).to_lowercase(),
            "grid": args.grid,
        }),
        None,
    );

    let (series, extension): (FourierSeries, Option<Vec<[String; 2]>>) = if args.no_blend {
        (compute_coefficients(&OnePeriod(&f), args.n, args.panels)?, None)
    } else {
        if !(args.alpha > 0.0 && args.alpha < TWO_PI) {
            return Err(CliError::usage("--alpha must lie in (0, 2π)"));
        }
        if args.k == 0 {
            return Err(CliError::usage("--k must be at least 1"));
        }
        check_analytic(&f, source, args.k - 1)?;
        let config = match args.layout {
            Layout::Single => ExtensionConfig::single_sided(args.alpha, args.k),
            Layout::Symmetric => ExtensionConfig::symmetric(args.alpha, args.k),
        };
        let ext = assemble_extended(&f, config, source)?;
        let grid = grid_points(args.grid)
            .map(|t| [num(t), num(ext.eval_periodic(t))])
            .collect();
        (compute_coefficients(&ext, args.n, args.panels)?, Some(grid))
    };

    out.csv(
        "coefficients.csv",
        &format!("Fourier coefficients of {}", f.label()),
        &["n", "a_n", "b_n"],
        std::iter::once([num(0.0), num(series.a0), num(0.0)]).chain((1..=series.order()).map(|n| {
            [
                n.to_string(),
                num(series.cos_coefficient(n)),
                num(series.sin_coefficient(n)),
            ]
        })),
    )?;
    out.csv(
        "partial_sum.csv",
        &format!("partial sum of order {} over one period", series.order()),
        &["t", "partial_sum"],
        grid_points(args.grid).map(|t| [num(t), num(series.partial_sum(t))]),
    )?;
    if let Some(rows) = extension {
        out.csv(
            "extension.csv",
            "periodic extension over one period",
            &["t", "value"],
            rows,
        )?;
    }
    let decay = if series.order() >= 2 * DECAY_FROM {
        Some(estimate_decay_order(&series, DECAY_FROM)?)
    } else {
        None
    };
    out.json(
        "decay.json",
        &json!({
            "function": f.label(),
            "blend": !args.no_blend,
            "alpha": if args.no_blend { None } else { Some(args.alpha) },
            "k": args.k,
            "n": args.n,
            "fit_from": DECAY_FROM,
            "decay_order": decay,
            "a0": series.a0,
        }),
    )?;
    out.finish()
}

fn grid_points(count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| TWO_PI * i as f64 / (count - 1) as f64)
}
