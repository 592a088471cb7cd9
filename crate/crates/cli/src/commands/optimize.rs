//! `optimize`: minimax search for phantom values, or evaluation of given ones.

use std::path::PathBuf;

use clap::Args;
use phantom_core::optimize::{select_phantom_values, SelectionConfig};
use phantom_core::phantom::{BlendSpec, CandidateEvaluator, NodeProblem, SlopeUnits, Smoothness};
use phantom_core::triginterp::DEFAULT_ERROR_GRID;
use phantom_core::DerivativeSource;
use serde_json::json;

use crate::args::{parse_sampling, sampling_name};
use crate::error::{CliError, CliResult};
use crate::output::{num, OutputSet};
use crate::registry::FunctionSpec;

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long, default_value = "linear")]
    pub function: String,
    #[arg(long, default_value_t = 9)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Objective evaluations (at least 2000).
    #[arg(long, default_value_t = 20_000)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Simplex runs: blend warm starts first, then random restarts.
    #[arg(long, default_value_t = 8)]
    pub seeds: usize,
    /// Lattice for the reported values; 0 keeps them unrounded.
    #[arg(long, default_value_t = 1e-3)]
    pub rounding: f64,
    /// Score these 2k phantom values instead of searching.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eval_values: Option<Vec<f64>>,
    /// native, span or step:<spacing>.
    #[arg(long, default_value = "native")]
    pub sampling: String,
    #[arg(long, default_value_t = DEFAULT_ERROR_GRID)]
    pub grid: usize,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

/// Lowest blend error over every derivative mode that applies.
fn best_blend(problem: &NodeProblem<'_>, evaluator: &CandidateEvaluator) -> Option<(f64, String)> {
    let mut best: Option<(f64, String)> = None;
    for s in Smoothness::ALL {
        for source in [DerivativeSource::Analytic, DerivativeSource::DividedDifference] {
            for units in [SlopeUnits::PerRadian, SlopeUnits::PerSample] {
                let Ok(values) = problem.blend_values(evaluator.plan(), &BlendSpec::new(s, source, units)) else {
                    continue;
                };
                let Ok(e) = evaluator.error(&values) else {
                    continue;
                };
                if best.as_ref().is_none_or(|b| e < b.0) {
                    best = Some((e, format!("{s:?} {source:?} {units:?}")));
                }
            }
        }
    }
    best
}

pub fn run(args: &OptimizeArgs) -> CliResult<Vec<PathBuf>> {
    let f = FunctionSpec::parse(&args.function)?;
    let sampling = parse_sampling(&args.sampling, &f)?;
    if !(args.rounding >= 0.0 && args.rounding.is_finite()) {
        return Err(CliError::usage("--rounding must be non-negative"));
    }
    let config = SelectionConfig {
        budget: args.budget,
        seeds: args.seeds,
        seed: args.seed,
        rounding: (args.rounding > 0.0).then_some(args.rounding),
    };
    config.validate()?;
    let problem = NodeProblem::new(&f, args.n, sampling)?.with_grid(args.grid);
    let evaluator = CandidateEvaluator::new(&problem, args.k)?;
    let mut out = OutputSet::new(
        &args.out,
        "optimize",
        json!({
            "function": f.label(),
            "n": args.n,
            "k": args.k,
            "budget": args.budget,
            "seeds": args.seeds,
            "rounding": config.rounding,
            "eval_values": args.eval_values,
            "sampling": sampling_name(sampling),
            "grid": args.grid,
        }),
        Some(args.seed),
    );
    let blend = best_blend(&problem, &evaluator);
    let mut summary = json!({
        "function": f.label(),
        "real_nodes": args.n,
        "pairs": args.k,
        "sampling": sampling_name(sampling),
        "best_blend_error": blend.as_ref().map(|b| b.0),
        "best_blend": blend.as_ref().map(|b| b.1.clone()),
    });
    let values = match &args.eval_values {
        Some(values) => {
            if values.len() != 2 * args.k {
                return Err(CliError::usage(format!(
                    "--eval-values needs {} values, got {}",
                    2 * args.k,
                    values.len()
                )));
            }
            let achieved = evaluator.error(values)?;
            let baseline = problem.baseline()?.1.max_abs_error;
            summary["mode"] = json!("evaluate");
            summary["phantom_values"] = json!(values);
            summary["achieved_error"] = json!(achieved);
            summary["baseline_error"] = json!(baseline);
            summary["ratio"] = json!(baseline / achieved);
            summary["beats_blends"] = json!(blend.as_ref().map(|b| achieved < b.0));
            values.clone()
        }
        None => {
            let result = select_phantom_values(&problem, args.k, &config)?;
            summary["mode"] = json!("search");
            summary["beats_blends"] = json!(blend.as_ref().map(|b| result.achieved_error <= b.0));
            summary["result"] = serde_json::to_value(&result)?;
            result.phantom_values
        }
    };
    let poly = evaluator.polynomial(&values)?;
    out.json("selection.json", &summary)?;
    out.csv(
        "epsilon.csv",
        "normalized interpolation error with the selected phantom values",
        &["t", "epsilon"],
        evaluator
            .probe()
            .epsilon(&poly)
            .into_iter()
            .map(|(t, e)| [num(t), num(e)]),
    )?;
    out.finish()
}
