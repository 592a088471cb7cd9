//! `interp`: one interpolation run, with or without phantom nodes.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use phantom_core::function::RealFunction;
use phantom_core::phantom::{BlendSpec, CandidateEvaluator, NodeProblem, Smoothness};
use phantom_core::triginterp::{ErrorProbe, TrigPolynomial, DEFAULT_ERROR_GRID};
use serde_json::json;

use crate::args::{check_analytic, parse_sampling, sampling_name, source_name, units_name, DerivArg, UnitsArg};
use crate::error::{CliError, CliResult};
use crate::output::{num, OutputSet};
use crate::registry::FunctionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    /// No phantom nodes.
    None,
    C0,
    C1,
    C2,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    #[arg(long, default_value = "linear")]
    pub function: String,
    /// Real nodes (odd).
    #[arg(long, default_value_t = 9)]
    pub n: usize,
    /// Phantom pairs.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "c1")]
    pub strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "analytic")]
    pub deriv: DerivArg,
    #[arg(long, value_enum, default_value = "per-sample")]
    pub units: UnitsArg,
    /// native, span or step:<spacing>.
    #[arg(long, default_value = "native")]
    pub sampling: String,
    #[arg(long, default_value_t = DEFAULT_ERROR_GRID)]
    pub grid: usize,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

pub fn run(args: &InterpArgs) -> CliResult<Vec<PathBuf>> {
    let f = FunctionSpec::parse(&args.function)?;
    let sampling = parse_sampling(&args.sampling, &f)?;
    let problem = NodeProblem::new(&f, args.n, sampling)?.with_grid(args.grid);
    let (base_poly, base_report) = problem.baseline()?;
    let smoothness = match args.strategy {
        StrategyArg::None => None,
        StrategyArg::C0 => Some(Smoothness::C0),
        StrategyArg::C1 => Some(Smoothness::C1),
        StrategyArg::C2 => Some(Smoothness::C2),
    };
    let source = args.deriv.source();
    let units = args.units.units();
    if let Some(s) = smoothness {
        check_analytic(&f, source, s.derivative_orders())?;
        if args.k == 0 {
            return Err(CliError::usage("--k must be at least 1"));
        }
    }
    let mut out = OutputSet::new(
        &args.out,
        "interp",
        json!({
            "function": f.label(),
            "n": args.n,
            "k": smoothness.map(|_| args.k),
            "strategy": format!("{:?}", args.strategy).to_lowercase(),
            "deriv": source_name(source),
            "units": units_name(units),
            "sampling": sampling_name(sampling),
            "grid": args.grid,
        }),
        None,
    );

    let mut summary = json!({
        "function": f.label(),
        "real_nodes": args.n,
        "sampling": sampling_name(sampling),
        "samples": problem.samples()?,
        "denominator": base_report.denominator,
        "baseline": {
            "interval_end": base_report.interval_end,
            "max_error": base_report.max_abs_error,
            "argmax": base_report.argmax,
        },
    });

    let (poly, probe, grid_step): (TrigPolynomial, ErrorProbe, f64) = match smoothness {
        None => {
            summary["strategy"] = json!("none");
            summary["max_error"] = json!(base_report.max_abs_error);
            (
                base_poly,
                problem.baseline_probe()?,
                std::f64::consts::TAU / args.n as f64,
            )
        }
        Some(s) => {
            let evaluator = CandidateEvaluator::new(&problem, args.k)?;
            let spec = BlendSpec::new(s, source, units);
            let values = problem.blend_values(evaluator.plan(), &spec)?;
            let report = evaluator.report(&values)?;
            let poly = evaluator.polynomial(&values)?;
            summary["strategy"] = json!(format!("{s:?}"));
            summary["pairs"] = json!(args.k);
            summary["deriv"] = json!(source_name(source));
            summary["units"] = json!(units_name(units));
            summary["step"] = json!(evaluator.plan().step());
            summary["phantom_positions"] = json!(evaluator.plan().phantom_positions());
            summary["phantom_values"] = json!(values);
            summary["interval_end"] = json!(report.interval_end);
            summary["max_error"] = json!(report.max_abs_error);
            summary["argmax"] = json!(report.argmax);
            summary["reduction_factor"] = json!(base_report.max_abs_error / report.max_abs_error);
            (poly, evaluator.probe().clone(), evaluator.plan().step())
        }
    };

    let target = problem.target(grid_step);
    out.csv(
        "epsilon.csv",
        "normalized interpolation error on the interpolation interval",
        &["t", "epsilon"],
        probe.epsilon(&poly).into_iter().map(|(t, e)| [num(t), num(e)]),
    )?;
    out.csv(
        "polynomial.csv",
        "interpolating polynomial",
        &["t", "polynomial"],
        probe.points().iter().map(|&t| [num(t), num(poly.evaluate(t))]),
    )?;
    out.csv(
        "function.csv",
        "interpolated function on the grid variable",
        &["t", "function"],
        probe.points().iter().map(|&t| [num(t), num(target.value(t))]),
    )?;
    out.json("summary.json", &summary)?;
    out.finish()
}
