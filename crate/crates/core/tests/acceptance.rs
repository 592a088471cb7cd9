//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

// published table values, not approximations of constants
#![allow(clippy::approx_constant)]

use std::process::ExitCode;
use std::time::Instant;

use phantom_core::extension::{assemble_extended, build_hermite_blend, ExtensionConfig};
use phantom_core::fourier::{
    asymptotic_coefficients, blended_sawtooth_series, compute_coefficients, estimate_decay_order, FourierSeries,
    JumpData, OnePeriod, Piece, Piecewise, DEFAULT_PANELS,
};
use phantom_core::function::{Named, RealFunction, Scaled};
use phantom_core::math::{self, PI, TWO_PI};
use phantom_core::optimize::{evaluate_candidate, select_phantom_values, SelectionConfig};
use phantom_core::phantom::{
    error_ratio, phantom_values_blend, plan_grid, BlendSpec, NodeProblem, Sampling, SlopeUnits, Smoothness,
};
use phantom_core::triginterp::{interpolate, SampleSet};
use phantom_core::DerivativeSource;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const NODE_COUNTS: [usize; 3] = [5, 9, 13];

/// Reference blend ratios, `[N row][C0, C1, C2]`, for one function and k.
struct Table {
    function: Named,
    pairs: usize,
    blend: [[f64; 3]; 3],
    /// `(row, column)` cells excluded from the count.
    exempt: &'static [(usize, usize)],
}

const TABLES: [Table; 6] = [
    Table {
        function: Named::Linear,
        pairs: 1,
        blend: [[2.5, 7.6, 7.6], [3.0, 8.7, 18.3], [3.2, 9.4, 9.4]],
        exempt: &[(2, 2)],
    },
    Table {
        function: Named::Linear,
        pairs: 2,
        blend: [[3.4, 15.8, 41.3], [4.5, 20.6, 61.1], [4.8, 22.9, 71.1]],
        exempt: &[],
    },
    Table {
        function: Named::Sin075,
        pairs: 1,
        blend: [[0.73, 1.5, 4.8], [5.8, 50.0, 84.6], [4.4, 23.1, 60.0]],
        exempt: &[],
    },
    Table {
        function: Named::Sin075,
        pairs: 2,
        blend: [[0.58, 1.4, 10.0], [3.14, 14.6, 53.7], [8.0, 70.6, 282.4]],
        exempt: &[(0, 0), (0, 1), (0, 2)],
    },
    Table {
        function: Named::Exp002,
        pairs: 1,
        blend: [[1.5, 2.75, 5.5], [1.8, 13.75, 15.7], [2.1, 5.2, 12.1]],
        exempt: &[],
    },
    Table {
        function: Named::Exp002,
        pairs: 2,
        blend: [[1.6, 5.2, 8.9], [2.2, 7.9, 22.0], [2.1, 8.1, 8.9]],
        exempt: &[],
    },
];

fn linear_problem(n: usize) -> NodeProblem<'static> {
    NodeProblem::new(&Named::Linear, n, Sampling::Step(1.0)).unwrap()
}

fn native_sampling(f: Named) -> Sampling {
    match f {
        Named::Linear => Sampling::Step(1.0),
        _ => Sampling::Span,
    }
}

fn ramp(n: usize) -> Vec<f64> {
    (1..=n).map(|i| i as f64).collect()
}

fn phantom_value_reproduction() -> Outcome {
    let spec = BlendSpec::new(Smoothness::C1, DerivativeSource::Analytic, SlopeUnits::PerSample);
    let f: &dyn RealFunction = &Named::Linear;
    let one = phantom_values_blend(&ramp(9), &plan_grid(9, 1).unwrap(), &spec, Some(f), Sampling::Step(1.0))
        .map_err(|e| e.to_string())?;
    let two = phantom_values_blend(&ramp(9), &plan_grid(9, 2).unwrap(), &spec, Some(f), Sampling::Step(1.0))
        .map_err(|e| e.to_string())?;
    let ok1 = one.iter().zip([7.053, 2.947]).all(|(a, b)| (a - b).abs() <= 1e-3);
    let ok2 = two.iter().zip([8.4, 6.3, 3.7, 1.6]).all(|(a, b)| (a - b).abs() <= 0.05);
    let detail = format!("k=1 {one:.4?}, k=2 {two:.3?}");
    if ok1 && ok2 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn reduction_factors() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (pairs, target) in [(1, 6.875), (2, 11.786)] {
        let mut hit = false;
        for source in [DerivativeSource::Analytic, DerivativeSource::DividedDifference] {
            for units in [SlopeUnits::PerSample, SlopeUnits::PerRadian] {
                let spec = BlendSpec::new(Smoothness::C1, source, units);
                let r = error_ratio(&linear_problem(9), pairs, &spec).map_err(|e| e.to_string())?;
                let within = (r.ratio / target - 1.0).abs() <= 0.25;
                hit |= within;
                lines.push(format!("k={pairs} {source:?}/{units:?} {:.3}", r.ratio));
            }
        }
        ok &= hit;
    }
    let detail = lines.join(", ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for table in &TABLES {
        let sampling = native_sampling(table.function);
        let mut best: Option<(usize, DerivativeSource, Vec<String>)> = None;
        for source in [DerivativeSource::Analytic, DerivativeSource::DividedDifference] {
            let mut hits = 0;
            let mut misses = Vec::new();
            for (row, &n) in NODE_COUNTS.iter().enumerate() {
                let problem = NodeProblem::new(&table.function, n, sampling).unwrap();
                for (col, s) in Smoothness::ALL.into_iter().enumerate() {
                    if table.exempt.contains(&(row, col)) {
                        continue;
                    }
                    let spec = BlendSpec::new(s, source, SlopeUnits::PerRadian);
                    let published = table.blend[row][col];
                    match error_ratio(&problem, table.pairs, &spec) {
                        Ok(r) if (r.ratio / published - 1.0).abs() <= 0.35 => hits += 1,
                        Ok(r) => misses.push(format!("N={n} {s:?} {:.2} vs {published}", r.ratio)),
                        Err(e) => misses.push(format!("N={n} {s:?} {e}")),
                    }
                }
            }
            if best.as_ref().is_none_or(|b| hits > b.0) {
                best = Some((hits, source, misses));
            }
        }
        let (hits, source, misses) = best.unwrap();
        let counted = 9 - table.exempt.len();
        let needed = (3 * counted).div_ceil(4);
        ok &= hits >= needed;
        lines.push(format!(
            "{} k={} {hits}/{counted} ({source:?}){}",
            table.function.name(),
            table.pairs,
            if misses.is_empty() {
                String::new()
            } else {
                format!(" misses: {}", misses.join("; "))
            }
        ));
    }
    for (index, n, cells) in [(0, 13, "C2"), (3, 5, "C0 C1 C2")] {
        let table = &TABLES[index];
        let problem = NodeProblem::new(&table.function, n, native_sampling(table.function)).unwrap();
        let computed: Vec<String> = Smoothness::ALL
            .into_iter()
            .map(|s| {
                error_ratio(&problem, table.pairs, &BlendSpec::analytic(s))
                    .map(|r| format!("{:.2}", r.ratio))
                    .unwrap_or_else(|e| e.to_string())
            })
            .collect();
        lines.push(format!(
            "exempt {} k={} N={n} {cells}: computed C0..C2 {}",
            table.function.name(),
            table.pairs,
            computed.join("/")
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 60.0;
    let detail = format!("{} [{elapsed:.2}s]", lines.join(" | "));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sigma_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in [PI / 4.0, PI / 2.0, PI] {
        let ext = assemble_extended(
            Named::Sawtooth,
            ExtensionConfig::symmetric(alpha, 1),
            DerivativeSource::Analytic,
        )
        .map_err(|e| e.to_string())?;
        let quad = compute_coefficients(&ext, 64, DEFAULT_PANELS).map_err(|e| e.to_string())?;
        let exact = blended_sawtooth_series(64, alpha).map_err(|e| e.to_string())?;
        for n in 1..=64 {
            worst = worst
                .max((quad.sin_coefficient(n) - exact.sin_coefficient(n)).abs())
                .max(quad.cos_coefficient(n).abs());
        }
    }
    let detail = format!("max deviation {worst:.2e}");
    if worst <= 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn decay_ladder() -> Outcome {
    let order = |s: &FourierSeries| estimate_decay_order(s, 8).unwrap_or(f64::NAN);
    let raw = order(&compute_coefficients(&OnePeriod(Named::Sawtooth), 64, DEFAULT_PANELS).map_err(|e| e.to_string())?);
    let blended = assemble_extended(
        Named::Sawtooth,
        ExtensionConfig::single_sided(PI / 2.0, 1),
        DerivativeSource::Analytic,
    )
    .map_err(|e| e.to_string())?;
    let one = order(&compute_coefficients(&blended, 64, DEFAULT_PANELS).map_err(|e| e.to_string())?);
    let mut ladder = Vec::new();
    for k in 1..=3 {
        let ext = assemble_extended(
            Named::Exp002,
            ExtensionConfig::single_sided(PI / 2.0, k),
            DerivativeSource::Analytic,
        )
        .map_err(|e| e.to_string())?;
        ladder.push(order(
            &compute_coefficients(&ext, 64, DEFAULT_PANELS).map_err(|e| e.to_string())?,
        ));
    }
    let ok = (raw - 1.0).abs() <= 0.3
        && (one - 2.0).abs() <= 0.3
        && ladder.iter().zip([2.0, 3.0, 4.0]).all(|(g, w)| (g - w).abs() <= 0.3)
        && ladder.windows(2).all(|w| w[1] > w[0]);
    let detail = format!("sawtooth raw {raw:.3}, k=1 {one:.3}; exp k=1..3 {ladder:.3?}");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn jump_asymptotics() -> Outcome {
    let saw = JumpData::new(vec![0.0], vec![vec![-TWO_PI]]).map_err(|e| e.to_string())?;
    let mut saw_dev: f64 = 0.0;
    for n in 1..=64 {
        let (a, b) = asymptotic_coefficients(&saw, n, 1).map_err(|e| e.to_string())?;
        saw_dev = saw_dev.max(a.abs()).max((b + 2.0 / n as f64).abs());
    }

    // e^{x/4} on [0, π), cos x on [π, 2π)
    let jumps = JumpData::new(
        vec![0.0, PI],
        vec![
            (0..4)
                .map(|i| math::powi(0.25, i) - math::cos(TWO_PI + i as f64 * PI / 2.0))
                .collect(),
            (0..4)
                .map(|i| math::cos(PI + i as f64 * PI / 2.0) - math::powi(0.25, i) * math::exp(PI / 4.0))
                .collect(),
        ],
    )
    .map_err(|e| e.to_string())?;
    let f = Piecewise::new(
        vec![PI],
        vec![
            Box::new(|x: f64| math::exp(x / 4.0)) as Piece,
            Box::new(|x: f64| math::cos(x)) as Piece,
        ],
    )
    .map_err(|e| e.to_string())?;
    let quad = compute_coefficients(&f, 64, 8192).map_err(|e| e.to_string())?;
    let leading = -slope(
        &(8..=64)
            .map(|n| ((n as f64).ln(), quad.magnitude(n).ln()))
            .collect::<Vec<_>>(),
    );
    let mut residual_orders = Vec::new();
    for k in 1..=3 {
        let pts: Vec<(f64, f64)> = (8..=64)
            .map(|n| {
                let (a, b) = asymptotic_coefficients(&jumps, n, k).unwrap();
                let r = math::hypot(quad.cos_coefficient(n) - a, quad.sin_coefficient(n) - b);
                ((n as f64).ln(), r.ln())
            })
            .collect();
        residual_orders.push(-slope(&pts));
    }
    let ok = saw_dev <= 1e-15 && residual_orders[0] >= leading + 1.0;
    let detail = format!(
        "sawtooth deviation {saw_dev:.1e}; two-jump leading order {leading:.3}, residual orders k=1..3 {residual_orders:.3?}"
    );
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn best_blend_error(problem: &NodeProblem<'_>, pairs: usize) -> f64 {
    let mut best = f64::INFINITY;
    for s in Smoothness::ALL {
        for source in [DerivativeSource::Analytic, DerivativeSource::DividedDifference] {
            for units in [SlopeUnits::PerRadian, SlopeUnits::PerSample] {
                if let Ok(r) = error_ratio(problem, pairs, &BlendSpec::new(s, source, units)) {
                    best = best.min(r.error_with);
                }
            }
        }
    }
    best
}

fn optimizer_magnitude() -> Outcome {
    let start = Instant::now();
    let problem = linear_problem(9);
    let r = select_phantom_values(&problem, 2, &SelectionConfig::default()).map_err(|e| e.to_string())?;
    let mut ok = r.ratio >= 300.0;
    let mut lines = vec![format!(
        "search ratio {:.1} at {:?} ({} evaluations)",
        r.ratio, r.phantom_values, r.evaluations
    )];
    for (n, printed) in [(9, [9.525, 7.28, 2.665, 0.46]), (13, [13.37, 10.15, 3.846, 0.626])] {
        let problem = linear_problem(n);
        let e = evaluate_candidate(&problem, 2, &printed).map_err(|e| e.to_string())?;
        let blend = best_blend_error(&problem, 2);
        let baseline = problem.baseline().map_err(|e| e.to_string())?.1.max_abs_error;
        ok &= e < blend;
        lines.push(format!(
            "reference optimum N={n}: error {e:.3e} vs best blend {blend:.3e}, ratio {:.1}",
            baseline / e
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 120.0;
    let detail = format!("{} [{elapsed:.2}s]", lines.join("; "));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    for _ in 0..50 {
        let k = rng.random_range(1..=4);
        let left: Vec<f64> = (0..k).map(|_| rng.random_range(-3.0..3.0)).collect();
        let right: Vec<f64> = (0..k).map(|_| rng.random_range(-3.0..3.0)).collect();
        let t0 = rng.random_range(3.0..5.5);
        let blend = build_hermite_blend(&left, &right, t0, TWO_PI).unwrap();
        let matched = (0..k).all(|j| {
            let tol = 1e-8 * (1.0 + left[j].abs().max(right[j].abs()));
            (blend.derivative(j, t0) - left[j]).abs() <= tol && (blend.derivative(j, TWO_PI) - right[j]).abs() <= tol
        });
        check("hermite endpoint matching", matched);
    }

    for _ in 0..50 {
        let m = 2 * rng.random_range(1..12) + 1;
        let values: Vec<f64> = (0..m).map(|_| rng.random_range(-5.0..5.0)).collect();
        let set = SampleSet::new(values.clone()).unwrap();
        let poly = interpolate(&set);
        check(
            "node exactness",
            (0..m).all(|i| (poly.evaluate(set.node(i)) - values[i]).abs() <= 1e-10),
        );

        let order = (m - 1) / 2;
        let coef: Vec<(f64, f64)> = (0..=order)
            .map(|_| (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let trig = |t: f64| {
            coef.iter()
                .enumerate()
                .map(|(j, &(a, b))| {
                    if j == 0 {
                        a
                    } else {
                        a * math::cos(j as f64 * t) + b * math::sin(j as f64 * t)
                    }
                })
                .sum::<f64>()
        };
        // the top sine is aliased to zero at an odd node count only if order < m/2
        let set = SampleSet::new((0..m).map(|i| trig(i as f64 * TWO_PI / m as f64)).collect()).unwrap();
        let poly = interpolate(&set);
        check(
            "trig reproduction",
            (0..40).all(|i| {
                let t = i as f64 * 0.157;
                (poly.evaluate(t) - trig(t)).abs() <= 1e-10
            }),
        );
    }

    for half in 1..25 {
        for k in 1..5 {
            let n = 2 * half + 1;
            let p = plan_grid(n, k).unwrap();
            check(
                "plan arithmetic",
                (p.total_nodes() as f64 * p.step() - TWO_PI).abs() <= 1e-14
                    && (p.interval_end() - (TWO_PI - (2 * k + 1) as f64 * p.step())).abs() <= 1e-13,
            );
        }
    }

    for f in [Named::Linear, Named::Sin075, Named::Exp002] {
        let scaled = Scaled { inner: f, factor: 5.0 };
        for n in NODE_COUNTS {
            for k in 1..=2 {
                for s in Smoothness::ALL {
                    let spec = BlendSpec::analytic(s);
                    let a = error_ratio(&NodeProblem::new(&f, n, Sampling::Span).unwrap(), k, &spec).unwrap();
                    let b = error_ratio(&NodeProblem::new(&scaled, n, Sampling::Span).unwrap(), k, &spec).unwrap();
                    check("scale invariance", (a.ratio - b.ratio).abs() <= 1e-12 * a.ratio);
                }
            }
        }
    }

    let config = SelectionConfig {
        budget: 2500,
        seeds: 4,
        seed: 5,
        ..SelectionConfig::default()
    };
    for f in [Named::Linear, Named::Sin075, Named::Exp002] {
        for n in [5, 9] {
            let problem = NodeProblem::new(&f, n, native_sampling(f)).unwrap();
            let r = select_phantom_values(&problem, 1, &config).unwrap();
            check(
                "warm-start dominance",
                r.achieved_error <= best_blend_error(&problem, 1),
            );
            check("evaluation budget", r.evaluations <= config.budget);
            let again = select_phantom_values(&problem, 1, &config).unwrap();
            check("seeded determinism", r == again);
        }
    }

    failures.sort();
    failures.dedup();
    if failures.is_empty() {
        Ok("all property checks hold".to_string())
    } else {
        Err(format!("failed: {}", failures.join(", ")))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("phantom-value reproduction", phantom_value_reproduction),
        ("reduction factors", reduction_factors),
        ("table reproduction", table_reproduction),
        ("sigma-multiplier identity", sigma_identity),
        ("decay-order ladder", decay_ladder),
        ("jump-asymptotics consistency", jump_asymptotics),
        ("optimizer magnitude", optimizer_magnitude),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
