//! Minimax search for phantom-node values.
//!
//! Multi-start Nelder-Mead from the blend values plus seeded Gaussian
//! restarts, followed by cyclic coordinate refinement on a `10⁻³` lattice.
//! The objective is the max normalized error on the interpolation interval,
//! computed by [`CandidateEvaluator`] so that scores agree bit-for-bit with
//! the blend pipeline.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::math;
use crate::phantom::{
    ratio_record, BlendSpec, CandidateEvaluator, NodeProblem, RatioRecord, SlopeUnits, Smoothness, Strategy,
};
use crate::DerivativeSource;

pub const MIN_BUDGET: usize = 2000;

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
const SIMPLEX_TOLERANCE: f64 = 1e-4;
const REFINE_START: f64 = 0.128;
const REFINE_END: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SelectionConfig {
    /// Objective evaluations, warm starts included.
    pub budget: usize,
    /// Number of simplex runs: up to three blend warm starts, the rest random.
    pub seeds: usize,
    pub seed: u64,
    /// Lattice for the reported values; `None` keeps them unrounded.
    pub rounding: Option<f64>,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self {
            budget: 20_000,
            seeds: 8,
            seed: 0,
            rounding: Some(1e-3),
        }
    }
}

impl SelectionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budget < MIN_BUDGET {
            return Err(Error::invalid("budget", "must be at least 2000 evaluations"));
        }
        if self.seeds == 0 {
            return Err(Error::invalid("seeds", "must be at least 1"));
        }
        if let Some(r) = self.rounding {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::invalid("rounding", "must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SelectionResult {
    pub phantom_values: Vec<f64>,
    pub achieved_error: f64,
    pub baseline_error: f64,
    pub ratio: f64,
    pub evaluations: usize,
    /// At least one simplex run shrank below tolerance.
    pub converged: bool,
    pub seed: u64,
    /// Best error among the blend starting points.
    pub warm_start_error: f64,
}

/// Max normalized error on `[0, (N − 1)h]` for the given phantom values.
pub fn evaluate_candidate(problem: &NodeProblem<'_>, pairs: usize, values: &[f64]) -> Result<f64> {
    CandidateEvaluator::new(problem, pairs)?.error(values)
}

#[derive(Debug, Clone)]
struct Candidate {
    values: Vec<f64>,
    error: f64,
}

fn compare(a: &Candidate, b: &Candidate) -> Ordering {
    a.error.total_cmp(&b.error).then_with(|| {
        a.values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Objective with an evaluation budget and a running best.
struct Objective<'a> {
    evaluator: &'a CandidateEvaluator,
    used: usize,
    budget: usize,
    best: Option<Candidate>,
}

impl<'a> Objective<'a> {
    fn remaining(&self) -> usize {
        self.budget - self.used
    }

    fn eval(&mut self, values: &[f64]) -> Option<f64> {
        if self.used >= self.budget {
            return None;
        }
        self.used += 1;
        // non-finite trial points score as infinitely bad
        let error = self.evaluator.error(values).unwrap_or(f64::INFINITY);
        let c = Candidate {
            values: values.to_vec(),
            error,
        };
        if self.best.as_ref().is_none_or(|b| compare(&c, b).is_lt()) {
            self.best = Some(c);
        }
        Some(error)
    }
}

/// Nelder-Mead from `start`; returns whether the simplex converged.
fn nelder_mead(obj: &mut Objective<'_>, start: &[f64], step: f64, limit: usize) -> bool {
    let d = start.len();
    let stop = obj.used + limit.min(obj.remaining());
    let mut simplex: Vec<Candidate> = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut x = start.to_vec();
        if i > 0 {
            x[i - 1] += step;
        }
        if obj.used >= stop {
            return false;
        }
        let error = obj.eval(&x).unwrap_or(f64::INFINITY);
        simplex.push(Candidate { values: x, error });
    }
    loop {
        simplex.sort_by(compare);
        let diameter = simplex[1..]
            .iter()
            .map(|c| {
                c.values
                    .iter()
                    .zip(&simplex[0].values)
                    .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
            })
            .fold(0.0_f64, f64::max);
        if diameter < SIMPLEX_TOLERANCE {
            return true;
        }
        if obj.used + 2 > stop {
            return false;
        }
        let mut centroid = vec![0.0; d];
        for c in &simplex[..d] {
            for (m, v) in centroid.iter_mut().zip(&c.values) {
                *m += v / d as f64;
            }
        }
        let toward = |coef: f64, worst: &[f64]| -> Vec<f64> {
            centroid.iter().zip(worst).map(|(c, w)| c + coef * (c - w)).collect()
        };
        let worst = simplex[d].clone();
        let xr = toward(REFLECT, &worst.values);
        let fr = obj.eval(&xr).unwrap_or(f64::INFINITY);
        if fr < simplex[0].error {
            let xe = toward(EXPAND, &worst.values);
            let fe = obj.eval(&xe).unwrap_or(f64::INFINITY);
            simplex[d] = if fe < fr {
                Candidate { values: xe, error: fe }
            } else {
                Candidate { values: xr, error: fr }
            };
            continue;
        }
        if fr < simplex[d - 1].error {
            simplex[d] = Candidate { values: xr, error: fr };
            continue;
        }
        // contraction, outside if the reflection helped at all
        let (xc, fc) = if fr < worst.error {
            let x = toward(CONTRACT, &worst.values);
            let f = obj.eval(&x).unwrap_or(f64::INFINITY);
            (x, f)
        } else {
            let x = toward(-CONTRACT, &worst.values);
            let f = obj.eval(&x).unwrap_or(f64::INFINITY);
            (x, f)
        };
        if fc < worst.error.min(fr) {
            simplex[d] = Candidate { values: xc, error: fc };
            continue;
        }
        let best = simplex[0].values.clone();
        for c in simplex.iter_mut().skip(1) {
            if obj.used >= stop {
                return false;
            }
            for (v, b) in c.values.iter_mut().zip(&best) {
                *v = b + SHRINK * (*v - b);
            }
            c.error = obj.eval(&c.values).unwrap_or(f64::INFINITY);
        }
    }
}

/// Cyclic coordinate descent with step halving.
fn refine(obj: &mut Objective<'_>, start: Candidate) -> Candidate {
    let mut current = start;
    let mut step = REFINE_START;
    while step >= REFINE_END * 0.999 {
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..current.values.len() {
                for sign in [1.0, -1.0] {
                    let mut x = current.values.clone();
                    x[i] += sign * step;
                    let Some(error) = obj.eval(&x) else {
                        return current;
                    };
                    if error < current.error {
                        current = Candidate { values: x, error };
                        improved = true;
                        break;
                    }
                }
            }
        }
        step *= 0.5;
    }
    current
}

fn round_to(values: &[f64], lattice: Option<f64>) -> Vec<f64> {
    match lattice {
        Some(r) => values.iter().map(|v| math::round(v / r) * r).collect(),
        None => values.to_vec(),
    }
}

/// Best blend values per smoothness order over every derivative mode that
/// applies to the problem's function.
fn blend_starts(problem: &NodeProblem<'_>, evaluator: &CandidateEvaluator) -> Vec<Candidate> {
    let mut out = Vec::new();
    for s in Smoothness::ALL {
        let mut best: Option<Candidate> = None;
        for source in [DerivativeSource::Analytic, DerivativeSource::DividedDifference] {
            for units in [SlopeUnits::PerRadian, SlopeUnits::PerSample] {
                let Ok(values) = problem.blend_values(evaluator.plan(), &BlendSpec::new(s, source, units)) else {
                    continue;
                };
                let Ok(error) = evaluator.error(&values) else {
                    continue;
                };
                let c = Candidate { values, error };
                if best.as_ref().is_none_or(|b| compare(&c, b).is_lt()) {
                    best = Some(c);
                }
            }
        }
        out.extend(best);
    }
    out
}

/// Searches for the `2k` phantom values minimizing the max normalized error.
pub fn select_phantom_values(
    problem: &NodeProblem<'_>,
    pairs: usize,
    config: &SelectionConfig,
) -> Result<SelectionResult> {
    config.validate()?;
    let baseline_error = problem.baseline()?.1.max_abs_error;
    let evaluator = CandidateEvaluator::new(problem, pairs)?;
    let samples = evaluator.samples();
    let lo = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };

    let mut starts = blend_starts(problem, &evaluator);
    if starts.is_empty() {
        return Err(Error::UndefinedMetric);
    }
    let warm = starts.iter().min_by(|a, b| compare(a, b)).cloned().unwrap();
    let mut obj = Objective {
        evaluator: &evaluator,
        used: starts.len(),
        budget: config.budget,
        best: Some(warm.clone()),
    };

    let warm_runs = starts.len().min(config.seeds);
    starts.sort_by(compare);
    starts.truncate(warm_runs);
    let mut points: Vec<Vec<f64>> = starts.into_iter().map(|c| c.values).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let normal = Normal::new(0.0, 0.5 * span).map_err(|_| Error::invalid("span", "not finite"))?;
    for _ in warm_runs..config.seeds {
        points.push(warm.values.iter().map(|v| v + normal.sample(&mut rng)).collect());
    }

    let simplex_budget = config.budget * 3 / 4;
    let per_run = (simplex_budget.saturating_sub(obj.used) / points.len()).max(1);
    let mut converged = false;
    for p in &points {
        converged |= nelder_mead(&mut obj, p, 0.1 * span, per_run);
    }

    let best = obj.best.clone().unwrap();
    let lattice = round_to(&best.values, config.rounding);
    let start = match obj.eval(&lattice) {
        Some(error) => Candidate { values: lattice, error },
        None => best,
    };
    let refined = refine(&mut obj, start);

    let values = round_to(&refined.values, config.rounding);
    let mut chosen = Candidate {
        error: evaluator.error(&values)?,
        values,
    };
    if compare(&warm, &chosen).is_lt() {
        chosen = warm.clone();
    }
    let evaluations = obj.used + 1;
    Ok(SelectionResult {
        ratio: baseline_error / chosen.error,
        phantom_values: chosen.values,
        achieved_error: chosen.error,
        baseline_error,
        evaluations: evaluations.min(config.budget),
        converged,
        seed: config.seed,
        warm_start_error: warm.error,
    })
}

/// The "selected" cell of a ratio table.
pub fn selected_ratio(problem: &NodeProblem<'_>, pairs: usize, config: &SelectionConfig) -> Result<RatioRecord> {
    let r = select_phantom_values(problem, pairs, config)?;
    ratio_record(
        problem,
        pairs,
        Strategy::Selected,
        r.baseline_error,
        r.achieved_error,
        r.phantom_values,
    )
}
