//! The phantom-node method: `2k` extra nodes appended to the right of `N`
//! real samples, with values synthesized by a boundary blend (or chosen by
//! search, see [`crate::optimize`]).
//!
//! The `N` real sample values are placed on the refined grid
//! `tᵢ = i·h`, `h = 2π/(N + 2k)`, so they occupy `[0, (N − 1)h]`; the
//! blend runs over `[(N − 1)h, 2π]` from the last real value back to the
//! first. Errors are always normalized by `|f_N − f_1|` of the real data.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extension::build_hermite_blend;
use crate::function::{RealFunction, Rescaled};
use crate::math::{self, TWO_PI};
use crate::newton;
use crate::optimize::{self, SelectionConfig};
use crate::triginterp::{interpolate, ErrorProbe, ErrorReport, SampleSet, TrigPolynomial, DEFAULT_ERROR_GRID};
use crate::DerivativeSource;

/// Points used by one-sided divided differences at each end of the data.
pub const STENCIL: usize = 4;

/// Refined grid for `N` real nodes and `k` phantom pairs.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhantomPlan {
    real_nodes: usize,
    pairs: usize,
    step: f64,
    values: Option<Vec<f64>>,
}

pub fn plan_grid(real_nodes: usize, pairs: usize) -> Result<PhantomPlan> {
    if real_nodes < 3 {
        return Err(Error::invalid("N", "need at least 3 real nodes"));
    }
    if pairs == 0 {
        return Err(Error::invalid("k", "need at least one phantom pair"));
    }
    if real_nodes.is_multiple_of(2) {
        return Err(Error::invalid("N", "N + 2k must be odd, so N must be odd"));
    }
    Ok(PhantomPlan {
        real_nodes,
        pairs,
        step: TWO_PI / (real_nodes + 2 * pairs) as f64,
        values: None,
    })
}

impl PhantomPlan {
    pub fn real_nodes(&self) -> usize {
        self.real_nodes
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn phantom_count(&self) -> usize {
        2 * self.pairs
    }

    pub fn total_nodes(&self) -> usize {
        self.real_nodes + 2 * self.pairs
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// End of the interpolation interval `[0, (N − 1)h]`.
    pub fn interval_end(&self) -> f64 {
        (self.real_nodes - 1) as f64 * self.step
    }

    pub fn phantom_positions(&self) -> Vec<f64> {
        (self.real_nodes..self.total_nodes())
            .map(|i| i as f64 * self.step)
            .collect()
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    pub fn with_values(mut self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.phantom_count() {
            return Err(Error::LengthMismatch {
                expected: self.phantom_count(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "phantom values",
            });
        }
        self.values = Some(values);
        Ok(self)
    }
}

/// Matched derivative orders at the blend ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Smoothness {
    C0,
    C1,
    C2,
}

impl Smoothness {
    pub const ALL: [Smoothness; 3] = [Smoothness::C0, Smoothness::C1, Smoothness::C2];

    pub fn derivative_orders(self) -> usize {
        match self {
            Smoothness::C0 => 0,
            Smoothness::C1 => 1,
            Smoothness::C2 => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Strategy {
    Blend(Smoothness),
    Selected,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Blend(Smoothness::C0),
        Strategy::Blend(Smoothness::C1),
        Strategy::Blend(Smoothness::C2),
        Strategy::Selected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Blend(Smoothness::C0) => "C0",
            Strategy::Blend(Smoothness::C1) => "C1",
            Strategy::Blend(Smoothness::C2) => "C2",
            Strategy::Selected => "selected",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name().eq_ignore_ascii_case(name))
    }
}

/// Variable in which blend derivative conditions are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SlopeUnits {
    /// Derivatives with respect to the grid variable `t`, consistent with the
    /// placement of the samples on the refined grid.
    PerRadian,
    /// Derivatives with respect to the sample index (for divided differences,
    /// plain differences of neighbouring values) used directly as `t`-slopes.
    PerSample,
}

/// Where the `N` real samples are taken in the function's own variable.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Sampling {
    /// `xᵢ = i·2π/(N − 1)`: the samples cover the closed interval `[0, 2π]`.
    Span,
    /// `xᵢ = i·Δ`.
    Step(f64),
}

impl Sampling {
    pub fn spacing(self, real_nodes: usize) -> f64 {
        match self {
            Sampling::Span => TWO_PI / (real_nodes - 1) as f64,
            Sampling::Step(d) => d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlendSpec {
    pub smoothness: Smoothness,
    pub source: DerivativeSource,
    pub units: SlopeUnits,
}

impl BlendSpec {
    pub fn new(smoothness: Smoothness, source: DerivativeSource, units: SlopeUnits) -> Self {
        Self {
            smoothness,
            source,
            units,
        }
    }

    pub fn analytic(smoothness: Smoothness) -> Self {
        Self::new(smoothness, DerivativeSource::Analytic, SlopeUnits::PerRadian)
    }
}

/// Value and derivatives at the two blend ends, in the grid variable.
#[derive(Debug, Clone, PartialEq)]
pub struct SeamData {
    /// At `(N − 1)h`, from the right edge of the real data.
    pub left: Vec<f64>,
    /// At `2π`, from the left edge of the real data (periodic wrap).
    pub right: Vec<f64>,
}

/// Evaluates the Hermite blend on `[(N − 1)h, 2π]` at the phantom nodes.
pub fn phantom_values_from_seams(plan: &PhantomPlan, seams: &SeamData) -> Result<Vec<f64>> {
    let blend = build_hermite_blend(&seams.left, &seams.right, plan.interval_end(), TWO_PI)?;
    Ok(plan.phantom_positions().into_iter().map(|t| blend.value(t)).collect())
}

/// Seam data for `samples` (the `N` real values) under `spec`.
///
/// Analytic derivatives come from `f` at `x = (N − 1)Δ` and `x = 0`, where
/// `Δ` is the sample spacing given by `sampling`.
pub fn seam_data(
    samples: &[f64],
    plan: &PhantomPlan,
    spec: &BlendSpec,
    f: Option<&dyn RealFunction>,
    sampling: Sampling,
) -> Result<SeamData> {
    let n = plan.real_nodes();
    if samples.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: samples.len(),
        });
    }
    let orders = spec.smoothness.derivative_orders();
    let mut left = alloc::vec![samples[n - 1]];
    let mut right = alloc::vec![samples[0]];
    if orders == 0 {
        return Ok(SeamData { left, right });
    }
    let spacing = sampling.spacing(n);
    match spec.source {
        DerivativeSource::Analytic => {
            let f = f.ok_or(Error::MissingDerivative { order: 1 })?;
            let unit = match spec.units {
                SlopeUnits::PerRadian => spacing / plan.step(),
                SlopeUnits::PerSample => spacing,
            };
            let x_end = (n - 1) as f64 * spacing;
            for j in 1..=orders {
                let scale = math::powi(unit, j);
                left.push(f.derivative(j, x_end).ok_or(Error::MissingDerivative { order: j })? * scale);
                right.push(f.derivative(j, 0.0).ok_or(Error::MissingDerivative { order: j })? * scale);
            }
        }
        DerivativeSource::DividedDifference => {
            if n < STENCIL {
                return Err(Error::InsufficientSamples {
                    needed: STENCIL,
                    found: n,
                });
            }
            let h = match spec.units {
                SlopeUnits::PerRadian => plan.step(),
                SlopeUnits::PerSample => 1.0,
            };
            let back: Vec<f64> = (0..STENCIL).map(|m| -(m as f64) * h).collect();
            let back_vals: Vec<f64> = (0..STENCIL).map(|m| samples[n - 1 - m]).collect();
            let fwd: Vec<f64> = (0..STENCIL).map(|m| m as f64 * h).collect();
            let d_left = newton::derivatives_at_first(&back, &back_vals, orders);
            let d_right = newton::derivatives_at_first(&fwd, &samples[..STENCIL], orders);
            left.extend_from_slice(&d_left[1..]);
            right.extend_from_slice(&d_right[1..]);
        }
    }
    Ok(SeamData { left, right })
}

/// Phantom values from a C0/C1/C2 blend of the real samples.
pub fn phantom_values_blend(
    samples: &[f64],
    plan: &PhantomPlan,
    spec: &BlendSpec,
    f: Option<&dyn RealFunction>,
    sampling: Sampling,
) -> Result<Vec<f64>> {
    let seams = seam_data(samples, plan, spec, f, sampling)?;
    phantom_values_from_seams(plan, &seams)
}

/// Interpolates the real samples followed by the plan's phantom values.
pub fn augment_and_interpolate(samples: &[f64], plan: &PhantomPlan) -> Result<TrigPolynomial> {
    let phantom = plan
        .values()
        .ok_or(Error::invalid("plan", "phantom values are not set"))?;
    if samples.len() != plan.real_nodes() {
        return Err(Error::LengthMismatch {
            expected: plan.real_nodes(),
            found: samples.len(),
        });
    }
    let mut all = Vec::with_capacity(plan.total_nodes());
    all.extend_from_slice(samples);
    all.extend_from_slice(phantom);
    Ok(interpolate(&SampleSet::new(all)?))
}

/// A function sampled at `N` real nodes, with the error grids used to score
/// interpolants with and without phantom nodes.
#[derive(Clone, Copy)]
pub struct NodeProblem<'a> {
    function: &'a dyn RealFunction,
    real_nodes: usize,
    sampling: Sampling,
    grid: usize,
}

impl<'a> NodeProblem<'a> {
    pub fn new(function: &'a dyn RealFunction, real_nodes: usize, sampling: Sampling) -> Result<Self> {
        if real_nodes < 3 || real_nodes.is_multiple_of(2) {
            return Err(Error::invalid("N", "must be odd and at least 3"));
        }
        if let Sampling::Step(d) = sampling {
            if !(d > 0.0 && d.is_finite()) {
                return Err(Error::invalid("sample spacing", "must be positive"));
            }
        }
        Ok(Self {
            function,
            real_nodes,
            sampling,
            grid: DEFAULT_ERROR_GRID,
        })
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    pub fn function(&self) -> &'a dyn RealFunction {
        self.function
    }

    pub fn real_nodes(&self) -> usize {
        self.real_nodes
    }

    pub fn sampling(&self) -> Sampling {
        self.sampling
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn sample_spacing(&self) -> f64 {
        self.sampling.spacing(self.real_nodes)
    }

    pub fn samples(&self) -> Result<Vec<f64>> {
        let d = self.sample_spacing();
        let v: Vec<f64> = (0..self.real_nodes)
            .map(|i| self.function.value(i as f64 * d))
            .collect();
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite { context: "samples" });
        }
        Ok(v)
    }

    /// `|f_N − f_1|`
    pub fn denominator(&self) -> Result<f64> {
        let s = self.samples()?;
        Ok((s[self.real_nodes - 1] - s[0]).abs())
    }

    /// The continuous function the samples represent when placed on a grid
    /// of step `grid_step`.
    pub fn target(&self, grid_step: f64) -> Rescaled<&'a dyn RealFunction> {
        Rescaled {
            inner: self.function,
            scale: self.sample_spacing() / grid_step,
            offset: 0.0,
        }
    }

    fn probe(&self, grid_step: f64) -> Result<ErrorProbe> {
        let end = (self.real_nodes - 1) as f64 * grid_step;
        ErrorProbe::new(&self.target(grid_step), end, self.grid, self.denominator()?)
    }

    /// Error grid for the `N`-point interpolant on `[0, 2π − 2π/N]`.
    pub fn baseline_probe(&self) -> Result<ErrorProbe> {
        self.probe(TWO_PI / self.real_nodes as f64)
    }

    /// Error grid on the interpolation interval `[0, (N − 1)h]` of `plan`.
    pub fn phantom_probe(&self, plan: &PhantomPlan) -> Result<ErrorProbe> {
        self.check_plan(plan)?;
        self.probe(plan.step())
    }

    pub fn baseline(&self) -> Result<(TrigPolynomial, ErrorReport)> {
        let probe = self.baseline_probe()?;
        let poly = interpolate(&SampleSet::new(self.samples()?)?);
        let report = probe.report(&poly);
        Ok((poly, report))
    }

    pub fn blend_values(&self, plan: &PhantomPlan, spec: &BlendSpec) -> Result<Vec<f64>> {
        self.check_plan(plan)?;
        phantom_values_blend(&self.samples()?, plan, spec, Some(self.function), self.sampling)
    }

    fn check_plan(&self, plan: &PhantomPlan) -> Result<()> {
        if plan.real_nodes() != self.real_nodes {
            return Err(Error::LengthMismatch {
                expected: self.real_nodes,
                found: plan.real_nodes(),
            });
        }
        Ok(())
    }
}

/// Scores candidate phantom values for one `(problem, k)` cell. The real
/// samples and the error grid are computed once.
#[derive(Debug, Clone)]
pub struct CandidateEvaluator {
    samples: Vec<f64>,
    plan: PhantomPlan,
    probe: ErrorProbe,
}

impl CandidateEvaluator {
    pub fn new(problem: &NodeProblem<'_>, pairs: usize) -> Result<Self> {
        let plan = plan_grid(problem.real_nodes(), pairs)?;
        Ok(Self {
            samples: problem.samples()?,
            probe: problem.phantom_probe(&plan)?,
            plan,
        })
    }

    pub fn plan(&self) -> &PhantomPlan {
        &self.plan
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn probe(&self) -> &ErrorProbe {
        &self.probe
    }

    pub fn polynomial(&self, values: &[f64]) -> Result<TrigPolynomial> {
        let plan = self.plan.clone().with_values(values.to_vec())?;
        augment_and_interpolate(&self.samples, &plan)
    }

    pub fn report(&self, values: &[f64]) -> Result<ErrorReport> {
        Ok(self.probe.report(&self.polynomial(values)?))
    }

    /// Max normalized error on the interpolation interval.
    pub fn error(&self, values: &[f64]) -> Result<f64> {
        self.report(values).map(|r| r.max_abs_error)
    }
}

/// One cell of an error-ratio table.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RatioRecord {
    pub label: String,
    pub real_nodes: usize,
    pub pairs: usize,
    pub strategy: Strategy,
    pub error_without: f64,
    pub error_with: f64,
    pub ratio: f64,
    pub phantom_values: Vec<f64>,
}

pub(crate) fn ratio_record(
    problem: &NodeProblem<'_>,
    pairs: usize,
    strategy: Strategy,
    error_without: f64,
    error_with: f64,
    phantom_values: Vec<f64>,
) -> Result<RatioRecord> {
    if !(error_with > 0.0) || !(error_without > 0.0) {
        return Err(Error::UndefinedMetric);
    }
    Ok(RatioRecord {
        label: problem.function().label().to_string(),
        real_nodes: problem.real_nodes(),
        pairs,
        strategy,
        error_without,
        error_with,
        ratio: error_without / error_with,
        phantom_values,
    })
}

/// Ratio of the no-phantom error to the error with a blend strategy.
pub fn error_ratio(problem: &NodeProblem<'_>, pairs: usize, spec: &BlendSpec) -> Result<RatioRecord> {
    let (_, baseline) = problem.baseline()?;
    let evaluator = CandidateEvaluator::new(problem, pairs)?;
    let values = problem.blend_values(evaluator.plan(), spec)?;
    let with = evaluator.error(&values)?;
    ratio_record(
        problem,
        pairs,
        Strategy::Blend(spec.smoothness),
        baseline.max_abs_error,
        with,
        values,
    )
}

/// Settings shared by every cell of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub source: DerivativeSource,
    pub units: SlopeUnits,
    pub grid: usize,
    pub selection: SelectionConfig,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            source: DerivativeSource::Analytic,
            units: SlopeUnits::PerRadian,
            grid: DEFAULT_ERROR_GRID,
            selection: SelectionConfig::default(),
        }
    }
}

/// One sweep cell; failures are kept in place rather than aborting.
#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome {
    pub label: String,
    pub real_nodes: usize,
    pub pairs: usize,
    pub strategy: Strategy,
    pub result: Result<RatioRecord>,
}

pub fn compute_cell(
    function: &dyn RealFunction,
    sampling: Sampling,
    real_nodes: usize,
    pairs: usize,
    strategy: Strategy,
    options: &SweepOptions,
) -> CellOutcome {
    let result = NodeProblem::new(function, real_nodes, sampling).and_then(|p| {
        let problem = p.with_grid(options.grid);
        match strategy {
            Strategy::Blend(smoothness) => error_ratio(
                &problem,
                pairs,
                &BlendSpec::new(smoothness, options.source, options.units),
            ),
            Strategy::Selected => optimize::selected_ratio(&problem, pairs, &options.selection),
        }
    });
    CellOutcome {
        label: function.label().to_string(),
        real_nodes,
        pairs,
        strategy,
        result,
    }
}

/// Full cross product in `(function, N, k, strategy)` order.
pub fn table_sweep(
    functions: &[(&dyn RealFunction, Sampling)],
    node_counts: &[usize],
    pair_counts: &[usize],
    strategies: &[Strategy],
    options: &SweepOptions,
) -> Vec<CellOutcome> {
    let mut out = Vec::new();
    for &(f, sampling) in functions {
        for &n in node_counts {
            for &k in pair_counts {
                for &s in strategies {
                    out.push(compute_cell(f, sampling, n, k, s, options));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Constant, FnFunction, Named, Scaled};
    use crate::math::PI;
    use proptest::{prop_assert, prop_assert_eq, proptest};

    fn ramp(n: usize) -> Vec<f64> {
        (1..=n).map(|i| i as f64).collect()
    }

    #[test]
    fn plan_arithmetic() {
        let p = plan_grid(9, 1).unwrap();
        assert!((p.step() - TWO_PI / 11.0).abs() < 1e-15);
        assert!((p.interval_end() - (TWO_PI - 3.0 * p.step())).abs() < 1e-14);
        let p = plan_grid(9, 2).unwrap();
        assert!((p.step() - TWO_PI / 13.0).abs() < 1e-15);
        assert!((p.interval_end() - (TWO_PI - 5.0 * p.step())).abs() < 1e-14);
        let p = plan_grid(13, 2).unwrap();
        assert_eq!(p.total_nodes(), 17);
        assert!((p.interval_end() - 12.0 * TWO_PI / 17.0).abs() < 1e-14);
        assert!(plan_grid(8, 1).is_err());
        assert!(plan_grid(9, 0).is_err());
        assert!(plan_grid(1, 1).is_err());
    }

    proptest! {
        #[test]
        fn plan_invariants(half in 1usize..20, k in 1usize..4) {
            let n = 2 * half + 1;
            let p = plan_grid(n, k).unwrap();
            prop_assert!((p.total_nodes() as f64 * p.step() - TWO_PI).abs() < 1e-14);
            prop_assert!((p.interval_end() - (TWO_PI - (2 * k + 1) as f64 * p.step())).abs() < 1e-13);
            let pos = p.phantom_positions();
            prop_assert_eq!(pos.len(), 2 * k);
            prop_assert!(pos.iter().all(|&t| t > p.interval_end() && t < TWO_PI));
        }
    }

    #[test]
    fn printed_phantom_values_per_sample_slope() {
        let spec = BlendSpec::new(Smoothness::C1, DerivativeSource::Analytic, SlopeUnits::PerSample);
        let f: &dyn RealFunction = &Named::Linear;
        let v = phantom_values_blend(&ramp(9), &plan_grid(9, 1).unwrap(), &spec, Some(f), Sampling::Step(1.0)).unwrap();
        assert!((v[0] - 7.053).abs() < 1e-3 && (v[1] - 2.947).abs() < 1e-3, "{v:?}");
        let v = phantom_values_blend(&ramp(9), &plan_grid(9, 2).unwrap(), &spec, Some(f), Sampling::Step(1.0)).unwrap();
        for (got, want) in v.iter().zip([8.4, 6.3, 3.7, 1.6]) {
            assert!((got - want).abs() < 0.05, "{v:?}");
        }
        // plain differences of the ramp are 1 as well
        let dd = BlendSpec::new(
            Smoothness::C1,
            DerivativeSource::DividedDifference,
            SlopeUnits::PerSample,
        );
        let w = phantom_values_blend(&ramp(9), &plan_grid(9, 1).unwrap(), &dd, None, Sampling::Step(1.0)).unwrap();
        assert!((w[0] - 7.053).abs() < 1e-3 && (w[1] - 2.947).abs() < 1e-3);
    }

    #[test]
    fn constant_samples_give_constant_phantoms() {
        let c: &dyn RealFunction = &Constant(4.5);
        for s in Smoothness::ALL {
            for (source, f) in [
                (DerivativeSource::Analytic, Some(c)),
                (DerivativeSource::DividedDifference, None),
            ] {
                let spec = BlendSpec::new(s, source, SlopeUnits::PerRadian);
                let v = phantom_values_blend(&[4.5; 7], &plan_grid(7, 2).unwrap(), &spec, f, Sampling::Span).unwrap();
                assert!(v.iter().all(|x| (x - 4.5).abs() < 1e-12));
            }
        }
    }

    #[test]
    fn divided_difference_needs_four_samples() {
        let spec = BlendSpec::new(
            Smoothness::C1,
            DerivativeSource::DividedDifference,
            SlopeUnits::PerRadian,
        );
        let r = phantom_values_blend(&[1.0, 2.0, 3.0], &plan_grid(3, 1).unwrap(), &spec, None, Sampling::Span);
        assert!(matches!(r, Err(Error::InsufficientSamples { .. })));
        let c0 = BlendSpec::new(
            Smoothness::C0,
            DerivativeSource::DividedDifference,
            SlopeUnits::PerRadian,
        );
        assert!(phantom_values_blend(&[1.0, 2.0, 3.0], &plan_grid(3, 1).unwrap(), &c0, None, Sampling::Span).is_ok());
    }

    #[test]
    fn analytic_without_function_fails() {
        let spec = BlendSpec::analytic(Smoothness::C2);
        let r = phantom_values_blend(&ramp(9), &plan_grid(9, 1).unwrap(), &spec, None, Sampling::Span);
        assert_eq!(r.unwrap_err(), Error::MissingDerivative { order: 1 });
    }

    #[test]
    fn blend_agrees_with_extension_hermite() {
        let plan = plan_grid(9, 2).unwrap();
        let spec = BlendSpec::analytic(Smoothness::C1);
        let f: &dyn RealFunction = &Named::Sin075;
        let samples = NodeProblem::new(f, 9, Sampling::Span).unwrap().samples().unwrap();
        let seams = seam_data(&samples, &plan, &spec, Some(f), Sampling::Span).unwrap();
        let direct = build_hermite_blend(&seams.left, &seams.right, plan.interval_end(), TWO_PI).unwrap();
        let via = phantom_values_blend(&samples, &plan, &spec, Some(f), Sampling::Span).unwrap();
        for (t, v) in plan.phantom_positions().into_iter().zip(via) {
            assert!((direct.value(t) - v).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_phantoms_reproduce_trig_polynomial() {
        // samples of sin on the refined grid itself, phantoms equal to the truth
        let f = FnFunction::new("sin", |x: f64| math::sin(x) + 0.25 * math::cos(3.0 * x));
        let plan = plan_grid(9, 1).unwrap();
        let h = plan.step();
        let problem = NodeProblem::new(&f, 9, Sampling::Step(h)).unwrap();
        let truth: Vec<f64> = plan.phantom_positions().iter().map(|&t| f.value(t)).collect();
        let eval = CandidateEvaluator::new(&problem, 1).unwrap();
        assert!(eval.error(&truth).unwrap() <= 1e-10);
        let poly =
            augment_and_interpolate(&problem.samples().unwrap(), &plan.clone().with_values(truth).unwrap()).unwrap();
        assert!((poly.evaluate(1.0) - f.value(1.0)).abs() < 1e-12);
    }

    #[test]
    fn linear_reduction_factors_per_sample_mode() {
        let f: &dyn RealFunction = &Named::Linear;
        let problem = NodeProblem::new(f, 9, Sampling::Step(1.0)).unwrap();
        let spec = BlendSpec::new(Smoothness::C1, DerivativeSource::Analytic, SlopeUnits::PerSample);
        let r1 = error_ratio(&problem, 1, &spec).unwrap();
        assert!((r1.ratio / 6.875 - 1.0).abs() < 0.25, "{}", r1.ratio);
        let r2 = error_ratio(&problem, 2, &spec).unwrap();
        assert!((r2.ratio / 11.786 - 1.0).abs() < 0.25, "{}", r2.ratio);
    }

    #[test]
    fn ratio_is_scale_invariant() {
        for base in [Named::Linear, Named::Sin075, Named::Exp002] {
            let scaled = Scaled {
                inner: base,
                factor: 5.0,
            };
            let spec = BlendSpec::analytic(Smoothness::C2);
            let a = error_ratio(&NodeProblem::new(&base, 9, Sampling::Span).unwrap(), 1, &spec).unwrap();
            let b = error_ratio(&NodeProblem::new(&scaled, 9, Sampling::Span).unwrap(), 1, &spec).unwrap();
            assert!((a.ratio - b.ratio).abs() <= 1e-12 * a.ratio);
        }
    }

    #[test]
    fn shift_leaves_error_unchanged() {
        let f: &dyn RealFunction = &Named::Exp002;
        let g = FnFunction::new("shifted", |x| Named::Exp002.value(x) + 3.0);
        let a = NodeProblem::new(f, 9, Sampling::Span).unwrap().baseline().unwrap().1;
        let b = NodeProblem::new(&g, 9, Sampling::Span).unwrap().baseline().unwrap().1;
        assert!((a.max_abs_error - b.max_abs_error).abs() < 1e-12);
    }

    #[test]
    fn constant_function_metric_undefined() {
        let c: &dyn RealFunction = &Constant(2.0);
        let problem = NodeProblem::new(c, 9, Sampling::Span).unwrap();
        assert_eq!(
            error_ratio(&problem, 1, &BlendSpec::analytic(Smoothness::C0)).unwrap_err(),
            Error::UndefinedMetric
        );
    }

    #[test]
    fn intervals_match_conventions() {
        let f: &dyn RealFunction = &Named::Linear;
        let problem = NodeProblem::new(f, 9, Sampling::Step(1.0)).unwrap();
        let base = problem.baseline().unwrap().1;
        assert!((base.interval_end - (TWO_PI - TWO_PI / 9.0)).abs() < 1e-14);
        let plan = plan_grid(9, 1).unwrap();
        let probe = problem.phantom_probe(&plan).unwrap();
        assert!((probe.points().last().unwrap() - 16.0 * PI / 11.0).abs() < 1e-14);
        assert_eq!(base.denominator, 8.0);
    }

    #[test]
    fn sweep_cardinality_and_order() {
        let fs: [(&dyn RealFunction, Sampling); 3] = [
            (&Named::Linear, Sampling::Span),
            (&Named::Sin075, Sampling::Span),
            (&Named::Exp002, Sampling::Span),
        ];
        let blends = [
            Strategy::Blend(Smoothness::C0),
            Strategy::Blend(Smoothness::C1),
            Strategy::Blend(Smoothness::C2),
        ];
        let cells = table_sweep(&fs, &[5, 9, 13], &[1, 2], &blends, &SweepOptions::default());
        assert_eq!(cells.len(), 54);
        assert_eq!(cells[0].label, "linear");
        assert_eq!((cells[3].real_nodes, cells[3].pairs), (5, 2));
        assert!(cells.iter().all(|c| c.result.is_ok()));
        let bad = table_sweep(
            &[(&Constant(1.0), Sampling::Span)],
            &[5, 8],
            &[1],
            &blends,
            &SweepOptions::default(),
        );
        assert_eq!(bad.len(), 6);
        assert!(bad.iter().all(|c| c.result.is_err()));
    }

    #[test]
    fn table_one_nine_nodes_c0() {
        let out = compute_cell(
            &Named::Linear,
            Sampling::Span,
            9,
            1,
            Strategy::Blend(Smoothness::C0),
            &SweepOptions::default(),
        );
        let r = out.result.unwrap();
        assert!((r.ratio / 3.0 - 1.0).abs() < 0.3, "{}", r.ratio);
    }
}
