//! Phantom-function Fourier extensions and phantom-node trigonometric
//! interpolation.
//!
//! A function given on `[0, 2π]` generally has a jump at the periodic wrap,
//! which limits its Fourier coefficients to `O(1/n)` decay and makes
//! equispaced trigonometric interpolants ring near the ends. Both tools here
//! attack the wrap directly:
//!
//! * [`extension`] squeezes `f` onto a shorter core interval and fills the
//!   gap with a Hermite polynomial matching `k` derivative orders at both
//!   seams, giving `O(n^{-(k+1)})` decay ([`fourier`]).
//! * [`phantom`] appends `2k` synthetic nodes after the real samples, with
//!   values taken from a blend or chosen by minimax search ([`optimize`]).
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// `!(a < b)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod extension;
pub mod fourier;
pub mod function;
pub mod math;
mod newton;
pub mod optimize;
pub mod phantom;
pub mod quadrature;
pub mod triginterp;

pub use error::{Error, Result};
pub use extension::{
    assemble_extended, build_hermite_blend, build_linear_blend, BlendPolynomial, ExtendedFunction, ExtensionConfig,
};
pub use fourier::{
    asymptotic_coefficients, compute_coefficients, estimate_decay_order, sigma_factor, FourierSeries, JumpData,
};
pub use function::{Named, RealFunction};
pub use optimize::{evaluate_candidate, select_phantom_values, SelectionConfig, SelectionResult};
pub use phantom::{
    error_ratio, plan_grid, BlendSpec, NodeProblem, PhantomPlan, RatioRecord, Sampling, SlopeUnits, Smoothness,
    Strategy,
};
pub use triginterp::{interpolate, ErrorReport, SampleSet, TrigPolynomial};

/// Where blend derivative data comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DerivativeSource {
    /// Exact derivatives of the function.
    Analytic,
    /// One-sided divided differences of the samples.
    DividedDifference,
}
