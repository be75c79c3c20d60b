//! Algorithm specifications, schedule compilation and closed forms.

mod closed_form;
mod compile;
mod series;
mod spec;

pub use closed_form::{
    deltafib_bias_linear, deltafib_guarantee, fib_series, fibonacci, heat_factor, inftypac_bias, mfib_bias_linear,
    mpac_bias_exact, mpac_bias_linear, mpac_level_exact, pac3_series, predicted_biases, predicted_msb,
    runtime_formula, vmpac_bias_exact, vmpac_bias_linear,
};
pub use compile::build_schedule;
pub use series::{asymptotic_series, ReferenceSeries};
pub use spec::{AlgorithmSpec, Family, Scope};

use crate::bias::Regime;
use crate::engine::{run_schedule, RunReport, SpinSystem};
use crate::error::Result;

/// Compiles `spec` and runs it on the bias engine from an all-zero register,
/// under the family's own hot-spin policy.
pub fn run_algorithm(spec: &AlgorithmSpec, eps0: f64, regime: Regime) -> Result<RunReport> {
    let sched = build_schedule(spec)?;
    let state = SpinSystem::new(spec.n, eps0, regime)?.with_hot_spins(spec.family.hot_spins());
    run_schedule(&state, &sched)
}
