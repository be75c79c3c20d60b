//! Heat-bath algorithmic cooling.
//!
//! Two execution models share one schedule representation:
//!
//! * [`engine`] tracks one marginal bias per spin and is cheap enough to
//!   run schedules with hundreds of millions of steps;
//! * [`oracle`] evolves the full `2^n` diagonal of the density matrix and
//!   is the ground truth for small registers (and the substrate for
//!   [`ppa`]).
//!
//! Biases are `p_up - p_down`. Spin 1 is the reset spin, spin `n` the most
//! significant bit.

pub mod algorithms;
pub mod bench;
pub mod bias;
pub mod engine;
pub mod error;
pub mod ops;
pub mod oracle;
pub mod ppa;
pub mod relaxation;

pub use algorithms::{build_schedule, run_algorithm, AlgorithmSpec, Family, Scope};
pub use bias::{Bias, Regime};
pub use engine::{run_schedule, HotSpins, RunReport, SpinSystem};
pub use error::{Error, Result};
pub use ops::{PrimitiveOp, Schedule};
pub use oracle::{run_schedule_oracle, DiagonalState};
