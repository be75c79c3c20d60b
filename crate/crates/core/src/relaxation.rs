//! Finite relaxation ratio: resets take time, and computation spins leak
//! toward equilibrium while they do.
//!
//! Every RESET lasts `tau` (in units of the reset spin's T1). During it the
//! reset spin relaxes `eps -> eps0 + (eps - eps0) e^-tau` and every other
//! spin `eps -> eps0 + (eps - eps0) e^(-tau/R)`. PT and COMP3 take no time.
//! Spins heated by a compression hold zero bias until refreshed.

use serde::{Deserialize, Serialize};

use crate::algorithms::{build_schedule, AlgorithmSpec};
use crate::bias::Regime;
use crate::engine::{HotSpins, RunReport, SpinSystem};
use crate::error::{Error, Result};
use crate::ops::{PrimitiveOp, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxConfig {
    /// `T1(computation) / T1(reset)`; `f64::INFINITY` for no leakage.
    pub ratio: f64,
    /// Reset duration in units of `T1(reset)`; `f64::INFINITY` for ideal resets.
    pub reset_duration: f64,
    pub eps0: f64,
}

impl RelaxConfig {
    pub fn new(ratio: f64, reset_duration: f64, eps0: f64) -> Result<Self> {
        let cfg = RelaxConfig { ratio, reset_duration, eps0 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ratio >= 1.0) {
            return Err(Error::InvalidConfig(format!("relaxation ratio must be >= 1, got {}", self.ratio)));
        }
        if !(self.reset_duration > 0.0) {
            return Err(Error::InvalidConfig(format!("reset duration must be > 0, got {}", self.reset_duration)));
        }
        crate::bias::Bias::new(self.eps0)?;
        Ok(())
    }
}

/// Runs an already-compiled schedule under `cfg`, in the linear regime.
pub fn run_relaxed(sched: &Schedule, n: usize, cfg: &RelaxConfig) -> Result<RunReport> {
    cfg.validate()?;
    if sched.max_spin() > n {
        return Err(Error::SpinOutOfRange { index: sched.max_spin(), n });
    }
    let eps0 = cfg.eps0;
    let reset_keep = (-cfg.reset_duration).exp();
    // R = inf means no leakage, whatever tau is
    let comp_keep = if cfg.ratio.is_infinite() { 1.0 } else { (-cfg.reset_duration / cfg.ratio).exp() };
    let mut s = SpinSystem::new(n, eps0, Regime::Linear)?.with_hot_spins(HotSpins::Heated);
    for op in sched.ops() {
        match op {
            PrimitiveOp::Reset { target } => {
                if !SpinSystem::is_reset_spin(target) {
                    return Err(Error::NotResetSpin(target));
                }
                for k in 1..=n {
                    let keep = if k == target { reset_keep } else { comp_keep };
                    let e = s.biases()[k - 1];
                    s.set_raw(k, eps0 + (e - eps0) * keep);
                }
            }
            _ => s.apply(&op)?,
        }
    }
    Ok(RunReport { final_biases: s.biases().to_vec(), reset_count: sched.reset_count(), trace: None })
}

/// Compiles `spec` and runs it with finite relaxation.
pub fn run_schedule_relaxed(spec: &AlgorithmSpec, cfg: &RelaxConfig) -> Result<RunReport> {
    run_relaxed(&build_schedule(spec)?, spec.n, cfg)
}

/// MSB bias (units of eps0) for each reset duration in `taus`.
pub fn sweep_reset_duration(spec: &AlgorithmSpec, ratio: f64, taus: &[f64]) -> Result<Vec<(f64, f64)>> {
    let sched = build_schedule(spec)?;
    taus.iter()
        .map(|&tau| {
            let rep = run_relaxed(&sched, spec.n, &RelaxConfig::new(ratio, tau, 1.0)?)?;
            Ok((tau, rep.msb()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{run_algorithm, Family};
    use approx::assert_relative_eq;

    fn pac2(scope_full: bool) -> AlgorithmSpec {
        let f = Family::MPac(2);
        if scope_full {
            AlgorithmSpec::full(f, 7).unwrap()
        } else {
            AlgorithmSpec::msb(f, 7).unwrap()
        }
    }

    #[test]
    fn ideal_limit() {
        let spec = pac2(true);
        let cfg = RelaxConfig::new(f64::INFINITY, f64::INFINITY, 1.0).unwrap();
        let relaxed = run_schedule_relaxed(&spec, &cfg).unwrap();
        let ideal = run_algorithm(&spec, 1.0, Regime::Linear).unwrap();
        assert_eq!(relaxed.final_biases, ideal.final_biases);
    }

    #[test]
    fn quoted_values() {
        let msb = |full, r, tau| run_schedule_relaxed(&pac2(full), &RelaxConfig::new(r, tau, 1.0).unwrap()).unwrap().msb();
        assert_relative_eq!(msb(true, 1e4, 5.0), 5.11, max_relative = 0.1);
        assert_relative_eq!(msb(false, 1e2, 5.0), 2.56, max_relative = 0.1);
        assert_eq!(run_schedule_relaxed(&pac2(true), &RelaxConfig::new(1e4, 5.0, 1.0).unwrap()).unwrap().reset_count, 187);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(RelaxConfig::new(0.5, 1.0, 1.0).is_err());
        assert!(RelaxConfig::new(10.0, 0.0, 1.0).is_err());
        assert!(RelaxConfig::new(f64::NAN, 1.0, 1.0).is_err());
        assert!(RelaxConfig::new(10.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn sweep_is_ordered() {
        let pts = sweep_reset_duration(&pac2(false), 100.0, &[0.5, 1.0, 2.0]).unwrap();
        assert_eq!(pts.iter().map(|p| p.0).collect::<Vec<_>>(), vec![0.5, 1.0, 2.0]);
    }
}
