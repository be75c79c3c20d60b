//! The partner pairing algorithm: alternate a descending SORT of the
//! diagonal with a RESET of spin 1.
//!
//! Runs start from the maximally mixed state; each step counts one reset.

use serde::{Deserialize, Serialize};

use crate::bias::Bias;
use crate::engine::{RunReport, TraceOp, TraceStep};
use crate::error::{Error, Result};
use crate::oracle::{DiagonalState, MAX_SPINS};

/// When [`run_ppa`] stops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PpaStop {
    /// After exactly this many steps.
    AfterResets { count: u64 },
    /// As soon as the MSB bias (in units of eps0) reaches `value - tolerance`.
    Target { value: f64, tolerance: f64, max_resets: u64 },
    /// When `window` consecutive steps change the MSB bias by less than
    /// `rel_tol`, relative. The MSB often stalls for a step or two, so a
    /// window of one is rarely what you want.
    Converged { rel_tol: f64, window: u64, max_resets: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PpaConfig {
    pub n: usize,
    pub eps0: f64,
    pub stop: PpaStop,
}

impl PpaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.n > MAX_SPINS {
            return Err(Error::InvalidConfig(format!("PPA needs 2..={MAX_SPINS} spins, got {}", self.n)));
        }
        let eps0 = Bias::new(self.eps0)?.value();
        if eps0 <= 0.0 {
            return Err(Error::InvalidConfig(format!("eps0 must be positive, got {eps0}")));
        }
        if let PpaStop::Target { value, tolerance, .. } = self.stop {
            // the asymptote 2^(n-2) eps0 is approached from below
            let limit = 2f64.powi(self.n as i32 - 2);
            if value - tolerance >= limit {
                return Err(Error::Unreachable { target: value, max_spins: self.n });
            }
        }
        Ok(())
    }
}

/// One SORT + RESET(1) step.
pub fn ppa_step(state: &mut DiagonalState, eps0: f64) -> Result<()> {
    state.sort_descending();
    state.apply_reset(1, eps0)
}

/// SORT followed by RESET(1) for a state that was sorted before its last
/// reset of spin 1, written into `out`.
///
/// Such a state is two interleaved non-increasing runs (even and odd
/// indices), so a stable merge gives the same order as a full stable sort
/// in linear time; the reset is folded into the same pass.
fn merge_and_reset(probs: &[f64], out: &mut [f64], up: f64, down: f64) {
    let len = probs.len();
    let (mut i, mut j) = (0usize, 1usize);
    let mut next = || {
        // ties keep index order, as a stable sort would
        let take_even = j >= len || (i < len && (probs[i] > probs[j] || (probs[i] == probs[j] && i < j)));
        if take_even {
            i += 2;
            probs[i - 2]
        } else {
            j += 2;
            probs[j - 2]
        }
    };
    for pair in out.chunks_exact_mut(2) {
        let total = next() + next();
        pair[0] = total * up;
        pair[1] = total * down;
    }
}

/// An in-progress PPA run.
pub struct PpaRun {
    state: DiagonalState,
    eps0: Bias,
    resets: u64,
    scratch: Vec<f64>,
}

impl PpaRun {
    pub fn new(n: usize, eps0: f64) -> Result<Self> {
        let eps0 = Bias::new(eps0)?;
        Ok(PpaRun { state: DiagonalState::uniform(n)?, eps0, resets: 0, scratch: Vec::new() })
    }

    pub fn step(&mut self) {
        if self.resets == 0 || self.state.n() == 0 {
            ppa_step(&mut self.state, self.eps0.value()).expect("spin 1 exists and eps0 was checked");
        } else {
            self.scratch.resize(self.state.probs().len(), 0.0);
            merge_and_reset(self.state.probs(), &mut self.scratch, self.eps0.p_up(), self.eps0.p_down());
            self.state.swap_probs(&mut self.scratch);
        }
        self.resets += 1;
    }

    pub fn resets(&self) -> u64 {
        self.resets
    }

    pub fn state(&self) -> &DiagonalState {
        &self.state
    }

    /// MSB bias in units of eps0.
    pub fn msb_ratio(&self) -> f64 {
        self.state.marginal_bias(self.state.n()).expect("n >= 1") / self.eps0.value()
    }
}

/// Runs the PPA per `cfg`. The report's biases are absolute.
pub fn run_ppa(cfg: &PpaConfig) -> Result<RunReport> {
    run(cfg, None)
}

/// Like [`run_ppa`], recording the marginals after every `every`-th step.
pub fn run_ppa_traced(cfg: &PpaConfig, every: u64) -> Result<RunReport> {
    run(cfg, Some(every.max(1)))
}

fn run(cfg: &PpaConfig, every: Option<u64>) -> Result<RunReport> {
    cfg.validate()?;
    let mut r = PpaRun::new(cfg.n, cfg.eps0)?;
    let mut trace = every.map(|_| Vec::new());
    let record = |r: &PpaRun, trace: &mut Option<Vec<TraceStep>>| {
        if let (Some(t), Some(e)) = (trace.as_mut(), every) {
            if r.resets() % e == 0 {
                t.push(TraceStep { op: TraceOp::SortReset, biases: r.state().marginal_biases() });
            }
        }
    };
    match cfg.stop {
        PpaStop::AfterResets { count } => {
            while r.resets() < count {
                r.step();
                record(&r, &mut trace);
            }
        }
        PpaStop::Target { value, tolerance, max_resets } => {
            while r.msb_ratio() < value - tolerance {
                if r.resets() >= max_resets {
                    return Err(Error::Unreachable { target: value, max_spins: cfg.n });
                }
                r.step();
                record(&r, &mut trace);
            }
        }
        PpaStop::Converged { rel_tol, window, max_resets } => {
            let window = window.max(1);
            let mut prev = r.msb_ratio();
            while r.resets() < max_resets {
                r.step();
                record(&r, &mut trace);
                if r.resets() % window == 0 {
                    let cur = r.msb_ratio();
                    if cur != 0.0 && ((cur - prev) / cur).abs() < rel_tol {
                        break;
                    }
                    prev = cur;
                }
            }
        }
    }
    Ok(RunReport { final_biases: r.state().marginal_biases(), reset_count: r.resets(), trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn after(n: usize, count: u64) -> f64 {
        let cfg = PpaConfig { n, eps0: 1e-5, stop: PpaStop::AfterResets { count } };
        run_ppa(&cfg).unwrap().msb() / 1e-5
    }

    #[test]
    fn five_spin_snapshots() {
        assert_relative_eq!(after(5, 28), 4.03, max_relative = 1e-2);
        assert_relative_eq!(after(5, 99), 7.00, max_relative = 1e-2);
    }

    #[test]
    fn merge_matches_full_sort() {
        let mut fast = PpaRun::new(6, 0.3).unwrap();
        let mut slow = DiagonalState::uniform(6).unwrap();
        for _ in 0..200 {
            fast.step();
            ppa_step(&mut slow, 0.3).unwrap();
            for (a, b) in fast.state().probs().iter().zip(slow.probs()) {
                assert!((a - b).abs() <= 1e-16, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn fixed_points() {
        let mut u = DiagonalState::uniform(3).unwrap();
        ppa_step(&mut u, 0.0).unwrap();
        assert_eq!(u, DiagonalState::uniform(3).unwrap());
        let mut pol = DiagonalState::from_product(&[1.0, 1.0, 1.0]).unwrap();
        ppa_step(&mut pol, 1.0).unwrap();
        assert_eq!(pol.probs()[0], 1.0);
    }

    #[test]
    fn three_spins_converge_to_twice_eps0() {
        let cfg = PpaConfig { n: 3, eps0: 1e-5, stop: PpaStop::Converged { rel_tol: 1e-12, window: 8, max_resets: 100_000 } };
        assert_relative_eq!(run_ppa(&cfg).unwrap().msb() / 1e-5, 2.0, max_relative = 1e-3);
    }

    #[test]
    fn target_stop_and_unreachable() {
        let cfg = PpaConfig {
            n: 5,
            eps0: 1e-5,
            stop: PpaStop::Target { value: 7.0, tolerance: 0.05, max_resets: 10_000 },
        };
        assert_eq!(run_ppa(&cfg).unwrap().reset_count, 97);
        let bad = PpaConfig { stop: PpaStop::Target { value: 9.0, tolerance: 0.05, max_resets: 10 }, ..cfg };
        assert!(matches!(run_ppa(&bad), Err(Error::Unreachable { .. })));
    }

    #[test]
    fn trace_sampling() {
        let cfg = PpaConfig { n: 4, eps0: 0.01, stop: PpaStop::AfterResets { count: 10 } };
        let rep = run_ppa_traced(&cfg, 5).unwrap();
        assert_eq!(rep.trace.unwrap().len(), 2);
    }
}
