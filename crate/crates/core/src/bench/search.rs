use serde::{Deserialize, Serialize};

use super::{Subject, Target};
use crate::algorithms::{predicted_msb, runtime_formula, AlgorithmSpec, Family};
use crate::bias::Regime;
use crate::error::{Error, Result};
use crate::oracle::MAX_SPINS;
use crate::ppa::{run_ppa, PpaConfig, PpaStop};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRequest {
    pub subject: Subject,
    pub eps0: f64,
    pub target: Target,
    pub max_spins: usize,
    /// Shortfall below the target that still counts as reaching it, in the
    /// target's own units (absolute, or eps0 for factors). Zero is a strict
    /// `>=`; half a unit of a printed digit reproduces tables whose entries
    /// were judged at that display precision.
    pub tolerance: f64,
    /// Step budget for each PPA run.
    pub max_ppa_resets: u64,
}

impl SearchRequest {
    pub fn new(subject: Subject, eps0: f64, target: Target) -> Self {
        SearchRequest { subject, eps0, target, max_spins: 31, tolerance: 0.0, max_ppa_resets: 50_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    /// Full-string reset count; `None` for closed-form-only algorithms.
    pub resets: Option<u64>,
    /// Absolute for [`Target::Absolute`], in units of eps0 for [`Target::Factor`].
    pub bias: f64,
}

/// Smallest valid register whose MSB reaches the target, with its
/// full-string run-time.
///
/// Algorithms use their closed forms (exact regime for absolute targets,
/// linear for factors); the PPA is simulated on the oracle.
pub fn search_resources(req: &SearchRequest) -> Result<SearchResult> {
    let eps0 = crate::bias::Bias::new(req.eps0)?.value();
    if eps0 <= 0.0 {
        return Err(Error::InvalidConfig(format!("eps0 must be positive, got {eps0}")));
    }
    let (goal, in_units, tol_units) = match req.target {
        Target::Absolute(t) => (t, t / eps0, req.tolerance / eps0),
        Target::Factor(f) => (f, f, req.tolerance),
    };
    if !(req.tolerance >= 0.0) {
        return Err(Error::InvalidConfig(format!("tolerance must be >= 0, got {}", req.tolerance)));
    }
    if in_units <= 1.0 {
        return Err(Error::InvalidConfig(format!("target {goal} does not exceed eps0")));
    }
    if let Target::Absolute(t) = req.target {
        if t > 1.0 {
            return Err(Error::BiasOutOfRange(t));
        }
    }
    let unreachable = || Error::Unreachable { target: goal, max_spins: req.max_spins };
    match &req.subject {
        Subject::Ppa => search_ppa(req, eps0, in_units, tol_units).ok_or_else(unreachable).and_then(|r| r),
        Subject::Algorithm(f) => {
            let threshold = goal - req.tolerance;
            for n in 3..=req.max_spins {
                let spec = match AlgorithmSpec::full(family_for(f, n), n) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let bias = match req.target {
                    Target::Absolute(_) => predicted_msb(&spec, eps0, Regime::Exact)?,
                    Target::Factor(_) => predicted_msb(&spec, 1.0, Regime::Linear)?,
                };
                if bias >= threshold {
                    let resets = runtime_formula(&spec).ok();
                    return Ok(SearchResult { n, resets, bias });
                }
            }
            Err(unreachable())
        }
    }
}

/// m⃗PAC searches grow the cycle vector by repeating its last entry.
fn family_for(f: &Family, n: usize) -> Family {
    match f {
        Family::VmPac(ms) if !ms.is_empty() => {
            let levels = (n - 1) / 2;
            let mut v: Vec<u32> = ms.iter().copied().take(levels).collect();
            let last = *ms.last().expect("non-empty");
            v.resize(levels, last);
            Family::VmPac(v)
        }
        other => other.clone(),
    }
}

fn search_ppa(req: &SearchRequest, eps0: f64, in_units: f64, tol: f64) -> Option<Result<SearchResult>> {
    for n in 2..=req.max_spins.min(MAX_SPINS) {
        // the asymptote is 2^(n-2) eps0, approached from below
        if in_units - tol >= 2f64.powi(n as i32 - 2) {
            continue;
        }
        let cfg = PpaConfig {
            n,
            eps0,
            stop: PpaStop::Target { value: in_units, tolerance: tol, max_resets: req.max_ppa_resets },
        };
        return Some(match run_ppa(&cfg) {
            Ok(rep) => {
                let bias = match req.target {
                    Target::Absolute(_) => rep.msb(),
                    Target::Factor(_) => rep.msb() / eps0,
                };
                Ok(SearchResult { n, resets: Some(rep.reset_count), bias })
            }
            Err(e) => Err(e),
        });
    }
    None
}
