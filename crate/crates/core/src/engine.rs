//! The bias-vector engine: one marginal bias per spin, updated op by op.
//!
//! The engine ignores correlations between spins. For every PAC-family
//! schedule this is exact (the three spins entering each compression are
//! independent); [`crate::oracle`] is the reference where it is not.

use serde::{Deserialize, Serialize};

use crate::bias::{comp3, comp3_all, Regime};
use crate::error::{Error, Result};
use crate::ops::{PrimitiveOp, Schedule};

/// What the engine does with the two source spins of a 3B-Comp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum HotSpins {
    /// Mark them stale; a later COMP3 reading one is an error until a
    /// RESET or PT overwrites it.
    #[default]
    Strict,
    /// Mark them stale and treat them as fully heated (zero bias) if they
    /// are read again. Recursive Fibonacci schedules need this.
    Heated,
    /// Keep their true post-compression marginals.
    Tracked,
}

impl std::str::FromStr for HotSpins {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "strict" => Ok(HotSpins::Strict),
            "heated" => Ok(HotSpins::Heated),
            "tracked" => Ok(HotSpins::Tracked),
            other => Err(Error::Parse(format!("unknown hot-spin policy `{other}`"))),
        }
    }
}

/// Marginal biases of an `n`-spin register.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinSystem {
    biases: Vec<f64>,
    stale: Vec<bool>,
    eps0: f64,
    regime: Regime,
    hot: HotSpins,
}

impl SpinSystem {
    /// All spins unpolarized (bias 0); the reset spin thermalizes to `eps0`
    /// on its first RESET.
    pub fn new(n: usize, eps0: f64, regime: Regime) -> Result<Self> {
        Self::with_biases(vec![0.0; n], eps0, regime)
    }

    /// All spins at thermal equilibrium.
    pub fn thermal(n: usize, eps0: f64, regime: Regime) -> Result<Self> {
        Self::with_biases(vec![eps0; n], eps0, regime)
    }

    pub fn with_biases(biases: Vec<f64>, eps0: f64, regime: Regime) -> Result<Self> {
        if biases.is_empty() {
            return Err(Error::InvalidConfig("a spin system needs at least one spin".into()));
        }
        let check = |v: f64| match regime {
            Regime::Linear if v.is_finite() => Ok(()),
            Regime::Linear => Err(Error::InvalidConfig(format!("non-finite bias {v}"))),
            Regime::Exact => crate::bias::Bias::new(v).map(|_| ()),
        };
        check(eps0)?;
        for &b in &biases {
            check(b)?;
        }
        let n = biases.len();
        Ok(SpinSystem { biases, stale: vec![false; n], eps0, regime, hot: HotSpins::Strict })
    }

    pub fn with_hot_spins(mut self, hot: HotSpins) -> Self {
        self.hot = hot;
        self
    }

    pub fn n(&self) -> usize {
        self.biases.len()
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn hot_spins(&self) -> HotSpins {
        self.hot
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    /// Bias of spin `k` (1-based).
    pub fn bias(&self, k: usize) -> Result<f64> {
        self.check_index(k)?;
        Ok(self.biases[k - 1])
    }

    pub fn msb(&self) -> f64 {
        *self.biases.last().expect("non-empty")
    }

    pub fn is_stale(&self, k: usize) -> bool {
        k >= 1 && k <= self.n() && self.stale[k - 1]
    }

    pub fn stale_spins(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&k| self.stale[k - 1]).collect()
    }

    /// Only spin 1 thermalizes quickly.
    pub fn is_reset_spin(k: usize) -> bool {
        k == 1
    }

    /// Sets spin `k` directly; used by relaxation models.
    pub(crate) fn set_raw(&mut self, k: usize, value: f64) {
        self.biases[k - 1] = value;
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n() {
            Err(Error::SpinOutOfRange { index: k, n: self.n() })
        } else {
            Ok(())
        }
    }

    fn validate(&self, op: &PrimitiveOp) -> Result<()> {
        for k in op.spins() {
            self.check_index(k)?;
        }
        match *op {
            PrimitiveOp::Reset { target } if !Self::is_reset_spin(target) => {
                Err(Error::NotResetSpin(target))
            }
            PrimitiveOp::Pt { source, target } if source == target => Err(Error::RepeatedSpin(*op)),
            PrimitiveOp::Comp3 { c, b, a } if c == b || b == a || c == a => {
                Err(Error::RepeatedSpin(*op))
            }
            _ => Ok(()),
        }
    }

    /// Applies `op` in place.
    pub fn apply(&mut self, op: &PrimitiveOp) -> Result<()> {
        self.validate(op)?;
        match *op {
            PrimitiveOp::Reset { target } => {
                self.biases[target - 1] = self.eps0;
                self.stale[target - 1] = false;
            }
            PrimitiveOp::Pt { source, target } => {
                self.biases.swap(source - 1, target - 1);
                self.stale.swap(source - 1, target - 1);
            }
            PrimitiveOp::Comp3 { c, b, a } => {
                if self.hot == HotSpins::Strict {
                    if let Some(spin) = [c, b, a].into_iter().find(|&k| self.stale[k - 1]) {
                        return Err(Error::StaleRead { op: *op, spin });
                    }
                }
                let (ec, eb, ea) = (self.biases[c - 1], self.biases[b - 1], self.biases[a - 1]);
                match self.hot {
                    HotSpins::Tracked => {
                        let (nc, nb, na) = comp3_all(self.regime, ec, eb, ea);
                        self.biases[c - 1] = nc;
                        self.biases[b - 1] = nb;
                        self.biases[a - 1] = na;
                    }
                    HotSpins::Strict | HotSpins::Heated => {
                        self.biases[c - 1] = comp3(self.regime, ec, eb, ea);
                        self.biases[b - 1] = 0.0;
                        self.biases[a - 1] = 0.0;
                        self.stale[b - 1] = true;
                        self.stale[a - 1] = true;
                    }
                }
                self.stale[c - 1] = false;
            }
        }
        Ok(())
    }

    /// Returns the state after `op`, leaving `self` untouched.
    pub fn apply_op(&self, op: &PrimitiveOp) -> Result<SpinSystem> {
        let mut next = self.clone();
        next.apply(op)?;
        Ok(next)
    }
}

/// One recorded step of a traced run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    pub op: TraceOp,
    pub biases: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TraceOp {
    Primitive(PrimitiveOp),
    /// One partner-pairing iteration (SORT followed by RESET of spin 1).
    SortReset,
}

/// Result of executing a schedule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub final_biases: Vec<f64>,
    pub reset_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
}

impl RunReport {
    pub fn msb(&self) -> f64 {
        *self.final_biases.last().expect("non-empty")
    }
}

/// Runs `sched` from `state`.
pub fn run_schedule(state: &SpinSystem, sched: &Schedule) -> Result<RunReport> {
    run(state, sched, false)
}

/// Like [`run_schedule`] but records the biases after every operation.
pub fn run_schedule_traced(state: &SpinSystem, sched: &Schedule) -> Result<RunReport> {
    run(state, sched, true)
}

fn run(state: &SpinSystem, sched: &Schedule, traced: bool) -> Result<RunReport> {
    if sched.max_spin() > state.n() {
        return Err(Error::SpinOutOfRange { index: sched.max_spin(), n: state.n() });
    }
    let mut s = state.clone();
    let mut trace = traced.then(Vec::new);
    for op in sched.ops() {
        s.apply(&op)?;
        if let Some(t) = trace.as_mut() {
            t.push(TraceStep { op: TraceOp::Primitive(op), biases: s.biases.clone() });
        }
    }
    Ok(RunReport { final_biases: s.biases, reset_count: sched.reset_count(), trace })
}
