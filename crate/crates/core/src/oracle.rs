//! Exact simulation on the full diagonal of the density matrix.
//!
//! Basis index bit `k-1` holds spin `k` (spin 1 is the least significant
//! bit); bit value 0 is |up> = |0>. COMP3 and PT are permutations of the
//! probability vector, RESET traces out one spin and re-attaches it at
//! equilibrium.

use crate::bias::Bias;
use crate::engine::RunReport;
use crate::error::{Error, Result};
use crate::ops::{PrimitiveOp, Schedule};

/// Largest register the dense representation accepts.
pub const MAX_SPINS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalState {
    n: usize,
    probs: Vec<f64>,
}

impl DiagonalState {
    /// Product state with the given biases (spin 1 first).
    pub fn from_product(biases: &[f64]) -> Result<Self> {
        let n = biases.len();
        check_size(n)?;
        let mut probs = vec![1.0];
        // Spin 1 is the least significant bit, so each new spin doubles the
        // vector by prepending a higher bit.
        for &e in biases {
            let b = Bias::new(e)?;
            let mut next = Vec::with_capacity(probs.len() * 2);
            next.extend(probs.iter().map(|p| p * b.p_up()));
            next.extend(probs.iter().map(|p| p * b.p_down()));
            probs = next;
        }
        Ok(DiagonalState { n, probs })
    }

    /// The maximally mixed state.
    pub fn uniform(n: usize) -> Result<Self> {
        check_size(n)?;
        let len = 1usize << n;
        Ok(DiagonalState { n, probs: vec![1.0 / len as f64; len] })
    }

    /// Wraps a raw probability vector of length `2^n`.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        if !probs.len().is_power_of_two() {
            return Err(Error::InvalidConfig(format!(
                "probability vector length {} is not a power of two",
                probs.len()
            )));
        }
        let n = probs.len().trailing_zeros() as usize;
        check_size(n)?;
        if probs.iter().any(|&p| !(p >= 0.0)) {
            return Err(Error::InvalidConfig("negative or NaN probability".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!("probabilities sum to {total}")));
        }
        Ok(DiagonalState { n, probs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Exchanges the probability vector with `other`, which must have the
    /// same length.
    pub(crate) fn swap_probs(&mut self, other: &mut Vec<f64>) {
        debug_assert_eq!(other.len(), self.probs.len());
        std::mem::swap(&mut self.probs, other);
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n {
            Err(Error::SpinOutOfRange { index: k, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `P(spin k up) - P(spin k down)`.
    pub fn marginal_bias(&self, k: usize) -> Result<f64> {
        self.check_index(k)?;
        let mask = 1usize << (k - 1);
        let (mut up, mut down) = (0.0, 0.0);
        for (i, p) in self.probs.iter().enumerate() {
            if i & mask == 0 {
                up += p;
            } else {
                down += p;
            }
        }
        Ok(up - down)
    }

    pub fn marginal_biases(&self) -> Vec<f64> {
        (1..=self.n).map(|k| self.marginal_bias(k).expect("in range")).collect()
    }

    /// Exchanges the local patterns `(c,b,a) = (1,0,0)` and `(0,1,1)`.
    pub fn apply_comp3(&mut self, c: usize, b: usize, a: usize) -> Result<()> {
        for k in [c, b, a] {
            self.check_index(k)?;
        }
        if c == b || b == a || c == a {
            return Err(Error::RepeatedSpin(PrimitiveOp::comp3(c, b, a)));
        }
        let (mc, mb, ma) = (1usize << (c - 1), 1usize << (b - 1), 1usize << (a - 1));
        let flip = mc | mb | ma;
        for i in 0..self.probs.len() {
            // visit each (100, 011) pair once, from its 100 member
            if i & flip == mc {
                self.probs.swap(i, i ^ flip);
            }
        }
        Ok(())
    }

    /// Swaps the states of spins `s` and `t`.
    pub fn apply_pt(&mut self, s: usize, t: usize) -> Result<()> {
        self.check_index(s)?;
        self.check_index(t)?;
        if s == t {
            return Err(Error::RepeatedSpin(PrimitiveOp::pt(s, t)));
        }
        let (ms, mt) = (1usize << (s - 1), 1usize << (t - 1));
        for i in 0..self.probs.len() {
            if i & ms != 0 && i & mt == 0 {
                self.probs.swap(i, i ^ ms ^ mt);
            }
        }
        Ok(())
    }

    /// Replaces spin `k` by a fresh equilibrium spin at `eps0`, keeping the
    /// joint state of all other spins.
    pub fn apply_reset(&mut self, k: usize, eps0: f64) -> Result<()> {
        self.check_index(k)?;
        let eps0 = Bias::new(eps0)?;
        let m = 1usize << (k - 1);
        for i in 0..self.probs.len() {
            if i & m == 0 {
                let pair = self.probs[i] + self.probs[i | m];
                self.probs[i] = pair * eps0.p_up();
                self.probs[i | m] = pair * eps0.p_down();
            }
        }
        Ok(())
    }

    pub fn apply_op(&mut self, op: &PrimitiveOp, eps0: f64) -> Result<()> {
        match *op {
            PrimitiveOp::Reset { target } => self.apply_reset(target, eps0),
            PrimitiveOp::Pt { source, target } => self.apply_pt(source, target),
            PrimitiveOp::Comp3 { c, b, a } => self.apply_comp3(c, b, a),
        }
    }

    /// Rearranges the probabilities in non-increasing order of basis index
    /// (index 0 largest). Ties keep their original relative order.
    pub fn sort_descending(&mut self) {
        self.probs.sort_by(|x, y| y.total_cmp(x));
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_SPINS {
        Err(Error::TooManySpins(n))
    } else {
        Ok(())
    }
}

/// Runs `sched` exactly, starting from `initial`.
pub fn run_schedule_oracle(initial: &DiagonalState, sched: &Schedule, eps0: f64) -> Result<RunReport> {
    if sched.max_spin() > initial.n() {
        return Err(Error::SpinOutOfRange { index: sched.max_spin(), n: initial.n() });
    }
    Bias::new(eps0)?;
    let mut state = initial.clone();
    for op in sched.ops() {
        state.apply_op(&op, eps0)?;
    }
    Ok(RunReport {
        final_biases: state.marginal_biases(),
        reset_count: sched.reset_count(),
        trace: None,
    })
}
