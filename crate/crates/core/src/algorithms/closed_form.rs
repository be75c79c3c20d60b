//! Closed-form biases and run-times.
//!
//! Linear-regime biases are in units of eps0; exact-regime functions take
//! and return absolute polarizations.

use super::spec::{AlgorithmSpec, Family, Scope};
use crate::bias::Regime;
use crate::error::{Error, Result};

/// `(2 - 2^-m)^j`: the level-`j` mPAC bias for small eps0.
pub fn mpac_bias_linear(m: u32, j: u32) -> f64 {
    (2.0 - 0.5f64.powi(m as i32)).powi(j as i32)
}

/// `prod_j (2 - 2^-m_j)`; symmetric in the cycle counts.
pub fn vmpac_bias_linear(cycles: &[u32]) -> f64 {
    cycles.iter().map(|&m| 2.0 - 0.5f64.powi(m as i32)).product()
}

/// `A(eps) = (1 - eps^2) / 2`.
pub fn heat_factor(eps: f64) -> f64 {
    (1.0 - eps * eps) / 2.0
}

/// One exact mPAC level with `m` cycles:
/// `eps * (1 - A^(m+1)) / (1 - A)`.
pub fn mpac_level_exact(eps: f64, m: u32) -> f64 {
    let a = heat_factor(eps);
    eps * (1.0 - a.powi(m as i32 + 1)) / (1.0 - a)
}

/// Exact level-`j` bias of mPAC started from `eps0`.
pub fn mpac_bias_exact(eps0: f64, m: u32, j: u32) -> f64 {
    (0..j).fold(eps0, |eps, _| mpac_level_exact(eps, m))
}

/// Exact m⃗PAC bias after all levels of `cycles`, applied in order.
pub fn vmpac_bias_exact(eps0: f64, cycles: &[u32]) -> f64 {
    cycles.iter().fold(eps0, |eps, &m| mpac_level_exact(eps, m))
}

/// Exact level-`j` bias of the infinite-cycle limit,
/// iterating `eps -> eps / (1 - A(eps))`.
pub fn inftypac_bias(eps0: f64, j: u32) -> f64 {
    (0..j).fold(eps0, |eps, _| {
        if eps == 0.0 {
            0.0
        } else {
            eps / (1.0 - heat_factor(eps))
        }
    })
}

/// `F_k` with `F_1 = F_2 = 1`.
pub fn fibonacci(k: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

/// Bias series (spins 1..n) of a Fibonacci-type recursion.
///
/// Spins 1 and 2 hold eps0; spin `k` starts unpolarized and is compressed
/// `cycles(k)` times against spins `k-1` and `k-2`. In the linear regime
/// with eps0 = 1 this is `eps_k = (1 - 2^-m_k)(eps_{k-1} + eps_{k-2})`.
pub fn fib_series(n: usize, eps0: f64, regime: Regime, cycles: impl Fn(usize) -> u32) -> Vec<f64> {
    let mut s = vec![eps0; n.min(2)];
    for k in 3..=n {
        let (hi, lo) = (s[k - 2], s[k - 3]);
        let x = (0..cycles(k)).fold(0.0, |x, _| crate::bias::comp3(regime, x, hi, lo));
        s.push(x);
    }
    s
}

/// mFib series in units of eps0.
pub fn mfib_bias_linear(m: u32, n: usize) -> Vec<f64> {
    fib_series(n, 1.0, Regime::Linear, |_| m)
}

/// δ-Fib series in units of eps0.
pub fn deltafib_bias_linear(n: usize) -> Vec<f64> {
    fib_series(n, 1.0, Regime::Linear, |k| (n + 2 - k) as u32)
}

/// Lower bound `F_k (1 - 2^(k-n-1))` that δ-Fib guarantees on bit `k`.
pub fn deltafib_guarantee(n: usize, k: usize) -> Result<f64> {
    if k < 3 || k > n {
        return Err(Error::InvalidAlgorithm(format!("bit {k} outside 3..={n}")));
    }
    Ok(fibonacci(k) as f64 * (1.0 - 0.5f64.powi((n + 1 - k) as i32)))
}

/// PAC3 series: `s_1 = s_2 = eps0`, `s_k = B(s_{k-1}, s_{k-1}, s_{k-2})`.
pub fn pac3_series(n: usize, eps0: f64, regime: Regime) -> Vec<f64> {
    let mut s = vec![eps0; n.min(2)];
    for k in 3..=n {
        let (hi, lo) = (s[k - 2], s[k - 3]);
        s.push(crate::bias::comp3(regime, hi, hi, lo));
    }
    s
}

/// Per-level biases `eps_0 .. eps_J` of the PAC family.
fn pac_level_biases(cycles: &[u32], eps0: f64, regime: Regime) -> Vec<f64> {
    let mut out = vec![eps0];
    for &m in cycles {
        let prev = *out.last().expect("non-empty");
        out.push(match regime {
            Regime::Linear => prev * (2.0 - 0.5f64.powi(m as i32)),
            Regime::Exact => mpac_level_exact(prev, m),
        });
    }
    out
}

/// Predicted final biases (spins 1..n) of `spec`.
///
/// For `MsbOnly` scope only the last entry is meaningful; lower entries
/// are reported as the full-string values they would have been cooled to.
/// The Fibonacci family is the recurrence above, which assumes each
/// recursive call starts its target from zero.
pub fn predicted_biases(spec: &AlgorithmSpec, eps0: f64, regime: Regime) -> Result<Vec<f64>> {
    spec.validate()?;
    let n = spec.n;
    let series = match &spec.family {
        Family::Pac3 => pac3_series(n, eps0, regime),
        f @ (Family::MFib(_) | Family::DeltaFib | Family::Fernandez(_)) => {
            fib_series(n, eps0, regime, |k| f.fib_cycles(n, k).expect("fib family"))
        }
        Family::InfinityPac => {
            let levels: Vec<f64> = (0..=spec.levels() as u32)
                .map(|j| match regime {
                    Regime::Linear => eps0 * 2f64.powi(j as i32),
                    Regime::Exact => inftypac_bias(eps0, j),
                })
                .collect();
            (1..=n).map(|k| levels[(k - 1) / 2]).collect()
        }
        f => {
            let levels = pac_level_biases(&f.pac_cycles(spec.levels()).expect("pac family"), eps0, regime);
            (1..=n).map(|k| levels[(k - 1) / 2]).collect()
        }
    };
    Ok(series)
}

/// Predicted MSB bias of `spec`.
pub fn predicted_msb(spec: &AlgorithmSpec, eps0: f64, regime: Regime) -> Result<f64> {
    Ok(*predicted_biases(spec, eps0, regime)?.last().expect("n >= 3"))
}

fn overflow(spec: &AlgorithmSpec) -> Error {
    Error::InvalidAlgorithm(format!("{spec}: run-time does not fit in 64 bits"))
}

/// PAC3 per-spin run-times `T_0 .. T_{n-1}` with `T_0 = T_1 = 1`,
/// `T_J = 2 T_{J-1} + T_{J-2}`.
fn pac3_runtimes(n: usize) -> Vec<u64> {
    let mut t = vec![1u64, 1];
    while t.len() < n {
        let l = t.len();
        t.push(t[l - 1].saturating_mul(2).saturating_add(t[l - 2]));
    }
    t.truncate(n.max(1));
    t
}

/// Number of RESET steps `spec` takes.
///
/// MSB only: `prod (1 + 2 m_j)` for the PAC family, `T_{n-1}` for PAC3,
/// `2 prod (m_k + 1)` for the Fibonacci family (`n!` for δ-Fib).
/// Full string: `2 + 2 sum_{i<J} T(i) + T(J)` for the PAC family and
/// `sum_k T_k` for PAC3; the Fibonacci schedule already cools every spin.
pub fn runtime_formula(spec: &AlgorithmSpec) -> Result<u64> {
    spec.validate()?;
    let n = spec.n;
    let rt = match &spec.family {
        Family::InfinityPac => return Err(Error::NotCompilable(spec.family.to_string())),
        Family::Pac3 => {
            let t = pac3_runtimes(n);
            let rt = match spec.scope {
                Scope::MsbOnly => t[n - 1],
                Scope::FullString => t.iter().fold(0u64, |a, &b| a.saturating_add(b)),
            };
            if rt == u64::MAX {
                return Err(overflow(spec));
            }
            rt
        }
        f @ (Family::MFib(_) | Family::DeltaFib | Family::Fernandez(_)) => (3..=n)
            .map(|k| f.fib_cycles(n, k).expect("fib family") as u64 + 1)
            .try_fold(2u64, u64::checked_mul)
            .ok_or_else(|| overflow(spec))?,
        f => {
            let cycles = f.pac_cycles(spec.levels()).expect("pac family");
            let mut per_level = vec![1u64];
            for &m in &cycles {
                let next = per_level.last().expect("non-empty").checked_mul(1 + 2 * m as u64);
                per_level.push(next.ok_or_else(|| overflow(spec))?);
            }
            let top = per_level.len() - 1;
            match spec.scope {
                Scope::MsbOnly => per_level[top],
                Scope::FullString => per_level[1..top]
                    .iter()
                    .try_fold(0u64, |acc, &t| acc.checked_add(t))
                    .and_then(|s| s.checked_mul(2))
                    .and_then(|s| s.checked_add(2 + per_level[top]))
                    .ok_or_else(|| overflow(spec))?,
            }
        }
    };
    Ok(rt)
}
