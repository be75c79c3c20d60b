//! Polarization biases and the three-spin compression update rules.
//!
//! A bias is `p(up) - p(down)` for a single spin. In the small-bias
//! (linear) regime values are usually quoted in units of the equilibrium
//! bias, so the engine itself stores plain `f64`s; [`Bias`] is the checked
//! form used wherever a physical polarization in `[-1, 1]` is required.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A physical polarization bias in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Bias(f64);

impl Bias {
    pub const ZERO: Bias = Bias(0.0);
    pub const ONE: Bias = Bias(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (-1.0..=1.0).contains(&value) {
            Ok(Bias(value))
        } else {
            Err(Error::BiasOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Probability of the spin pointing up (`|0>`).
    pub fn p_up(self) -> f64 {
        (1.0 + self.0) / 2.0
    }

    /// Probability of the spin pointing down (`|1>`).
    pub fn p_down(self) -> f64 {
        (1.0 - self.0) / 2.0
    }
}

impl TryFrom<f64> for Bias {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Bias::new(value)
    }
}

impl From<Bias> for f64 {
    fn from(b: Bias) -> f64 {
        b.0
    }
}

impl fmt::Display for Bias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which 3B-Comp update rule the bias engine applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// First order in the biases; values may be given in units of eps0.
    #[default]
    Linear,
    /// The exact marginal of the |100> <-> |011> exchange on a product state.
    Exact,
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" | "lin" => Ok(Regime::Linear),
            "exact" => Ok(Regime::Exact),
            other => Err(Error::Parse(format!("unknown regime `{other}`"))),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Linear => "linear",
            Regime::Exact => "exact",
        })
    }
}

/// New bias of the target spin after 3B-Comp, to first order.
pub fn comp3_linear(eps_c: f64, eps_b: f64, eps_a: f64) -> f64 {
    (eps_c + eps_b + eps_a) / 2.0
}

/// New bias of the target spin after 3B-Comp on a product state.
///
/// Closed on `[-1, 1]`: the result never leaves the unit interval when the
/// inputs do not.
pub fn comp3_exact(eps_c: f64, eps_b: f64, eps_a: f64) -> f64 {
    (eps_c + eps_b + eps_a - eps_c * eps_b * eps_a) / 2.0
}

/// Dispatches on the regime.
pub fn comp3(regime: Regime, eps_c: f64, eps_b: f64, eps_a: f64) -> f64 {
    match regime {
        Regime::Linear => comp3_linear(eps_c, eps_b, eps_a),
        Regime::Exact => comp3_exact(eps_c, eps_b, eps_a),
    }
}

/// Biases of all three spins after 3B-Comp on a product state, as
/// `(c, b, a)`.
///
/// The compression moves probability `p(100) - p(011)` from the two
/// source spins onto the target, so `b` and `a` lose exactly what `c`
/// gains. In the linear regime the cubic term is dropped.
pub fn comp3_all(regime: Regime, eps_c: f64, eps_b: f64, eps_a: f64) -> (f64, f64, f64) {
    let cubic = match regime {
        Regime::Linear => 0.0,
        Regime::Exact => eps_c * eps_b * eps_a,
    };
    let gain = (eps_b + eps_a - eps_c - cubic) / 2.0;
    (eps_c + gain, eps_b - gain, eps_a - gain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn bias_rejects_out_of_range() {
        assert!(Bias::new(1.0).is_ok());
        assert!(Bias::new(-1.0).is_ok());
        assert_eq!(Bias::new(1.5), Err(Error::BiasOutOfRange(1.5)));
        assert!(Bias::new(f64::NAN).is_err());
    }

    #[test]
    fn linear_examples() {
        let eps0 = 1e-3;
        assert_relative_eq!(comp3_linear(eps0, eps0, eps0), 1.5 * eps0);
        assert_eq!(comp3_linear(0.0, 0.0, 0.0), 0.0);
        // PAC3 step {eps_j, eps_j, eps_{j-1}} = {1.5, 1.5, 1} -> 2
        assert_eq!(comp3_linear(1.5, 1.5, 1.0), 2.0);
    }

    #[test]
    fn exact_fixed_points() {
        assert_eq!(comp3_exact(1.0, 1.0, 1.0), 1.0);
        assert_eq!(comp3_exact(0.0, 0.0, 0.0), 0.0);
    }

    #[test]
    fn exact_matches_linear_for_small_bias() {
        let e = 1e-5;
        let diff = (comp3_exact(e, e, e) - comp3_linear(e, e, e)).abs();
        assert!(diff <= e * e * e);
    }

    #[test]
    fn exact_closed_on_grid() {
        let grid: Vec<f64> = (0..=20).map(|i| -1.0 + 0.1 * i as f64).collect();
        for &c in &grid {
            for &b in &grid {
                for &a in &grid {
                    let out = comp3_exact(c, b, a);
                    assert!((-1.0 - 1e-15..=1.0 + 1e-15).contains(&out), "{c} {b} {a} -> {out}");
                }
            }
        }
    }

    #[test]
    fn sources_lose_what_target_gains() {
        let (c, b, a) = comp3_all(Regime::Exact, 0.3, 0.2, -0.1);
        assert_relative_eq!(c, comp3_exact(0.3, 0.2, -0.1));
        assert_relative_eq!(0.2 - b, c - 0.3, epsilon = 1e-15);
        assert_relative_eq!(-0.1 - a, c - 0.3, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn cubic_gap_is_half_cube(e in -1.0f64..=1.0) {
            let gap = comp3_linear(e, e, e) - comp3_exact(e, e, e);
            prop_assert!((gap - e * e * e / 2.0).abs() <= 1e-15);
        }
    }
}
