use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::closed_form::{fibonacci, pac3_series};
use crate::bias::Regime;
use crate::error::{Error, Result};

/// Limiting bias series that the cooling algorithms are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceSeries {
    InfinityPac,
    /// PPA and all-bonacci share the `2^(n-2)` asymptote.
    PpaAllbonacci,
    Fibonacci,
    Pac2,
    Pac3,
}

impl fmt::Display for ReferenceSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReferenceSeries::InfinityPac => "infPAC",
            ReferenceSeries::PpaAllbonacci => "PPA",
            ReferenceSeries::Fibonacci => "Fibonacci",
            ReferenceSeries::Pac2 => "PAC2",
            ReferenceSeries::Pac3 => "PAC3",
        })
    }
}

impl FromStr for ReferenceSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "infpac" => Ok(ReferenceSeries::InfinityPac),
            "ppa" | "allbonacci" | "all-bonacci" => Ok(ReferenceSeries::PpaAllbonacci),
            "fib" | "fibonacci" => Ok(ReferenceSeries::Fibonacci),
            "pac2" => Ok(ReferenceSeries::Pac2),
            "pac3" => Ok(ReferenceSeries::Pac3),
            _ => Err(Error::Parse(format!("unknown reference series `{s}`"))),
        }
    }
}

/// Reference biases in units of eps0, MSB first (spin n down to spin 1).
pub fn asymptotic_series(which: ReferenceSeries, n: usize) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::InvalidAlgorithm(format!("{which}: needs at least 3 spins, got {n}")));
    }
    let mut up: Vec<f64> = match which {
        ReferenceSeries::InfinityPac => (1..=n).map(|k| 2f64.powi(((k - 1) / 2) as i32)).collect(),
        ReferenceSeries::Pac2 => (1..=n).map(|k| 1.5f64.powi(((k - 1) / 2) as i32)).collect(),
        ReferenceSeries::PpaAllbonacci => (1..=n).map(|k| 2f64.powi(k.max(2) as i32 - 2)).collect(),
        ReferenceSeries::Fibonacci => (1..=n).map(|k| fibonacci(k) as f64).collect(),
        ReferenceSeries::Pac3 => pac3_series(n, 1.0, Regime::Linear),
    };
    up.reverse();
    Ok(up)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_spin_series() {
        let s = |w| asymptotic_series(w, 7).unwrap();
        assert_eq!(s(ReferenceSeries::PpaAllbonacci), vec![32.0, 16.0, 8.0, 4.0, 2.0, 1.0, 1.0]);
        assert_eq!(s(ReferenceSeries::Fibonacci), vec![13.0, 8.0, 5.0, 3.0, 2.0, 1.0, 1.0]);
        assert_eq!(s(ReferenceSeries::Pac3), vec![5.125, 3.75, 2.75, 2.0, 1.5, 1.0, 1.0]);
        assert_eq!(s(ReferenceSeries::InfinityPac), vec![8.0, 4.0, 4.0, 2.0, 2.0, 1.0, 1.0]);
        assert_eq!(s(ReferenceSeries::Pac2)[0], 3.375);
        assert!(asymptotic_series(ReferenceSeries::Pac2, 2).is_err());
    }
}
