use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::HotSpins;
use crate::error::{Error, Result};

/// A cooling algorithm family, with its cycle parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// One compression per level; identical to `MPac(1)`.
    Pac2,
    /// Compressions on `{eps_j, eps_j, eps_{j-1}}`, one spin per level.
    Pac3,
    /// `m` compression cycles at every purification level.
    MPac(u32),
    /// `m_j` cycles at level `j` (first entry is level 1).
    VmPac(Vec<u32>),
    /// The `m -> infinity` limit of mPAC; closed form only.
    InfinityPac,
    /// `m` compress-and-refresh cycles on three spins.
    Fernandez(u32),
    /// Fibonacci recursion with `m` compressions per level.
    MFib(u32),
    /// Fibonacci recursion with `m_{n,k} = n - k + 2`.
    DeltaFib,
}

impl Family {
    /// Per-level cycle counts for the PAC family on `levels` levels.
    pub(crate) fn pac_cycles(&self, levels: usize) -> Option<Vec<u32>> {
        match self {
            Family::Pac2 => Some(vec![1; levels]),
            Family::MPac(m) => Some(vec![*m; levels]),
            Family::VmPac(ms) => Some(ms.clone()),
            _ => None,
        }
    }

    /// PAC2, mPAC and m⃗PAC: odd spin counts, MSB cooled by nested levels.
    pub fn is_pac_family(&self) -> bool {
        matches!(self, Family::Pac2 | Family::MPac(_) | Family::VmPac(_) | Family::InfinityPac)
    }

    pub fn is_fib_family(&self) -> bool {
        matches!(self, Family::MFib(_) | Family::DeltaFib | Family::Fernandez(_))
    }

    /// Cycle count of Fibonacci level `k` on `n` spins.
    pub(crate) fn fib_cycles(&self, n: usize, k: usize) -> Option<u32> {
        match self {
            Family::MFib(m) | Family::Fernandez(m) => Some(*m),
            Family::DeltaFib => Some((n + 2 - k) as u32),
            _ => None,
        }
    }

    /// The hot-spin policy under which this family's schedules run.
    ///
    /// PAC schedules never read a compressed-away spin; the Fibonacci
    /// recursion does, and its published biases assume those spins carry no
    /// bias.
    pub fn hot_spins(&self) -> HotSpins {
        if self.is_fib_family() {
            HotSpins::Heated
        } else {
            HotSpins::Strict
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Pac2 => f.write_str("PAC2"),
            Family::Pac3 => f.write_str("PAC3"),
            Family::MPac(m) => write!(f, "{m}PAC"),
            Family::VmPac(ms) => {
                let parts: Vec<String> = ms.iter().map(u32::to_string).collect();
                write!(f, "({})PAC", parts.join(","))
            }
            Family::InfinityPac => f.write_str("infPAC"),
            Family::Fernandez(m) => write!(f, "Fernandez({m})"),
            Family::MFib(m) => write!(f, "{m}Fib"),
            Family::DeltaFib => f.write_str("dFib"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `pac2`, `1pac`, `pac3`, `4pac`, `mpac:4`, `vmpac:3,5`,
    /// `infpac`, `fernandez:6`, `3fib`, `mfib:3`, `dfib` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || Error::Parse(format!("unknown algorithm `{s}`"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let positive = |m: u32| if m == 0 { Err(bad()) } else { Ok(m) };
        match lower.as_str() {
            "pac2" | "1pac" => return Ok(Family::Pac2),
            "pac3" => return Ok(Family::Pac3),
            "infpac" | "infinitypac" | "inftypac" | "∞pac" => return Ok(Family::InfinityPac),
            "dfib" | "delta-fib" | "deltafib" | "δ-fib" => return Ok(Family::DeltaFib),
            _ => {}
        }
        if let Some((head, tail)) = lower.split_once(':') {
            return match head {
                "mpac" => Ok(Family::MPac(positive(num(tail)?)?)),
                "mfib" => Ok(Family::MFib(positive(num(tail)?)?)),
                "fernandez" => Ok(Family::Fernandez(positive(num(tail)?)?)),
                "vmpac" => {
                    let ms = tail.split(',').map(|t| num(t.trim()).and_then(positive)).collect::<Result<Vec<_>>>()?;
                    Ok(Family::VmPac(ms))
                }
                _ => Err(bad()),
            };
        }
        if let Some(m) = lower.strip_suffix("pac") {
            let m = positive(num(m)?)?;
            return Ok(if m == 1 { Family::Pac2 } else { Family::MPac(m) });
        }
        if let Some(m) = lower.strip_suffix("fib") {
            return Ok(Family::MFib(positive(num(m)?)?));
        }
        Err(bad())
    }
}

/// How much of the register an algorithm is asked to cool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Only the most significant bit.
    MsbOnly,
    /// Every spin, by chaining MSB schedules over successively shorter
    /// prefixes.
    #[default]
    FullString,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "msb" | "msb_only" => Ok(Scope::MsbOnly),
            "full" | "full_string" => Ok(Scope::FullString),
            other => Err(Error::Parse(format!("unknown scope `{other}`"))),
        }
    }
}

/// An algorithm instance on a concrete register.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgorithmSpec {
    pub family: Family,
    pub n: usize,
    pub scope: Scope,
}

impl AlgorithmSpec {
    pub fn new(family: Family, n: usize, scope: Scope) -> Result<Self> {
        let spec = AlgorithmSpec { family, n, scope };
        spec.validate()?;
        Ok(spec)
    }

    pub fn full(family: Family, n: usize) -> Result<Self> {
        Self::new(family, n, Scope::FullString)
    }

    pub fn msb(family: Family, n: usize) -> Result<Self> {
        Self::new(family, n, Scope::MsbOnly)
    }

    /// Purification level of the MSB for the PAC family (`n = 2J + 1`).
    pub fn levels(&self) -> usize {
        (self.n - 1) / 2
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |why: String| Err(Error::InvalidAlgorithm(format!("{}: {why}", self.family)));
        if self.n < 3 {
            return invalid(format!("needs at least 3 spins, got {}", self.n));
        }
        match &self.family {
            Family::Pac2 | Family::MPac(_) | Family::VmPac(_) | Family::InfinityPac => {
                if self.n % 2 == 0 {
                    return invalid(format!("needs an odd number of spins, got {}", self.n));
                }
                if let Family::MPac(0) = self.family {
                    return invalid("m must be at least 1".into());
                }
                if let Family::VmPac(ms) = &self.family {
                    if ms.len() != self.levels() {
                        return invalid(format!(
                            "{} spins need {} cycle counts, got {}",
                            self.n,
                            self.levels(),
                            ms.len()
                        ));
                    }
                    if ms.contains(&0) {
                        return invalid("every m_j must be at least 1".into());
                    }
                }
            }
            Family::Fernandez(m) => {
                if self.n != 3 {
                    return invalid(format!("runs on exactly 3 spins, got {}", self.n));
                }
                if *m == 0 {
                    return invalid("m must be at least 1".into());
                }
            }
            Family::MFib(0) => return invalid("m must be at least 1".into()),
            Family::Pac3 | Family::MFib(_) | Family::DeltaFib => {}
        }
        Ok(())
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.family, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("PAC2".parse::<Family>().unwrap(), Family::Pac2);
        assert_eq!("1PAC".parse::<Family>().unwrap(), Family::Pac2);
        assert_eq!("4pac".parse::<Family>().unwrap(), Family::MPac(4));
        assert_eq!("mpac:6".parse::<Family>().unwrap(), Family::MPac(6));
        assert_eq!("vmpac:3, 5".parse::<Family>().unwrap(), Family::VmPac(vec![3, 5]));
        assert_eq!("3Fib".parse::<Family>().unwrap(), Family::MFib(3));
        assert_eq!("dfib".parse::<Family>().unwrap(), Family::DeltaFib);
        assert_eq!("fernandez:8".parse::<Family>().unwrap(), Family::Fernandez(8));
        assert_eq!("infpac".parse::<Family>().unwrap(), Family::InfinityPac);
        assert!("0pac".parse::<Family>().is_err());
        assert!("ppa".parse::<Family>().is_err());
        assert!("vmpac:1,x".parse::<Family>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for f in [Family::Pac2, Family::Pac3, Family::MPac(4), Family::MFib(3), Family::DeltaFib, Family::InfinityPac] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn validation() {
        assert!(AlgorithmSpec::full(Family::Pac2, 5).is_ok());
        assert!(AlgorithmSpec::full(Family::Pac2, 6).is_err());
        assert!(AlgorithmSpec::full(Family::Pac3, 6).is_ok());
        assert!(AlgorithmSpec::full(Family::VmPac(vec![3, 5]), 5).is_ok());
        assert!(AlgorithmSpec::full(Family::VmPac(vec![3]), 5).is_err());
        assert!(AlgorithmSpec::full(Family::VmPac(vec![0, 1]), 5).is_err());
        assert!(AlgorithmSpec::full(Family::MFib(3), 2).is_err());
        assert!(AlgorithmSpec::full(Family::MFib(0), 5).is_err());
        assert!(AlgorithmSpec::full(Family::Fernandez(3), 5).is_err());
        assert!(AlgorithmSpec::full(Family::Fernandez(3), 3).is_ok());
    }
}
