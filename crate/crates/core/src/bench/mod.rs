//! Reproduction of the published tables and figure datasets, resource
//! search, and the tolerance checks applied to both.

mod curves;
mod published;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use curves::{emit_curve, figure_curves, CurveKind, CurvePoint, CurveSpec};
pub use published::{published, BiasCheck, PublishedRow, Request};
pub use search::{search_resources, SearchRequest, SearchResult};

use crate::algorithms::{run_algorithm, AlgorithmSpec, Family};
use crate::bias::Regime;
use crate::error::{Error, Result};
use crate::ppa::{run_ppa, PpaConfig, PpaStop};

/// A cooling procedure: a compiled algorithm or the PPA.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Algorithm(Family),
    Ppa,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Algorithm(fam) => fam.fmt(f),
            Subject::Ppa => f.write_str("PPA"),
        }
    }
}

impl FromStr for Subject {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("ppa") {
            Ok(Subject::Ppa)
        } else {
            Ok(Subject::Algorithm(s.parse()?))
        }
    }
}

/// A bias to reach.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Absolute polarization; evaluated in the exact regime.
    Absolute(f64),
    /// Multiple of eps0; evaluated in the linear regime.
    Factor(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    F1,
    F2,
    F3,
    F4,
    F5,
}

impl TableId {
    pub const ALL: [TableId; 15] = [
        TableId::T1,
        TableId::T2,
        TableId::T3,
        TableId::T4,
        TableId::T5,
        TableId::T6,
        TableId::T7,
        TableId::T8,
        TableId::T9,
        TableId::T10,
        TableId::F1,
        TableId::F2,
        TableId::F3,
        TableId::F4,
        TableId::F5,
    ];

    pub fn is_figure(self) -> bool {
        matches!(self, TableId::F1 | TableId::F2 | TableId::F3 | TableId::F4 | TableId::F5)
    }

    pub fn description(self) -> &'static str {
        use TableId::*;
        match self {
            T1 => "5-spin register",
            T2 => "7-spin register",
            T3 => "9-spin register",
            T4 => "11-spin register",
            T5 => "resources to purify to 0.6",
            T6 => "resources to purify to 0.9999 from 0.1",
            T7 => "resources for 3 eps0",
            T8 => "resources for 7 eps0",
            T9 => "resources for 11 eps0",
            T10 => "resources for 15 eps0",
            F1 => "mPAC cooling factors, linear regime",
            F2 => "mPAC biases from eps0 = 0.01",
            F3 => "mPAC biases from eps0 = 0.1",
            F4 => "4PAC/6PAC/infPAC close-up from eps0 = 0.01",
            F5 => "4PAC/6PAC/infPAC close-up from eps0 = 0.1",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for TableId {
    type Err = Error;

    /// `t1`, `T4`, `f3`, or long names like `T1_5SPIN`, `T6_PURIFY9999`.
    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        let head = up.split('_').next().unwrap_or_default();
        let head = head.strip_prefix("TABLE").map(|t| format!("T{t}")).unwrap_or_else(|| head.to_string());
        TableId::ALL
            .into_iter()
            .find(|id| id.to_string() == head)
            .ok_or_else(|| Error::Parse(format!("unknown table `{s}`")))
    }
}

/// One reproduced row, annotated with the published value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub algorithm: String,
    pub eps0: f64,
    pub n: usize,
    /// `None` for closed-form-only algorithms.
    pub resets: Option<u64>,
    pub bias: f64,
    pub paper_n: usize,
    pub paper_resets: u64,
    pub paper_value: Option<f64>,
    pub rel_dev: Option<f64>,
}

/// Recomputes a published row.
///
/// Fixed-size rows run the full-string schedule on the bias engine (linear,
/// eps0 = 1) or the PPA on the oracle for the printed number of steps;
/// search rows go through [`search_resources`].
pub fn compute_row(p: &PublishedRow) -> Result<Row> {
    let (n, resets, bias) = match (&p.request, &p.subject) {
        (Request::Run { n }, Subject::Ppa) => {
            let cfg = PpaConfig { n: *n, eps0: p.eps0, stop: PpaStop::AfterResets { count: p.resets } };
            let rep = run_ppa(&cfg)?;
            (*n, Some(rep.reset_count), rep.msb() / p.eps0)
        }
        (Request::Run { n }, Subject::Algorithm(f)) => {
            let rep = run_algorithm(&AlgorithmSpec::full(f.clone(), *n)?, 1.0, Regime::Linear)?;
            (*n, Some(rep.reset_count), rep.msb())
        }
        (Request::Search { target }, subject) => {
            let mut req = SearchRequest::new(subject.clone(), p.eps0, *target);
            req.tolerance = p.tolerance;
            let res = search_resources(&req)?;
            (res.n, res.resets, res.bias)
        }
    };
    let rel_dev = p.bias.map(|b| (bias - b) / b);
    Ok(Row {
        algorithm: p.label.to_string(),
        eps0: p.eps0,
        n,
        resets,
        bias,
        paper_n: p.n,
        paper_resets: p.resets,
        paper_value: p.bias,
        rel_dev,
    })
}

/// Reasons `row` disagrees with `p`; empty when it reproduces it.
pub fn check_row(p: &PublishedRow, row: &Row) -> Vec<String> {
    let mut bad = Vec::new();
    if row.n != p.n {
        bad.push(format!("spins {} != {}", row.n, p.n));
    }
    if row.resets != Some(p.resets) {
        let got = row.resets.map_or_else(|| "none".to_string(), |r| r.to_string());
        bad.push(format!("resets {got} != {}", p.resets));
    }
    if let Some(want) = p.bias {
        match p.check {
            BiasCheck::Relative(tol) => {
                let dev = (row.bias - want).abs() / want;
                if dev > tol {
                    bad.push(format!("bias {:.6} vs {want}: {:.2}% > {:.2}%", row.bias, dev * 100.0, tol * 100.0));
                }
            }
            BiasCheck::ErrorDigit => {
                let (ours, theirs) = ((1.0 - row.bias) / 2.0, (1.0 - want) / 2.0);
                let dev = (ours - theirs).abs() / theirs;
                if dev > 0.5 {
                    bad.push(format!("error probability {ours:.3e} vs {theirs:.3e}"));
                }
            }
            BiasCheck::None => {}
        }
    }
    bad
}

/// Reproduced rows of a table together with their check results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckedRow {
    #[serde(flatten)]
    pub row: Row,
    pub failures: Vec<String>,
}

/// Computes and checks every row of `id` (sequentially).
pub fn reproduce_table(id: TableId) -> Result<Vec<CheckedRow>> {
    published(id)
        .iter()
        .map(|p| {
            let row = compute_row(p)?;
            let failures = check_row(p, &row);
            Ok(CheckedRow { row, failures })
        })
        .collect()
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_ids_parse() {
        assert_eq!("t1".parse::<TableId>().unwrap(), TableId::T1);
        assert_eq!("T6_PURIFY9999".parse::<TableId>().unwrap(), TableId::T6);
        assert_eq!("table10".parse::<TableId>().unwrap(), TableId::T10);
        assert_eq!("F3_CURVES".parse::<TableId>().unwrap(), TableId::F3);
        assert!("t11".parse::<TableId>().is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2, 15), 0.3);
        assert_eq!(round_sig(123456.789, 3), 123000.0);
        assert_eq!(round_sig(0.0, 15), 0.0);
        assert!(round_sig(f64::NAN, 15).is_nan());
    }

    #[test]
    fn five_spin_algorithms_reproduce() {
        for p in published(TableId::T1).iter().filter(|p| p.subject != Subject::Ppa) {
            let row = compute_row(p).unwrap();
            assert!(check_row(p, &row).is_empty(), "{}: {:?}", p.label, check_row(p, &row));
        }
    }

    #[test]
    fn subjects_parse() {
        assert_eq!("ppa".parse::<Subject>().unwrap(), Subject::Ppa);
        assert_eq!("4pac".parse::<Subject>().unwrap(), Subject::Algorithm(Family::MPac(4)));
    }
}
