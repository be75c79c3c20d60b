use serde::{Deserialize, Serialize};

use super::TableId;
use crate::algorithms::{inftypac_bias, mpac_bias_exact, mpac_bias_linear};
use crate::bias::Regime;

/// A purification curve: mPAC with fixed `m`, or its `m -> infinity` limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    MPac(u32),
    InfinityPac,
}

impl std::fmt::Display for CurveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurveKind::MPac(m) => write!(f, "{m}PAC"),
            CurveKind::InfinityPac => f.write_str("infPAC"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub eps0: f64,
    pub regime: Regime,
    pub j_max: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub algorithm: String,
    pub eps0: f64,
    pub j: u32,
    /// Spin `2j + 1` carries the level-`j` bias.
    pub n: usize,
    /// Units of eps0 in the linear regime, absolute in the exact one.
    pub bias: f64,
}

/// `(j, eps_{2j+1})` for `j = 0..=j_max`.
pub fn emit_curve(spec: &CurveSpec) -> Vec<CurvePoint> {
    (0..=spec.j_max)
        .map(|j| {
            let bias = match (spec.kind, spec.regime) {
                (CurveKind::MPac(m), Regime::Linear) => mpac_bias_linear(m, j),
                (CurveKind::MPac(m), Regime::Exact) => mpac_bias_exact(spec.eps0, m, j),
                (CurveKind::InfinityPac, Regime::Linear) => 2f64.powi(j as i32),
                (CurveKind::InfinityPac, Regime::Exact) => inftypac_bias(spec.eps0, j),
            };
            CurvePoint { algorithm: spec.kind.to_string(), eps0: spec.eps0, j, n: 2 * j as usize + 1, bias }
        })
        .collect()
}

/// The curve set behind figure `id`; empty for tables.
pub fn figure_curves(id: TableId) -> Vec<CurveSpec> {
    let all: Vec<CurveKind> = (1..=6).map(CurveKind::MPac).chain([CurveKind::InfinityPac]).collect();
    let zoom = [CurveKind::MPac(4), CurveKind::MPac(6), CurveKind::InfinityPac];
    let (kinds, eps0, regime, j_max): (&[CurveKind], f64, Regime, u32) = match id {
        TableId::F1 => (&all, 1e-5, Regime::Linear, 6),
        TableId::F2 => (&all, 0.01, Regime::Exact, 10),
        TableId::F3 => (&all, 0.1, Regime::Exact, 7),
        TableId::F4 => (&zoom, 0.01, Regime::Exact, 10),
        TableId::F5 => (&zoom, 0.1, Regime::Exact, 7),
        _ => return Vec::new(),
    };
    kinds.iter().map(|&kind| CurveSpec { kind, eps0, regime, j_max }).collect()
}
