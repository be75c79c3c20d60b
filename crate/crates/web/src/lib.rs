//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Each export returns a JSON string. The work is done by plain functions
//! so the same code paths run (and are tested) natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use hbac_core::algorithms::{AlgorithmSpec, Family, Scope};
use hbac_core::bench::{emit_curve, CurveKind, CurveSpec};
use hbac_core::ppa::{run_ppa_traced, PpaConfig, PpaStop};
use hbac_core::{run_algorithm, Regime};

// keeps a page from freezing the tab
const MAX_PPA_SPINS: usize = 14;
const MAX_PPA_STEPS: u64 = 2_000_000;

#[derive(Serialize)]
struct Series {
    label: String,
    x: Vec<f64>,
    y: Vec<f64>,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn regime(s: &str) -> Result<Regime, String> {
    s.parse().map_err(|e: hbac_core::Error| e.to_string())
}

/// Level-by-level biases for each comma-separated curve (`4`, `6`, `inf`).
pub fn curves(ms: &str, eps0: f64, j_max: u32, regime_name: &str) -> Result<String, String> {
    let regime = regime(regime_name)?;
    if j_max > 40 {
        return Err("j_max is capped at 40".into());
    }
    let series = ms
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let kind = match t.to_ascii_lowercase().as_str() {
                "inf" | "infpac" => CurveKind::InfinityPac,
                m => match m.trim_end_matches("pac").parse::<u32>() {
                    Ok(m) if m > 0 => CurveKind::MPac(m),
                    _ => return Err(format!("bad curve `{t}`")),
                },
            };
            let pts = emit_curve(&CurveSpec { kind, eps0, regime, j_max });
            Ok(Series {
                label: kind.to_string(),
                x: pts.iter().map(|p| p.j as f64).collect(),
                y: pts.iter().map(|p| p.bias).collect(),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    to_json(&series)
}

/// Final bias of every spin after the full-string (or MSB-only) schedule.
pub fn spin_biases(algorithm: &str, n: usize, eps0: f64, regime_name: &str, msb_only: bool) -> Result<String, String> {
    let family: Family = algorithm.parse().map_err(|e: hbac_core::Error| e.to_string())?;
    let scope = if msb_only { Scope::MsbOnly } else { Scope::FullString };
    let spec = AlgorithmSpec::new(family, n, scope).map_err(|e| e.to_string())?;
    if n > 15 {
        return Err("the demo runs at most 15 spins".into());
    }
    let regime = regime(regime_name)?;
    let run_eps0 = if regime == Regime::Linear { 1.0 } else { eps0 };
    let rep = run_algorithm(&spec, run_eps0, regime).map_err(|e| e.to_string())?;
    #[derive(Serialize)]
    struct Out {
        label: String,
        resets: u64,
        biases: Vec<f64>,
    }
    to_json(&Out { label: spec.family.to_string(), resets: rep.reset_count, biases: rep.final_biases })
}

/// MSB bias (units of eps0) of the PPA, sampled every `every` steps.
pub fn ppa_series(n: usize, eps0: f64, steps: u64, every: u64) -> Result<String, String> {
    if n > MAX_PPA_SPINS {
        return Err(format!("the demo runs the PPA on at most {MAX_PPA_SPINS} spins"));
    }
    if steps > MAX_PPA_STEPS {
        return Err(format!("at most {MAX_PPA_STEPS} steps"));
    }
    let every = every.max(1);
    let cfg = PpaConfig { n, eps0, stop: PpaStop::AfterResets { count: steps } };
    let rep = run_ppa_traced(&cfg, every).map_err(|e| e.to_string())?;
    let trace = rep.trace.unwrap_or_default();
    let series = Series {
        label: format!("PPA n={n}"),
        x: (1..=trace.len() as u64).map(|i| (i * every) as f64).collect(),
        y: trace.iter().map(|t| t.biases[n - 1] / eps0).collect(),
    };
    to_json(&series)
}

#[wasm_bindgen(js_name = curves)]
pub fn curves_js(ms: &str, eps0: f64, j_max: u32, regime: &str) -> Result<String, JsError> {
    curves(ms, eps0, j_max, regime).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = spinBiases)]
pub fn spin_biases_js(algorithm: &str, n: usize, eps0: f64, regime: &str, msb_only: bool) -> Result<String, JsError> {
    spin_biases(algorithm, n, eps0, regime, msb_only).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = ppaSeries)]
pub fn ppa_series_js(n: usize, eps0: f64, steps: u64, every: u64) -> Result<String, JsError> {
    ppa_series(n, eps0, steps, every).map_err(|e| JsError::new(&e))
}
