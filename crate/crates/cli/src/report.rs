//! Machine-readable reports and their canonical JSON rendering.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CartanSummary {
    pub masa: bool,
    pub span: bool,
    pub faithful: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessSummary {
    pub gamma: String,
    #[serde(rename = "N")]
    pub order: usize,
    pub p: usize,
    pub support_size: usize,
    pub normaliser_residual: f64,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub valid: bool,
    pub twisted: bool,
    pub num_arrows: usize,
    pub num_units: usize,
    pub isotropy_size: usize,
    pub principal: bool,
    pub effective: bool,
    pub commutant_dim: usize,
    pub cartan: CartanSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FkSummary {
    #[serde(rename = "K")]
    pub stabilises_at: usize,
    pub equalities_hold: bool,
    pub projections_valid: bool,
    pub converged: bool,
    /// Support of each `f_k`, by arrow id.
    pub projections: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormaliserVerdict {
    pub is_normaliser: bool,
    pub residual: f64,
    pub support: Vec<String>,
    pub is_bisection: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fk_sequence: Option<FkSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoReport {
    pub samples: usize,
    pub unimodular: bool,
    pub c1_mag: f64,
    pub c2_mag: f64,
    pub violates_lbh: bool,
    pub laurent_sweep_passed: bool,
}

/// `x` rounded to 12 significant digits, with `-0` mapped to `0`.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn canonicalise(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalise).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, canonicalise(v))).collect())
        }
        other => other,
    }
}

/// Pretty JSON with sorted keys and floats rounded to 12 significant digits.
pub fn canonical_json(value: &impl Serialize) -> String {
    let value = canonicalise(serde_json::to_value(value).expect("reports serialise"));
    let mut out = serde_json::to_string_pretty(&value).expect("values serialise");
    out.push('\n');
    out
}
