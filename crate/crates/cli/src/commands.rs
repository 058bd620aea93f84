use std::fs;
use std::path::{Path, PathBuf};

use lbh_core::cyclotomic::{gauss_normaliser, verify_gauss_identity, CyclotomicError};
use lbh_core::fourier::{
    bounded_laurent_sweep, cstar_lbh_violation, dft, is_unimodular, sample_m, FourierError,
};
use lbh_core::witness::{build_twisted_witness, build_witness, WitnessError, WitnessOutcome};
use lbh_core::{AlgebraElement, AlgebraError, ArrowSet, FiniteGroupoid};
use serde_json::Value;
use thiserror::Error;

use crate::format::{
    element_file, parse_element, parse_groupoid, ElementFile, LoadedGroupoid, ParseError,
    ValidationFailure,
};
use crate::report::{
    AnalysisReport, CartanSummary, DemoReport, FkSummary, NormaliserVerdict, WitnessSummary,
};

/// Unimodularity tolerance for the circle samples.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// Coefficient bound for the Laurent sweep in `demo-integers`.
pub const SWEEP_BOUND: i64 = 2;
/// Support radius for the Laurent sweep in `demo-integers`.
pub const SWEEP_RADIUS: i64 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Invalid {
        path: PathBuf,
        source: ValidationFailure,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 1 for validation or verification failures, 2 for unreadable input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid { .. } | CliError::Failed(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
        }
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        CliError::Failed(format!("witness construction failed: {e}"))
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!(
            "tolerance must be finite and non-negative, got {tol}"
        )))
    }
}

pub fn load(path: &Path) -> Result<LoadedGroupoid, CliError> {
    let parsed = parse_groupoid(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    parsed.build().map_err(|source| CliError::Invalid {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_element(path: &Path, g: &FiniteGroupoid) -> Result<AlgebraElement, CliError> {
    parse_element(&read(path)?, g).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn validate(path: &Path) -> Result<String, CliError> {
    let loaded = load(path)?;
    let g = &loaded.groupoid;
    let twist = match &loaded.cocycle {
        Some(c) => format!(", cocycle with {} non-zero phases", c.entries().count()),
        None => String::new(),
    };
    Ok(format!(
        "valid: {} arrows, {} units{twist}\n",
        g.len(),
        g.units().len()
    ))
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: AnalysisReport,
    pub witness: Option<ElementFile>,
}

pub fn analyze(loaded: &LoadedGroupoid, tol: f64) -> Result<Analysis, CliError> {
    let g = &loaded.groupoid;
    let alg = loaded.algebra();
    let cartan = alg.cartan_check();
    let outcome = match &loaded.cocycle {
        Some(c) => build_twisted_witness(g, c)?,
        None => build_witness(g)?,
    };
    let (summary, witness) = match outcome {
        WitnessOutcome::Effective => (None, None),
        WitnessOutcome::Found(w) => {
            let summary = WitnessSummary {
                gamma: g.name(w.gamma).to_string(),
                order: w.order,
                p: w.prime,
                support_size: alg.support(&w.element, tol)?.len(),
                normaliser_residual: w.certificate.normaliser_residual,
                norm: alg.reduced_norm(&w.element)?,
            };
            (Some(summary), Some(element_file(g, &w.element)))
        }
    };
    let report = AnalysisReport {
        valid: true,
        twisted: loaded.cocycle.is_some(),
        num_arrows: g.len(),
        num_units: g.units().len(),
        isotropy_size: g.isotropy().len(),
        principal: g.is_principal(),
        effective: g.is_effective(),
        commutant_dim: alg.commutant_dimension(),
        cartan: CartanSummary {
            masa: cartan.masa,
            span: cartan.normaliser_span_full,
            faithful: cartan.expectation_faithful,
        },
        witness: summary,
    };
    Ok(Analysis { report, witness })
}

fn names(g: &FiniteGroupoid, set: &ArrowSet) -> Vec<String> {
    set.iter().map(|a| g.name(a).to_string()).collect()
}

pub fn check_normaliser(
    loaded: &LoadedGroupoid,
    n: &AlgebraElement,
    tol: f64,
) -> Result<NormaliserVerdict, CliError> {
    let g = &loaded.groupoid;
    let alg = loaded.algebra();
    let check = alg.is_normaliser(n, tol)?;
    let support = alg.support(n, tol)?;
    let is_bisection = g.is_bisection(&support);
    let fk_sequence = if is_bisection {
        let fk = alg.build_fk_sequence(n, tol)?;
        Some(FkSummary {
            stabilises_at: fk.stabilises_at,
            equalities_hold: fk.equalities_hold,
            projections_valid: fk.projections_valid,
            converged: fk.converged,
            projections: fk
                .projections
                .iter()
                .map(|f| names(g, &alg.support(f, 0.0).expect("valid tolerance")))
                .collect(),
        })
    } else {
        None
    };
    Ok(NormaliserVerdict {
        is_normaliser: check.is_normaliser,
        residual: check.residual,
        support: names(g, &support),
        is_bisection,
        fk_sequence,
    })
}

pub fn gauss(p: u64, verify: bool) -> Result<String, CliError> {
    let n = gauss_normaliser(p).map_err(|e| match e {
        CyclotomicError::NotPrime(_) => CliError::Usage(format!("-p must be prime: {e}")),
        other => CliError::Failed(other.to_string()),
    })?;
    let mut out = format!("n = {n}\n");
    if verify {
        let ok = verify_gauss_identity(p).map_err(|e| CliError::Failed(e.to_string()))?;
        if !ok {
            return Err(CliError::Failed(format!("{out}n n* = n* n = {p}δ₀ FAILED")));
        }
        out.push_str(&format!("n n* = n* n = {p}δ₀: verified\n"));
    }
    Ok(out)
}

pub fn demo_integers(samples: usize, tol: f64) -> Result<DemoReport, CliError> {
    let sample =
        sample_m(samples).map_err(|e: FourierError| CliError::Usage(format!("--samples: {e}")))?;
    let series = dft(&sample);
    let sweep = bounded_laurent_sweep(SWEEP_RADIUS, SWEEP_BOUND, 1e-12);
    Ok(DemoReport {
        samples,
        unimodular: is_unimodular(&sample, UNIMODULAR_TOL),
        c1_mag: series.coefficient(1).norm(),
        c2_mag: series.coefficient(2).norm(),
        violates_lbh: cstar_lbh_violation(&series, tol),
        laurent_sweep_passed: sweep.passed(),
    })
}

/// `key: value` lines for a report, nested keys joined by dots.
pub fn text_report(value: &impl serde::Serialize) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, v, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk(
        "",
        &serde_json::to_value(value).expect("reports serialise"),
        &mut out,
    );
    out
}

pub fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("files serialise");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
