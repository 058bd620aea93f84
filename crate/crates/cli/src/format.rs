//! On-disk JSON formats for groupoids and algebra elements.
//!
//! A groupoid file:
//!
//! ```json
//! {
//!   "format": 1,
//!   "arrows": [{"id": "e", "src": "e", "dst": "e"}, {"id": "g", "src": "e", "dst": "e"}],
//!   "units": ["e"],
//!   "inv": [["e", "e"], ["g", "g"]],
//!   "comp": [["e", "e", "e"], ["e", "g", "g"], ["g", "e", "g"], ["g", "g", "e"]],
//!   "cocycle": [["g", "g", "1/2"]]
//! }
//! ```
//!
//! `comp` triples `[a, b, ab]` compose right to left, so `src(a) = dst(b)`.
//! Cocycle phases are rationals in `[0, 1)` measured in full turns; omitted
//! pairs have phase zero.

use std::collections::{BTreeMap, HashMap};

use lbh_core::{
    AlgebraElement, ArrowId, Cocycle, CocycleError, Complex64, ConvolutionAlgebra, FiniteGroupoid,
    GroupoidData, Turns, ValidationReport,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}; expected {FORMAT_VERSION}")]
    Version(u32),
    #[error("{field}: arrow id `{id}` is declared twice")]
    DuplicateId { field: String, id: String },
    #[error("{field}: unknown arrow id `{id}`")]
    UnknownArrow { field: String, id: String },
    #[error("{field}: conflicting entry for `{key}`")]
    Conflict { field: String, key: String },
    #[error("{field}: `{value}` is not a rational number of turns such as \"1/4\"")]
    Phase { field: String, value: String },
    #[error("{field}: phase {value} is outside [0, 1)")]
    PhaseRange { field: String, value: String },
}

/// Failures of a well-formed file to describe a groupoid or cocycle.
#[derive(Debug, Error)]
pub enum ValidationFailure {
    #[error("groupoid axioms fail:\n{0}")]
    Groupoid(ValidationReport),
    #[error("{0}")]
    Cocycle(CocycleError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidFile {
    pub format: u32,
    pub arrows: Vec<ArrowEntry>,
    pub units: Vec<String>,
    pub inv: Vec<[String; 2]>,
    pub comp: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<[String; 3]>>,
}

/// A syntactically sound groupoid file that has not been validated yet.
#[derive(Clone, Debug)]
pub struct ParsedGroupoid {
    pub data: GroupoidData,
    pub cocycle: Option<Vec<((ArrowId, ArrowId), Turns)>>,
}

/// A validated groupoid with its optional twist.
#[derive(Clone, Debug)]
pub struct LoadedGroupoid {
    pub groupoid: FiniteGroupoid,
    pub cocycle: Option<Cocycle>,
}

impl LoadedGroupoid {
    pub fn algebra(&self) -> ConvolutionAlgebra<'_> {
        match &self.cocycle {
            Some(c) => ConvolutionAlgebra::twisted(&self.groupoid, c)
                .expect("cocycle built on this groupoid"),
            None => ConvolutionAlgebra::new(&self.groupoid),
        }
    }
}

struct Names(HashMap<String, ArrowId>);

impl Names {
    fn get(&self, field: impl FnOnce() -> String, id: &str) -> Result<ArrowId, ParseError> {
        self.0
            .get(id)
            .copied()
            .ok_or_else(|| ParseError::UnknownArrow {
                field: field(),
                id: id.to_string(),
            })
    }
}

fn parse_phase(field: String, value: &str) -> Result<Turns, ParseError> {
    let t: Turns = value.trim().parse().map_err(|_| ParseError::Phase {
        field: field.clone(),
        value: value.to_string(),
    })?;
    if t < Turns::from_integer(0) || t >= Turns::from_integer(1) {
        return Err(ParseError::PhaseRange {
            field,
            value: value.to_string(),
        });
    }
    Ok(t)
}

pub fn parse_groupoid(text: &str) -> Result<ParsedGroupoid, ParseError> {
    let file: GroupoidFile = serde_json::from_str(text)?;
    if file.format != FORMAT_VERSION {
        return Err(ParseError::Version(file.format));
    }
    let mut names = Names(HashMap::new());
    for (i, a) in file.arrows.iter().enumerate() {
        if names.0.insert(a.id.clone(), ArrowId(i)).is_some() {
            return Err(ParseError::DuplicateId {
                field: format!("arrows[{i}].id"),
                id: a.id.clone(),
            });
        }
    }
    let mut data = GroupoidData {
        names: file.arrows.iter().map(|a| a.id.clone()).collect(),
        inv: vec![None; file.arrows.len()],
        ..GroupoidData::default()
    };
    for (i, a) in file.arrows.iter().enumerate() {
        data.src
            .push(names.get(|| format!("arrows[{i}].src"), &a.src)?);
        data.rng
            .push(names.get(|| format!("arrows[{i}].dst"), &a.dst)?);
    }
    for (i, u) in file.units.iter().enumerate() {
        data.units.push(names.get(|| format!("units[{i}]"), u)?);
    }
    for (i, [a, b]) in file.inv.iter().enumerate() {
        let a_id = names.get(|| format!("inv[{i}][0]"), a)?;
        let b_id = names.get(|| format!("inv[{i}][1]"), b)?;
        match data.inv[a_id.0] {
            Some(existing) if existing != b_id => {
                return Err(ParseError::Conflict {
                    field: format!("inv[{i}]"),
                    key: a.clone(),
                })
            }
            _ => data.inv[a_id.0] = Some(b_id),
        }
    }
    for (i, [a, b, ab]) in file.comp.iter().enumerate() {
        let key = (
            names.get(|| format!("comp[{i}][0]"), a)?,
            names.get(|| format!("comp[{i}][1]"), b)?,
        );
        let value = names.get(|| format!("comp[{i}][2]"), ab)?;
        if let Some(existing) = data.comp.insert(key, value) {
            if existing != value {
                return Err(ParseError::Conflict {
                    field: format!("comp[{i}]"),
                    key: format!("({a}, {b})"),
                });
            }
        }
    }
    let cocycle = match &file.cocycle {
        None => None,
        Some(entries) => {
            let mut out = BTreeMap::new();
            for (i, [a, b, phase]) in entries.iter().enumerate() {
                let key = (
                    names.get(|| format!("cocycle[{i}][0]"), a)?,
                    names.get(|| format!("cocycle[{i}][1]"), b)?,
                );
                let t = parse_phase(format!("cocycle[{i}][2]"), phase)?;
                if out.insert(key, t).is_some_and(|old| old != t) {
                    return Err(ParseError::Conflict {
                        field: format!("cocycle[{i}]"),
                        key: format!("({a}, {b})"),
                    });
                }
            }
            Some(out.into_iter().collect())
        }
    };
    Ok(ParsedGroupoid { data, cocycle })
}

impl ParsedGroupoid {
    pub fn build(self) -> Result<LoadedGroupoid, ValidationFailure> {
        let report = self.data.validate();
        if !report.is_valid() {
            return Err(ValidationFailure::Groupoid(report));
        }
        let groupoid = FiniteGroupoid::new(self.data).expect("validated above");
        let cocycle = match self.cocycle {
            None => None,
            Some(entries) => {
                Some(Cocycle::from_phases(&groupoid, entries).map_err(ValidationFailure::Cocycle)?)
            }
        };
        Ok(LoadedGroupoid { groupoid, cocycle })
    }
}

/// The file describing `g` and, if given, a twist.
pub fn groupoid_file(g: &FiniteGroupoid, cocycle: Option<&Cocycle>) -> GroupoidFile {
    let name = |a: ArrowId| g.name(a).to_string();
    let mut comp = Vec::new();
    for a in g.arrows() {
        for b in g.arrows() {
            if let Some(ab) = g.compose(a, b) {
                comp.push([name(a), name(b), name(ab)]);
            }
        }
    }
    GroupoidFile {
        format: FORMAT_VERSION,
        arrows: g
            .arrows()
            .map(|a| ArrowEntry {
                id: name(a),
                src: name(g.src(a)),
                dst: name(g.rng(a)),
            })
            .collect(),
        units: g.units().iter().map(|&u| name(u)).collect(),
        inv: g.arrows().map(|a| [name(a), name(g.inv(a))]).collect(),
        comp,
        cocycle: cocycle.map(|c| {
            c.entries()
                .map(|((a, b), t)| [name(a), name(b), t.to_string()])
                .collect()
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientEntry {
    pub arrow: String,
    pub re: f64,
    pub im: f64,
}

/// `{"format": 1, "coefficients": [{"arrow": "g", "re": 0.0, "im": -1.0}]}`;
/// arrows not listed have coefficient zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub format: u32,
    pub coefficients: Vec<CoefficientEntry>,
}

pub fn parse_element(text: &str, g: &FiniteGroupoid) -> Result<AlgebraElement, ParseError> {
    let file: ElementFile = serde_json::from_str(text)?;
    if file.format != FORMAT_VERSION {
        return Err(ParseError::Version(file.format));
    }
    let mut out = AlgebraElement::zero(g.len());
    let mut seen = vec![false; g.len()];
    for (i, c) in file.coefficients.iter().enumerate() {
        let a = g.id(&c.arrow).ok_or_else(|| ParseError::UnknownArrow {
            field: format!("coefficients[{i}].arrow"),
            id: c.arrow.clone(),
        })?;
        if std::mem::replace(&mut seen[a.0], true) {
            return Err(ParseError::DuplicateId {
                field: format!("coefficients[{i}].arrow"),
                id: c.arrow.clone(),
            });
        }
        out.set(a, Complex64::new(c.re, c.im));
    }
    Ok(out)
}

/// Non-zero coefficients of `f` in arrow order.
pub fn element_file(g: &FiniteGroupoid, f: &AlgebraElement) -> ElementFile {
    ElementFile {
        format: FORMAT_VERSION,
        coefficients: g
            .arrows()
            .filter(|&a| f.get(a) != Complex64::new(0.0, 0.0))
            .map(|a| CoefficientEntry {
                arrow: g.name(a).to_string(),
                re: f.get(a).re,
                im: f.get(a).im,
            })
            .collect(),
    }
}
