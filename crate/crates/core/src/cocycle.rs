//! Normalised circle-valued 2-cocycles on finite groupoids.
//!
//! Phases are stored as exact rationals in `[0, 1)` measured in full turns,
//! so the cocycle identity is checked in `ℚ/ℤ` rather than in floating point.
//! Pairs without an entry have phase zero.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::groupoid::{ArrowId, FiniteGroupoid};

/// A phase in turns; `1/4` is `i`.
pub type Turns = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("phase {phase} for ({left}, {right}) is outside [0, 1)")]
    PhaseOutOfRange {
        left: String,
        right: String,
        phase: Turns,
    },
    #[error("cocycle given on non-composable pair ({left}, {right})")]
    NotComposable { left: String, right: String },
    #[error("cocycle does not satisfy the 2-cocycle axioms:\n{}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<CocycleViolation>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleViolation {
    NotNormalised { left: String, right: String },
    Identity { a: String, b: String, c: String },
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleViolation::NotNormalised { left, right } => {
                write!(f, "phase on unit pair (`{left}`, `{right}`) is not zero")
            }
            CocycleViolation::Identity { a, b, c } => {
                write!(f, "cocycle identity fails on (`{a}`, `{b}`, `{c}`)")
            }
        }
    }
}

/// Reduces a rational number of turns into `[0, 1)`.
pub fn reduce_turns(t: Turns) -> Turns {
    let r = t - t.floor();
    if r.is_zero() {
        Turns::zero()
    } else {
        r
    }
}

/// `exp(2πi t)`, exact at multiples of a quarter turn.
pub fn turns_to_complex(t: Turns) -> Complex64 {
    let t = reduce_turns(t);
    let quarter = Turns::new(1, 4);
    if t.is_zero() {
        Complex64::new(1.0, 0.0)
    } else if t == quarter {
        Complex64::new(0.0, 1.0)
    } else if t == quarter * 2 {
        Complex64::new(-1.0, 0.0)
    } else if t == quarter * 3 {
        Complex64::new(0.0, -1.0)
    } else {
        let angle = std::f64::consts::TAU * (*t.numer() as f64) / (*t.denom() as f64);
        Complex64::from_polar(1.0, angle)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    arrows: usize,
    phases: BTreeMap<(ArrowId, ArrowId), Turns>,
}

impl Cocycle {
    /// The trivial cocycle.
    pub fn trivial(g: &FiniteGroupoid) -> Self {
        Self {
            arrows: g.len(),
            phases: BTreeMap::new(),
        }
    }

    /// Builds and validates a cocycle from explicit phases.
    pub fn from_phases(
        g: &FiniteGroupoid,
        entries: impl IntoIterator<Item = ((ArrowId, ArrowId), Turns)>,
    ) -> Result<Self, CocycleError> {
        let mut phases = BTreeMap::new();
        for ((a, b), t) in entries {
            if g.compose(a, b).is_none() {
                return Err(CocycleError::NotComposable {
                    left: g.name(a).into(),
                    right: g.name(b).into(),
                });
            }
            if t < Turns::zero() || t >= Turns::one() {
                return Err(CocycleError::PhaseOutOfRange {
                    left: g.name(a).into(),
                    right: g.name(b).into(),
                    phase: t,
                });
            }
            if !t.is_zero() {
                phases.insert((a, b), t);
            }
        }
        let cocycle = Self {
            arrows: g.len(),
            phases,
        };
        let violations = cocycle.validate(g);
        if violations.is_empty() {
            Ok(cocycle)
        } else {
            Err(CocycleError::Invalid(violations))
        }
    }

    /// Builds a cocycle from a phase function on composable pairs.
    pub fn from_fn(
        g: &FiniteGroupoid,
        phase: impl Fn(ArrowId, ArrowId) -> Turns,
    ) -> Result<Self, CocycleError> {
        let mut entries = Vec::new();
        for a in g.arrows() {
            for b in g.arrows() {
                if g.compose(a, b).is_some() {
                    entries.push(((a, b), reduce_turns(phase(a, b))));
                }
            }
        }
        Self::from_phases(g, entries)
    }

    /// The coboundary `(a, b) ↦ t(a) + t(b) − t(ab)` of a potential `t`.
    /// The potential is taken to vanish on units so the result is normalised.
    pub fn coboundary(g: &FiniteGroupoid, potential: &[Turns]) -> Self {
        assert_eq!(potential.len(), g.len());
        let t = |a: ArrowId| {
            if g.is_unit(a) {
                Turns::zero()
            } else {
                potential[a.0]
            }
        };
        Self::from_fn(g, |a, b| t(a) + t(b) - t(g.compose(a, b).unwrap()))
            .expect("coboundaries are normalised cocycles")
    }

    /// Number of arrows of the groupoid this cocycle lives on.
    pub fn arrows(&self) -> usize {
        self.arrows
    }

    pub fn phase(&self, a: ArrowId, b: ArrowId) -> Turns {
        self.phases
            .get(&(a, b))
            .copied()
            .unwrap_or_else(Turns::zero)
    }

    pub fn value(&self, a: ArrowId, b: ArrowId) -> Complex64 {
        turns_to_complex(self.phase(a, b))
    }

    /// Non-zero phases in pair order.
    pub fn entries(&self) -> impl Iterator<Item = ((ArrowId, ArrowId), Turns)> + '_ {
        self.phases.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_trivial(&self) -> bool {
        self.phases.is_empty()
    }

    /// Exact check of normalisation and the 2-cocycle identity
    /// `σ(a,b) σ(ab,c) = σ(b,c) σ(a,bc)` on every composable triple.
    pub fn validate(&self, g: &FiniteGroupoid) -> Vec<CocycleViolation> {
        let mut out = Vec::new();
        for a in g.arrows() {
            let (r, s) = (g.rng(a), g.src(a));
            for (l, rt) in [(r, a), (a, s)] {
                if !self.phase(l, rt).is_zero() {
                    out.push(CocycleViolation::NotNormalised {
                        left: g.name(l).into(),
                        right: g.name(rt).into(),
                    });
                }
            }
        }
        for a in g.arrows() {
            for b in g.arrows() {
                let Some(ab) = g.compose(a, b) else { continue };
                for c in g.arrows() {
                    let Some(bc) = g.compose(b, c) else { continue };
                    let lhs = self.phase(a, b) + self.phase(ab, c);
                    let rhs = self.phase(b, c) + self.phase(a, bc);
                    if !reduce_turns(lhs - rhs).is_zero() {
                        out.push(CocycleViolation::Identity {
                            a: g.name(a).into(),
                            b: g.name(b).into(),
                            c: g.name(c).into(),
                        });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_groupoid, pair_groupoid, FiniteGroup};

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(turns_to_complex(Turns::new(1, 4)), Complex64::new(0.0, 1.0));
        assert_eq!(turns_to_complex(Turns::new(5, 4)), Complex64::new(0.0, 1.0));
        assert_eq!(
            turns_to_complex(Turns::new(-1, 2)),
            Complex64::new(-1.0, 0.0)
        );
        let z = turns_to_complex(Turns::new(1, 3));
        assert!((z.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn coboundary_is_a_cocycle() {
        let g = pair_groupoid(3);
        let potential: Vec<Turns> = (0..g.len() as i64).map(|i| Turns::new(i, 7)).collect();
        let c = Cocycle::coboundary(&g, &potential);
        assert!(c.validate(&g).is_empty());
        assert!(!c.is_trivial());
    }

    #[test]
    fn klein_bilinear_cocycle_validates() {
        let k = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let g = group_groupoid(&k);
        // σ((a1,a2),(b1,b2)) = a1·b2 / 2 turns
        let c = Cocycle::from_fn(&g, |a, b| Turns::new(((a.0 / 2) * (b.0 % 2)) as i64, 2));
        assert!(c.is_ok());
    }

    #[test]
    fn broken_cocycle_is_rejected() {
        let g = group_groupoid(&FiniteGroup::cyclic(3));
        let gen = g.id("g").unwrap();
        let err = Cocycle::from_phases(&g, [((gen, gen), Turns::new(1, 3))]).unwrap_err();
        assert!(matches!(err, CocycleError::Invalid(_)));

        let e = g.id("e").unwrap();
        let err = Cocycle::from_phases(&g, [((e, gen), Turns::new(1, 2))]).unwrap_err();
        assert!(
            matches!(err, CocycleError::Invalid(v) if v.iter().any(|x| matches!(x, CocycleViolation::NotNormalised { .. })))
        );

        let err = Cocycle::from_phases(&g, [((gen, gen), Turns::new(3, 2))]).unwrap_err();
        assert!(matches!(err, CocycleError::PhaseOutOfRange { .. }));
    }

    #[test]
    fn non_composable_pair_is_rejected() {
        let g = pair_groupoid(2);
        let a = g.id("(0,1)").unwrap();
        let err = Cocycle::from_phases(&g, [((a, a), Turns::new(1, 2))]).unwrap_err();
        assert!(matches!(err, CocycleError::NotComposable { .. }));
    }
}
