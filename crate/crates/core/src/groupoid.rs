//! Finite groupoids with the discrete topology.
//!
//! Arrows are opaque indices into an explicit composition table. Composition
//! reads right to left: `compose(a, b)` is defined exactly when
//! `src(a) == rng(b)`, and the result runs from `src(b)` to `rng(a)`.
//!
//! Every subset of a finite discrete groupoid is open, so the interior of the
//! isotropy coincides with the isotropy and a groupoid is effective exactly
//! when it is principal. Both predicates are kept so callers can state which
//! one they mean.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Index of an arrow inside its parent [`FiniteGroupoid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

impl ArrowId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of the arrows of some fixed groupoid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ArrowSet(BTreeSet<ArrowId>);

impl ArrowSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(a: ArrowId) -> Self {
        Self(BTreeSet::from([a]))
    }

    pub fn insert(&mut self, a: ArrowId) -> bool {
        self.0.insert(a)
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.0.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &ArrowSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &ArrowSet) -> ArrowSet {
        Self(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &ArrowSet) -> ArrowSet {
        Self(self.0.intersection(&other.0).copied().collect())
    }
}

impl FromIterator<ArrowId> for ArrowSet {
    fn from_iter<I: IntoIterator<Item = ArrowId>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ArrowSet {
    type Item = ArrowId;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, ArrowId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Unchecked groupoid tables, as read from a file or assembled by hand.
///
/// Nothing here is trusted: [`GroupoidData::validate`] reports every axiom
/// that fails, and [`FiniteGroupoid::new`] refuses data with a non-empty
/// report.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupoidData {
    pub names: Vec<String>,
    pub units: Vec<ArrowId>,
    pub src: Vec<ArrowId>,
    pub rng: Vec<ArrowId>,
    pub inv: Vec<Option<ArrowId>>,
    pub comp: BTreeMap<(ArrowId, ArrowId), ArrowId>,
}

/// One failed groupoid axiom. Arrows are reported by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Malformed(String),
    UnitEndpoints {
        unit: String,
    },
    EndpointNotUnit {
        arrow: String,
    },
    MissingInverse {
        arrow: String,
    },
    InverseNotInvolution {
        arrow: String,
    },
    InverseLaw {
        arrow: String,
    },
    MissingComposite {
        left: String,
        right: String,
    },
    UncomposableComposite {
        left: String,
        right: String,
    },
    CompositeEndpoints {
        left: String,
        right: String,
        result: String,
    },
    UnitLaw {
        arrow: String,
        unit: String,
    },
    NonAssociative {
        a: String,
        b: String,
        c: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Malformed(msg) => write!(f, "malformed tables: {msg}"),
            Violation::UnitEndpoints { unit } => {
                write!(f, "unit `{unit}` does not have itself as source and range")
            }
            Violation::EndpointNotUnit { arrow } => {
                write!(
                    f,
                    "arrow `{arrow}` has a source or range that is not a unit"
                )
            }
            Violation::MissingInverse { arrow } => write!(f, "arrow `{arrow}` has no inverse"),
            Violation::InverseNotInvolution { arrow } => {
                write!(f, "inverse of the inverse of `{arrow}` is not `{arrow}`")
            }
            Violation::InverseLaw { arrow } => write!(
                f,
                "`{arrow}` composed with its inverse is not the expected unit"
            ),
            Violation::MissingComposite { left, right } => {
                write!(f, "composable pair (`{left}`, `{right}`) has no composite")
            }
            Violation::UncomposableComposite { left, right } => write!(
                f,
                "composite given for (`{left}`, `{right}`) but src(`{left}`) != rng(`{right}`)"
            ),
            Violation::CompositeEndpoints {
                left,
                right,
                result,
            } => write!(
                f,
                "composite `{result}` of (`{left}`, `{right}`) has the wrong source or range"
            ),
            Violation::UnitLaw { arrow, unit } => {
                write!(f, "unit `{unit}` does not act trivially on `{arrow}`")
            }
            Violation::NonAssociative { a, b, c } => {
                write!(f, "composition is not associative on (`{a}`, `{b}`, `{c}`)")
            }
        }
    }
}

/// Result of [`GroupoidData::validate`]; empty when every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("groupoid axioms fail:\n{0}")]
    Invalid(ValidationReport),
    #[error("arrow {0} is not in the isotropy")]
    NotIsotropy(ArrowId),
    #[error("set is not a bisection")]
    NotBisection,
    #[error("set is not contained in the isotropy")]
    NotInIsotropy,
    #[error("power must be positive")]
    ZeroPower,
}

impl GroupoidData {
    fn name(&self, a: ArrowId) -> String {
        self.names
            .get(a.0)
            .cloned()
            .unwrap_or_else(|| a.to_string())
    }

    /// Checks every groupoid axiom, including a full associativity scan.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.names.len();

        if self.src.len() != n || self.rng.len() != n || self.inv.len() != n {
            violations.push(Violation::Malformed(format!(
                "{} arrows but {} sources, {} ranges, {} inverse slots",
                n,
                self.src.len(),
                self.rng.len(),
                self.inv.len()
            )));
            return ValidationReport { violations };
        }
        let in_range = |a: &ArrowId| a.0 < n;
        let out_of_range = self.units.iter().any(|a| !in_range(a))
            || self.src.iter().any(|a| !in_range(a))
            || self.rng.iter().any(|a| !in_range(a))
            || self.inv.iter().flatten().any(|a| !in_range(a))
            || self
                .comp
                .iter()
                .any(|((a, b), c)| !in_range(a) || !in_range(b) || !in_range(c));
        if out_of_range {
            violations.push(Violation::Malformed("arrow index out of range".into()));
            return ValidationReport { violations };
        }

        let mut is_unit = vec![false; n];
        for &u in &self.units {
            is_unit[u.0] = true;
        }

        for &x in &self.units {
            if self.src[x.0] != x || self.rng[x.0] != x {
                violations.push(Violation::UnitEndpoints { unit: self.name(x) });
            }
        }
        for a in (0..n).map(ArrowId) {
            if !is_unit[self.src[a.0].0] || !is_unit[self.rng[a.0].0] {
                violations.push(Violation::EndpointNotUnit {
                    arrow: self.name(a),
                });
            }
        }

        // Composability and endpoints of composites.
        for ((a, b), c) in &self.comp {
            if self.src[a.0] != self.rng[b.0] {
                violations.push(Violation::UncomposableComposite {
                    left: self.name(*a),
                    right: self.name(*b),
                });
            } else if self.rng[c.0] != self.rng[a.0] || self.src[c.0] != self.src[b.0] {
                violations.push(Violation::CompositeEndpoints {
                    left: self.name(*a),
                    right: self.name(*b),
                    result: self.name(*c),
                });
            }
        }
        for a in (0..n).map(ArrowId) {
            for b in (0..n).map(ArrowId) {
                if self.src[a.0] == self.rng[b.0] && !self.comp.contains_key(&(a, b)) {
                    violations.push(Violation::MissingComposite {
                        left: self.name(a),
                        right: self.name(b),
                    });
                }
            }
        }

        let comp = |a: ArrowId, b: ArrowId| -> Option<ArrowId> {
            if self.src[a.0] == self.rng[b.0] {
                self.comp.get(&(a, b)).copied()
            } else {
                None
            }
        };

        // Unit laws.
        for a in (0..n).map(ArrowId) {
            let s = self.src[a.0];
            let r = self.rng[a.0];
            if is_unit[s.0] {
                if let Some(c) = comp(a, s) {
                    if c != a {
                        violations.push(Violation::UnitLaw {
                            arrow: self.name(a),
                            unit: self.name(s),
                        });
                    }
                }
            }
            if is_unit[r.0] {
                if let Some(c) = comp(r, a) {
                    if c != a {
                        violations.push(Violation::UnitLaw {
                            arrow: self.name(a),
                            unit: self.name(r),
                        });
                    }
                }
            }
        }

        // Inverse laws.
        for a in (0..n).map(ArrowId) {
            let Some(b) = self.inv[a.0] else {
                violations.push(Violation::MissingInverse {
                    arrow: self.name(a),
                });
                continue;
            };
            if self.inv[b.0] != Some(a) {
                violations.push(Violation::InverseNotInvolution {
                    arrow: self.name(a),
                });
            }
            let right_ok = comp(a, b) == Some(self.rng[a.0]);
            let left_ok = comp(b, a) == Some(self.src[a.0]);
            if !(right_ok && left_ok) {
                violations.push(Violation::InverseLaw {
                    arrow: self.name(a),
                });
            }
        }

        // Associativity, over every composable triple whose composites exist.
        for a in (0..n).map(ArrowId) {
            for b in (0..n).map(ArrowId) {
                let Some(ab) = comp(a, b) else { continue };
                for c in (0..n).map(ArrowId) {
                    let Some(bc) = comp(b, c) else { continue };
                    let left = comp(ab, c);
                    let right = comp(a, bc);
                    if left.is_some() && right.is_some() && left != right {
                        violations.push(Violation::NonAssociative {
                            a: self.name(a),
                            b: self.name(b),
                            c: self.name(c),
                        });
                    }
                }
            }
        }

        ValidationReport { violations }
    }
}

/// A validated finite groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    names: Vec<String>,
    index: HashMap<String, ArrowId>,
    units: Vec<ArrowId>,
    is_unit: Vec<bool>,
    src: Vec<ArrowId>,
    rng: Vec<ArrowId>,
    inv: Vec<ArrowId>,
    // Dense n x n table, row-major in the left factor.
    comp: Vec<Option<ArrowId>>,
}

impl FiniteGroupoid {
    pub fn new(data: GroupoidData) -> Result<Self, GroupoidError> {
        let report = data.validate();
        if !report.is_valid() {
            return Err(GroupoidError::Invalid(report));
        }
        let n = data.names.len();
        let mut is_unit = vec![false; n];
        let mut units = data.units.clone();
        units.sort();
        units.dedup();
        for &u in &units {
            is_unit[u.0] = true;
        }
        let mut comp = vec![None; n * n];
        for (&(a, b), &c) in &data.comp {
            comp[a.0 * n + b.0] = Some(c);
        }
        let index = data
            .names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), ArrowId(i)))
            .collect();
        Ok(Self {
            index,
            units,
            is_unit,
            src: data.src,
            rng: data.rng,
            inv: data
                .inv
                .into_iter()
                .map(|a| a.expect("validated"))
                .collect(),
            comp,
            names: data.names,
        })
    }

    /// The tables this groupoid was built from.
    pub fn to_data(&self) -> GroupoidData {
        let n = self.len();
        let mut comp = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.comp[a * n + b] {
                    comp.insert((ArrowId(a), ArrowId(b)), c);
                }
            }
        }
        GroupoidData {
            names: self.names.clone(),
            units: self.units.clone(),
            src: self.src.clone(),
            rng: self.rng.clone(),
            inv: self.inv.iter().copied().map(Some).collect(),
            comp,
        }
    }

    /// Re-runs the axiom checks; always empty for a constructed value.
    pub fn validate(&self) -> ValidationReport {
        self.to_data().validate()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = ArrowId> {
        (0..self.len()).map(ArrowId)
    }

    pub fn name(&self, a: ArrowId) -> &str {
        &self.names[a.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<ArrowId> {
        self.index.get(name).copied()
    }

    pub fn units(&self) -> &[ArrowId] {
        &self.units
    }

    pub fn unit_set(&self) -> ArrowSet {
        self.units.iter().copied().collect()
    }

    pub fn is_unit(&self, a: ArrowId) -> bool {
        self.is_unit[a.0]
    }

    pub fn src(&self, a: ArrowId) -> ArrowId {
        self.src[a.0]
    }

    pub fn rng(&self, a: ArrowId) -> ArrowId {
        self.rng[a.0]
    }

    pub fn inv(&self, a: ArrowId) -> ArrowId {
        self.inv[a.0]
    }

    /// `a ∘ b`, defined when `src(a) == rng(b)`.
    pub fn compose(&self, a: ArrowId, b: ArrowId) -> Option<ArrowId> {
        self.comp[a.0 * self.len() + b.0]
    }

    /// The source fibre `G_x`, in index order.
    pub fn source_fibre(&self, x: ArrowId) -> Vec<ArrowId> {
        self.arrows().filter(|&a| self.src(a) == x).collect()
    }

    /// The range fibre `G^x`, in index order.
    pub fn range_fibre(&self, x: ArrowId) -> Vec<ArrowId> {
        self.arrows().filter(|&a| self.rng(a) == x).collect()
    }

    pub fn range_image(&self, set: &ArrowSet) -> ArrowSet {
        set.iter().map(|a| self.rng(a)).collect()
    }

    pub fn source_image(&self, set: &ArrowSet) -> ArrowSet {
        set.iter().map(|a| self.src(a)).collect()
    }

    pub fn set_inverse(&self, set: &ArrowSet) -> ArrowSet {
        set.iter().map(|a| self.inv(a)).collect()
    }

    /// All composites `ab` with `a` in `left`, `b` in `right`.
    pub fn set_product(&self, left: &ArrowSet, right: &ArrowSet) -> ArrowSet {
        let mut out = ArrowSet::new();
        for a in left {
            for b in right {
                if let Some(c) = self.compose(a, b) {
                    out.insert(c);
                }
            }
        }
        out
    }

    /// `set^k` for `k >= 1`.
    pub fn set_power(&self, set: &ArrowSet, k: usize) -> Result<ArrowSet, GroupoidError> {
        if k == 0 {
            return Err(GroupoidError::ZeroPower);
        }
        let mut acc = set.clone();
        for _ in 1..k {
            acc = self.set_product(&acc, set);
        }
        Ok(acc)
    }

    /// Range and source are both injective on `set`.
    pub fn is_bisection(&self, set: &ArrowSet) -> bool {
        let mut ranges = BTreeSet::new();
        let mut sources = BTreeSet::new();
        set.iter()
            .all(|a| ranges.insert(self.rng(a)) && sources.insert(self.src(a)))
    }

    pub fn isotropy(&self) -> ArrowSet {
        self.arrows()
            .filter(|&a| self.rng(a) == self.src(a))
            .collect()
    }

    /// Interior of the isotropy. Every set is open here, so this is the isotropy.
    pub fn isotropy_interior(&self) -> ArrowSet {
        self.isotropy()
    }

    pub fn is_principal(&self) -> bool {
        self.isotropy() == self.unit_set()
    }

    pub fn is_effective(&self) -> bool {
        self.isotropy_interior() == self.unit_set()
    }

    /// `a^k` for an isotropy arrow; `a^0` is the unit at `a`.
    pub fn power(&self, a: ArrowId, k: usize) -> Result<ArrowId, GroupoidError> {
        if self.rng(a) != self.src(a) {
            return Err(GroupoidError::NotIsotropy(a));
        }
        let mut acc = self.src(a);
        for _ in 0..k {
            acc = self.compose(acc, a).expect("isotropy arrows compose");
        }
        Ok(acc)
    }

    /// Least `N >= 1` with `a^N` a unit.
    pub fn element_order(&self, a: ArrowId) -> Result<usize, GroupoidError> {
        if self.rng(a) != self.src(a) {
            return Err(GroupoidError::NotIsotropy(a));
        }
        let mut acc = a;
        let mut order = 1;
        while !self.is_unit(acc) {
            acc = self.compose(acc, a).expect("isotropy arrows compose");
            order += 1;
            debug_assert!(order <= self.len());
        }
        Ok(order)
    }

    /// Shrinks an isotropy bisection `L` to `B = L·(L^N ∩ G⁰)`, so that
    /// `B^N` consists of units and the powers of `B` form a cyclic group.
    pub fn nice_bisection(&self, l: &ArrowSet, n: usize) -> Result<ArrowSet, GroupoidError> {
        if !self.is_bisection(l) {
            return Err(GroupoidError::NotBisection);
        }
        if !l.is_subset(&self.isotropy_interior()) {
            return Err(GroupoidError::NotInIsotropy);
        }
        let w = self.set_power(l, n)?.intersection(&self.unit_set());
        Ok(self.set_product(l, &w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        cyclic_group, disjoint_union, group_bundle, pair_groupoid, FiniteGroup,
    };

    fn ids(g: &FiniteGroupoid, names: &[&str]) -> ArrowSet {
        names.iter().map(|n| g.id(n).unwrap()).collect()
    }

    fn z2_data() -> GroupoidData {
        cyclic_group(2).to_data()
    }

    #[test]
    fn one_unit_groupoid_is_valid() {
        let data = GroupoidData {
            names: vec!["x".into()],
            units: vec![ArrowId(0)],
            src: vec![ArrowId(0)],
            rng: vec![ArrowId(0)],
            inv: vec![Some(ArrowId(0))],
            comp: BTreeMap::from([((ArrowId(0), ArrowId(0)), ArrowId(0))]),
        };
        assert!(data.validate().is_valid());
        assert!(FiniteGroupoid::new(data).is_ok());
    }

    #[test]
    fn z2_is_valid() {
        assert!(z2_data().validate().is_valid());
    }

    #[test]
    fn missing_inverse_is_reported() {
        let mut data = z2_data();
        data.inv[1] = None;
        let report = data.validate();
        assert!(report
            .violations
            .contains(&Violation::MissingInverse { arrow: "g".into() }));
        assert!(matches!(
            FiniteGroupoid::new(data),
            Err(GroupoidError::Invalid(_))
        ));
    }

    #[test]
    fn missing_composite_and_broken_associativity_are_named() {
        let mut data = z2_data();
        data.comp.remove(&(ArrowId(1), ArrowId(1)));
        let report = data.validate();
        assert!(report.violations.contains(&Violation::MissingComposite {
            left: "g".into(),
            right: "g".into()
        }));

        let mut data = z2_data();
        // g∘g = g breaks the inverse law and associativity
        data.comp.insert((ArrowId(1), ArrowId(1)), ArrowId(1));
        let report = data.validate();
        assert!(report
            .violations
            .contains(&Violation::InverseLaw { arrow: "g".into() }));
    }

    #[test]
    fn set_inverse_examples() {
        let g = cyclic_group(3);
        assert_eq!(g.set_inverse(&ids(&g, &["e"])), ids(&g, &["e"]));
        assert_eq!(g.set_inverse(&ids(&g, &["g"])), ids(&g, &["g^2"]));
    }

    #[test]
    fn set_product_examples() {
        let g = cyclic_group(3);
        assert_eq!(
            g.set_product(&ids(&g, &["g"]), &ids(&g, &["g"])),
            ids(&g, &["g^2"])
        );

        let p = pair_groupoid(3);
        let a = ids(&p, &["(0,1)", "(1,2)"]);
        assert!(p.is_bisection(&a));
        assert_eq!(p.set_product(&a, &p.set_inverse(&a)), p.range_image(&a));
        assert_eq!(p.set_product(&p.set_inverse(&a), &a), p.source_image(&a));

        let units = ids(&p, &["(0,0)", "(2,2)"]);
        let b = ids(&p, &["(0,1)", "(1,2)", "(2,1)", "(2,2)"]);
        assert_eq!(
            p.set_product(&units, &b),
            ids(&p, &["(0,1)", "(2,1)", "(2,2)"])
        );
    }

    #[test]
    fn bisection_examples() {
        let z2 = cyclic_group(2);
        assert!(z2.is_bisection(&ids(&z2, &["g"])));
        assert!(!z2.is_bisection(&ids(&z2, &["e", "g"])));
        let p = pair_groupoid(2);
        assert!(p.is_bisection(&ids(&p, &["(0,1)", "(1,0)"])));
        assert!(p.is_bisection(&ArrowSet::new()));
    }

    #[test]
    fn isotropy_examples() {
        let p = pair_groupoid(2);
        assert_eq!(p.isotropy(), p.unit_set());
        let z2 = cyclic_group(2);
        assert_eq!(z2.isotropy().len(), 2);
        let u = disjoint_union(&p, &z2);
        assert_eq!(u.isotropy().len(), 4);
        assert!(p.is_principal() && p.is_effective());
        assert!(!z2.is_principal() && !z2.is_effective());
        assert!(!u.is_effective());
    }

    #[test]
    fn element_order_examples() {
        let g = cyclic_group(6);
        assert_eq!(g.element_order(g.id("e").unwrap()), Ok(1));
        assert_eq!(g.element_order(g.id("g").unwrap()), Ok(6));
        assert_eq!(g.element_order(g.id("g^2").unwrap()), Ok(3));
        let p = pair_groupoid(2);
        let a = p.id("(0,1)").unwrap();
        assert_eq!(p.element_order(a), Err(GroupoidError::NotIsotropy(a)));
    }

    #[test]
    fn nice_bisection_examples() {
        let g = cyclic_group(5);
        let gamma = ids(&g, &["g"]);
        assert_eq!(g.nice_bisection(&gamma, 5).unwrap(), gamma);

        // Order 2 arrow over one unit, order 3 arrow over another.
        let u = disjoint_union(&cyclic_group(2), &cyclic_group(3));
        let l = ids(&u, &["L:g", "R:g"]);
        assert_eq!(u.nice_bisection(&l, 2).unwrap(), ids(&u, &["L:g"]));

        let units = u.unit_set();
        assert_eq!(u.nice_bisection(&units, 1).unwrap(), units);

        let bundle = group_bundle(&FiniteGroup::cyclic(2), 2);
        let not_bisection: ArrowSet = bundle.isotropy();
        assert_eq!(
            bundle.nice_bisection(&not_bisection, 2),
            Err(GroupoidError::NotBisection)
        );
        let p = pair_groupoid(2);
        assert_eq!(
            p.nice_bisection(&ids(&p, &["(0,1)"]), 1),
            Err(GroupoidError::NotInIsotropy)
        );
    }
}
