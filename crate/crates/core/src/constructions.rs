//! Standard finite groupoids: groups, pair groupoids, group bundles,
//! transformation groupoids, disjoint unions and products.

use std::collections::BTreeMap;

use crate::groupoid::{ArrowId, FiniteGroupoid, GroupoidData};

/// A finite group given by its multiplication table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Self {
        let n = names.len();
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == 0)
                    .expect("group table has inverses")
            })
            .collect();
        Self {
            names,
            table,
            inverses,
        }
    }

    /// `ℤ/n` with elements named `e`, `g`, `g^2`, …
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(names, table)
    }

    /// The symmetric group on `n` letters, elements in one-line notation.
    pub fn symmetric(n: usize) -> Self {
        let perms = sorted_permutations(n);
        let index: BTreeMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        // (a*b)(i) = a(b(i))
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index[&b.iter().map(|&i| a[i]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| {
                let body: Vec<String> = p.iter().map(|i| i.to_string()).collect();
                format!("[{}]", body.join(","))
            })
            .collect();
        Self::from_table(names, table)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let names = (0..na * nb)
            .map(|i| format!("({},{})", a.names[i / nb], b.names[i % nb]))
            .collect();
        let table = (0..na * nb)
            .map(|i| {
                (0..na * nb)
                    .map(|j| a.table[i / nb][j / nb] * nb + b.table[i % nb][j % nb])
                    .collect()
            })
            .collect();
        Self::from_table(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// All permutations of `0..n` in lexicographic order; element `i` of
/// [`FiniteGroup::symmetric`] is the `i`th entry.
fn sorted_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perms = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permutations(&mut current, 0, &mut perms);
    perms.sort();
    perms
}

fn permutations(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permutations(current, k + 1, out);
        current.swap(k, i);
    }
}

/// Assembles a groupoid from closures over arrow indices. Panics if the
/// result violates an axiom, which would be a bug in the caller.
fn assemble(
    names: Vec<String>,
    is_unit: impl Fn(usize) -> bool,
    src: impl Fn(usize) -> usize,
    rng: impl Fn(usize) -> usize,
    inv: impl Fn(usize) -> usize,
    compose: impl Fn(usize, usize) -> usize,
) -> FiniteGroupoid {
    let n = names.len();
    let mut comp = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if src(a) == rng(b) {
                comp.insert((ArrowId(a), ArrowId(b)), ArrowId(compose(a, b)));
            }
        }
    }
    let data = GroupoidData {
        names,
        units: (0..n).filter(|&a| is_unit(a)).map(ArrowId).collect(),
        src: (0..n).map(|a| ArrowId(src(a))).collect(),
        rng: (0..n).map(|a| ArrowId(rng(a))).collect(),
        inv: (0..n).map(|a| Some(ArrowId(inv(a)))).collect(),
        comp,
    };
    FiniteGroupoid::new(data).expect("standard construction satisfies the groupoid axioms")
}

/// `n` units and nothing else.
pub fn discrete(n: usize) -> FiniteGroupoid {
    assemble(
        (0..n).map(|i| format!("x{i}")).collect(),
        |_| true,
        |a| a,
        |a| a,
        |a| a,
        |a, _| a,
    )
}

/// The full equivalence relation on `n` points; arrow `(i,j)` runs from `j` to `i`.
pub fn pair_groupoid(n: usize) -> FiniteGroupoid {
    let names = (0..n * n)
        .map(|a| format!("({},{})", a / n, a % n))
        .collect();
    let unit = |i: usize| i * n + i;
    assemble(
        names,
        |a| a / n == a % n,
        |a| unit(a % n),
        |a| unit(a / n),
        |a| (a % n) * n + a / n,
        |a, b| (a / n) * n + b % n,
    )
}

/// A group as a one-unit groupoid.
pub fn group_groupoid(group: &FiniteGroup) -> FiniteGroupoid {
    assemble(
        group.names.clone(),
        |a| a == 0,
        |_| 0,
        |_| 0,
        |a| group.inverse(a),
        |a, b| group.mul(a, b),
    )
}

/// `ℤ/n` as a one-unit groupoid with arrows `e`, `g`, `g^2`, …
pub fn cyclic_group(n: usize) -> FiniteGroupoid {
    group_groupoid(&FiniteGroup::cyclic(n))
}

/// The trivial bundle of `group` over `units` points. Arrow `h@xi` is `h` in the fibre over `xi`.
pub fn group_bundle(group: &FiniteGroup, units: usize) -> FiniteGroupoid {
    let k = group.order();
    let names = (0..units * k)
        .map(|a| format!("{}@x{}", group.name(a % k), a / k))
        .collect();
    assemble(
        names,
        |a| a % k == 0,
        |a| (a / k) * k,
        |a| (a / k) * k,
        |a| (a / k) * k + group.inverse(a % k),
        |a, b| (a / k) * k + group.mul(a % k, b % k),
    )
}

/// Transformation groupoid of `group` acting on `points` points via `act(h, x)`.
/// Arrow `h.xj` runs from `xj` to `act(h, xj)`; the action must be a left action.
pub fn action_groupoid(
    group: &FiniteGroup,
    points: usize,
    act: impl Fn(usize, usize) -> usize,
) -> FiniteGroupoid {
    let k = group.order();
    // arrow index = h * points + x
    let names = (0..k * points)
        .map(|a| format!("{}.x{}", group.name(a / points), a % points))
        .collect();
    let h = |a: usize| a / points;
    let x = |a: usize| a % points;
    assemble(
        names,
        |a| h(a) == 0,
        x,
        |a| act(h(a), x(a)),
        |a| group.inverse(h(a)) * points + act(h(a), x(a)),
        |a, b| group.mul(h(a), h(b)) * points + x(b),
    )
}

/// Natural action of `S_n` on `n` letters as a transformation groupoid.
pub fn symmetric_action(n: usize) -> FiniteGroupoid {
    let group = FiniteGroup::symmetric(n);
    let perms = sorted_permutations(n);
    action_groupoid(&group, n, |h, x| perms[h][x])
}

/// Disjoint union; arrow names get the prefixes `L:` and `R:`.
pub fn disjoint_union(left: &FiniteGroupoid, right: &FiniteGroupoid) -> FiniteGroupoid {
    let m = left.len();
    let names = left
        .names()
        .iter()
        .map(|s| format!("L:{s}"))
        .chain(right.names().iter().map(|s| format!("R:{s}")))
        .collect();
    let lift = |a: usize, f: &dyn Fn(&FiniteGroupoid, ArrowId) -> ArrowId| -> usize {
        if a < m {
            f(left, ArrowId(a)).0
        } else {
            f(right, ArrowId(a - m)).0 + m
        }
    };
    assemble(
        names,
        |a| {
            if a < m {
                left.is_unit(ArrowId(a))
            } else {
                right.is_unit(ArrowId(a - m))
            }
        },
        |a| lift(a, &|g, x| g.src(x)),
        |a| lift(a, &|g, x| g.rng(x)),
        |a| lift(a, &|g, x| g.inv(x)),
        |a, b| {
            if a < m {
                left.compose(ArrowId(a), ArrowId(b)).unwrap().0
            } else {
                right.compose(ArrowId(a - m), ArrowId(b - m)).unwrap().0 + m
            }
        },
    )
}

/// Cartesian product groupoid; arrow `(a,b)` is named `a×b`.
pub fn product(left: &FiniteGroupoid, right: &FiniteGroupoid) -> FiniteGroupoid {
    let k = right.len();
    let split = |a: usize| (ArrowId(a / k), ArrowId(a % k));
    let join = |a: ArrowId, b: ArrowId| a.0 * k + b.0;
    let names = (0..left.len() * k)
        .map(|a| {
            let (x, y) = split(a);
            format!("{}×{}", left.name(x), right.name(y))
        })
        .collect();
    assemble(
        names,
        |a| {
            let (x, y) = split(a);
            left.is_unit(x) && right.is_unit(y)
        },
        |a| {
            let (x, y) = split(a);
            join(left.src(x), right.src(y))
        },
        |a| {
            let (x, y) = split(a);
            join(left.rng(x), right.rng(y))
        },
        |a| {
            let (x, y) = split(a);
            join(left.inv(x), right.inv(y))
        },
        |a, b| {
            let (x1, y1) = split(a);
            let (x2, y2) = split(b);
            join(
                left.compose(x1, x2).unwrap(),
                right.compose(y1, y2).unwrap(),
            )
        },
    )
}

/// A fixed corpus of small groupoids covering equivalence relations, group
/// bundles, transformation groupoids, disjoint unions and products. Every
/// member has at most 60 arrows.
pub fn standard_corpus() -> Vec<(String, FiniteGroupoid)> {
    let z = FiniteGroup::cyclic;
    let mut out: Vec<(String, FiniteGroupoid)> = vec![
        ("point".into(), discrete(1)),
        ("three points".into(), discrete(3)),
        ("pair groupoid on 2".into(), pair_groupoid(2)),
        ("pair groupoid on 3".into(), pair_groupoid(3)),
        ("pair groupoid on 5".into(), pair_groupoid(5)),
        (
            "equivalence relation {0,1}{2,3,4}".into(),
            disjoint_union(&pair_groupoid(2), &pair_groupoid(3)),
        ),
        ("Z/2".into(), cyclic_group(2)),
        ("Z/3".into(), cyclic_group(3)),
        ("Z/5".into(), cyclic_group(5)),
        ("Z/6".into(), cyclic_group(6)),
        ("Z/9".into(), cyclic_group(9)),
        (
            "Z/2 x Z/2".into(),
            group_groupoid(&FiniteGroup::direct_product(&z(2), &z(2))),
        ),
        ("S3".into(), group_groupoid(&FiniteGroup::symmetric(3))),
        ("Z/3 bundle over 2".into(), group_bundle(&z(3), 2)),
        ("Z/6 bundle over 2".into(), group_bundle(&z(6), 2)),
        ("Z/9 bundle over 2".into(), group_bundle(&z(9), 2)),
        ("Z/7 bundle over 3".into(), group_bundle(&z(7), 3)),
        (
            "Z/2 acting freely on 2".into(),
            action_groupoid(&z(2), 2, |h, x| (h + x) % 2),
        ),
        (
            "Z/3 rotating 3".into(),
            action_groupoid(&z(3), 3, |h, x| (h + x) % 3),
        ),
        (
            "Z/4 acting on 2 by parity".into(),
            action_groupoid(&z(4), 2, |h, x| (h + x) % 2),
        ),
        (
            "Z/6 rotating 3".into(),
            action_groupoid(&z(6), 3, |h, x| (h + x) % 3),
        ),
        (
            "Z/2 reflecting 3".into(),
            action_groupoid(&z(2), 3, |h, x| if h == 0 { x } else { 2 - x }),
        ),
        ("S3 acting on 3".into(), symmetric_action(3)),
        (
            "pair(2) + Z/2".into(),
            disjoint_union(&pair_groupoid(2), &cyclic_group(2)),
        ),
        (
            "Z/2 + Z/3".into(),
            disjoint_union(&cyclic_group(2), &cyclic_group(3)),
        ),
        (
            "pair(2) x Z/3".into(),
            product(&pair_groupoid(2), &cyclic_group(3)),
        ),
        (
            "pair(3) x pair(2)".into(),
            product(&pair_groupoid(3), &pair_groupoid(2)),
        ),
    ];
    out.push((
        "pair(2) x Z/2 + pair(3)".into(),
        disjoint_union(
            &product(&pair_groupoid(2), &cyclic_group(2)),
            &pair_groupoid(3),
        ),
    ));
    out
}
