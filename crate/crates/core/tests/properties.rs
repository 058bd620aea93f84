use std::sync::OnceLock;

use lbh_core::constructions::{group_groupoid, standard_corpus, FiniteGroup};
use lbh_core::{
    AlgebraElement, ArrowId, ArrowSet, Cocycle, Complex64, ConvolutionAlgebra, FiniteGroupoid,
    Turns,
};
use proptest::prelude::*;

fn corpus() -> &'static [(String, FiniteGroupoid)] {
    static CORPUS: OnceLock<Vec<(String, FiniteGroupoid)>> = OnceLock::new();
    CORPUS.get_or_init(standard_corpus)
}

fn klein() -> &'static (FiniteGroupoid, Cocycle) {
    static KLEIN: OnceLock<(FiniteGroupoid, Cocycle)> = OnceLock::new();
    KLEIN.get_or_init(|| {
        let group = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let g = group_groupoid(&group);
        let c = Cocycle::from_fn(&g, |a, b| Turns::new(((a.0 / 2) * (b.0 % 2)) as i64, 2)).unwrap();
        (g, c)
    })
}

fn element(len: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), len).prop_map(|v| {
        AlgebraElement::from_coeffs(
            v.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
    })
}

/// A corpus member, a coboundary twist on it (possibly trivial), and three elements.
fn case() -> impl Strategy<Value = (usize, Cocycle, [AlgebraElement; 3])> {
    (0..corpus().len()).prop_flat_map(|i| {
        let g = &corpus()[i].1;
        let n = g.len();
        (
            Just(i),
            prop::collection::vec(0i64..8, n),
            any::<bool>(),
            element(n),
            element(n),
            element(n),
        )
            .prop_map(move |(i, potential, twisted, a, b, c)| {
                let g = &corpus()[i].1;
                let cocycle = if twisted {
                    let t: Vec<Turns> = potential.into_iter().map(|k| Turns::new(k, 8)).collect();
                    Cocycle::coboundary(g, &t)
                } else {
                    Cocycle::trivial(g)
                };
                (i, cocycle, [a, b, c])
            })
    })
}

fn subset(len: usize) -> impl Strategy<Value = ArrowSet> {
    prop::collection::vec(any::<bool>(), len).prop_map(|mask| {
        mask.into_iter()
            .enumerate()
            .filter(|(_, b)| *b)
            .map(|(i, _)| ArrowId(i))
            .collect()
    })
}

fn close(a: &AlgebraElement, b: &AlgebraElement) -> bool {
    a.max_abs_diff(b) < 1e-9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_products_associate_and_invert(
        (i, a, b, c) in (0..corpus().len()).prop_flat_map(|i| {
            let n = corpus()[i].1.len();
            (Just(i), subset(n), subset(n), subset(n))
        })
    ) {
        let g = &corpus()[i].1;
        let ab_c = g.set_product(&g.set_product(&a, &b), &c);
        let a_bc = g.set_product(&a, &g.set_product(&b, &c));
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(
            g.set_inverse(&g.set_product(&a, &b)),
            g.set_product(&g.set_inverse(&b), &g.set_inverse(&a))
        );
        prop_assert_eq!(g.set_inverse(&g.set_inverse(&a)), a);
    }

    #[test]
    fn convolution_is_an_associative_star_algebra((i, cocycle, [f, g, h]) in case()) {
        let gr = &corpus()[i].1;
        let alg = ConvolutionAlgebra::twisted(gr, &cocycle).unwrap();
        let fg_h = alg.convolve(&alg.convolve(&f, &g).unwrap(), &h).unwrap();
        let f_gh = alg.convolve(&f, &alg.convolve(&g, &h).unwrap()).unwrap();
        prop_assert!(close(&fg_h, &f_gh));

        let star = |x: &AlgebraElement| alg.involute(x).unwrap();
        prop_assert!(close(&star(&star(&f)), &f));
        prop_assert!(close(&star(&alg.convolve(&f, &g).unwrap()), &alg.convolve(&star(&g), &star(&f)).unwrap()));

        let lhs = alg.convolve(&f, &(&g + &h)).unwrap();
        let rhs = &alg.convolve(&f, &g).unwrap() + &alg.convolve(&f, &h).unwrap();
        prop_assert!(close(&lhs, &rhs));
    }

    #[test]
    fn cstar_identity((i, cocycle, [f, _, _]) in case()) {
        let gr = &corpus()[i].1;
        let alg = ConvolutionAlgebra::twisted(gr, &cocycle).unwrap();
        let ff = alg.convolve(&alg.involute(&f).unwrap(), &f).unwrap();
        let norm = alg.reduced_norm(&f).unwrap();
        prop_assert!((alg.reduced_norm(&ff).unwrap() - norm * norm).abs() < 1e-8 * (1.0 + norm * norm));
        prop_assert!(norm >= f.sup_norm() - 1e-12);
    }

    #[test]
    fn support_of_product_is_in_product_of_supports((i, cocycle, [f, g, _]) in case()) {
        let gr = &corpus()[i].1;
        let alg = ConvolutionAlgebra::twisted(gr, &cocycle).unwrap();
        let fg = alg.convolve(&f, &g).unwrap();
        let bound = gr.set_product(&alg.support(&f, 0.0).unwrap(), &alg.support(&g, 0.0).unwrap());
        prop_assert!(alg.support(&fg, 1e-12).unwrap().is_subset(&bound));
    }

    #[test]
    fn expectation_laws((i, cocycle, [f, g, _]) in case()) {
        let gr = &corpus()[i].1;
        let alg = ConvolutionAlgebra::twisted(gr, &cocycle).unwrap();
        let e = |x: &AlgebraElement| alg.expectation(x).unwrap();
        prop_assert_eq!(e(&e(&f)), e(&f));
        // bimodule property over the unit algebra
        let h = e(&g);
        prop_assert!(close(&e(&alg.convolve(&h, &f).unwrap()), &alg.convolve(&h, &e(&f)).unwrap()));
        prop_assert!(close(&e(&alg.convolve(&f, &h).unwrap()), &alg.convolve(&e(&f), &h).unwrap()));
        // positivity
        let ff = e(&alg.convolve(&alg.involute(&f).unwrap(), &f).unwrap());
        for &x in gr.units() {
            prop_assert!(ff.get(x).re >= -1e-12 && ff.get(x).im.abs() < 1e-9);
        }
        prop_assert!(e(&f).sup_norm() <= alg.reduced_norm(&f).unwrap() + 1e-9);
    }

    #[test]
    fn unimodular_multiples_of_point_masses_are_normalisers(
        (i, cocycle, _) in case(),
        arrow in any::<prop::sample::Index>(),
        angle in 0.0f64..std::f64::consts::TAU,
    ) {
        let gr = &corpus()[i].1;
        let alg = ConvolutionAlgebra::twisted(gr, &cocycle).unwrap();
        let a = ArrowId(arrow.index(gr.len()));
        let n = alg.point_mass(a).scale(Complex64::from_polar(1.0, angle));
        prop_assert!(alg.is_normaliser(&n, 1e-10).unwrap().is_normaliser);
    }

    #[test]
    fn klein_twist_cstar_identity(f in element(4), g in element(4)) {
        let (gr, c) = klein();
        let alg = ConvolutionAlgebra::twisted(gr, c).unwrap();
        let fg_star = alg.involute(&alg.convolve(&f, &g).unwrap()).unwrap();
        let gs_fs = alg.convolve(&alg.involute(&g).unwrap(), &alg.involute(&f).unwrap()).unwrap();
        prop_assert!(close(&fg_star, &gs_fs));
        let ff = alg.convolve(&alg.involute(&f).unwrap(), &f).unwrap();
        let norm = alg.reduced_norm(&f).unwrap();
        prop_assert!((alg.reduced_norm(&ff).unwrap() - norm * norm).abs() < 1e-8 * (1.0 + norm * norm));
    }
}

#[test]
fn commutant_dimension_counts_isotropy() {
    for (name, g) in corpus() {
        let alg = ConvolutionAlgebra::new(g);
        assert_eq!(alg.commutant_dimension(), g.isotropy().len(), "{name}");
    }
}

#[test]
fn masa_iff_effective_on_corpus() {
    for (name, g) in corpus() {
        let report = ConvolutionAlgebra::new(g).cartan_check();
        assert_eq!(report.masa, g.is_effective(), "{name}");
        assert!(
            report.normaliser_span_full && report.expectation_faithful,
            "{name}"
        );
    }
}

#[test]
fn corpus_shape() {
    let corpus = corpus();
    assert!(corpus.len() >= 20);
    assert!(corpus
        .iter()
        .all(|(_, g)| g.len() <= 60 && g.validate().is_valid()));
    assert!(corpus.iter().any(|(_, g)| g.is_effective()));
    assert!(corpus.iter().any(|(_, g)| !g.is_effective()));
}
