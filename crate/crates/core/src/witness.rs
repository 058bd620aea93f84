//! Normalisers with non-bisection support on non-effective groupoids.
//!
//! Given a non-unit isotropy arrow `γ` of order `N`, pick the smallest prime
//! `p | N` and put `c = N / p`. The powers `γ^{cℓ}` form a cyclic group of
//! order `p` at the unit `s(γ)`, and the Gauss normaliser of `ℤ/p` extended
//! by zero along it is a normaliser of the unit algebra whose support
//! contains both `s(γ)` and `γ^c`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, ConvolutionAlgebra, DEFAULT_SUPPORT_TOL};
use crate::cocycle::{turns_to_complex, Cocycle, Turns};
use crate::cyclotomic::{embed_along, gauss_normaliser, CyclotomicError};
use crate::groupoid::{ArrowId, ArrowSet, FiniteGroupoid, GroupoidError};
use crate::Complex64;

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("order {0} has no prime factor")]
    NoPrimeFactor(usize),
    #[error("`{0}` is not a non-unit isotropy arrow")]
    NotTorsion(String),
    #[error("γ^c is a unit or γ^(cp) is not")]
    BadCofactor,
    #[error(
        "powers of `{gamma}` repeat before p = {p}; the subgroup is not cyclic of prime order"
    )]
    NotDistinct { gamma: String, p: usize },
    #[error("certificate failed: residual {residual:e}, bisection {bisection}")]
    CertificateFailed { residual: f64, bisection: bool },
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

/// Independent evidence that a witness does what it claims.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub normaliser_residual: f64,
    pub support: ArrowSet,
    pub bisection: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub gamma: ArrowId,
    pub order: usize,
    pub prime: usize,
    pub cofactor: usize,
    /// `{γ^{cℓ} : ℓ = 0..p}`.
    pub subgroup: ArrowSet,
    pub element: AlgebraElement,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessOutcome {
    Effective,
    Found(Box<Witness>),
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            WitnessOutcome::Effective => None,
            WitnessOutcome::Found(w) => Some(w),
        }
    }
}

/// The first non-unit isotropy arrow in id order, with its order.
/// Every arrow of a finite groupoid has finite order, so the infinite-order
/// case never occurs here.
pub fn find_torsion_isotropy(g: &FiniteGroupoid) -> Option<(ArrowId, usize)> {
    let gamma = g.isotropy().iter().find(|&a| !g.is_unit(a))?;
    let order = g.element_order(gamma).expect("isotropy arrow");
    Some((gamma, order))
}

/// Smallest prime `p | n` and `n / p`.
pub fn prime_power_step(n: usize) -> Result<(usize, usize), WitnessError> {
    if n <= 1 {
        return Err(WitnessError::NoPrimeFactor(n));
    }
    let p = (2..=n)
        .find(|d| n.is_multiple_of(*d))
        .expect("n divides itself");
    Ok((p, n / p))
}

/// `{γ^{cℓ} : ℓ = 0..p}`, checked to have exactly `p` elements.
pub fn build_subgroup(
    g: &FiniteGroupoid,
    gamma: ArrowId,
    c: usize,
    p: usize,
) -> Result<ArrowSet, WitnessError> {
    if g.rng(gamma) != g.src(gamma) || g.is_unit(gamma) {
        return Err(WitnessError::NotTorsion(g.name(gamma).into()));
    }
    let generator = g.power(gamma, c)?;
    if g.is_unit(generator) || !g.is_unit(g.power(generator, p)?) {
        return Err(WitnessError::BadCofactor);
    }
    let mut subgroup = ArrowSet::new();
    for l in 0..p {
        if !subgroup.insert(g.power(generator, l)?) {
            return Err(WitnessError::NotDistinct {
                gamma: g.name(gamma).into(),
                p,
            });
        }
    }
    Ok(subgroup)
}

/// Builds and certifies a witness, or reports that `g` is effective.
pub fn build_witness(g: &FiniteGroupoid) -> Result<WitnessOutcome, WitnessError> {
    build_witness_in(&ConvolutionAlgebra::new(g))
}

/// As [`build_witness`], for the algebra twisted by `cocycle`.
///
/// On the cyclic subgroup `R = ⟨h⟩` of order `p` every cocycle is the
/// coboundary of `t(h^ℓ) = ℓ s − Σ_{j<ℓ} σ(h^j, h)` with
/// `s = (1/p) Σ_{j<p} σ(h^j, h)`, and `f ↦ e^{2πi t} f` identifies the
/// twisted and untwisted algebras of `R`. The witness is the Gauss element
/// pulled back along that identification.
pub fn build_twisted_witness(
    g: &FiniteGroupoid,
    cocycle: &Cocycle,
) -> Result<WitnessOutcome, WitnessError> {
    build_witness_in(&ConvolutionAlgebra::twisted(g, cocycle)?)
}

fn build_witness_in(alg: &ConvolutionAlgebra<'_>) -> Result<WitnessOutcome, WitnessError> {
    let g = alg.groupoid();
    let Some((gamma, order)) = find_torsion_isotropy(g) else {
        return Ok(WitnessOutcome::Effective);
    };
    let (prime, cofactor) = prime_power_step(order)?;
    let subgroup = build_subgroup(g, gamma, cofactor, prime)?;
    let generator = g.power(gamma, cofactor)?;
    let n = gauss_normaliser(prime as u64)?;
    let mut element = embed_along(&n, g, generator)?;
    if let Some(cocycle) = alg.twist() {
        let potential = cyclic_potential(g, cocycle, generator, prime)?;
        for (arrow, t) in potential {
            element.set(arrow, element.get(arrow) * turns_to_complex(-t));
        }
    }

    let certificate = certify_in(alg, &element)?;
    if certificate.normaliser_residual >= DEFAULT_SUPPORT_TOL || certificate.bisection {
        return Err(WitnessError::CertificateFailed {
            residual: certificate.normaliser_residual,
            bisection: certificate.bisection,
        });
    }
    Ok(WitnessOutcome::Found(Box::new(Witness {
        gamma,
        order,
        prime,
        cofactor,
        subgroup,
        element,
        certificate,
    })))
}

fn cyclic_potential(
    g: &FiniteGroupoid,
    cocycle: &Cocycle,
    h: ArrowId,
    p: usize,
) -> Result<Vec<(ArrowId, Turns)>, WitnessError> {
    let powers: Vec<ArrowId> = (0..p).map(|l| g.power(h, l)).collect::<Result<_, _>>()?;
    let total: Turns = powers.iter().map(|&a| cocycle.phase(a, h)).sum();
    let s = total / Turns::from_integer(p as i64);
    let mut t = Turns::from_integer(0);
    let mut out = Vec::with_capacity(p);
    for (l, &a) in powers.iter().enumerate() {
        out.push((a, t));
        if l + 1 < p {
            t = t + s - cocycle.phase(a, h);
        }
    }
    Ok(out)
}

/// Recomputes residual, support and the bisection test for `m`.
pub fn certify(g: &FiniteGroupoid, m: &AlgebraElement) -> Result<Certificate, WitnessError> {
    certify_in(&ConvolutionAlgebra::new(g), m)
}

/// As [`certify`], in a possibly twisted algebra.
pub fn certify_in(
    alg: &ConvolutionAlgebra<'_>,
    m: &AlgebraElement,
) -> Result<Certificate, WitnessError> {
    let g = alg.groupoid();
    let check = alg.is_normaliser(m, DEFAULT_SUPPORT_TOL)?;
    let support = alg.support(m, DEFAULT_SUPPORT_TOL)?;
    Ok(Certificate {
        normaliser_residual: check.residual,
        bisection: g.is_bisection(&support),
        support,
    })
}

/// Outcome of [`bisection_sampling_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingReport {
    pub candidates: usize,
    pub normalisers: usize,
    /// Normalisers whose support is not a bisection.
    pub counterexamples: usize,
}

/// A random bisection, grown greedily from a shuffled arrow list.
pub fn random_bisection(g: &FiniteGroupoid, rng: &mut impl Rng) -> ArrowSet {
    let mut arrows: Vec<ArrowId> = g.arrows().collect();
    arrows.shuffle(rng);
    let target = rng.random_range(1..=g.units().len().max(1));
    let mut out = ArrowSet::new();
    let (mut ranges, mut sources) = (ArrowSet::new(), ArrowSet::new());
    for a in arrows {
        if out.len() == target {
            break;
        }
        if !ranges.contains(g.rng(a)) && !sources.contains(g.src(a)) {
            ranges.insert(g.rng(a));
            sources.insert(g.src(a));
            out.insert(a);
        }
    }
    out
}

/// Samples `Σ λ_B 1_B` over one to three random bisections `B`, with
/// `λ_B` drawn from a small set so that cancellations and overlaps occur,
/// and counts verified normalisers whose support is not a bisection.
pub fn bisection_sampling_check(g: &FiniteGroupoid, samples: usize, seed: u64) -> SamplingReport {
    const WEIGHTS: [Complex64; 6] = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.5, -0.5),
        Complex64::new(-2.0, 1.0),
    ];
    let alg = ConvolutionAlgebra::new(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SamplingReport {
        candidates: 0,
        normalisers: 0,
        counterexamples: 0,
    };
    for _ in 0..samples {
        let mut f = alg.zero();
        for _ in 0..rng.random_range(1..=3) {
            let b = random_bisection(g, &mut rng);
            let lambda = WEIGHTS[rng.random_range(0..WEIGHTS.len())];
            f = &f + &AlgebraElement::indicator(g.len(), &b).scale(lambda);
        }
        report.candidates += 1;
        let check = alg
            .is_normaliser(&f, DEFAULT_SUPPORT_TOL)
            .expect("same algebra");
        if check.is_normaliser {
            report.normalisers += 1;
            let support = alg
                .support(&f, DEFAULT_SUPPORT_TOL)
                .expect("valid tolerance");
            if !g.is_bisection(&support) {
                report.counterexamples += 1;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        cyclic_group, group_bundle, group_groupoid, pair_groupoid, FiniteGroup,
    };

    #[test]
    fn torsion_search() {
        let g = cyclic_group(2);
        assert_eq!(find_torsion_isotropy(&g), Some((g.id("g").unwrap(), 2)));
        assert_eq!(find_torsion_isotropy(&pair_groupoid(3)), None);
        let b = group_bundle(&FiniteGroup::cyclic(6), 2);
        let (gamma, n) = find_torsion_isotropy(&b).unwrap();
        assert_eq!(n, b.element_order(gamma).unwrap());
        assert!(!b.is_unit(gamma));
    }

    #[test]
    fn prime_steps() {
        assert_eq!(prime_power_step(6).unwrap(), (2, 3));
        assert_eq!(prime_power_step(2).unwrap(), (2, 1));
        assert_eq!(prime_power_step(9).unwrap(), (3, 3));
        assert_eq!(prime_power_step(35).unwrap(), (5, 7));
        assert!(prime_power_step(1).is_err());
        assert!(prime_power_step(0).is_err());
    }

    #[test]
    fn subgroups() {
        let g = cyclic_group(2);
        let r = build_subgroup(&g, g.id("g").unwrap(), 1, 2).unwrap();
        assert_eq!(r.len(), 2);

        let g = cyclic_group(6);
        let r = build_subgroup(&g, g.id("g").unwrap(), 3, 2).unwrap();
        let names: Vec<&str> = r.iter().map(|a| g.name(a)).collect();
        assert_eq!(names, vec!["e", "g^3"]);

        let g = cyclic_group(9);
        let r = build_subgroup(&g, g.id("g").unwrap(), 3, 3).unwrap();
        let mut names: Vec<&str> = r.iter().map(|a| g.name(a)).collect();
        names.sort();
        assert_eq!(names, vec!["e", "g^3", "g^6"]);

        assert!(matches!(
            build_subgroup(&g, g.id("g").unwrap(), 9, 1),
            Err(WitnessError::BadCofactor)
        ));
        assert!(matches!(
            build_subgroup(&g, g.id("e").unwrap(), 1, 3),
            Err(WitnessError::NotTorsion(_))
        ));
    }

    #[test]
    fn z2_witness_is_the_gauss_element() {
        let g = cyclic_group(2);
        let w = build_witness(&g).unwrap();
        let w = w.witness().unwrap();
        assert_eq!((w.order, w.prime, w.cofactor), (2, 2, 1));
        assert_eq!(w.element.get(g.id("e").unwrap()), Complex64::new(1.0, 0.0));
        assert_eq!(w.element.get(g.id("g").unwrap()), Complex64::new(0.0, -1.0));
        assert_eq!(w.certificate.normaliser_residual, 0.0);
        assert_eq!(w.certificate.support.len(), 2);
        assert!(!w.certificate.bisection);
    }

    #[test]
    fn bundle_witness_lives_on_one_fibre() {
        let g = group_bundle(&FiniteGroup::cyclic(3), 2);
        let w = build_witness(&g).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(w.certificate.support.len(), 3);
        let unit = g.src(w.gamma);
        assert!(w
            .certificate
            .support
            .iter()
            .all(|a| g.src(a) == unit && g.rng(a) == unit));
        assert_eq!(w.certificate.support, w.subgroup);
    }

    #[test]
    fn z6_bundle_uses_p2() {
        let g = group_bundle(&FiniteGroup::cyclic(6), 2);
        let w = build_witness(&g).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(w.prime, 2);
        assert_eq!(w.certificate.support.len(), 2);
    }

    #[test]
    fn twisted_witnesses_are_certified() {
        let g = cyclic_group(4);
        let potential: Vec<Turns> = g.arrows().map(|a| Turns::new(a.0 as i64, 5)).collect();
        let coboundary = Cocycle::coboundary(&g, &potential);
        let outcome = build_twisted_witness(&g, &coboundary).unwrap();
        let w = outcome.witness().unwrap();
        assert!(w.certificate.normaliser_residual < 1e-10);
        assert_ne!(
            w.element,
            build_witness(&g).unwrap().witness().unwrap().element
        );

        // non-trivial class on the Klein group
        let k = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let g = group_groupoid(&k);
        let sigma =
            Cocycle::from_fn(&g, |a, b| Turns::new(((a.0 / 2) * (b.0 % 2)) as i64, 2)).unwrap();
        let outcome = build_twisted_witness(&g, &sigma).unwrap();
        let w = outcome.witness().unwrap();
        assert!(w.certificate.normaliser_residual < 1e-10 && !w.certificate.bisection);
    }

    #[test]
    fn principal_groupoids_are_effective() {
        assert_eq!(
            build_witness(&pair_groupoid(2)).unwrap(),
            WitnessOutcome::Effective
        );
    }

    #[test]
    fn witness_norm_is_sqrt_p() {
        for n in [2, 3, 5, 6, 9] {
            let g = cyclic_group(n);
            let outcome = build_witness(&g).unwrap();
            let w = outcome.witness().unwrap();
            let norm = ConvolutionAlgebra::new(&g)
                .reduced_norm(&w.element)
                .unwrap();
            assert!((norm - (w.prime as f64).sqrt()).abs() < 1e-8, "n = {n}");
        }
    }

    #[test]
    fn random_bisections_are_bisections() {
        let g = pair_groupoid(4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let b = random_bisection(&g, &mut rng);
            assert!(!b.is_empty() && g.is_bisection(&b));
        }
    }

    #[test]
    fn sampling_on_principal_groupoid_finds_no_counterexample() {
        let report = bisection_sampling_check(&pair_groupoid(3), 300, 7);
        assert_eq!(report.counterexamples, 0);
        assert!(report.normalisers > 0);
    }

    #[test]
    fn sampling_on_group_can_find_counterexamples() {
        // two disjoint bisections of ℤ/2 give δ_e ± δ_g, a non-bisection normaliser
        let report = bisection_sampling_check(&cyclic_group(2), 300, 7);
        assert!(report.counterexamples > 0);
    }
}
