//! The convolution *-algebra of a finite groupoid, optionally twisted by a
//! normalised 2-cocycle.
//!
//! Elements are finitely supported functions on arrows, stored densely. Every
//! element already lies in the reduced C*-algebra, so the map `j` to
//! functions on the groupoid is the identity, and the unit-supported
//! functions play the role of `C_0(G⁰)`.
//!
//! With a twist `σ` the product and involution are
//!
//! ```text
//! (f * g)(γ) = Σ_{η ∈ G^{r(γ)}} σ(η, η⁻¹γ) f(η) g(η⁻¹γ)
//! f*(γ)      = conj(σ(γ, γ⁻¹)) conj(f(γ⁻¹))
//! ```

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cocycle::Cocycle;
use crate::groupoid::{ArrowId, ArrowSet, FiniteGroupoid};

/// Default threshold below which a coefficient counts as zero.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-10;

/// Rank threshold for the commutation system; its entries are sums of
/// unit-modulus numbers, so genuine pivots are far above this.
const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("element has {found} coefficients but the groupoid has {expected} arrows")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("arrow {0} is not a unit")]
    NotAUnit(ArrowId),
    #[error("support of the element is not a bisection")]
    SupportNotBisection,
    #[error("support tolerance must be non-negative, got {0}")]
    NegativeTolerance(f64),
}

/// A complex function on the arrows of a finite groupoid.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    coeffs: Vec<Complex64>,
}

impl AlgebraElement {
    pub fn zero(arrows: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); arrows],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn point_mass(arrows: usize, a: ArrowId) -> Self {
        let mut f = Self::zero(arrows);
        f.coeffs[a.0] = Complex64::new(1.0, 0.0);
        f
    }

    /// `1_S`, the indicator function of an arrow set.
    pub fn indicator(arrows: usize, set: &ArrowSet) -> Self {
        let mut f = Self::zero(arrows);
        for a in set {
            f.coeffs[a.0] = Complex64::new(1.0, 0.0);
        }
        f
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, a: ArrowId) -> Complex64 {
        self.coeffs[a.0]
    }

    pub fn set(&mut self, a: ArrowId, value: Complex64) {
        self.coeffs[a.0] = value;
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Pointwise product, the multiplication of `C_0(G⁰)` on unit-supported elements.
    pub fn pointwise(&self, other: &Self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    /// Largest coefficient modulus.
    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).sup_norm()
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.len(), rhs.len());
        AlgebraElement::from_coeffs(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.len(), rhs.len());
        AlgebraElement::from_coeffs(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Mul<Complex64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Complex64) -> AlgebraElement {
        self.scale(rhs)
    }
}

/// Matrix of `π_x(f)` on `ℓ²(G_x)` in the basis of the source fibre.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix {
    pub unit: ArrowId,
    pub basis: Vec<ArrowId>,
    pub entries: DMatrix<Complex64>,
}

impl RepMatrix {
    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        if self.basis.is_empty() {
            return 0.0;
        }
        self.entries
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormaliserCheck {
    pub is_normaliser: bool,
    /// Largest off-unit coefficient of `n δ_x n*` or `n* δ_x n` over all units `x`.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanReport {
    pub masa: bool,
    pub normaliser_span_full: bool,
    pub expectation_faithful: bool,
}

/// Unit-supported projections `f_k` approximating the identity on the
/// support of `E(n)` for a bisection-supported normaliser `n`.
///
/// `f_k` is the indicator of `{x : |E(n)(x)| ≥ 1/k}`. This set sits between
/// `{|E(n)| > 1/k}` and `{|E(n)| > 1/(k+1)}` and is clopen in the discrete
/// unit space, so `f_k` is a projection.
#[derive(Clone, Debug, PartialEq)]
pub struct FkSequence {
    pub expectation: AlgebraElement,
    /// `f_1, …, f_K`.
    pub projections: Vec<AlgebraElement>,
    /// The first `K` with `f_K E(n) = E(n)`, namely `⌈1 / min |E(n)|⌉` over the
    /// support of `E(n)`, or 1 when `E(n)` vanishes.
    pub stabilises_at: usize,
    /// `f_k n = f_k E(n) = E(n) f_k = n f_k` for every listed `k`, compared exactly.
    pub equalities_hold: bool,
    /// `f_k * f_k = f_k = f_k*` for every listed `k`, compared exactly.
    pub projections_valid: bool,
    /// `f_K E(n) = E(n)` up to the support tolerance.
    pub converged: bool,
    tol: f64,
}

impl FkSequence {
    /// `f_k` for any `k >= 1`; agrees with `projections[k - 1]` where listed.
    pub fn projection(&self, k: usize) -> AlgebraElement {
        assert!(k >= 1);
        level_set(&self.expectation, k, self.tol)
    }
}

fn level_set(expectation: &AlgebraElement, k: usize, tol: f64) -> AlgebraElement {
    let threshold = 1.0 / k as f64;
    AlgebraElement::from_coeffs(
        expectation
            .coeffs()
            .iter()
            .map(|c| {
                let m = c.norm();
                if m > tol && m >= threshold {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect(),
    )
}

/// The convolution algebra of a finite groupoid with an optional twist.
#[derive(Clone, Debug)]
pub struct ConvolutionAlgebra<'g> {
    groupoid: &'g FiniteGroupoid,
    twist: Option<&'g Cocycle>,
    // range_fibres[x] = G^x for units x, empty otherwise
    range_fibres: Vec<Vec<ArrowId>>,
}

impl<'g> ConvolutionAlgebra<'g> {
    pub fn new(groupoid: &'g FiniteGroupoid) -> Self {
        let mut range_fibres = vec![Vec::new(); groupoid.len()];
        for a in groupoid.arrows() {
            range_fibres[groupoid.rng(a).0].push(a);
        }
        Self {
            groupoid,
            twist: None,
            range_fibres,
        }
    }

    pub fn twisted(groupoid: &'g FiniteGroupoid, twist: &'g Cocycle) -> Result<Self, AlgebraError> {
        if twist.arrows() != groupoid.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: groupoid.len(),
                found: twist.arrows(),
            });
        }
        let mut alg = Self::new(groupoid);
        alg.twist = Some(twist);
        Ok(alg)
    }

    pub fn groupoid(&self) -> &'g FiniteGroupoid {
        self.groupoid
    }

    pub fn twist(&self) -> Option<&'g Cocycle> {
        self.twist
    }

    pub fn dim(&self) -> usize {
        self.groupoid.len()
    }

    fn sigma(&self, a: ArrowId, b: ArrowId) -> Complex64 {
        match self.twist {
            Some(c) => c.value(a, b),
            None => Complex64::new(1.0, 0.0),
        }
    }

    fn check(&self, f: &AlgebraElement) -> Result<(), AlgebraError> {
        if f.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: f.len(),
            });
        }
        Ok(())
    }

    fn check_unit(&self, x: ArrowId) -> Result<(), AlgebraError> {
        if x.0 >= self.dim() || !self.groupoid.is_unit(x) {
            return Err(AlgebraError::NotAUnit(x));
        }
        Ok(())
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.dim())
    }

    pub fn point_mass(&self, a: ArrowId) -> AlgebraElement {
        AlgebraElement::point_mass(self.dim(), a)
    }

    pub fn convolve(
        &self,
        f: &AlgebraElement,
        g: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check(f)?;
        self.check(g)?;
        let gr = self.groupoid;
        let mut out = self.zero();
        for gamma in gr.arrows() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &eta in &self.range_fibres[gr.rng(gamma).0] {
                let fe = f.get(eta);
                if fe == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let rest = gr
                    .compose(gr.inv(eta), gamma)
                    .expect("η⁻¹γ is composable when r(η) = r(γ)");
                acc += self.sigma(eta, rest) * fe * g.get(rest);
            }
            out.set(gamma, acc);
        }
        Ok(out)
    }

    pub fn involute(&self, f: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(f)?;
        let gr = self.groupoid;
        let mut out = self.zero();
        for gamma in gr.arrows() {
            let inv = gr.inv(gamma);
            out.set(gamma, self.sigma(gamma, inv).conj() * f.get(inv).conj());
        }
        Ok(out)
    }

    /// Left convolution by `f` on the source fibre of `x`.
    pub fn regular_rep(&self, f: &AlgebraElement, x: ArrowId) -> Result<RepMatrix, AlgebraError> {
        self.check(f)?;
        self.check_unit(x)?;
        let gr = self.groupoid;
        let basis = gr.source_fibre(x);
        let n = basis.len();
        let entries = DMatrix::from_fn(n, n, |i, j| {
            let (gamma, beta) = (basis[i], basis[j]);
            // (f * ξ)(γ) picks up f(γβ⁻¹) σ(γβ⁻¹, β) ξ(β)
            let eta = gr
                .compose(gamma, gr.inv(beta))
                .expect("arrows in one source fibre compose with inverses");
            f.get(eta) * self.sigma(eta, beta)
        });
        Ok(RepMatrix {
            unit: x,
            basis,
            entries,
        })
    }

    /// `sup_x ‖π_x(f)‖`.
    pub fn reduced_norm(&self, f: &AlgebraElement) -> Result<f64, AlgebraError> {
        self.check(f)?;
        let mut norm: f64 = 0.0;
        for &x in self.groupoid.units() {
            norm = norm.max(self.regular_rep(f, x)?.operator_norm());
        }
        Ok(norm)
    }

    /// Restriction to the units.
    pub fn expectation(&self, f: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(f)?;
        let mut out = self.zero();
        for &x in self.groupoid.units() {
            out.set(x, f.get(x));
        }
        Ok(out)
    }

    /// Arrows where `|f| > tol`.
    pub fn support(&self, f: &AlgebraElement, tol: f64) -> Result<ArrowSet, AlgebraError> {
        self.check(f)?;
        if tol.is_nan() || tol < 0.0 {
            return Err(AlgebraError::NegativeTolerance(tol));
        }
        Ok(self
            .groupoid
            .arrows()
            .filter(|&a| f.get(a).norm() > tol)
            .collect())
    }

    /// Tests `n δ_x n* ∈ C_0(G⁰)` and `n* δ_x n ∈ C_0(G⁰)` for every unit `x`.
    /// The point masses at units span the unit algebra, so this is the
    /// normaliser condition.
    pub fn is_normaliser(
        &self,
        n: &AlgebraElement,
        tol: f64,
    ) -> Result<NormaliserCheck, AlgebraError> {
        self.check(n)?;
        if tol.is_nan() || tol < 0.0 {
            return Err(AlgebraError::NegativeTolerance(tol));
        }
        let n_star = self.involute(n)?;
        let mut residual: f64 = 0.0;
        for &x in self.groupoid.units() {
            let dx = self.point_mass(x);
            let left = self.convolve(&self.convolve(n, &dx)?, &n_star)?;
            let right = self.convolve(&self.convolve(&n_star, &dx)?, n)?;
            for a in self
                .groupoid
                .arrows()
                .filter(|&a| !self.groupoid.is_unit(a))
            {
                residual = residual.max(left.get(a).norm()).max(right.get(a).norm());
            }
        }
        Ok(NormaliserCheck {
            is_normaliser: residual <= tol,
            residual,
        })
    }

    /// Dimension of the commutant of the unit algebra, from the linear system
    /// `f * δ_x − δ_x * f = 0` for all units `x`.
    pub fn commutant_dimension(&self) -> usize {
        let n = self.dim();
        let units = self.groupoid.units();
        if n == 0 {
            return 0;
        }
        let mut system = DMatrix::<Complex64>::zeros(n * units.len(), n);
        for col in self.groupoid.arrows() {
            let basis = self.point_mass(col);
            for (block, &x) in units.iter().enumerate() {
                let dx = self.point_mass(x);
                let lhs = self.convolve(&basis, &dx).expect("same algebra");
                let rhs = self.convolve(&dx, &basis).expect("same algebra");
                for row in self.groupoid.arrows() {
                    system[(block * n + row.0, col.0)] = lhs.get(row) - rhs.get(row);
                }
            }
        }
        n - system.rank(RANK_TOL)
    }

    pub fn cartan_check(&self) -> CartanReport {
        let masa = self.commutant_dimension() == self.groupoid.units().len();
        let normaliser_span_full = self.groupoid.arrows().all(|a| {
            self.is_normaliser(&self.point_mass(a), DEFAULT_SUPPORT_TOL)
                .map(|c| c.is_normaliser)
                .unwrap_or(false)
        });
        CartanReport {
            masa,
            normaliser_span_full,
            expectation_faithful: self.expectation_is_faithful(),
        }
    }

    /// Checks `E(f* f)(x) = Σ_{γ ∈ G_x} |f(γ)|²` on point masses and on a
    /// fixed batch of pseudo-random elements, and that `E(f* f) ≠ 0` for each.
    fn expectation_is_faithful(&self) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let mut samples: Vec<AlgebraElement> =
            self.groupoid.arrows().map(|a| self.point_mass(a)).collect();
        for _ in 0..16 {
            samples.push(AlgebraElement::from_coeffs(
                (0..self.dim())
                    .map(|_| {
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    })
                    .collect(),
            ));
        }
        samples.iter().all(|f| self.faithful_on(f))
    }

    fn faithful_on(&self, f: &AlgebraElement) -> bool {
        let gr = self.groupoid;
        let Ok(ff) = self.involute(f).and_then(|fs| self.convolve(&fs, f)) else {
            return false;
        };
        let Ok(e) = self.expectation(&ff) else {
            return false;
        };
        let mut total = 0.0;
        for &x in gr.units() {
            let expected: f64 = gr
                .source_fibre(x)
                .iter()
                .map(|&a| f.get(a).norm_sqr())
                .sum();
            let got = e.get(x);
            if (got.re - expected).abs() > 1e-10 * (1.0 + expected)
                || got.im.abs() > 1e-10 * (1.0 + expected)
            {
                return false;
            }
            total += got.re;
        }
        f.is_zero() || total > 0.0
    }

    /// Projections `f_k` implementing the conditional expectation on a
    /// normaliser whose support (at `tol`) is a bisection.
    pub fn build_fk_sequence(
        &self,
        n: &AlgebraElement,
        tol: f64,
    ) -> Result<FkSequence, AlgebraError> {
        let support = self.support(n, tol)?;
        if !self.groupoid.is_bisection(&support) {
            return Err(AlgebraError::SupportNotBisection);
        }
        let expectation = self.expectation(n)?;
        let min_mod = expectation
            .coeffs()
            .iter()
            .map(|c| c.norm())
            .filter(|&m| m > tol)
            .fold(f64::INFINITY, f64::min);
        let stabilises_at = if min_mod.is_finite() {
            // smallest k with 1/k <= min_mod
            let mut k = (1.0 / min_mod).ceil().max(1.0) as usize;
            while k > 1 && 1.0 / ((k - 1) as f64) <= min_mod {
                k -= 1;
            }
            while 1.0 / (k as f64) > min_mod {
                k += 1;
            }
            k
        } else {
            1
        };

        let projections: Vec<AlgebraElement> = (1..=stabilises_at)
            .map(|k| level_set(&expectation, k, tol))
            .collect();

        let mut equalities_hold = true;
        let mut projections_valid = true;
        for fk in &projections {
            let left = self.convolve(fk, n)?;
            let right = self.convolve(n, fk)?;
            let fe = fk.pointwise(&expectation);
            let ef = expectation.pointwise(fk);
            equalities_hold &= left == fe && fe == ef && ef == right;
            projections_valid &= self.convolve(fk, fk)? == *fk && self.involute(fk)? == *fk;
        }
        let last = projections.last().expect("at least one projection");
        let converged = last.pointwise(&expectation).max_abs_diff(&expectation) <= tol;

        Ok(FkSequence {
            expectation,
            projections,
            stabilises_at,
            equalities_hold,
            projections_valid,
            converged,
            tol,
        })
    }
}
