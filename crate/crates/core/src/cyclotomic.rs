//! Exact normalisers of the scalars in the group algebra of `ℤ/p`.
//!
//! For odd `p` the element `n = Σ_k ζ^{k²} δ_k` satisfies `n n* = n* n = p δ_0`,
//! and for `p = 2` the element `δ_0 − i δ_1` does the same with `2 δ_0`. Both
//! have full support, so their support is not a bisection.
//!
//! Coefficients live in `ℤ[ζ_q]` with `q = p` for odd `p` and `q = 4` for
//! `p = 2`. They are stored as integer vectors over the exponents `0..q`;
//! comparisons reduce by `1 + ζ + … + ζ^{q−1} = 0` (prime `q`) or `ζ² = −1`
//! (`q = 4`), which are the only relations among those vectors.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::AlgebraElement;
use crate::cocycle::{turns_to_complex, Turns};
use crate::groupoid::{ArrowId, FiniteGroupoid};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("root-of-unity order {0} is not supported; use 4 or a prime")]
    UnsupportedOrder(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `ζ^exponent` with `ζ = exp(2πi / order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: usize,
    exponent: usize,
}

impl RootOfUnity {
    pub fn new(order: usize, exponent: i64) -> Self {
        assert!(order >= 1);
        Self {
            order,
            exponent: exponent.rem_euclid(order as i64) as usize,
        }
    }

    pub fn order(self) -> usize {
        self.order
    }

    pub fn exponent(self) -> usize {
        self.exponent
    }

    pub fn inverse(self) -> Self {
        Self::new(self.order, -(self.exponent as i64))
    }

    pub fn to_complex(self) -> Complex64 {
        turns_to_complex(Turns::new(self.exponent as i64, self.order as i64))
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        assert_eq!(self.order, rhs.order);
        RootOfUnity::new(self.order, (self.exponent + rhs.exponent) as i64)
    }
}

/// An element `Σ_e c_e ζ^e` of `ℤ[ζ_q]`.
#[derive(Clone, Debug, Eq)]
pub struct CyclotomicInteger {
    order: usize,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(order: usize) -> Result<Self, CyclotomicError> {
        if order != 4 && !is_prime(order as u64) {
            return Err(CyclotomicError::UnsupportedOrder(order));
        }
        Ok(Self {
            order,
            coeffs: vec![0; order],
        })
    }

    fn zero_like(&self) -> Self {
        Self {
            order: self.order,
            coeffs: vec![0; self.order],
        }
    }

    pub fn integer(order: usize, value: i64) -> Result<Self, CyclotomicError> {
        let mut z = Self::zero(order)?;
        z.coeffs[0] = value;
        Ok(z)
    }

    pub fn root(root: RootOfUnity) -> Result<Self, CyclotomicError> {
        let mut z = Self::zero(root.order)?;
        z.coeffs[root.exponent] = 1;
        Ok(z)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Raw coefficients over the exponents `0..order`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Sum of all `order`-th roots of unity.
    pub fn sum_of_roots(order: usize) -> Result<Self, CyclotomicError> {
        let mut z = Self::zero(order)?;
        z.coeffs.iter_mut().for_each(|c| *c = 1);
        Ok(z)
    }

    /// Unique representative: for prime `q` the coefficient of `ζ^{q−1}` is
    /// cleared using the sum-of-roots relation; for `q = 4` only `1` and `i` remain.
    pub fn canonical(&self) -> Vec<i64> {
        let q = self.order;
        if q == 4 {
            let c = &self.coeffs;
            vec![c[0] - c[2], c[1] - c[3], 0, 0]
        } else {
            let last = self.coeffs[q - 1];
            self.coeffs.iter().map(|c| c - last).collect()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(|&c| c == 0)
    }

    /// The rational integer this equals, if any.
    pub fn as_integer(&self) -> Option<i64> {
        let canon = self.canonical();
        canon[1..].iter().all(|&c| c == 0).then_some(canon[0])
    }

    pub fn conj(&self) -> Self {
        let q = self.order;
        let mut out = self.zero_like();
        for (e, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[(q - e) % q] += c;
        }
        out
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| RootOfUnity::new(self.order, e as i64).to_complex() * c as f64)
            .sum()
    }
}

impl PartialEq for CyclotomicInteger {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.canonical() == other.canonical()
    }
}

impl std::ops::Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        assert_eq!(self.order, rhs.order);
        CyclotomicInteger {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        assert_eq!(self.order, rhs.order);
        let q = self.order;
        let mut out = self.zero_like();
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in rhs.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                out.coeffs[(i + j) % q] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (coeffs, symbol) = if self.order == 4 {
            (self.canonical(), "i")
        } else {
            (self.coeffs.clone(), "ζ")
        };
        let mut terms = Vec::new();
        for (e, &c) in coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let root = match e {
                0 => String::new(),
                1 => symbol.to_string(),
                _ => format!("{symbol}^{e}"),
            };
            let term = match (c, root.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => root,
                (-1, false) => format!("-{root}"),
                _ => format!("{c}{root}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// A function `ℤ/p → ℤ[ζ_q]`, i.e. an element of the integral group ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicElement {
    coeffs: Vec<CyclotomicInteger>,
}

impl CyclotomicElement {
    pub fn zero(group_order: usize, ring_order: usize) -> Result<Self, CyclotomicError> {
        Ok(Self {
            coeffs: vec![CyclotomicInteger::zero(ring_order)?; group_order],
        })
    }

    pub fn from_coeffs(coeffs: Vec<CyclotomicInteger>) -> Self {
        Self { coeffs }
    }

    pub fn group_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &CyclotomicInteger {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[CyclotomicInteger] {
        &self.coeffs
    }

    /// Group-ring product `(a b)(k) = Σ_ℓ a(ℓ) b(k − ℓ)`.
    pub fn convolve(&self, other: &Self) -> Self {
        let p = self.group_order();
        assert_eq!(p, other.group_order());
        let mut out: Vec<CyclotomicInteger> = self.coeffs.iter().map(|c| c.zero_like()).collect();
        for (l, a) in self.coeffs.iter().enumerate() {
            for (m, b) in other.coeffs.iter().enumerate() {
                out[(l + m) % p] = &out[(l + m) % p] + &(a * b);
            }
        }
        Self { coeffs: out }
    }

    /// `n*(k) = conj(n(−k))`.
    pub fn star(&self) -> Self {
        let p = self.group_order();
        Self {
            coeffs: (0..p).map(|k| self.coeffs[(p - k) % p].conj()).collect(),
        }
    }

    /// Whether this equals `c δ_0` for a rational integer `c`.
    pub fn scalar_at_identity(&self) -> Option<i64> {
        let c = self.coeffs.first()?.as_integer()?;
        self.coeffs[1..].iter().all(|z| z.is_zero()).then_some(c)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_complex()).collect()
    }
}

fn subscript(k: usize) -> String {
    k.to_string()
        .chars()
        .map(|d| char::from_u32('₀' as u32 + d.to_digit(10).unwrap()).unwrap())
        .collect()
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let body = c.to_string();
            let (negative, body) = match body.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, body),
            };
            let body = match body.as_str() {
                "1" => String::new(),
                b if b.contains(' ') => format!("({b})"),
                b => b.to_string(),
            };
            let term = format!("{body}δ{}", subscript(k));
            match (out.is_empty(), negative) {
                (true, false) => out.push_str(&term),
                (true, true) => out.push_str(&format!("−{term}")),
                (false, false) => out.push_str(&format!(" + {term}")),
                (false, true) => out.push_str(&format!(" − {term}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

/// `δ_0 − i δ_1` for `p = 2`, else `Σ_k ζ^{k²} δ_k`.
pub fn gauss_normaliser(p: u64) -> Result<CyclotomicElement, CyclotomicError> {
    if !is_prime(p) {
        return Err(CyclotomicError::NotPrime(p));
    }
    let p = p as usize;
    if p == 2 {
        let one = CyclotomicInteger::integer(4, 1)?;
        let minus_i = CyclotomicInteger::root(RootOfUnity::new(4, 3))?;
        return Ok(CyclotomicElement::from_coeffs(vec![one, minus_i]));
    }
    let coeffs = (0..p)
        .map(|k| CyclotomicInteger::root(RootOfUnity::new(p, (k * k % p) as i64)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CyclotomicElement::from_coeffs(coeffs))
}

/// `n n*` and `n* n` for the Gauss normaliser of `ℤ/p`.
pub fn gauss_products(p: u64) -> Result<(CyclotomicElement, CyclotomicElement), CyclotomicError> {
    let n = gauss_normaliser(p)?;
    let n_star = n.star();
    Ok((n.convolve(&n_star), n_star.convolve(&n)))
}

/// Exact check that `n n* = n* n = p δ_0`.
pub fn verify_gauss_identity(p: u64) -> Result<bool, CyclotomicError> {
    let (left, right) = gauss_products(p)?;
    let target = Some(p as i64);
    Ok(left.scalar_at_identity() == target && right.scalar_at_identity() == target)
}

/// Whether `ℓ ↦ k(2ℓ − k) mod p` is injective on `0..p`.
pub fn quadratic_permutation_check(p: u64, k: u64) -> bool {
    let mut seen = vec![false; p as usize];
    for l in 0..p as i64 {
        let v = (k as i64 * (2 * l - k as i64)).rem_euclid(p as i64) as usize;
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    true
}

/// Coefficient transfer onto a one-unit groupoid that is cyclic of order `p`,
/// sending `δ_k` to the point mass at `generator^k`.
pub fn to_algebra_element(
    c: &CyclotomicElement,
    g: &FiniteGroupoid,
    generator: ArrowId,
) -> Result<AlgebraElement, CyclotomicError> {
    if g.units().len() != 1 || g.len() != c.group_order() {
        return Err(CyclotomicError::ShapeMismatch(format!(
            "expected a one-unit groupoid with {} arrows, got {} arrows and {} units",
            c.group_order(),
            g.len(),
            g.units().len()
        )));
    }
    embed_along(c, g, generator)
}

/// Extension by zero along the cyclic subgroup generated by an isotropy
/// arrow of order `p`: `δ_ℓ ↦ δ_{generator^ℓ}`.
pub fn embed_along(
    c: &CyclotomicElement,
    g: &FiniteGroupoid,
    generator: ArrowId,
) -> Result<AlgebraElement, CyclotomicError> {
    let p = c.group_order();
    match g.element_order(generator) {
        Ok(order) if order == p => {}
        Ok(order) => {
            return Err(CyclotomicError::ShapeMismatch(format!(
                "generator `{}` has order {order}, expected {p}",
                g.name(generator)
            )))
        }
        Err(_) => {
            return Err(CyclotomicError::ShapeMismatch(format!(
                "generator `{}` is not in the isotropy",
                g.name(generator)
            )))
        }
    }
    let mut out = AlgebraElement::zero(g.len());
    for (l, z) in c.to_complex().into_iter().enumerate() {
        let arrow = g.power(generator, l).expect("isotropy arrow");
        out.set(arrow, z);
    }
    Ok(out)
}
