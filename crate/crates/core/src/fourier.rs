//! The integer group and its two completions.
//!
//! In the Laurent algebra `ℂ[z, z⁻¹]` every normaliser of the scalars is a
//! monomial, so its support is a bisection of `ℤ`. In `C(𝕋)` the unimodular
//! function `m(z) = (z − 2z²) / |z − 2z²|` is a normaliser whose Fourier
//! coefficients at `1` and `2` are both non-zero, so its support is not.
//!
//! Fourier coefficients use `ĉ_k = (1/K) Σ_j F(ω^j) ω^{−jk}` with
//! `ω = exp(2πi/K)`, indexed over the window `[−K/2, K/2)`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FourierError {
    #[error("sample count {0} must be a power of two and at least 8")]
    InvalidSampleCount(usize),
    #[error("sample {0} is not finite")]
    NonFinite(usize),
}

/// Values of a function on the `K`-th roots of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleSample {
    values: Vec<Complex64>,
}

impl CircleSample {
    pub fn from_values(values: Vec<Complex64>) -> Result<Self, FourierError> {
        let k = values.len();
        if k < 8 || !k.is_power_of_two() {
            return Err(FourierError::InvalidSampleCount(k));
        }
        if let Some(j) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(FourierError::NonFinite(j));
        }
        Ok(Self { values })
    }

    /// Samples `f` at `exp(2πij/K)` for `j = 0..K`.
    pub fn from_fn(k: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self, FourierError> {
        if k < 8 || !k.is_power_of_two() {
            return Err(FourierError::InvalidSampleCount(k));
        }
        Self::from_values((0..k).map(|j| f(root(j, k))).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

fn root(j: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * j as f64 / k as f64)
}

/// `m(z) = (z − 2z²) / |z − 2z²|`; the numerator vanishes only at `0` and `1/2`.
pub fn m(z: Complex64) -> Complex64 {
    let w = z - 2.0 * z * z;
    w / w.norm()
}

pub fn sample_m(k: usize) -> Result<CircleSample, FourierError> {
    CircleSample::from_fn(k, m)
}

/// Finitely many Fourier coefficients `k ↦ ĉ_k`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FourierSeries {
    coeffs: BTreeMap<i64, Complex64>,
}

impl FourierSeries {
    pub fn from_coefficients(coeffs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        Self {
            coeffs: coeffs.into_iter().collect(),
        }
    }

    /// `ĉ_k`, zero outside the stored window.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ_k |ĉ_k|²`.
    pub fn energy(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }
}

pub fn dft(sample: &CircleSample) -> FourierSeries {
    let k = sample.len();
    let mut buffer = sample.values.clone();
    FftPlanner::<f64>::new()
        .plan_fft_forward(k)
        .process(&mut buffer);
    let scale = 1.0 / k as f64;
    let half = (k / 2) as i64;
    FourierSeries::from_coefficients(buffer.into_iter().enumerate().map(|(j, c)| {
        let j = j as i64;
        let index = if j < half { j } else { j - k as i64 };
        (index, c * scale)
    }))
}

/// `max_j ||F(ω^j)| − 1| < tol`.
pub fn is_unimodular(sample: &CircleSample, tol: f64) -> bool {
    sample.values.iter().all(|v| (v.norm() - 1.0).abs() < tol)
}

/// True when at least two coefficients exceed `tol`, i.e. the support is not
/// a bisection of `ℤ`.
pub fn cstar_lbh_violation(series: &FourierSeries, tol: f64) -> bool {
    series.coeffs.values().filter(|c| c.norm() > tol).count() >= 2
}

/// A Laurent polynomial `Σ_k a_k z^k`, i.e. a finitely supported function on `ℤ`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentElement {
    coeffs: BTreeMap<i64, Complex64>,
}

impl LaurentElement {
    /// Zero coefficients are dropped.
    pub fn new(coeffs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut out = Self::default();
        for (k, c) in coeffs {
            *out.coeffs.entry(k).or_default() += c;
        }
        out.coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        out
    }

    pub fn monomial(k: i64, c: Complex64) -> Self {
        Self::new([(k, c)])
    }

    pub fn coefficient(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn convolve(&self, other: &Self) -> Self {
        Self::new(
            self.iter()
                .flat_map(|(i, a)| other.iter().map(move |(j, b)| (i + j, a * b))),
        )
    }

    /// `f*(k) = conj f(−k)`.
    pub fn involute(&self) -> Self {
        Self::new(self.iter().map(|(k, c)| (-k, c.conj())))
    }

    pub fn support(&self, tol: f64) -> Vec<i64> {
        self.iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn to_series(&self) -> FourierSeries {
        FourierSeries::from_coefficients(self.iter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentCheck {
    pub is_normaliser: bool,
    pub is_monomial: bool,
}

/// `f` normalises the scalars iff `f f*` is a scalar. Zero counts as a
/// normaliser but not as a monomial.
pub fn laurent_normaliser_check(f: &LaurentElement, tol: f64) -> LaurentCheck {
    let ff = f.convolve(&f.involute());
    LaurentCheck {
        is_normaliser: ff.coeffs.iter().all(|(&k, c)| k == 0 || c.norm() < tol),
        is_monomial: f.support(tol).len() == 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    pub normalisers: usize,
    /// Elements where "normaliser" and "monomial or zero" disagree.
    pub exceptions: usize,
    /// Normalisers whose coefficient series would violate the local bisection hypothesis.
    pub lbh_violations: usize,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.exceptions == 0 && self.lbh_violations == 0
    }
}

/// Every Laurent polynomial with support in `[−radius, radius]` and integer
/// coefficients in `[−bound, bound]`.
pub fn bounded_laurent_sweep(radius: i64, bound: i64, tol: f64) -> SweepReport {
    let width = (2 * radius + 1) as u32;
    let base = 2 * bound + 1;
    let total = base.pow(width);
    let mut report = SweepReport {
        checked: 0,
        normalisers: 0,
        exceptions: 0,
        lbh_violations: 0,
    };
    for code in 0..total {
        let mut rest = code;
        let f = LaurentElement::new((-radius..=radius).map(|k| {
            let digit = rest % base - bound;
            rest /= base;
            (k, Complex64::new(digit as f64, 0.0))
        }));
        let check = laurent_normaliser_check(&f, tol);
        report.checked += 1;
        if check.is_normaliser {
            report.normalisers += 1;
            if cstar_lbh_violation(&f.to_series(), tol) {
                report.lbh_violations += 1;
            }
        }
        if check.is_normaliser != (check.is_monomial || f.is_zero()) {
            report.exceptions += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn naive_dft(values: &[Complex64]) -> Vec<Complex64> {
        let k = values.len();
        (0..k)
            .map(|n| {
                values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        v * Complex64::from_polar(1.0, -TAU * (j * n % k) as f64 / k as f64)
                    })
                    .sum::<Complex64>()
                    / k as f64
            })
            .collect()
    }

    #[test]
    fn sample_count_validation() {
        assert_eq!(sample_m(4), Err(FourierError::InvalidSampleCount(4)));
        assert_eq!(sample_m(12), Err(FourierError::InvalidSampleCount(12)));
        assert!(sample_m(8).is_ok());
        let mut v = vec![c(1.0, 0.0); 8];
        v[3] = c(f64::NAN, 0.0);
        assert_eq!(
            CircleSample::from_values(v),
            Err(FourierError::NonFinite(3))
        );
    }

    #[test]
    fn m_at_plus_and_minus_one() {
        assert!((m(c(1.0, 0.0)) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((m(c(-1.0, 0.0)) - c(-1.0, 0.0)).norm() < 1e-15);
        let s = sample_m(16).unwrap();
        assert!((s.values()[0] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((s.values()[8] - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&sample_m(1 << 10).unwrap(), 1e-12));
        assert!(is_unimodular(&sample_m(8).unwrap(), 1e-12));
        let twice = CircleSample::from_fn(8, |_| c(2.0, 0.0)).unwrap();
        assert!(!is_unimodular(&twice, 1e-12));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phases: Vec<Complex64> = (0..64)
            .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..TAU)))
            .collect();
        assert!(is_unimodular(
            &CircleSample::from_values(phases).unwrap(),
            1e-12
        ));
    }

    #[test]
    fn dft_matches_naive_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let values: Vec<Complex64> = (0..32)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let series = dft(&CircleSample::from_values(values.clone()).unwrap());
        let naive = naive_dft(&values);
        for (n, expected) in naive.iter().enumerate() {
            let index = if n < 16 { n as i64 } else { n as i64 - 32 };
            assert!((series.coefficient(index) - expected).norm() < 1e-12);
        }
        assert_eq!(series.len(), 32);
        assert_eq!(series.iter().next().unwrap().0, -16);
    }

    #[test]
    fn constant_and_pure_tone() {
        let one = dft(&CircleSample::from_fn(16, |_| c(1.0, 0.0)).unwrap());
        assert!((one.coefficient(0) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(one
            .iter()
            .filter(|&(k, _)| k != 0)
            .all(|(_, v)| v.norm() < 1e-14));
        assert!(!cstar_lbh_violation(&one, 0.05));

        let tone = dft(&CircleSample::from_fn(16, |z| z).unwrap());
        assert!((tone.coefficient(1) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(tone
            .iter()
            .filter(|&(k, _)| k != 1)
            .all(|(_, v)| v.norm() < 1e-14));
        assert!(!cstar_lbh_violation(&tone, 0.05));
    }

    #[test]
    fn trigonometric_polynomials_are_recovered() {
        let poly = [
            (-3i64, c(0.5, -1.0)),
            (0, c(2.0, 0.0)),
            (2, c(0.0, 1.5)),
            (3, c(-1.0, 0.25)),
        ];
        let eval = |z: Complex64| poly.iter().map(|&(k, a)| a * z.powi(k as i32)).sum();
        let series = dft(&CircleSample::from_fn(8, eval).unwrap());
        for k in -4..4 {
            let expected = poly.iter().find(|p| p.0 == k).map_or(c(0.0, 0.0), |p| p.1);
            assert!((series.coefficient(k) - expected).norm() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn example_coefficients_are_nonzero() {
        let series = dft(&sample_m(1 << 14).unwrap());
        assert!(series.coefficient(1).norm() > 0.1);
        assert!(series.coefficient(2).norm() > 0.1);
        assert!((series.energy() - 1.0).abs() < 1e-9);
        assert!(cstar_lbh_violation(&series, 0.05));
    }

    #[test]
    fn laurent_examples() {
        let f = LaurentElement::monomial(5, c(3.0, 0.0));
        assert_eq!(
            laurent_normaliser_check(&f, 1e-12),
            LaurentCheck {
                is_normaliser: true,
                is_monomial: true
            }
        );
        let f = LaurentElement::new([(1, c(1.0, 0.0)), (2, c(-2.0, 0.0))]);
        assert_eq!(f.convolve(&f.involute()).coefficient(1), c(-2.0, 0.0));
        assert_eq!(
            laurent_normaliser_check(&f, 1e-12),
            LaurentCheck {
                is_normaliser: false,
                is_monomial: false
            }
        );
        assert_eq!(
            laurent_normaliser_check(&LaurentElement::default(), 1e-12),
            LaurentCheck {
                is_normaliser: true,
                is_monomial: false
            }
        );
    }

    #[test]
    fn laurent_algebra_laws() {
        let f = LaurentElement::new([(-1, c(1.0, 2.0)), (3, c(0.0, -1.0))]);
        let g = LaurentElement::new([(0, c(2.0, 0.0)), (1, c(1.0, 1.0))]);
        assert_eq!(f.convolve(&g), g.convolve(&f));
        assert_eq!(f.involute().involute(), f);
        assert_eq!(
            f.convolve(&g).involute(),
            g.involute().convolve(&f.involute())
        );
        assert!(LaurentElement::new([(2, c(1.0, 0.0)), (2, c(-1.0, 0.0))]).is_zero());
    }

    #[test]
    fn small_sweep() {
        let report = bounded_laurent_sweep(1, 1, 1e-12);
        assert_eq!(report.checked, 27);
        // zero plus two nonzero values at each of three positions
        assert_eq!(report.normalisers, 7);
        assert!(report.passed());
    }
}
