//! Multiplicative characters of `F_p^*`, extended by `χ(0) = 0`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::field::{FieldElement, PrimeField};

/// Sentinel discrete-log index for the zero residue.
const ZERO_INDEX: u32 = u32::MAX;

/// The character of order `m` sending the smallest primitive root `g` to
/// `exp(2πi/m)`.
///
/// Values are kept as exponents `k` with `χ(x) = exp(2πi k/m)`, so sums can
/// be accumulated as exact integer histograms before the one floating-point
/// combination step.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    field: PrimeField,
    order: u64,
    generator: FieldElement,
    exponents: Vec<u32>,
    roots: Vec<Complex64>,
}

impl CharacterTable {
    /// `order = 1` gives the principal character; it is accepted so that
    /// callers can exercise the trivial-character checks.
    pub fn new(field: PrimeField, order: u64) -> Result<Self> {
        field.check_divisor(order)?;
        let generator = field.primitive_root();
        let mut exponents = vec![ZERO_INDEX; field.size()];
        let mut x = field.one();
        for k in 0..field.unit_order() {
            exponents[x.index()] = (k % order) as u32;
            x = x * generator;
        }
        let roots = (0..order)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / order as f64;
                Complex64::new(libm::cos(theta), libm::sin(theta))
            })
            .collect();
        Ok(CharacterTable { field, order, generator, exponents, roots })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_quadratic(&self) -> bool {
        self.order == 2
    }

    /// `k` with `χ(x) = exp(2πi k/m)`, or `None` at zero.
    pub fn exponent(&self, x: FieldElement) -> Option<u32> {
        let k = self.exponents[x.index()];
        (k != ZERO_INDEX).then_some(k)
    }

    pub fn root(&self, k: u32) -> Complex64 {
        self.roots[k as usize]
    }

    pub fn value(&self, x: FieldElement) -> Complex64 {
        match self.exponent(x) {
            Some(k) => self.roots[k as usize],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Exact value for characters of order at most 2.
    pub fn exact_value(&self, x: FieldElement) -> Option<i64> {
        if self.order > 2 {
            return None;
        }
        Some(match self.exponent(x) {
            None => 0,
            Some(0) => 1,
            Some(_) => -1,
        })
    }

    /// Combines a histogram of exponents into `Σ count_k · exp(2πi k/m)`.
    pub fn combine(&self, histogram: &[u64]) -> Complex64 {
        histogram.iter().zip(&self.roots).fold(Complex64::new(0.0, 0.0), |acc, (&n, &w)| acc + w * n as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn order_two_matches_legendre() {
        for p in [3u64, 5, 13, 101, 997] {
            let k = f(p);
            let chi = CharacterTable::new(k, 2).unwrap();
            for x in k.elements() {
                assert_eq!(chi.exact_value(x), Some(x.legendre() as i64));
                let v = chi.value(x);
                assert!((v.re - x.legendre() as f64).abs() < 1e-12 && v.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn order_twelve_at_the_generator() {
        let chi = CharacterTable::new(f(13), 12).unwrap();
        assert_eq!(chi.generator().value(), 2);
        let v = chi.value(f(13).element(2));
        let want = Complex64::new(libm::cos(PI / 6.0), libm::sin(PI / 6.0));
        assert!((v - want).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_divisors() {
        assert_eq!(CharacterTable::new(f(5), 3), Err(Error::NotDivisor { d: 3, order: 4 }));
    }

    #[test]
    fn zero_maps_to_zero() {
        let chi = CharacterTable::new(f(13), 4).unwrap();
        assert_eq!(chi.value(f(13).zero()), Complex64::new(0.0, 0.0));
        assert_eq!(chi.exponent(f(13).zero()), None);
    }

    #[test]
    fn multiplicative_with_exact_order() {
        for (p, m) in [(13u64, 3u64), (13, 4), (13, 12), (101, 4), (101, 25), (61, 60)] {
            let k = f(p);
            let chi = CharacterTable::new(k, m).unwrap();
            for x in k.elements().skip(1) {
                for y in k.elements().skip(1) {
                    let lhs = chi.value(x * y);
                    let rhs = chi.value(x) * chi.value(y);
                    assert!((lhs - rhs).norm() < 1e-9);
                }
            }
            let g = chi.value(chi.generator());
            let mut acc = Complex64::new(1.0, 0.0);
            for step in 1..=m {
                acc *= g;
                let at_one = (acc - Complex64::new(1.0, 0.0)).norm() < 1e-9;
                assert_eq!(at_one, step == m, "p = {p}, m = {m}, step = {step}");
            }
        }
    }
}
