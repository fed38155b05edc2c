//! Dense univariate polynomials over `F_p`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Coefficients in ascending degree with no trailing zero; the empty vector is
/// the zero polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DensePolynomial {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl DensePolynomial {
    pub fn zero(field: PrimeField) -> Self {
        DensePolynomial { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_raw(c.field(), vec![c.value()])
    }

    /// `x^n`.
    pub fn monomial(field: PrimeField, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        DensePolynomial { field, coeffs }
    }

    /// The linear factor `x - b`.
    pub fn linear_factor(b: FieldElement) -> Self {
        Self::from_raw(b.field(), vec![(-b).value(), 1])
    }

    pub fn from_coeffs(field: PrimeField, coeffs: &[FieldElement]) -> Result<Self> {
        for &c in coeffs {
            field.check(c)?;
        }
        Ok(Self::from_raw(field, coeffs.iter().map(|c| c.value()).collect()))
    }

    /// Builds from integers, reducing each modulo `p`.
    pub fn from_u64s(field: PrimeField, coeffs: &[u64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.element(c).value()).collect())
    }

    fn from_raw(field: PrimeField, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        DensePolynomial { field, coeffs }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> FieldElement {
        self.field.element(self.coeffs.get(j).copied().unwrap_or(0) as u64)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|&c| self.field.element(c as u64))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.coeffs.iter().map(move |&c| self.field.element(c as u64))
    }

    pub fn raw_coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    fn same_field(&self, other: &DensePolynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.modulus(), right: other.field.modulus() });
        }
        Ok(())
    }

    pub fn add(&self, other: &DensePolynomial) -> Result<DensePolynomial> {
        self.same_field(other)?;
        let p = self.field.modulus() as u64;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|j| {
                let a = self.coeffs.get(j).copied().unwrap_or(0) as u64;
                let b = other.coeffs.get(j).copied().unwrap_or(0) as u64;
                ((a + b) % p) as u32
            })
            .collect();
        Ok(Self::from_raw(self.field, coeffs))
    }

    pub fn neg(&self) -> DensePolynomial {
        let p = self.field.modulus();
        let coeffs = self.coeffs.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect();
        DensePolynomial { field: self.field, coeffs }
    }

    pub fn sub(&self, other: &DensePolynomial) -> Result<DensePolynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElement) -> Result<DensePolynomial> {
        self.field.check(c)?;
        let p = self.field.modulus() as u64;
        let c = c.value() as u64;
        Ok(Self::from_raw(self.field, self.coeffs.iter().map(|&a| (a as u64 * c % p) as u32).collect()))
    }

    pub fn mul(&self, other: &DensePolynomial) -> Result<DensePolynomial> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let p = self.field.modulus() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Ok(Self::from_raw(self.field, acc.into_iter().map(|c| c as u32).collect()))
    }

    /// Horner evaluation.
    pub fn eval(&self, b: FieldElement) -> FieldElement {
        let p = self.field.modulus() as u64;
        let x = b.value() as u64;
        let v = self.coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x + c as u64) % p);
        self.field.element(v)
    }

    /// Formal derivative; the degree can drop by more than one when `p`
    /// divides an exponent.
    pub fn derivative(&self) -> DensePolynomial {
        let p = self.field.modulus() as u64;
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| ((k as u64 % p) * c as u64 % p) as u32).collect();
        Self::from_raw(self.field, coeffs)
    }

    /// Divides by `x - b`, returning the quotient and the remainder `f(b)`.
    pub fn synthetic_division(&self, b: FieldElement) -> (DensePolynomial, FieldElement) {
        if self.is_zero() {
            return (self.clone(), self.field.zero());
        }
        let p = self.field.modulus() as u64;
        let x = b.value() as u64;
        let n = self.coeffs.len();
        let mut quotient = vec![0u32; n - 1];
        let mut carry = 0u64;
        for k in (0..n).rev() {
            carry = (carry * x + self.coeffs[k] as u64) % p;
            if k > 0 {
                quotient[k - 1] = carry as u32;
            }
        }
        (Self::from_raw(self.field, quotient), self.field.element(carry))
    }

    /// Largest `m` with `(x - b)^m | f`, by repeated synthetic division.
    pub fn root_multiplicity(&self, b: FieldElement) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.field.check(b)?;
        let mut m = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.synthetic_division(b);
            if !r.is_zero() {
                return Ok(m);
            }
            m += 1;
            f = q;
        }
    }
}

impl fmt::Display for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{k}")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `C(e, 0), ..., C(e, e)` modulo `p`, for `e < p`.
pub fn binomial_row(field: PrimeField, e: u64) -> Result<Vec<FieldElement>> {
    if e >= field.modulus() as u64 {
        return Err(Error::ExponentTooLarge { exponent: e, p: field.modulus() });
    }
    let mut row = Vec::with_capacity(e as usize + 1);
    let mut c = field.one();
    row.push(c);
    for j in 0..e {
        c = c * field.element(e - j) * field.element(j + 1).inverse()?;
        row.push(c);
    }
    Ok(row)
}

/// `Σ_k c_k (x + a_k)^e`, expanded by the binomial theorem: the coefficient of
/// `x^j` is `C(e, j) Σ_k c_k a_k^(e-j)`. Requires `e < p`.
pub fn shifted_power_combination(
    field: PrimeField,
    c: &[FieldElement],
    a: &[FieldElement],
    e: u64,
) -> Result<DensePolynomial> {
    if c.len() != a.len() {
        return Err(Error::LengthMismatch { coeffs: c.len(), shifts: a.len() });
    }
    for &x in c.iter().chain(a) {
        field.check(x)?;
    }
    let binom = binomial_row(field, e)?;
    // power_sums[i] = Σ_k c_k a_k^i for 0 <= i <= e
    let mut power_sums = vec![field.zero(); e as usize + 1];
    for (&ck, &ak) in c.iter().zip(a) {
        let mut term = ck;
        for s in power_sums.iter_mut() {
            *s = *s + term;
            term = term * ak;
        }
    }
    let e = e as usize;
    let coeffs: Vec<FieldElement> = (0..=e).map(|j| binom[j] * power_sums[e - j]).collect();
    DensePolynomial::from_coeffs(field, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13() -> PrimeField {
        PrimeField::new(13).unwrap()
    }

    fn poly(k: PrimeField, cs: &[u64]) -> DensePolynomial {
        DensePolynomial::from_u64s(k, cs)
    }

    #[test]
    fn ring_operation_examples() {
        let k = f13();
        let sum = poly(k, &[1, 1]).add(&poly(k, &[1, 12])).unwrap();
        assert_eq!(sum, poly(k, &[2]));
        assert_eq!(sum.degree(), Some(0));
        assert!(poly(k, &[3, 4, 5]).scale(k.zero()).unwrap().is_zero());
        let prod = poly(k, &[1, 1]).mul(&poly(k, &[2, 1])).unwrap();
        assert_eq!(prod, poly(k, &[2, 3, 1]));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = poly(f13(), &[1, 1]);
        let b = poly(PrimeField::new(17).unwrap(), &[1, 1]);
        assert_eq!(a.add(&b), Err(Error::FieldMismatch { left: 13, right: 17 }));
        assert!(a.mul(&b).is_err());
        assert!(a.scale(PrimeField::new(17).unwrap().one()).is_err());
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        let z = DensePolynomial::zero(f13());
        assert_eq!(z.degree(), None);
        assert_eq!(poly(f13(), &[0, 0, 0]), z);
        assert_eq!(z.eval(f13().element(5)).value(), 0);
    }

    #[test]
    fn evaluation_examples() {
        let k = f13();
        assert_eq!(poly(k, &[2, 3, 1]).eval(k.element(11)).value(), 0);
        assert_eq!(poly(k, &[9]).eval(k.element(4)).value(), 9);
    }

    #[test]
    fn derivative_examples() {
        let k = f13();
        assert_eq!(poly(k, &[2, 3, 1]).derivative(), poly(k, &[3, 2]));
        assert!(DensePolynomial::monomial(k, 13).derivative().is_zero());
        assert!(poly(k, &[7]).derivative().is_zero());
    }

    #[test]
    fn shifted_power_examples() {
        let k = f13();
        let c = [k.element(12), k.element(1)];
        let a = [k.element(1), k.element(2)];
        assert_eq!(shifted_power_combination(k, &c, &a, 1).unwrap(), poly(k, &[1]));
        let cube = shifted_power_combination(k, &[k.one()], &[k.zero()], 3).unwrap();
        assert_eq!(cube, DensePolynomial::monomial(k, 3));
        let seventh = shifted_power_combination(k, &c, &a, 7).unwrap();
        assert_eq!(seventh.degree(), Some(6));
        // coefficient of x^6 is C(7,6)(12·1 + 1·2) = 98 = 7 mod 13
        assert_eq!(seventh.coeff(6).value(), 7);
    }

    #[test]
    fn shifted_power_errors() {
        let k = f13();
        assert_eq!(
            shifted_power_combination(k, &[k.one()], &[], 2),
            Err(Error::LengthMismatch { coeffs: 1, shifts: 0 })
        );
        assert_eq!(
            shifted_power_combination(k, &[k.one()], &[k.one()], 13),
            Err(Error::ExponentTooLarge { exponent: 13, p: 13 })
        );
    }

    #[test]
    fn multiplicity_examples() {
        let k = f13();
        let f = DensePolynomial::linear_factor(k.element(2))
            .mul(&DensePolynomial::linear_factor(k.element(2)))
            .unwrap()
            .mul(&DensePolynomial::linear_factor(k.element(3)))
            .unwrap();
        assert_eq!(f.root_multiplicity(k.element(2)), Ok(2));
        assert_eq!(f.root_multiplicity(k.element(5)), Ok(0));
        assert_eq!(poly(k, &[2, 3, 1]).root_multiplicity(k.element(11)), Ok(1));
        assert_eq!(DensePolynomial::zero(k).root_multiplicity(k.one()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn multiplicity_at_least_the_characteristic() {
        // (x - 1)^13 = x^13 - 1 over F_13: every derivative vanishes at 1,
        // yet the multiplicity is exactly 13.
        let k = f13();
        let f = poly(k, &[12, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(f.root_multiplicity(k.one()), Ok(13));
        assert!(f.derivative().is_zero());
    }

    #[test]
    fn binomial_rows() {
        let k = f13();
        let row: Vec<u32> = binomial_row(k, 4).unwrap().iter().map(|c| c.value()).collect();
        assert_eq!(row, vec![1, 4, 6, 4, 1]);
        let row12: Vec<u32> = binomial_row(k, 12).unwrap().iter().map(|c| c.value()).collect();
        // C(p-1, j) = (-1)^j mod p
        assert!(row12.iter().enumerate().all(|(j, &c)| c == if j % 2 == 0 { 1 } else { 12 }));
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", poly(f13(), &[2, 3, 1])), "x^2 + 3x + 2");
        assert_eq!(alloc::format!("{}", DensePolynomial::zero(f13())), "0");
    }
}
