//! Prime fields `F_p` with `p < 2^31`, their elements and multiplicative
//! subgroups.
//!
//! Every product of two residues fits in a `u64`, so no multiprecision is
//! needed anywhere in the crate.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::arith::{divisors, is_prime, prime_factors};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub const MODULUS_BOUND: u64 = 1 << 31;

/// An odd prime modulus below `2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

/// A canonical residue `0 <= value < p`, tagged with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_BOUND {
            return Err(Error::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 3 {
            return Err(Error::TooSmall(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// `p` as a `usize`, convenient for indexing tables over the field.
    #[inline]
    pub fn size(self) -> usize {
        self.p as usize
    }

    #[inline]
    pub fn element(self, value: u64) -> FieldElement {
        FieldElement { value: (value % self.p as u64) as u32, modulus: self.p }
    }

    /// Reduces a signed integer into the field.
    pub fn element_signed(self, value: i64) -> FieldElement {
        self.element(value.rem_euclid(self.p as i64) as u64)
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { value: 0, modulus: self.p }
    }

    pub fn one(self) -> FieldElement {
        FieldElement { value: 1, modulus: self.p }
    }

    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.p).map(move |value| FieldElement { value, modulus: self.p })
    }

    pub fn check(self, x: FieldElement) -> Result<()> {
        if x.modulus == self.p {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.p, right: x.modulus })
        }
    }

    /// `p - 1`, the order of the unit group.
    pub fn unit_order(self) -> u64 {
        self.p as u64 - 1
    }

    pub fn check_divisor(self, d: u64) -> Result<()> {
        if d == 0 || !self.unit_order().is_multiple_of(d) {
            return Err(Error::NotDivisor { d, order: self.unit_order() });
        }
        Ok(())
    }

    pub fn check_proper_divisor(self, d: u64) -> Result<()> {
        if d == 0 || d >= self.unit_order() || !self.unit_order().is_multiple_of(d) {
            return Err(Error::NotProperDivisor { d, p: self.p as u64 });
        }
        Ok(())
    }

    /// Divisors `d` of `p - 1` with `d < p - 1`, ascending.
    pub fn proper_divisors(self) -> Vec<u64> {
        let mut ds = divisors(self.unit_order());
        ds.pop();
        ds
    }

    /// Smallest generator of the unit group.
    pub fn primitive_root(self) -> FieldElement {
        let n = self.unit_order();
        let factors = prime_factors(n);
        self.elements()
            .skip(1)
            .find(|g| factors.iter().all(|&q| g.pow(n / q).value != 1))
            .expect("the unit group of a prime field is cyclic")
    }

    /// The unique subgroup of order `d`, that is the solutions of `z^d = 1`.
    pub fn subgroup(self, d: u64) -> Result<MultSubgroup> {
        self.check_divisor(d)?;
        let step = self.primitive_root().pow(self.unit_order() / d);
        let mut elements = Vec::with_capacity(d as usize);
        let mut z = self.one();
        for _ in 0..d {
            elements.push(z);
            z = z * step;
        }
        elements.sort_unstable();
        let mut members = BitSet::new(self.size());
        for z in &elements {
            members.insert(z.index());
        }
        Ok(MultSubgroup { field: self, d, elements, members })
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn index(self) -> usize {
        self.value as usize
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// `self^e`, with `0^0 = 1`.
    pub fn pow(self, mut e: u64) -> FieldElement {
        let m = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        FieldElement { value: acc as u32, modulus: self.modulus }
    }

    pub fn inverse(self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.modulus as u64 - 2))
    }

    /// The quadratic character: `0`, `1` for nonzero squares, `-1` otherwise.
    pub fn legendre(self) -> i8 {
        if self.value == 0 {
            return 0;
        }
        let e = self.pow((self.modulus as u64 - 1) / 2);
        if e.value == 1 {
            1
        } else {
            debug_assert_eq!(e.value, self.modulus - 1);
            -1
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(self) -> Option<u64> {
        if self.value == 0 {
            return None;
        }
        let n = self.modulus as u64 - 1;
        let mut ord = n;
        for q in prime_factors(n) {
            while ord.is_multiple_of(q) && self.pow(ord / q).value == 1 {
                ord /= q;
            }
        }
        Some(ord)
    }

    #[inline]
    fn assert_same(self, rhs: FieldElement) {
        assert_eq!(self.modulus, rhs.modulus, "field elements from different fields");
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.assert_same(rhs);
        let s = self.value as u64 + rhs.value as u64;
        let m = self.modulus as u64;
        FieldElement { value: if s >= m { s - m } else { s } as u32, modulus: self.modulus }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn neg(self) -> FieldElement {
        let value = if self.value == 0 { 0 } else { self.modulus - self.value };
        FieldElement { value, modulus: self.modulus }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.assert_same(rhs);
        let v = self.value as u64 * rhs.value as u64 % self.modulus as u64;
        FieldElement { value: v as u32, modulus: self.modulus }
    }
}

/// The subgroup `Z_d` of `F_p^*`, stored sorted and as a membership bit set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultSubgroup {
    field: PrimeField,
    d: u64,
    elements: Vec<FieldElement>,
    members: BitSet,
}

impl MultSubgroup {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.modulus == self.field.p && self.members.contains(x.index())
    }

    /// Membership as a bit set over `0..p`.
    pub fn members(&self) -> &BitSet {
        &self.members
    }

    /// `Z_d ∪ {0}` as a bit set over `0..p`.
    pub fn members_with_zero(&self) -> BitSet {
        let mut s = self.members.clone();
        s.insert(0);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn values(g: &MultSubgroup) -> Vec<u32> {
        g.elements().iter().map(|z| z.value()).collect()
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(f(13).modulus(), 13);
        assert_eq!(PrimeField::new(15), Err(Error::NotPrime(15)));
        assert_eq!(f(2_147_483_647).modulus(), 2_147_483_647);
        assert_eq!(PrimeField::new(2_147_483_648), Err(Error::TooLarge(2_147_483_648)));
        assert_eq!(PrimeField::new(2), Err(Error::TooSmall(2)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn pow_examples() {
        let k = f(13);
        assert_eq!(k.element(3).pow(3).value(), 1);
        assert_eq!(k.element(2).pow(6).value(), 12);
        assert_eq!(k.element(7).pow(1).value(), 7);
        assert_eq!(k.element(5).pow(0).value(), 1);
        assert_eq!(k.zero().pow(0).value(), 1);
        assert_eq!(k.zero().pow(5).value(), 0);
    }

    #[test]
    fn pow_near_the_modulus_bound() {
        let k = f(2_147_483_647);
        let x = k.element(2_147_483_646);
        assert_eq!(x.pow(2).value(), 1);
        assert_eq!(k.element(16807).pow(2_147_483_646).value(), 1);
    }

    #[test]
    fn inverse_examples() {
        let k = f(13);
        assert_eq!(k.one().inverse().unwrap().value(), 1);
        assert_eq!(k.element(2).inverse().unwrap().value(), 7);
        assert_eq!(k.zero().inverse(), Err(Error::ZeroInverse));
    }

    #[test]
    fn legendre_examples() {
        let k = f(13);
        assert_eq!(k.element(4).legendre(), 1);
        assert_eq!(k.element(2).legendre(), -1);
        assert_eq!(k.zero().legendre(), 0);
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(f(13).primitive_root().value(), 2);
        assert_eq!(f(5).primitive_root().value(), 2);
        assert_eq!(f(7).primitive_root().value(), 3);
        assert_eq!(f(3).primitive_root().value(), 2);
        assert_eq!(f(13).element(2).order(), Some(12));
    }

    #[test]
    fn subgroup_examples() {
        let k = f(13);
        assert_eq!(values(&k.subgroup(6).unwrap()), vec![1, 3, 4, 9, 10, 12]);
        assert_eq!(values(&k.subgroup(4).unwrap()), vec![1, 5, 8, 12]);
        assert_eq!(values(&k.subgroup(1).unwrap()), vec![1]);
        assert_eq!(k.subgroup(5), Err(Error::NotDivisor { d: 5, order: 12 }));
        assert!(k.subgroup(0).is_err());
    }

    #[test]
    fn subgroup_equals_roots_of_unity_by_brute_force() {
        for p in (3..1000u64).filter(|&p| is_prime(p)) {
            let k = f(p);
            for d in divisors(p - 1) {
                let g = k.subgroup(d).unwrap();
                let brute: Vec<u32> =
                    k.elements().filter(|x| !x.is_zero() && x.pow(d).value() == 1).map(|x| x.value()).collect();
                assert_eq!(values(&g), brute, "p = {p}, d = {d}");
                if d % 2 == 0 {
                    assert!(g.elements().iter().all(|&z| g.contains(-z)));
                }
            }
        }
    }

    #[test]
    fn proper_divisors_exclude_the_full_group() {
        assert_eq!(f(13).proper_divisors(), vec![1, 2, 3, 4, 6]);
        assert_eq!(f(3).proper_divisors(), vec![1]);
        assert!(f(13).check_proper_divisor(12).is_err());
        assert!(f(13).check_proper_divisor(6).is_ok());
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixed_moduli_panic() {
        let _ = f(13).one() + f(17).one();
    }
}
