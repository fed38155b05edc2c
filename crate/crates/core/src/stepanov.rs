//! Auxiliary-polynomial certificates for sumsets inside `Z_d ∪ {0}`.
//!
//! For `A = {a_1, ..., a_M}` choose `c_k` with `G(x) = Σ c_k (x + a_k)^(M-1)`
//! constant, and put `F(x) = -c + Σ c_k (x + a_k)^D` with `D = d + M - 1`.
//! When `A + B ⊆ Z_d ∪ {0}`, `F` has degree exactly `d`, vanishes to order at
//! least `M` at every `b ∈ B \ (-A)` and to order at least `M - 1` at every
//! `b ∈ B ∩ (-A)`. Counting roots gives `(M-1) r + M (|B| - r) <= d`, hence
//! `|A| |B| <= d + |B ∩ (-A)|`.
//!
//! A [`StepanovCertificate`] records the polynomial and the measured root
//! orders; [`audit_certificate`] re-derives every claim from the raw sets.

use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::poly::{shifted_power_combination, DensePolynomial};

/// Validated input: `d` a proper divisor of `p - 1`, `A` nonempty, both sets
/// free of repeats, and every `a + b` in `Z_d ∪ {0}`. Sets are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepanovInstance {
    field: PrimeField,
    d: u64,
    a: Vec<FieldElement>,
    b: Vec<FieldElement>,
}

fn sorted_distinct(field: PrimeField, xs: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let mut out = xs.to_vec();
    for &x in &out {
        field.check(x)?;
    }
    out.sort_unstable();
    if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateElements(w[0]));
    }
    Ok(out)
}

fn in_subgroup_or_zero(x: FieldElement, d: u64) -> bool {
    x.is_zero() || x.pow(d).value() == 1
}

impl StepanovInstance {
    pub fn new(field: PrimeField, d: u64, a: &[FieldElement], b: &[FieldElement]) -> Result<Self> {
        field.check_proper_divisor(d)?;
        if a.is_empty() {
            return Err(Error::EmptySet);
        }
        let a = sorted_distinct(field, a)?;
        let b = sorted_distinct(field, b)?;
        let allowed = field.subgroup(d)?.members_with_zero();
        for &x in &a {
            for &y in &b {
                if !allowed.contains((x + y).index()) {
                    return Err(Error::SumsetEscapesSubgroup { a: x, b: y });
                }
            }
        }
        Ok(StepanovInstance { field, d, a, b })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn a(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn b(&self) -> &[FieldElement] {
        &self.b
    }

    /// `|B ∩ (-A)|`, the number of pairs summing to zero.
    pub fn zero_sum_count(&self) -> usize {
        intersection_with_negation(&self.a, &self.b)
    }
}

fn intersection_with_negation(a: &[FieldElement], b: &[FieldElement]) -> usize {
    b.iter().filter(|&&y| a.contains(&-y)).count()
}

/// Solution of `Σ c_k a_k^i = 0` for `0 <= i <= M-2`, with
/// `constant = Σ c_k a_k^(M-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullCoefficients {
    pub coeffs: Vec<FieldElement>,
    pub constant: FieldElement,
}

/// `c_k = Π_{j≠k} (a_k - a_j)^{-1}`, which normalises the constant to 1.
pub fn lagrange_null_coeffs(a: &[FieldElement]) -> Result<NullCoefficients> {
    let first = *a.first().ok_or(Error::EmptySet)?;
    let field = first.field();
    sorted_distinct(field, a)?;
    let m = a.len() as u64;
    let mut coeffs = Vec::with_capacity(a.len());
    for (k, &ak) in a.iter().enumerate() {
        let mut denom = field.one();
        for (j, &aj) in a.iter().enumerate() {
            if j != k {
                denom = denom * (ak - aj);
            }
        }
        coeffs.push(denom.inverse()?);
    }
    let constant = coeffs.iter().zip(a).fold(field.zero(), |acc, (&c, &x)| acc + c * x.pow(m - 1));
    Ok(NullCoefficients { coeffs, constant })
}

/// `F(x) = -c + Σ c_k (x + a_k)^D` together with the data that defines it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryPolynomial {
    pub polynomial: DensePolynomial,
    pub null: NullCoefficients,
    pub exponent: u64,
}

pub fn build_auxiliary_polynomial(field: PrimeField, a: &[FieldElement], d: u64) -> Result<AuxiliaryPolynomial> {
    field.check_proper_divisor(d)?;
    let null = lagrange_null_coeffs(a)?;
    let exponent = d + a.len() as u64 - 1;
    if exponent > field.unit_order() {
        return Err(Error::ExponentOverflow { exponent, p: field.modulus() });
    }
    let sum = shifted_power_combination(field, &null.coeffs, a, exponent)?;
    let polynomial = sum.sub(&DensePolynomial::constant(null.constant))?;
    // The x^d coefficient is C(D, d)·c with D < p, so it cannot vanish.
    assert_eq!(polynomial.degree(), Some(d as usize), "auxiliary polynomial lost degree");
    Ok(AuxiliaryPolynomial { polynomial, null, exponent })
}

/// Every `b` with `a + b ∈ Z_d ∪ {0}` for all `a ∈ A`.
pub fn max_compatible_b(field: PrimeField, d: u64, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
    field.check_proper_divisor(d)?;
    let allowed = field.subgroup(d)?.members_with_zero();
    let p = field.size();
    let mut acc = BitSet::full(p);
    for &x in a {
        field.check(x)?;
        acc.intersect_with(&allowed.rotate(p - x.index()));
    }
    Ok(acc.iter().map(|i| field.element(i as u64)).collect())
}

/// Witness for `|A| |B| <= d + r`.
///
/// `auxiliary` is `None` only for degenerate instances: `|A| = 1`, where the
/// bound is immediate, or `B = ∅` with `d + |A| - 1 > p - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepanovCertificate {
    pub instance: StepanovInstance,
    pub auxiliary: Option<AuxiliaryPolynomial>,
    pub r: usize,
    /// Root order of `F` at each `b`, in the order of `instance.b()`.
    pub multiplicities: Vec<(FieldElement, usize)>,
    pub bound_ok: bool,
}

impl StepanovCertificate {
    pub fn m(&self) -> usize {
        self.instance.a.len()
    }

    pub fn n(&self) -> usize {
        self.instance.b.len()
    }

    /// `(M-1) r + M (N-r)`, the guaranteed number of roots with multiplicity.
    pub fn required_root_count(&self) -> u64 {
        let (m, n, r) = (self.m() as u64, self.n() as u64, self.r as u64);
        (m - 1) * r + m * (n - r)
    }
}

pub fn certify(instance: StepanovInstance) -> Result<StepanovCertificate> {
    let r = instance.zero_sum_count();
    let (m, n, d) = (instance.a.len(), instance.b.len(), instance.d);
    let bound_ok = (m * n) as u64 <= d + r as u64;
    let degenerate = m == 1 || (n == 0 && d + m as u64 - 1 > instance.field.unit_order());
    if degenerate {
        return Ok(StepanovCertificate { instance, auxiliary: None, r, multiplicities: Vec::new(), bound_ok });
    }
    let aux = build_auxiliary_polynomial(instance.field, &instance.a, d)?;
    let mut multiplicities = Vec::with_capacity(n);
    let mut total = 0u64;
    for &b in &instance.b {
        let found = aux.polynomial.root_multiplicity(b)?;
        let required = if instance.a.contains(&-b) { m - 1 } else { m };
        if found < required {
            return Err(Error::MultiplicityShortfall { b, found, required });
        }
        total += found as u64;
        multiplicities.push((b, found));
    }
    if total > d {
        return Err(Error::BoundViolated("root orders exceed the degree of F"));
    }
    if !bound_ok {
        return Err(Error::BoundViolated("|A||B| <= d + |B ∩ (-A)|"));
    }
    Ok(StepanovCertificate { instance, auxiliary: Some(aux), r, multiplicities, bound_ok })
}

/// Name of the first certificate invariant that failed to re-verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditFailure {
    pub invariant: &'static str,
}

impl fmt::Display for AuditFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "certificate invariant `{}` failed", self.invariant)
    }
}

fn fail(invariant: &'static str) -> core::result::Result<(), AuditFailure> {
    Err(AuditFailure { invariant })
}

/// Re-checks a certificate from its raw sets, without trusting any stored
/// intermediate. `F` is compared against `-c + Σ c_k (x + a_k)^D` pointwise on
/// all of `F_p`, a route independent of the binomial expansion used to build
/// it, and root orders are recomputed by synthetic division.
pub fn audit_certificate(cert: &StepanovCertificate) -> core::result::Result<(), AuditFailure> {
    let inst = &cert.instance;
    let field = inst.field;
    let d = inst.d;
    if field.check_proper_divisor(d).is_err() {
        return fail("proper_divisor");
    }
    let elements_ok = inst.a.iter().chain(&inst.b).all(|&x| field.check(x).is_ok());
    let distinct = |xs: &[FieldElement]| xs.windows(2).all(|w| w[0] < w[1]);
    if inst.a.is_empty() || !elements_ok || !distinct(&inst.a) || !distinct(&inst.b) {
        return fail("instance_sets");
    }
    for &x in &inst.a {
        for &y in &inst.b {
            if !in_subgroup_or_zero(x + y, d) {
                return fail("sumset_in_subgroup");
            }
        }
    }
    let (m, n) = (inst.a.len(), inst.b.len());

    match &cert.auxiliary {
        None => {
            let overflow = n == 0 && d + m as u64 - 1 > field.unit_order();
            if m != 1 && !overflow {
                return fail("degenerate_case");
            }
            if !cert.multiplicities.is_empty() {
                return fail("multiplicities");
            }
        }
        Some(aux) => {
            let c = &aux.null.coeffs;
            if c.len() != m || c.iter().all(|x| x.is_zero()) || aux.null.constant.is_zero() {
                return fail("null_coefficients");
            }
            for i in 0..m as u64 {
                let s = c.iter().zip(&inst.a).fold(field.zero(), |acc, (&ck, &ak)| acc + ck * ak.pow(i));
                let want = if i + 1 == m as u64 { aux.null.constant } else { field.zero() };
                if s != want {
                    return fail("null_coefficients");
                }
            }
            if aux.exponent != d + m as u64 - 1 || aux.exponent > field.unit_order() {
                return fail("exponent");
            }
            let f = &aux.polynomial;
            if f.field() != field || f.degree() != Some(d as usize) {
                return fail("degree");
            }
            if cert.multiplicities.len() != n {
                return fail("multiplicities");
            }
            let mut total = 0usize;
            for (&b, &(stored_b, stored)) in inst.b.iter().zip(&cert.multiplicities) {
                let found = match f.root_multiplicity(b) {
                    Ok(k) => k,
                    Err(_) => return fail("multiplicities"),
                };
                let required = if inst.a.contains(&-b) { m - 1 } else { m };
                if stored_b != b || stored != found || found < required {
                    return fail("multiplicities");
                }
                total += found;
            }
            if total > d as usize {
                return fail("multiplicity_sum");
            }
            for x in field.elements() {
                let direct = c
                    .iter()
                    .zip(&inst.a)
                    .fold(-aux.null.constant, |acc, (&ck, &ak)| acc + ck * (x + ak).pow(aux.exponent));
                if f.eval(x) != direct {
                    return fail("polynomial_identity");
                }
            }
        }
    }

    let r = intersection_with_negation(&inst.a, &inst.b);
    if cert.r != r {
        return fail("counting");
    }
    let (m, n, r) = (m as u64, n as u64, r as u64);
    if cert.auxiliary.is_some() && (m - 1) * r + m * (n - r) > d {
        return fail("counting");
    }
    let bound = m * n <= d + r;
    if !bound || !cert.bound_ok {
        return fail("bound");
    }
    Ok(())
}
