//! Exhaustive searches for additive decompositions of `Z_d`.
//!
//! * sum decompositions `A + B = Z_d` (optionally `Z_d ∪ {0}`) with
//!   `|A|, |B| >= 2`;
//! * restricted difference decompositions `A ∸ A = Z_d`.
//!
//! Searches enumerate sets containing `0` and add back every translate, so the
//! output lists each decomposition in full. Records are re-validated from the
//! raw sets before they are returned and are grouped into classes under the
//! maps `x ↦ λx + t` with `λ ∈ Z_d`.

pub mod divisors;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::arith::isqrt;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

pub use divisors::{divisor_range_counts, sqrt_slice_counts, DivisorCountReport};

/// Default largest prime for sum searches.
pub const SUM_SEARCH_CAP: u64 = 101;
/// Default largest prime for difference searches.
pub const DIFFERENCE_SEARCH_CAP: u64 = 613;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecompositionKind {
    /// `A + B = Z_d`.
    Sum,
    /// `A + B = Z_d ∪ {0}`.
    SumWithZero,
    /// `A ∸ A = Z_d`.
    Difference,
}

impl DecompositionKind {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionKind::Sum => "sum",
            DecompositionKind::SumWithZero => "sum_with_zero",
            DecompositionKind::Difference => "difference",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "sum" => Some(DecompositionKind::Sum),
            "sum_with_zero" => Some(DecompositionKind::SumWithZero),
            "difference" => Some(DecompositionKind::Difference),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionRecord {
    pub kind: DecompositionKind,
    pub p: u64,
    pub d: u64,
    pub a: Vec<FieldElement>,
    /// `None` for difference decompositions.
    pub b: Option<Vec<FieldElement>>,
    /// Sums (or differences) are pairwise distinct; for `SumWithZero` only the
    /// nonzero sums are compared.
    pub unique_sums: bool,
    /// `|A||B| = d` for sums, `|A||B| = d + zero_sums` with zero allowed and
    /// `|A|(|A|-1) = d` for differences.
    pub product_check: bool,
    /// Number of pairs `(a, b)` with `a + b = 0`.
    pub zero_sums: usize,
    /// The odd `n` with `p = (n² + 1)/2`, checked when `d = (p-1)/2`.
    pub paley_form: Option<u64>,
    /// Index of the orbit under `x ↦ λx + t`, `λ ∈ Z_d`, within this search.
    pub symmetry_class: usize,
}

pub fn sumset(a: &[FieldElement], b: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let mut out = BTreeSet::new();
    for &x in a {
        for &y in b {
            if x.modulus() != y.modulus() {
                return Err(Error::FieldMismatch { left: x.modulus(), right: y.modulus() });
            }
            out.insert(x + y);
        }
    }
    Ok(out.into_iter().collect())
}

/// `{a - a' : a ≠ a'}`.
pub fn restricted_differences(a: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = BTreeSet::new();
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in a.iter().enumerate() {
            if i != j {
                out.insert(x - y);
            }
        }
    }
    out.into_iter().collect()
}

/// All `|A||B|` sums are distinct.
pub fn check_unique_sums(a: &[FieldElement], b: &[FieldElement]) -> bool {
    let mut seen = BTreeSet::new();
    a.iter().all(|&x| b.iter().all(|&y| seen.insert(x + y)))
}

fn unique_nonzero_sums(a: &[FieldElement], b: &[FieldElement]) -> bool {
    let mut seen = BTreeSet::new();
    a.iter().all(|&x| b.iter().all(|&y| (x + y).is_zero() || seen.insert(x + y)))
}

fn zero_sum_count(a: &[FieldElement], b: &[FieldElement]) -> usize {
    a.iter().map(|&x| b.iter().filter(|&&y| (x + y).is_zero()).count()).sum()
}

/// Odd `n` with `p = (n² + 1)/2`.
pub fn paley_form(p: u64) -> Option<u64> {
    let n = isqrt(2 * p - 1);
    (n % 2 == 1 && n * n + 1 == 2 * p).then_some(n)
}

fn check_cap(field: PrimeField, cap: u64) -> Result<()> {
    let p = field.modulus() as u64;
    if p > cap {
        return Err(Error::CapExceeded { value: p, cap });
    }
    Ok(())
}

fn to_elements(field: PrimeField, s: &BitSet) -> Vec<FieldElement> {
    s.iter().map(|i| field.element(i as u64)).collect()
}

fn translate(xs: &[FieldElement], t: FieldElement) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = xs.iter().map(|&x| x + t).collect();
    out.sort_unstable();
    out
}

fn dilate(xs: &[FieldElement], lambda: FieldElement) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = xs.iter().map(|&x| x * lambda).collect();
    out.sort_unstable();
    out
}

/// Orders an unordered pair: smaller set first, ties broken lexicographically.
fn canonical_pair(a: Vec<FieldElement>, b: Vec<FieldElement>) -> (Vec<FieldElement>, Vec<FieldElement>) {
    if (a.len(), &a) <= (b.len(), &b) {
        (a, b)
    } else {
        (b, a)
    }
}

struct SumSearch {
    field: PrimeField,
    target: BitSet,
    /// `shifted[a]` = `target - a`, the admissible partners of `a`.
    shifted: Vec<BitSet>,
    max_a: usize,
    min_b: usize,
    found: BTreeSet<(Vec<FieldElement>, Vec<FieldElement>)>,
}

impl SumSearch {
    fn sum_cover(&self, a: &[usize], b: &BitSet) -> BitSet {
        let mut s = BitSet::new(self.field.size());
        for &x in a {
            s.union_with(&b.rotate(x));
        }
        s
    }

    fn dfs(&mut self, a: &mut Vec<usize>, b: &BitSet) {
        if a.len() >= 2 && b.count() >= 2 && self.sum_cover(a, b) == self.target {
            let mut a_max = BitSet::full(self.field.size());
            for y in b.iter() {
                a_max.intersect_with(&self.shifted[y]);
            }
            if a_max.count() == a.len() {
                self.record(a, b);
            }
        }
        if a.len() == self.max_a {
            return;
        }
        let last = *a.last().expect("search sets contain 0");
        for x in last + 1..self.field.size() {
            let next = b.intersection(&self.shifted[x]);
            let n = next.count();
            if n < self.min_b || n < a.len() + 1 {
                continue;
            }
            a.push(x);
            self.dfs(a, &next);
            a.pop();
        }
    }

    fn record(&mut self, a: &[usize], b: &BitSet) {
        let a: Vec<FieldElement> = a.iter().map(|&i| self.field.element(i as u64)).collect();
        let b = to_elements(self.field, b);
        for t in self.field.elements() {
            self.found.insert(canonical_pair(translate(&a, t), translate(&b, -t)));
        }
    }
}

/// Every unordered pair `{A, B}` with `|A|, |B| >= 2` and `A + B = Z_d`
/// (`Z_d ∪ {0}` when `with_zero`), for a proper divisor `d` of `p - 1`.
///
/// `B` is always the full intersection `∩_a (Z_d - a)`, and with zero allowed
/// only pairs that are maximal on both sides are reported. Sizes are pruned
/// with `|A||B| = d` (`|A|(|A|-1) <= d` with zero allowed); each hit is then
/// re-validated without those facts.
pub fn search_sum_decompositions(
    field: PrimeField,
    d: u64,
    with_zero: bool,
    cap: u64,
) -> Result<Vec<DecompositionRecord>> {
    check_cap(field, cap)?;
    field.check_proper_divisor(d)?;
    let subgroup = field.subgroup(d)?;
    let target = if with_zero { subgroup.members_with_zero() } else { subgroup.members().clone() };
    let t = target.count() as u64;
    let p = field.size();
    let shifted = (0..p).map(|a| target.rotate(p - a)).collect();
    let max_a = if with_zero {
        (1..).take_while(|&m: &u64| m * (m - 1) <= d).last().unwrap_or(1) as usize
    } else {
        isqrt(d) as usize
    };
    // |A| <= |B| and |A||B| >= |target| force |B| >= √|target|
    let min_b = isqrt(t - 1) as usize + 1;
    let mut search = SumSearch { field, target: target.clone(), shifted, max_a, min_b, found: BTreeSet::new() };
    if max_a >= 2 {
        let start = search.shifted[0].clone();
        search.dfs(&mut alloc::vec![0], &start);
    }

    let kind = if with_zero { DecompositionKind::SumWithZero } else { DecompositionKind::Sum };
    let want = to_elements(field, &target);
    let mut records = Vec::with_capacity(search.found.len());
    for (a, b) in core::mem::take(&mut search.found) {
        if sumset(&a, &b)? != want {
            return Err(Error::CorollaryViolated("emitted pair does not cover the target"));
        }
        let zero_sums = zero_sum_count(&a, &b);
        let product = (a.len() * b.len()) as u64;
        let (unique_sums, product_check) = if with_zero {
            (unique_nonzero_sums(&a, &b), product == d + zero_sums as u64)
        } else {
            (check_unique_sums(&a, &b), product == d)
        };
        if !unique_sums || !product_check {
            return Err(Error::CorollaryViolated("decomposition without distinct sums or |A||B| = d"));
        }
        records.push(DecompositionRecord {
            kind,
            p: field.modulus() as u64,
            d,
            a,
            b: Some(b),
            unique_sums,
            product_check,
            zero_sums,
            paley_form: None,
            symmetry_class: 0,
        });
    }
    assign_symmetry_classes(field, subgroup.elements(), &mut records);
    Ok(records)
}

struct DifferenceSearch<'a> {
    field: PrimeField,
    size: usize,
    /// `neighbors[x]` = `x + Z_d`.
    neighbors: &'a [BitSet],
    found: BTreeSet<Vec<FieldElement>>,
}

impl DifferenceSearch<'_> {
    fn dfs(&mut self, a: &mut Vec<usize>, candidates: &BitSet, diffs: &mut BitSet) {
        if a.len() == self.size {
            let set: Vec<FieldElement> = a.iter().map(|&i| self.field.element(i as u64)).collect();
            for t in self.field.elements() {
                self.found.insert(translate(&set, t));
            }
            return;
        }
        if a.len() + candidates.count() < self.size {
            return;
        }
        let p = self.field.size();
        for x in candidates.iter() {
            // new differences ±(x - y) must be fresh for the cover to be exact
            let mut fresh = true;
            let mut added = Vec::with_capacity(2 * a.len());
            for &y in a.iter() {
                let forward = (x + p - y) % p;
                let backward = p - forward;
                if diffs.contains(forward) || diffs.contains(backward) || forward == backward {
                    fresh = false;
                    break;
                }
                diffs.insert(forward);
                diffs.insert(backward);
                added.push(forward);
                added.push(backward);
            }
            if fresh {
                let mut next = candidates.intersection(&self.neighbors[x]);
                next.clear_through(x);
                a.push(x);
                self.dfs(a, &next, diffs);
                a.pop();
            }
            for i in added {
                diffs.remove(i);
            }
        }
    }
}

/// Every `A ⊆ F_p` (all translates listed) whose nonzero differences are
/// exactly `Z_d`, for even `d` properly dividing `p - 1`.
///
/// Only sizes with `|A|(|A|-1) = d` are searched, and branches that repeat a
/// difference are cut: with `d` targets and `|A|(|A|-1)` differences an exact
/// cover has no repeats.
pub fn search_difference_decompositions(field: PrimeField, d: u64, cap: u64) -> Result<Vec<DecompositionRecord>> {
    check_cap(field, cap)?;
    field.check_divisor(d)?;
    if d % 2 == 1 {
        return Err(Error::OddSubgroupOrder(d));
    }
    field.check_proper_divisor(d)?;
    let p = field.modulus() as u64;
    let subgroup = field.subgroup(d)?;
    let Some(size) = (2..=d + 1).find(|&k| k * (k - 1) == d) else {
        return Ok(Vec::new());
    };
    let n = field.size();
    let neighbors: Vec<BitSet> = (0..n).map(|x| subgroup.members().rotate(x)).collect();
    let mut search = DifferenceSearch { field, size: size as usize, neighbors: &neighbors, found: BTreeSet::new() };
    let mut start = neighbors[0].clone();
    start.remove(0);
    search.dfs(&mut alloc::vec![0], &start, &mut BitSet::new(n));

    let want = subgroup.elements().to_vec();
    let mut records = Vec::with_capacity(search.found.len());
    for a in core::mem::take(&mut search.found) {
        if restricted_differences(&a) != want {
            return Err(Error::CorollaryViolated("emitted set does not have A ∸ A = Z_d"));
        }
        let m = a.len() as u64;
        let unique_sums = m * (m - 1) == restricted_differences(&a).len() as u64;
        let product_check = m * (m - 1) == d;
        let paley = if d == (p - 1) / 2 {
            match paley_form(p) {
                Some(n) => Some(n),
                None => return Err(Error::CorollaryViolated("p is not of the form (n²+1)/2")),
            }
        } else {
            None
        };
        if !unique_sums || !product_check {
            return Err(Error::CorollaryViolated("difference decomposition with repeated differences"));
        }
        records.push(DecompositionRecord {
            kind: DecompositionKind::Difference,
            p,
            d,
            a,
            b: None,
            unique_sums,
            product_check,
            zero_sums: 0,
            paley_form: paley,
            symmetry_class: 0,
        });
    }
    assign_symmetry_classes(field, subgroup.elements(), &mut records);
    Ok(records)
}

type PairKey = (Vec<FieldElement>, Option<Vec<FieldElement>>);

fn key(r: &DecompositionRecord) -> PairKey {
    (r.a.clone(), r.b.clone())
}

/// Numbers orbits under `(A, B) ↦ (λA + t, λB - t)`, `λ ∈ Z_d`, in order of
/// first appearance in the sorted record list.
fn assign_symmetry_classes(field: PrimeField, dilations: &[FieldElement], records: &mut [DecompositionRecord]) {
    let index: BTreeMap<PairKey, usize> = records.iter().enumerate().map(|(i, r)| (key(r), i)).collect();
    let mut class = alloc::vec![usize::MAX; records.len()];
    let mut next = 0;
    for i in 0..records.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let (a, b) = key(&records[i]);
        for &lambda in dilations {
            let (la, lb) = (dilate(&a, lambda), b.as_ref().map(|b| dilate(b, lambda)));
            for t in field.elements() {
                let image = match &lb {
                    Some(lb) => {
                        let (x, y) = canonical_pair(translate(&la, t), translate(lb, -t));
                        (x, Some(y))
                    }
                    None => (translate(&la, t), None),
                };
                if let Some(&j) = index.get(&image) {
                    class[j] = next;
                }
            }
        }
        next += 1;
    }
    for (r, c) in records.iter_mut().zip(class) {
        r.symmetry_class = c;
    }
}
