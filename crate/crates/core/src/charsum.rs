//! Multiplicative character sums over sumsets:
//! `S_χ(A, B) = Σ χ(a + b)` and `S_χ(A, B, C) = Σ χ(a + b + c)`.
//!
//! Sums are accumulated as exact histograms of character exponents. For
//! characters of order at most 2 the histogram gives an exact integer; for
//! higher orders it is combined with the table of roots of unity once.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::character::CharacterTable;
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Absolute tolerance for floating-point bound comparisons.
pub const BOUND_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct CharSumResult {
    pub value: Complex64,
    /// Set for characters of order at most 2.
    pub exact: Option<i64>,
    /// `|A||B|` or `|A||B||C|`.
    pub trivial_bound: u64,
    /// `√(p|A||B|)`, double sums only.
    pub vinogradov_bound: Option<f64>,
    /// `|S| < trivial_bound`.
    pub nontrivial: bool,
}

impl CharSumResult {
    pub fn modulus(&self) -> f64 {
        match self.exact {
            Some(v) => v.unsigned_abs() as f64,
            None => self.value.norm(),
        }
    }
}

fn check_all(field: PrimeField, sets: &[&[FieldElement]]) -> Result<()> {
    sets.iter().flat_map(|s| s.iter()).try_for_each(|&x| field.check(x))
}

fn finish(
    chi: &CharacterTable,
    histogram: &[u64],
    zeros: u64,
    trivial_bound: u64,
    vinogradov: Option<f64>,
) -> CharSumResult {
    let exact = (chi.order() <= 2).then(|| {
        let plus = histogram[0] as i64;
        let minus = histogram.get(1).copied().unwrap_or(0) as i64;
        plus - minus
    });
    debug_assert_eq!(histogram.iter().sum::<u64>() + zeros, trivial_bound);
    let value = match exact {
        Some(v) => Complex64::new(v as f64, 0.0),
        None => chi.combine(histogram),
    };
    let nontrivial = match exact {
        Some(v) => v.unsigned_abs() < trivial_bound,
        None => value.norm() < trivial_bound as f64 - BOUND_TOLERANCE,
    };
    CharSumResult { value, exact, trivial_bound, vinogradov_bound: vinogradov, nontrivial }
}

pub fn char_sum_double(chi: &CharacterTable, a: &[FieldElement], b: &[FieldElement]) -> Result<CharSumResult> {
    let field = chi.field();
    check_all(field, &[a, b])?;
    let mut histogram = vec![0u64; chi.order() as usize];
    let mut zeros = 0;
    for &x in a {
        for &y in b {
            match chi.exponent(x + y) {
                Some(k) => histogram[k as usize] += 1,
                None => zeros += 1,
            }
        }
    }
    let n = (a.len() * b.len()) as u64;
    let vinogradov = libm::sqrt(field.modulus() as f64 * n as f64);
    Ok(finish(chi, &histogram, zeros, n, Some(vinogradov)))
}

pub fn char_sum_triple(
    chi: &CharacterTable,
    a: &[FieldElement],
    b: &[FieldElement],
    c: &[FieldElement],
) -> Result<CharSumResult> {
    let field = chi.field();
    check_all(field, &[a, b, c])?;
    let mut histogram = vec![0u64; chi.order() as usize];
    let mut zeros = 0;
    for &x in a {
        for &y in b {
            let s = x + y;
            for &z in c {
                match chi.exponent(s + z) {
                    Some(k) => histogram[k as usize] += 1,
                    None => zeros += 1,
                }
            }
        }
    }
    let n = (a.len() * b.len() * c.len()) as u64;
    Ok(finish(chi, &histogram, zeros, n, None))
}

/// `|S_χ(A, B)| <= √(p|A||B|)`. Exact for quadratic characters (compares
/// `S² <= p|A||B|` in integers), within [`BOUND_TOLERANCE`] otherwise.
///
/// The estimate is a theorem, so `Ok(false)` means the implementation is
/// wrong; callers treat it as fatal.
pub fn vinogradov_check(chi: &CharacterTable, a: &[FieldElement], b: &[FieldElement]) -> Result<bool> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let s = char_sum_double(chi, a, b)?;
    let rhs = chi.field().modulus() as u128 * (a.len() * b.len()) as u128;
    Ok(match s.exact {
        Some(v) => (v as i128 * v as i128) as u128 <= rhs,
        None => s.value.norm() <= s.vinogradov_bound.unwrap_or(0.0) + BOUND_TOLERANCE,
    })
}

/// Distribution of `|S_χ(A, B)| / (|A||B|)` over random sets of size
/// `⌈p^ε⌉`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanSummary {
    pub p: u64,
    pub order: u64,
    pub epsilon: f64,
    pub seed: u64,
    pub trials: u64,
    pub set_size: usize,
    pub ratios: Vec<f64>,
    /// Ten equal-width bins over `[0, 1]`; a ratio of exactly 1 lands in the last.
    pub histogram: [u64; 10],
    pub nontrivial_count: u64,
}

impl ScanSummary {
    pub fn max_ratio(&self) -> Option<f64> {
        self.ratios.iter().copied().reduce(f64::max)
    }

    pub fn min_ratio(&self) -> Option<f64> {
        self.ratios.iter().copied().reduce(f64::min)
    }

    pub fn mean_ratio(&self) -> Option<f64> {
        (!self.ratios.is_empty()).then(|| self.ratios.iter().sum::<f64>() / self.ratios.len() as f64)
    }
}

pub fn scan_set_size(p: u64, epsilon: f64) -> usize {
    (libm::ceil(libm::pow(p as f64, epsilon)) as usize).clamp(1, p as usize)
}

/// Random `k`-subset of `F_p` for one trial; each trial has its own ChaCha
/// stream under the master seed, so trials can run in any order.
pub fn sample_pair(field: PrimeField, k: usize, seed: u64, trial: u64) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut draw = || {
        let mut s: Vec<FieldElement> =
            index::sample(&mut rng, field.size(), k).into_iter().map(|i| field.element(i as u64)).collect();
        s.sort_unstable();
        s
    };
    let a = draw();
    let b = draw();
    (a, b)
}

/// Ratio `|S_χ(A, B)| / (|A||B|)` and nontriviality for one trial.
pub fn scan_trial(chi: &CharacterTable, k: usize, seed: u64, trial: u64) -> Result<(f64, bool)> {
    let (a, b) = sample_pair(chi.field(), k, seed, trial);
    let s = char_sum_double(chi, &a, &b)?;
    Ok((s.modulus() / s.trivial_bound as f64, s.nontrivial))
}

/// Assembles a summary from per-trial results listed in trial order.
pub fn summarize_scan(
    chi: &CharacterTable,
    epsilon: f64,
    seed: u64,
    set_size: usize,
    results: &[(f64, bool)],
) -> ScanSummary {
    let mut histogram = [0u64; 10];
    for &(ratio, _) in results {
        let bin = ((ratio * 10.0) as usize).min(9);
        histogram[bin] += 1;
    }
    ScanSummary {
        p: chi.field().modulus() as u64,
        order: chi.order(),
        epsilon,
        seed,
        trials: results.len() as u64,
        set_size,
        ratios: results.iter().map(|r| r.0).collect(),
        histogram,
        nontrivial_count: results.iter().filter(|r| r.1).count() as u64,
    }
}

pub fn nontriviality_scan(chi: &CharacterTable, epsilon: f64, trials: u64, seed: u64) -> Result<ScanSummary> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::BadRange);
    }
    let k = scan_set_size(chi.field().modulus() as u64, epsilon);
    let results = (0..trials).map(|t| scan_trial(chi, k, seed, t)).collect::<Result<Vec<_>>>()?;
    Ok(summarize_scan(chi, epsilon, seed, k, &results))
}
