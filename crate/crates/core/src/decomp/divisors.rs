//! Counts of integers and shifted primes with a divisor in `(y, z]`.
//!
//! With `τ(n; y, z)` the number of divisors of `n` in `(y, z]`:
//! `H(x, y, z)` counts `1 <= n <= x` with `τ(n; y, z) >= 1`, and
//! `P(x, y, z)` counts primes `p <= x` with `τ(p - 1; y, z) >= 1`.

use crate::arith::prime_sieve;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Default largest `x` for the sieve.
pub const SIEVE_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorCountReport {
    pub x: u64,
    pub y: f64,
    pub z: f64,
    /// `P(x, y, z)`.
    pub shifted_primes: u64,
    /// `H(x, y, z)`.
    pub integers: u64,
    /// `π(x)`.
    pub pi_x: u64,
}

impl DivisorCountReport {
    /// `P(x, y, z) / π(x)`, zero when there are no primes up to `x`.
    pub fn prime_fraction(&self) -> f64 {
        if self.pi_x == 0 {
            0.0
        } else {
            self.shifted_primes as f64 / self.pi_x as f64
        }
    }
}

/// `n <= x` (as bit `n`) that have a divisor in `(y, z]`.
fn has_divisor_in_range(x: u64, y: f64, z: f64) -> BitSet {
    let mut marked = BitSet::new(x as usize + 1);
    let lo = libm::floor(y) as u64 + 1;
    let hi = (libm::floor(z) as u64).min(x);
    for delta in lo..=hi {
        let mut m = delta;
        while m <= x {
            marked.insert(m as usize);
            m += delta;
        }
    }
    marked
}

pub fn divisor_range_counts(x: u64, y: f64, z: f64, cap: u64) -> Result<DivisorCountReport> {
    if !(y.is_finite() && z.is_finite() && y > 0.0 && y < z) || x == 0 {
        return Err(Error::BadRange);
    }
    if x > cap {
        return Err(Error::CapExceeded { value: x, cap });
    }
    let marked = has_divisor_in_range(x, y, z);
    let primes = prime_sieve(x);
    let shifted_primes = primes.iter().filter(|&q| marked.contains(q - 1)).count() as u64;
    Ok(DivisorCountReport { x, y, z, shifted_primes, integers: marked.count() as u64, pi_x: primes.count() as u64 })
}

/// The slice `y = √x / 100`, `z = √x`.
pub fn sqrt_slice_counts(x: u64, cap: u64) -> Result<DivisorCountReport> {
    let z = libm::sqrt(x as f64);
    divisor_range_counts(x, z / 100.0, z, cap)
}
