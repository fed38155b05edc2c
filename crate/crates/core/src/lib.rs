//! Exact arithmetic and exhaustive searches around sumsets contained in the
//! `d`-th roots of unity `Z_d` of a prime field.
//!
//! * [`field`], [`character`] and [`poly`]: arithmetic in `F_p`, multiplicative
//!   characters and dense polynomials.
//! * [`stepanov`]: auxiliary-polynomial certificates for
//!   `|A| |B| <= d + |B ∩ (-A)|` whenever `A + B ⊆ Z_d ∪ {0}`.
//! * [`clique`]: exact clique numbers of the Cayley graphs `Cay(F_p, Z_d)`,
//!   Paley graphs included.
//! * [`decomp`]: exhaustive searches for `A + B = Z_d` and `A ∸ A = Z_d`,
//!   plus divisor-in-interval counts.
//! * [`charsum`]: double and triple character sums against Vinogradov's bound.
//!
//! The crate is `no_std` and only needs `alloc`; IO, timing and file formats
//! live in the companion `sumroots` crate.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod bitset;
pub mod character;
pub mod charsum;
pub mod clique;
pub mod decomp;
pub mod error;
pub mod field;
pub mod poly;
pub mod stepanov;

pub use character::CharacterTable;
pub use error::{Error, Result};
pub use field::{FieldElement, MultSubgroup, PrimeField};
pub use poly::DensePolynomial;
