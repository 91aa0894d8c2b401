//! Meet and join matrices over finite posets.
//!
//! Given a finite poset, a subset `S = {x_1, …, x_n}` and a function `f` on
//! the poset, the meet matrix has `f(x_i ∧ x_j)` at `(i, j)` and the join
//! matrix has `f(x_i ∨ x_j)`. This crate builds both, factors them through
//! Möbius inversion, decides positive definiteness with re-checkable
//! certificates, classifies the order-theoretic shape of `S` (closed, chain,
//! tree set, A-set) and bounds the eigenvalues when `f` is monotone.
//!
//! Exact work uses [`Rational`]; floats appear only in [`spectral`] and in
//! the float path for irrational exponents. The crate is `no_std` and needs
//! only `alloc`.

#![no_std]

extern crate alloc;

pub mod definiteness;
pub mod error;
pub mod matrix;
pub mod mobius;
pub mod numtheory;
pub mod poset;
pub mod spectral;

pub use error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
