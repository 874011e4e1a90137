//! Exact computation of the integer polynomials `p_n(b)` in
//!
//! `prod_{k>=1} (1 - q^k)^(b-1) = sum_{n>=0} p_n(b) q^n / n!`
//!
//! together with instance checks of their congruences mod primes.
//!
//! The polynomial type is generic over its scalar ring; the aliases below
//! fix the rings used by the engines.

pub mod cache;
pub mod error;
pub mod eta;
pub mod grouping;
pub mod lemmas;
pub mod modular;
pub mod partitions;
pub mod poly;
pub mod theorems;

pub use error::{Error, Result};
pub use poly::{DensePolynomial, Scalar};

/// Exact integer polynomials; `p_n(b)` lives here.
pub type IntPoly = DensePolynomial<num_bigint::BigInt>;
/// Exact rational polynomials used by the oracles.
pub type RatPoly = DensePolynomial<num_rational::BigRational>;
/// Machine-integer polynomials for small brute-force work.
pub type SmallPoly = DensePolynomial<i64>;
