//! Exact computer algebra for Fekete polynomials and their arithmetic.
//!
//! For an odd prime `p`, the Fekete polynomial is
//! `F_p(x) = sum_{a=1}^{p-1} (a/p) x^a` where `(a/p)` is the Legendre
//! symbol. Dividing out the trivial roots at 0, 1 (and -1 when
//! `p = 1 mod 4`) leaves a reciprocal polynomial `f_p` of even degree,
//! which folds through `f_p(x) = x^s g_p(x + 1/x)` into the reduced
//! polynomial `g_p` of degree `s = deg(f_p)/2`.
//!
//! This crate constructs all three polynomials exactly, verifies the
//! special-value identities that tie `g_p(-2), ..., g_p(2)` to class
//! numbers of imaginary quadratic fields and generalized Bernoulli
//! numbers, factors the reductions of `f_p` and `g_p` over prime fields,
//! and searches for/validates finite-field certificates that pin the
//! Galois groups of `g_p` and `f_p` down to `S_n` and `(Z/2)^n x| S_n`.
//!
//! Every computation is exact: arbitrary-precision integers and
//! rationals, no floating point anywhere.

pub mod arith;
pub mod bernoulli;
pub mod class_numbers;
mod error;
pub mod fekete;
pub mod ff_factor;
pub mod galois_certify;
pub mod modular_props;
pub mod polynomials;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
