//! Dense univariate polynomials over a prime field F_q with a
//! machine-word modulus, plus the factorization-pattern type.
//!
//! Coefficients live in [0, q) in ascending order; the vector is empty
//! for zero and its last entry is nonzero otherwise. Moduli are capped
//! at 2^31 so products fit comfortably in the accumulation kernels; for
//! q < 2^20 (which covers the default certificate search bound of 10^6)
//! multiplication and reduction run on u64 accumulators with one
//! deferred reduction per output coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::int_poly::IntPolynomial;
use crate::arith::{inv_mod_u64, is_prime_u64, mul_mod_u64};
use crate::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// Threshold below which the u64 lazy-accumulation kernels are safe:
/// (q-1)^2 < 2^40 and position fan-in stays under 2^24 terms.
pub(crate) const LAZY_LIMIT: u64 = 1 << 20;

/// Barrett reducer for x mod q with x < 2^44 and q < 2^20: the scaled
/// reciprocal m = floor(2^84 / q) underestimates the quotient by at
/// most one, so a single correcting subtraction finishes the job.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Reducer {
    q: u64,
    m: u128,
}

impl Reducer {
    pub(crate) fn new(q: u64) -> Self {
        debug_assert!(q < LAZY_LIMIT);
        Reducer {
            q,
            m: (1u128 << 84) / q as u128,
        }
    }

    // valid for x < q * 2^44 (so x * m stays inside u128); every lazy
    // accumulator in this crate is bounded by 2^23 * q^2 <= q * 2^43
    #[inline]
    pub(crate) fn reduce(&self, x: u64) -> u64 {
        debug_assert!(x < self.q << 44);
        let t = ((x as u128 * self.m) >> 84) as u64;
        let r = x - t * self.q;
        if r >= self.q {
            r - self.q
        } else {
            r
        }
    }

    /// a * b mod q for reduced operands.
    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModPolynomial {
    q: u64,
    coeffs: Vec<u64>,
}

impl ModPolynomial {
    /// Build from residues, validating the modulus: q must be prime and
    /// below [`MAX_MODULUS`].
    pub fn new(q: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_modulus(q)?;
        let coeffs = coeffs.into_iter().map(|c| c % q).collect();
        Ok(Self::from_reduced(q, coeffs))
    }

    fn from_reduced(q: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPolynomial { q, coeffs }
    }

    /// Coefficientwise reduction of an integer polynomial mod q.
    pub fn reduce(f: &IntPolynomial, q: u64) -> Result<Self> {
        check_modulus(q)?;
        let qb = BigInt::from(q);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let mut r = c % &qb;
                if r.is_negative() {
                    r += &qb;
                }
                r.to_u64().unwrap()
            })
            .collect();
        Ok(Self::from_reduced(q, coeffs))
    }

    pub fn zero(q: u64) -> Self {
        ModPolynomial { q, coeffs: Vec::new() }
    }

    pub fn constant(q: u64, c: u64) -> Self {
        Self::from_reduced(q, vec![c % q])
    }

    pub fn x(q: u64) -> Self {
        ModPolynomial { q, coeffs: vec![0, 1] }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    pub fn evaluate(&self, t: u64) -> u64 {
        let t = t % self.q;
        if self.q < LAZY_LIMIT {
            let red = Reducer::new(self.q);
            let mut acc = 0u64;
            for &c in self.coeffs.iter().rev() {
                acc = red.reduce(acc * t + c);
            }
            acc
        } else {
            let mut acc = 0u64;
            for &c in self.coeffs.iter().rev() {
                acc = (mul_mod_u64(acc, t, self.q) + c) % self.q;
            }
            acc
        }
    }

    pub fn derivative(&self) -> ModPolynomial {
        if self.coeffs.len() <= 1 {
            return ModPolynomial::zero(self.q);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mul_mod_u64(c, k as u64 % self.q, self.q))
            .collect();
        Self::from_reduced(self.q, coeffs)
    }

    fn assert_same_field(&self, rhs: &ModPolynomial) {
        assert_eq!(self.q, rhs.q, "mixed moduli {} and {}", self.q, rhs.q);
    }

    pub fn add(&self, rhs: &ModPolynomial) -> ModPolynomial {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeff(k);
            let b = rhs.coeff(k);
            coeffs.push((a + b) % self.q);
        }
        Self::from_reduced(self.q, coeffs)
    }

    pub fn sub(&self, rhs: &ModPolynomial) -> ModPolynomial {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeff(k);
            let b = rhs.coeff(k);
            coeffs.push((a + self.q - b) % self.q);
        }
        Self::from_reduced(self.q, coeffs)
    }

    pub fn scale(&self, c: u64) -> ModPolynomial {
        let c = c % self.q;
        let coeffs = if self.q < LAZY_LIMIT {
            let red = Reducer::new(self.q);
            self.coeffs.iter().map(|&a| red.mul(a, c)).collect()
        } else {
            self.coeffs.iter().map(|&a| mul_mod_u64(a, c, self.q)).collect()
        };
        Self::from_reduced(self.q, coeffs)
    }

    pub fn mul(&self, rhs: &ModPolynomial) -> ModPolynomial {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return ModPolynomial::zero(self.q);
        }
        let q = self.q;
        let out_len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let coeffs = if q < LAZY_LIMIT && out_len < (1 << 23) {
            let a: Vec<u32> = self.coeffs.iter().map(|&c| c as u32).collect();
            let b: Vec<u32> = rhs.coeffs.iter().map(|&c| c as u32).collect();
            let mut acc = vec![0u64; out_len];
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                let dst = &mut acc[i..i + b.len()];
                // u32 x u32 widening products vectorize; fan-in stays
                // below 2^23 terms of < 2^40 each
                for (slot, &bj) in dst.iter_mut().zip(b.iter()) {
                    *slot += ai as u64 * bj as u64;
                }
            }
            let red = Reducer::new(q);
            acc.into_iter().map(|v| red.reduce(v)).collect()
        } else {
            let mut acc = vec![0u128; out_len];
            for (i, &ai) in self.coeffs.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                let ai = ai as u128;
                let dst = &mut acc[i..i + rhs.coeffs.len()];
                for (slot, &bj) in dst.iter_mut().zip(rhs.coeffs.iter()) {
                    *slot += ai * bj as u128;
                }
            }
            acc.into_iter().map(|v| (v % q as u128) as u64).collect()
        };
        Self::from_reduced(q, coeffs)
    }

    /// Multiply by x and reduce mod a monic modulus polynomial. O(deg).
    pub fn mul_by_x_mod(&self, modulus: &ModPolynomial) -> ModPolynomial {
        self.assert_same_field(modulus);
        debug_assert!(modulus.is_monic());
        let q = self.q;
        let m = modulus.degree().expect("monic modulus");
        let mut coeffs = vec![0u64; (self.coeffs.len() + 1).min(m + 1)];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k < m {
                coeffs[k + 1] = c;
            }
        }
        // overflow term c_{m-1} x^m folds back through the modulus
        if self.coeffs.len() == m {
            let top = *self.coeffs.last().unwrap();
            if top != 0 {
                for (j, slot) in coeffs.iter_mut().enumerate().take(m) {
                    let sub = mul_mod_u64(top, modulus.coeffs[j], q);
                    *slot = (*slot + q - sub) % q;
                }
            }
        }
        coeffs.truncate(m);
        Self::from_reduced(q, coeffs)
    }

    /// (quotient, remainder) with remainder degree < divisor degree.
    pub fn divrem(&self, divisor: &ModPolynomial) -> Result<(ModPolynomial, ModPolynomial)> {
        self.assert_same_field(divisor);
        let dl = divisor.leading().ok_or(Error::DivisionByZero)?;
        if dl == 1 {
            return Ok(self.divrem_monic(divisor));
        }
        let inv = inv_mod_u64(dl, self.q)?;
        let monic = divisor.scale(inv);
        let (quot, rem) = self.divrem_monic(&monic);
        Ok((quot.scale(inv), rem))
    }

    fn divrem_monic(&self, divisor: &ModPolynomial) -> (ModPolynomial, ModPolynomial) {
        let q = self.q;
        let m = divisor.degree().unwrap();
        if self.coeffs.len() <= m {
            return (ModPolynomial::zero(q), self.clone());
        }
        if q < LAZY_LIMIT && self.coeffs.len() < (1 << 23) {
            // lazy kernel: subtraction becomes addition of c*(q - d_j);
            // positions are only written from strictly higher pivots, so
            // reducing at read time is sound
            let red = Reducer::new(q);
            let neg: Vec<u32> = divisor.coeffs.iter().map(|&d| (q - d % q) as u32).collect();
            let mut w: Vec<u64> = self.coeffs.clone();
            for k in (m..w.len()).rev() {
                let c = red.reduce(w[k]);
                w[k] = c;
                if c != 0 {
                    let c32 = c as u32;
                    let dst = &mut w[k - m..k];
                    for (slot, &nj) in dst.iter_mut().zip(neg.iter()) {
                        *slot += c32 as u64 * nj as u64;
                    }
                }
            }
            for slot in w[..m].iter_mut() {
                *slot = red.reduce(*slot);
            }
            let rem = Self::from_reduced(q, w[..m].to_vec());
            let quot = Self::from_reduced(q, w[m..].to_vec());
            (quot, rem)
        } else {
            let mut w: Vec<u64> = self.coeffs.clone();
            for k in (m..w.len()).rev() {
                let c = w[k];
                if c != 0 {
                    for j in 0..m {
                        let sub = mul_mod_u64(c, divisor.coeffs[j], q);
                        w[k - m + j] = (w[k - m + j] + q - sub) % q;
                    }
                }
            }
            let rem = Self::from_reduced(q, w[..m].to_vec());
            let quot = Self::from_reduced(q, w[m..].to_vec());
            (quot, rem)
        }
    }

    pub fn rem(&self, divisor: &ModPolynomial) -> Result<ModPolynomial> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Product reduced mod a monic modulus polynomial.
    pub fn mul_mod(&self, rhs: &ModPolynomial, modulus: &ModPolynomial) -> ModPolynomial {
        self.mul(rhs).divrem_monic(modulus).1
    }

    /// self^e reduced mod a monic modulus polynomial.
    pub fn pow_mod(&self, mut e: u64, modulus: &ModPolynomial) -> ModPolynomial {
        let mut base = self.divrem_monic(modulus).1;
        let mut acc = ModPolynomial::constant(self.q, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// Monic gcd (gcd of zero polynomials is zero).
    pub fn gcd(&self, rhs: &ModPolynomial) -> ModPolynomial {
        self.assert_same_field(rhs);
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.into_monic().1
    }

    /// Split into (unit, monic polynomial); zero stays (1, zero).
    pub fn into_monic(self) -> (u64, ModPolynomial) {
        match self.leading() {
            None => (1, self),
            Some(1) => (1, self),
            Some(l) => {
                let inv = inv_mod_u64(l, self.q).expect("prime modulus");
                (l, self.scale(inv))
            }
        }
    }

    /// Substitute x -> x^(1/q) on a polynomial whose only monomials are
    /// powers of x^q (valid since scalars are Frobenius-fixed in F_q).
    pub(crate) fn qth_root(&self) -> ModPolynomial {
        let q = self.q as usize;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / q + 1);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k % q == 0 {
                coeffs.push(c);
            } else {
                debug_assert_eq!(c, 0, "not a q-th power");
            }
        }
        Self::from_reduced(self.q, coeffs)
    }

    /// Lift back to integer coefficients in [0, q).
    pub fn lift(&self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// Reduction context for one monic modulus: the rows x^(n+i) mod f are
/// precomputed (O(n^2) total through multiply-by-x), so reducing a
/// product becomes one linear combination instead of long division.
/// Only built for moduli under the lazy threshold; larger fields fall
/// back to plain division.
pub(crate) struct MonicCtx {
    modulus: ModPolynomial,
    n: usize,
    fast: Option<FastReduce>,
}

struct FastReduce {
    red: Reducer,
    /// n rows of n u32 coefficients, row i = x^(n+i) mod f.
    rows: Vec<u32>,
}

impl MonicCtx {
    pub(crate) fn new(modulus: &ModPolynomial) -> Self {
        debug_assert!(modulus.is_monic());
        let n = modulus.degree().expect("monic modulus");
        let q = modulus.modulus();
        let fast = if q < LAZY_LIMIT && n >= 2 && n < (1 << 16) {
            let red = Reducer::new(q);
            let mut rows = vec![0u32; n * n];
            // x^n mod f = -(low part of f)
            let mut cur = ModPolynomial::from_reduced(
                q,
                modulus.coeffs[..n].iter().map(|&c| (q - c) % q).collect(),
            );
            for i in 0..n {
                for (j, &c) in cur.coeffs.iter().enumerate() {
                    rows[i * n + j] = c as u32;
                }
                if i + 1 < n {
                    cur = cur.mul_by_x_mod(modulus);
                }
            }
            Some(FastReduce { red, rows })
        } else {
            None
        };
        MonicCtx {
            modulus: modulus.clone(),
            n,
            fast,
        }
    }

    pub(crate) fn modulus(&self) -> &ModPolynomial {
        &self.modulus
    }

    /// Reduce an already coefficient-reduced polynomial mod the modulus.
    /// The row table covers degrees up to 2n - 1, which every product of
    /// two reduced operands satisfies; anything longer long-divides.
    pub(crate) fn reduce(&self, value: ModPolynomial) -> ModPolynomial {
        if value.degree().is_none_or(|d| d < self.n) {
            return value;
        }
        if value.coeffs.len() > 2 * self.n {
            return value.divrem_monic(&self.modulus).1;
        }
        match &self.fast {
            Some(fr) => {
                let n = self.n;
                let mut acc: Vec<u64> = value.coeffs[..n].to_vec();
                for (i, &hi) in value.coeffs[n..].iter().enumerate() {
                    if hi == 0 {
                        continue;
                    }
                    let hi32 = hi as u32;
                    let row = &fr.rows[i * n..(i + 1) * n];
                    for (slot, &c) in acc.iter_mut().zip(row) {
                        *slot += hi32 as u64 * c as u64;
                    }
                }
                ModPolynomial::from_reduced(
                    value.q,
                    acc.into_iter().map(|v| fr.red.reduce(v)).collect(),
                )
            }
            None => value.divrem_monic(&self.modulus).1,
        }
    }

    pub(crate) fn mul_mod(&self, a: &ModPolynomial, b: &ModPolynomial) -> ModPolynomial {
        self.reduce(a.mul(b))
    }

    pub(crate) fn pow_mod(&self, base: &ModPolynomial, mut e: u64) -> ModPolynomial {
        let mut base = self.reduce(base.clone());
        let mut acc = ModPolynomial::constant(self.modulus.modulus(), 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base);
            }
        }
        acc
    }
}

impl fmt::Display for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn check_modulus(q: u64) -> Result<()> {
    if q >= MAX_MODULUS {
        return Err(Error::OutOfRange(format!(
            "modulus {q} >= 2^31 is outside the supported operating range"
        )));
    }
    if !is_prime_u64(q) {
        return Err(Error::BadModulus(format!("{q} is not prime")));
    }
    Ok(())
}

/// Multiset of (degree, multiplicity) pairs, one entry per distinct
/// irreducible factor, sorted ascending by degree then multiplicity.
/// This is the Frobenius cycle-type witness attached to certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationPattern(Vec<(u32, u32)>);

impl FactorizationPattern {
    pub fn new(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        FactorizationPattern(pairs)
    }

    /// One (degree, multiplicity) entry per distinct irreducible factor.
    pub fn entries(&self) -> &[(u32, u32)] {
        &self.0
    }

    /// Sum of degree * multiplicity, which must equal the degree of the
    /// factored polynomial.
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&(d, m)| d as u64 * m as u64).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, m)| m == 1)
    }

    pub fn num_factors(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for FactorizationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(d, m)| if *m == 1 { format!("{d}") } else { format!("{d}^{m}") })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
