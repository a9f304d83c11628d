//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients, ascending order. The representation is canonical: the
//! coefficient vector is empty for the zero polynomial and its last
//! entry is nonzero otherwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPolynomial { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// The monomial x.
    pub fn x() -> Self {
        IntPolynomial::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    /// c * x^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPolynomial { coeffs }
    }

    /// From ascending coefficients; trailing zeros are stripped.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients, canonical form.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn evaluate_rational(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + BigRational::from(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the (positive) content, preserving the sign of every
    /// coefficient. Zero stays zero.
    pub fn primitive_part(&self) -> IntPolynomial {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Long division. Every leading-coefficient step must divide exactly
    /// over the integers (always the case for monic divisors, and for the
    /// exact quotients taken in this crate: x, 1-x, (1-x)^2, x+1).
    pub fn divrem(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let dl = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let (c, carry) = rem.leading().unwrap().div_rem(dl);
            if !carry.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "leading coefficient {} not divisible by {}",
                    rem.leading().unwrap(),
                    dl
                )));
            }
            let shift = rd - dd;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem.coeffs[shift + j] -= t;
            }
            rem.normalize();
            quot[shift] = c;
        }
        Ok((IntPolynomial::from_coeffs(quot), rem))
    }

    /// Division known to be exact; errors if a nonzero remainder shows up.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!(
                "nonzero remainder {r} in an exact division"
            )));
        }
        Ok(q)
    }

    /// True iff the coefficient list is palindromic (a_k = a_{n-k}).
    /// Constants (including zero) are reciprocal.
    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    /// For a reciprocal polynomial f of even degree 2s, the degree-s
    /// polynomial g with f(x) = x^s g(x + 1/x), assembled as
    /// g = sum_{k=0}^{s-1} a_k D_{s-k} + a_s from Dickson polynomials.
    pub fn fold_to_reduced(&self) -> Result<IntPolynomial> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::BadInput("cannot fold the zero polynomial".into()))?;
        if deg % 2 != 0 {
            return Err(Error::BadInput(format!("odd degree {deg}, not foldable")));
        }
        if !self.is_reciprocal() {
            return Err(Error::BadInput("not a reciprocal polynomial".into()));
        }
        let s = deg / 2;
        let mut acc = vec![BigInt::zero(); s + 1];
        acc[0] = self.coeffs[s].clone();
        // Rolling Dickson recurrence: D_1 = x, D_2 = x^2 - 2,
        // D_m = x D_{m-1} - D_{m-2}; add a_{s-m} D_m at each step.
        let mut d_prev: Vec<BigInt> = vec![BigInt::from(2)]; // D_0
        let mut d_cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()]; // D_1
        for m in 1..=s {
            let a = &self.coeffs[s - m];
            if !a.is_zero() {
                for (i, dc) in d_cur.iter().enumerate() {
                    if !dc.is_zero() {
                        acc[i] += a * dc;
                    }
                }
            }
            if m < s {
                // D_{m+1} = x*D_m - D_{m-1}
                let mut next = vec![BigInt::zero(); m + 2];
                for (i, dc) in d_cur.iter().enumerate() {
                    next[i + 1] = dc.clone();
                }
                for (i, dc) in d_prev.iter().enumerate() {
                    next[i] -= dc;
                }
                d_prev = std::mem::replace(&mut d_cur, next);
            }
        }
        Ok(IntPolynomial::from_coeffs(acc))
    }
}

/// Dickson polynomial of the first kind with parameter 1: the degree-n
/// polynomial with D_n(t + 1/t) = t^n + t^(-n). D_0 = 2, D_1 = x, and
/// D_n = x D_{n-1} - D_{n-2}.
pub fn dickson(n: usize) -> IntPolynomial {
    match n {
        0 => IntPolynomial::constant(BigInt::from(2)),
        1 => IntPolynomial::x(),
        _ => {
            let x = IntPolynomial::x();
            let mut prev = IntPolynomial::constant(BigInt::from(2));
            let mut cur = IntPolynomial::x();
            for _ in 2..=n {
                let next = &(&x * &cur) - &prev;
                prev = std::mem::replace(&mut cur, next);
            }
            cur
        }
    }
}

/// x^s g(x + 1/x) with denominators cleared: sum_i b_i x^(s-i) (x^2+1)^i
/// for g = sum_i b_i u^i. Requires s >= deg g. This is the independent
/// route used to round-trip [`IntPolynomial::fold_to_reduced`].
pub fn expand_reduced(g: &IntPolynomial, s: usize) -> Result<IntPolynomial> {
    if let Some(d) = g.degree() {
        if d > s {
            return Err(Error::BadInput(format!("deg g = {d} exceeds s = {s}")));
        }
    }
    let x2p1 = IntPolynomial::from_i64_coeffs(&[1, 0, 1]);
    let mut pow = IntPolynomial::one(); // (x^2+1)^i
    let mut acc = IntPolynomial::zero();
    for (i, b) in g.coeffs().iter().enumerate() {
        if !b.is_zero() {
            let term = &IntPolynomial::monomial(b.clone(), s - i) * &pow;
            acc = &acc + &term;
        }
        pow = &pow * &x2p1;
    }
    Ok(acc)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            if let Some(r) = rhs.coeffs.get(k) {
                c += r;
            }
            coeffs.push(c);
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

/// Canonical text form: ascending whitespace-separated decimal
/// coefficients ("c0 c1 c2 ..."); the zero polynomial prints as "0".
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for tok in s.split_whitespace() {
            let c = BigInt::from_str(tok)
                .map_err(|e| Error::BadInput(format!("bad coefficient {tok:?}: {e}")))?;
            coeffs.push(c);
        }
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}
