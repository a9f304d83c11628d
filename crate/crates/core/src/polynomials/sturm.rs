//! Exact real-root counting on open rational intervals via Sturm
//! sequences. Everything runs in integer/rational arithmetic; no
//! floating point filters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::int_poly::IntPolynomial;
use crate::{Error, Result};

/// Number of distinct real roots of f in the open interval (lo, hi).
///
/// The canonical Sturm chain f, f', -rem(...), ... is computed with
/// content stripping (positive scalars only, so sign variation counts
/// are untouched). The documented precondition asks for f squarefree on
/// the interval; the chain as computed here in fact counts *distinct*
/// roots even for non-squarefree f, because dividing the whole chain by
/// gcd(f, f') rescales every element by the same sign at any non-root
/// point.
///
/// Errors: lo >= hi, zero polynomial, or an endpoint that is itself a
/// root (callers must perturb the interval).
pub fn sturm_root_count(
    f: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<usize> {
    if lo >= hi {
        return Err(Error::BadInput(format!("empty interval ({lo}, {hi})")));
    }
    if f.is_zero() {
        return Err(Error::BadInput("zero polynomial has no root count".into()));
    }
    if f.evaluate_rational(lo).is_zero() || f.evaluate_rational(hi).is_zero() {
        return Err(Error::BadInput(
            "interval endpoint is a root; perturb the endpoint".into(),
        ));
    }
    if f.degree() == Some(0) {
        return Ok(0);
    }

    let chain = sturm_chain(f);
    let v_lo = sign_variations(&chain, lo);
    let v_hi = sign_variations(&chain, hi);
    if v_lo < v_hi {
        return Err(Error::Defect(format!(
            "sign variations increased across ({lo}, {hi})"
        )));
    }
    Ok(v_lo - v_hi)
}

fn sturm_chain(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![f.primitive_part(), f.derivative().primitive_part()];
    loop {
        let a = &chain[chain.len() - 2];
        let b = &chain[chain.len() - 1];
        if b.is_zero() || b.degree() == Some(0) {
            break;
        }
        let next = negated_remainder(a, b).primitive_part();
        if next.is_zero() {
            break;
        }
        chain.push(next);
    }
    chain
}

/// A positive scalar multiple of -rem(a, b). Each elimination step
/// scales by lc(b) once, so after k steps the buffer holds
/// lc(b)^k a - q b; dividing by lc(b)^k would recover rem(a, b), and
/// only the sign of that scale matters here.
fn negated_remainder(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().unwrap();
    let d = b.leading().unwrap().clone();
    let mut r = a.clone();
    let mut steps = 0u32;
    while let Some(rd) = r.degree() {
        if rd < db {
            break;
        }
        let lead = r.leading().unwrap().clone();
        let mut coeffs: Vec<BigInt> = r.coeffs().iter().map(|c| c * &d).collect();
        for (j, bc) in b.coeffs().iter().enumerate() {
            coeffs[rd - db + j] -= &lead * bc;
        }
        r = IntPolynomial::from_coeffs(coeffs);
        steps += 1;
    }
    let scale_negative = d.is_negative() && steps % 2 == 1;
    if scale_negative {
        r
    } else {
        -&r
    }
}

fn sign_variations(chain: &[IntPolynomial], at: &BigRational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None; // sign as is_positive
    for p in chain {
        let v = p.evaluate_rational(at);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_coeffs(cs)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn simple_counts() {
        // x^2 - 2 on (0, 2): one root at sqrt(2)
        assert_eq!(
            sturm_root_count(&poly(&[-2, 0, 1]), &rat(0, 1), &rat(2, 1)).unwrap(),
            1
        );
        // x^2 + 1 has no real roots
        assert_eq!(
            sturm_root_count(&poly(&[1, 0, 1]), &rat(-10, 1), &rat(10, 1)).unwrap(),
            0
        );
        // (x-1)(x-2)(x-3) on (1/2, 5/2) -> roots 1, 2
        assert_eq!(
            sturm_root_count(&poly(&[-6, 11, -6, 1]), &rat(1, 2), &rat(5, 2)).unwrap(),
            2
        );
    }

    #[test]
    fn endpoint_root_rejected() {
        let f = poly(&[-2, 0, 1]);
        assert!(sturm_root_count(&f, &rat(0, 1), &rat(0, 1)).is_err());
        // hi = sqrt(2) is irrational so use f = x^2 - 4 and hi = 2
        let g = poly(&[-4, 0, 1]);
        assert!(sturm_root_count(&g, &rat(0, 1), &rat(2, 1)).is_err());
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x-1)^2 (x+3) on (-4, 4): distinct roots 1 and -3
        let f = &(&poly(&[-1, 1]) * &poly(&[-1, 1])) * &poly(&[3, 1]);
        assert_eq!(sturm_root_count(&f, &rat(-4, 1), &rat(4, 1)).unwrap(), 2);
    }

    #[test]
    fn negative_leading_coefficients() {
        // -(x^2 - 2) = -x^2 + 2: same single root in (0, 2)
        assert_eq!(
            sturm_root_count(&poly(&[2, 0, -1]), &rat(0, 1), &rat(2, 1)).unwrap(),
            1
        );
        // -(x-1)(x-2)(x-3)(x+5)
        let f = -&(&(&poly(&[-1, 1]) * &poly(&[-2, 1])) * &(&poly(&[-3, 1]) * &poly(&[5, 1])));
        assert_eq!(sturm_root_count(&f, &rat(-6, 1), &rat(7, 2)).unwrap(), 4);
    }
}
