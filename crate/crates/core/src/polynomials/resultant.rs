//! Resultants by subresultant polynomial remainder sequences, and monic
//! discriminants.
//!
//! Sign convention, fixed and tested against a Sylvester-determinant
//! oracle: `resultant(f, g)` is the determinant of the Sylvester matrix
//! whose g-rows come first, i.e. `lc(g)^deg(f) * prod f(beta)` over the
//! roots beta of g. In particular `resultant(x - a, x - b) = b - a` and
//! `resultant(f, f') = det Sylvester(f, f')` for every f (the degree
//! product deg(f) * deg(f') is always even), so the usual discriminant
//! formula is unaffected by the choice.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::int_poly::IntPolynomial;
use crate::{Error, Result};

/// Pseudo-remainder: the R with lc(b)^(deg a - deg b + 1) a = q b + R.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("pseudo_rem by zero");
    let d = b.leading().unwrap().clone();
    let mut r = a.clone();
    let mut scale_left = (a.degree().unwrap_or(0) + 1).saturating_sub(db);
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
        scale_left -= 1;
    }
    // pad so the total scaling is exactly d^(delta+1)
    for _ in 0..scale_left {
        r = &r * &IntPolynomial::constant(d.clone());
    }
    r
}

/// Sylvester-first resultant: lc(a)^deg(b) * prod b(alpha) over roots
/// alpha of a. Subresultant PRS keeps intermediate coefficients at
/// determinant size instead of blowing up exponentially.
fn resultant_sylvester(a: &IntPolynomial, b: &IntPolynomial) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if da == 0 {
        return Ok(a.leading().unwrap().pow(db as u32));
    }
    if db == 0 {
        return Ok(b.leading().unwrap().pow(da as u32));
    }

    let mut s = BigInt::one();
    let (mut fa, mut fb) = if da >= db {
        (a.clone(), b.clone())
    } else {
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        (b.clone(), a.clone())
    };
    let ca = fa.content();
    let cb = fb.content();
    fa = fa.primitive_part();
    fb = fb.primitive_part();
    let t = ca.pow(fb.degree().unwrap() as u32) * cb.pow(fa.degree().unwrap() as u32);

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let dfa = fa.degree().unwrap();
        let dfb = fb.degree().unwrap();
        let delta = dfa - dfb;
        if dfa % 2 == 1 && dfb % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&fa, &fb);
        fa = fb;
        if r.is_zero() {
            // positive-degree common factor
            return Ok(BigInt::zero());
        }
        let scale = &g * h.pow(delta as u32);
        fb = r.divrem(&IntPolynomial::constant(scale))?.0;
        g = fa.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            // h <- g^delta / h^(delta-1), exact by subresultant theory
            let num = g.pow(delta as u32);
            let den = h.pow(delta as u32 - 1);
            exact_div(&num, &den)?
        };
        if fb.degree().unwrap() == 0 {
            break;
        }
    }
    // finish with the constant fb: resultant(fa, c) contribution
    let dfa = fa.degree().unwrap() as u32;
    let num = fb.leading().unwrap().pow(dfa);
    let den = h.pow(dfa.saturating_sub(1));
    Ok(s * t * exact_div(&num, &den)?)
}

fn exact_div(n: &BigInt, d: &BigInt) -> Result<BigInt> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = num_integer::Integer::div_rem(n, d);
    if !r.is_zero() {
        return Err(Error::Defect(format!("inexact scalar division {n}/{d} in PRS")));
    }
    Ok(q)
}

/// Resultant of f and g under the convention documented in this module.
/// Errors on a zero-polynomial input.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    resultant_sylvester(g, f)
}

/// Discriminant of a monic polynomial of degree n >= 1:
/// (-1)^(n(n-1)/2) resultant(f, f'). Non-monic input is rejected.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    let n = f
        .degree()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::BadInput("discriminant needs degree >= 1".into()))?;
    if !f.is_monic() {
        return Err(Error::BadInput("discriminant is defined here for monic input".into()));
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative())?;
    let sign_exp = (n * (n - 1) / 2) % 2;
    Ok(if sign_exp == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_coeffs(cs)
    }

    /// Bareiss fraction-free determinant of the Sylvester matrix with
    /// g-rows first; the independent oracle for the PRS route.
    pub(crate) fn sylvester_oracle(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        // m rows of g's coefficients, then n rows of f's (descending order)
        for row in 0..m {
            for (k, c) in g.coeffs().iter().rev().enumerate() {
                mat[row][row + k] = c.clone();
            }
        }
        for row in 0..n {
            for (k, c) in f.coeffs().iter().rev().enumerate() {
                mat[m + row][row + k] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
        let n = m.len();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    #[test]
    fn linear_convention() {
        // res(x - a, x - b) = b - a at a=2, b=5
        let f = poly(&[-2, 1]);
        let g = poly(&[-5, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), BigInt::from(3));
        assert_eq!(resultant(&g, &f).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&poly(&[1, 0, 1]), &poly(&[-1, 1])).unwrap(), BigInt::from(2));
        let f = poly(&[3, 1, 4, 1]);
        assert_eq!(resultant(&f, &f).unwrap(), BigInt::zero());
        assert!(resultant(&f, &IntPolynomial::zero()).is_err());
    }

    #[test]
    fn matches_sylvester_oracle_small_degrees() {
        // deterministic pseudo-random coefficients in [-5, 5]
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 11) as i64 - 5
        };
        for trial in 0..400 {
            let df = 1 + (trial % 6) as usize;
            let dg = 1 + ((trial / 6) % 6) as usize;
            let mut fc: Vec<i64> = (0..=df).map(|_| next()).collect();
            let mut gc: Vec<i64> = (0..=dg).map(|_| next()).collect();
            if fc[df] == 0 {
                fc[df] = 1;
            }
            if gc[dg] == 0 {
                gc[dg] = 1;
            }
            let f = poly(&fc);
            let g = poly(&gc);
            assert_eq!(
                resultant(&f, &g).unwrap(),
                sylvester_oracle(&f, &g),
                "f={f} g={g}"
            );
        }
    }

    #[test]
    fn multiplicative_in_second_argument() {
        let mut state = 0x13198A2E03707344u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 9) as i64 - 4
        };
        for trial in 0..200 {
            let f = loop {
                let c: Vec<i64> = (0..=(1 + trial % 4)).map(|_| next()).collect();
                let p = poly(&c);
                if !p.is_zero() && p.degree().unwrap() >= 1 {
                    break p;
                }
            };
            let mk = |d: usize, next: &mut dyn FnMut() -> i64| loop {
                let c: Vec<i64> = (0..=d).map(|_| next()).collect();
                let p = poly(&c);
                if !p.is_zero() {
                    break p;
                }
            };
            let g = mk(1 + (trial / 4) % 3, &mut next);
            let h = mk(1 + (trial / 12) % 3, &mut next);
            let lhs = resultant(&f, &(&g * &h)).unwrap();
            let rhs = resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap();
            assert_eq!(lhs, rhs, "f={f} g={g} h={h}");
        }
    }

    #[test]
    fn discriminant_examples() {
        // x^2 + 2x + 1 has a double root
        assert_eq!(discriminant(&poly(&[1, 2, 1])).unwrap(), BigInt::zero());
        // x^2 - 1: (1 - (-1))^2 = 4
        assert_eq!(discriminant(&poly(&[-1, 0, 1])).unwrap(), BigInt::from(4));
        // b^2 - 4c for monic quadratics
        assert_eq!(discriminant(&poly(&[7, 3, 1])).unwrap(), BigInt::from(9 - 28));
        assert!(discriminant(&poly(&[1, 2, 2])).is_err()); // non-monic
        assert!(discriminant(&poly(&[5])).is_err()); // degree 0
    }

    #[test]
    fn discriminant_matches_determinant_route_degree_8() {
        let mut state = 0x0A409382229F31D0u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        for trial in 0..120 {
            let n = 2 + trial % 7; // degrees 2..8
            let mut cs: Vec<i64> = (0..n).map(|_| next()).collect();
            cs.push(1); // monic
            let f = poly(&cs);
            let fp = f.derivative();
            let det = sylvester_oracle(&fp, &f); // Sylvester(f, f') with f-rows first
            let n = f.degree().unwrap();
            let expect = if (n * (n - 1) / 2) % 2 == 1 { -det } else { det };
            assert_eq!(discriminant(&f).unwrap(), expect, "f={f}");
        }
    }
}
