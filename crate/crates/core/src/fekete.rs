//! Construction of the Fekete polynomial F_p, its trivial-root-free
//! core f_p, and the reduced polynomial g_p, together with the
//! special-value identities tying g_p(-2), ..., g_p(2) to class numbers
//! and generalized Bernoulli numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::{is_prime_u64, legendre_symbol_table, legendre_u64};
use crate::bernoulli::gen_bernoulli;
use crate::class_numbers::class_number_of_sqrt_minus;
use crate::polynomials::IntPolynomial;
use crate::{Error, Result};

/// F_p, f_p and g_p for one prime.
///
/// F_p = sum_{a=1}^{p-1} (a/p) x^a has degree p-1. Dividing by x(1-x)
/// when p = 3 mod 4 and by x(1-x)^2(x+1) when p = 1 mod 4 leaves the
/// reciprocal even-degree core f_p (degree p-3 resp. p-5), and
/// f_p(x) = x^{h_p} g_p(x + 1/x) defines the reduced polynomial g_p of
/// degree h_p = deg(f_p)/2. For p in {3, 5} both f_p and g_p degenerate
/// to the constant 1.
#[derive(Debug, Clone)]
pub struct FeketeTriple {
    p: u64,
    fekete: IntPolynomial,
    symmetric: IntPolynomial,
    reduced: IntPolynomial,
}

impl FeketeTriple {
    /// F_p, degree p-1.
    pub fn fekete(&self) -> &IntPolynomial {
        &self.fekete
    }

    /// f_p: F_p with its trivial roots divided out.
    pub fn symmetric(&self) -> &IntPolynomial {
        &self.symmetric
    }

    /// g_p, the reduced polynomial of degree h_p.
    pub fn reduced(&self) -> &IntPolynomial {
        &self.reduced
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// h_p = deg(g_p) = deg(f_p)/2.
    pub fn reduced_degree(&self) -> usize {
        self.reduced.degree().unwrap_or(0)
    }
}

/// Build the triple for an odd prime p. p in {3, 5} yields the
/// documented degenerate triple with f_p = g_p = 1.
pub fn build(p: u64) -> Result<FeketeTriple> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::NotAnOddPrime(p.to_string()));
    }
    let fekete = fekete_polynomial(p)?;
    let x = IntPolynomial::x();
    let one_minus_x = IntPolynomial::from_i64_coeffs(&[1, -1]);
    let x_plus_1 = IntPolynomial::from_i64_coeffs(&[1, 1]);

    let defect =
        |what: &str| Error::Defect(format!("division of F_{p} by {what} was not exact"));
    let mut f = fekete.div_exact(&x).map_err(|_| defect("x"))?;
    f = f.div_exact(&one_minus_x).map_err(|_| defect("1-x"))?;
    if p % 4 == 1 {
        f = f.div_exact(&one_minus_x).map_err(|_| defect("(1-x)^2"))?;
        f = f.div_exact(&x_plus_1).map_err(|_| defect("x+1"))?;
    }
    let reduced = f.fold_to_reduced()?;
    Ok(FeketeTriple {
        p,
        fekete,
        symmetric: f,
        reduced,
    })
}

/// F_p alone (degree p-1, coefficients in {-1, 0, 1}).
pub fn fekete_polynomial(p: u64) -> Result<IntPolynomial> {
    let table = legendre_symbol_table(p)?;
    let coeffs = table.iter().map(|&c| BigInt::from(c)).collect();
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// Multiplicities of the roots x = 1 and x = -1 of F_p, found by
/// repeated exact division rather than by the closed formula.
pub fn trivial_root_multiplicities(p: u64) -> Result<(u32, u32)> {
    let f = fekete_polynomial(p)?;
    let at_one = IntPolynomial::from_i64_coeffs(&[-1, 1]);
    let at_minus_one = IntPolynomial::from_i64_coeffs(&[1, 1]);
    Ok((
        root_multiplicity(&f, &at_one),
        root_multiplicity(&f, &at_minus_one),
    ))
}

fn root_multiplicity(f: &IntPolynomial, linear: &IntPolynomial) -> u32 {
    let mut mult = 0;
    let mut cur = f.clone();
    loop {
        match cur.divrem(linear) {
            Ok((q, r)) if r.is_zero() && !q.is_zero() => {
                mult += 1;
                cur = q;
            }
            _ => return mult,
        }
    }
}

/// F_p(-1) for p = 3 mod 4, evaluated directly. The class-number
/// identity F_p(-1) = 2 (2 (2/p) - 1) h(-p) is asserted in tests, not
/// baked into the evaluation.
pub fn fekete_at_minus_one(p: u64) -> Result<BigInt> {
    if p % 4 != 3 || !is_prime_u64(p) {
        return Err(Error::BadInput(format!("{p} is not a prime = 3 mod 4")));
    }
    Ok(fekete_polynomial(p)?.evaluate(&BigInt::from(-1)))
}

/// sum_{a=1}^{(p-1)/2} (a/p) (-1)^a.
pub fn alternating_half_sum(p: u64) -> Result<i64> {
    let table = legendre_symbol_table(p)?;
    let mut sum = 0i64;
    for (a, &chi) in table.iter().enumerate().take((p as usize - 1) / 2 + 1).skip(1) {
        let term = chi as i64;
        sum += if a % 2 == 0 { term } else { -term };
    }
    Ok(sum)
}

/// Sign of the alternating half sum. A zero sum would contradict the
/// positivity law (2/p) * sum > 0, so it raises a loud defect.
pub fn alternating_half_sum_sign(p: u64) -> Result<i32> {
    match alternating_half_sum(p)?.signum() {
        0 => Err(Error::Defect(format!(
            "alternating half sum vanished at p = {p}"
        ))),
        s => Ok(s as i32),
    }
}

/// The evaluation points for [`special_values`].
pub const SPECIAL_POINTS: [i64; 5] = [-2, -1, 0, 1, 2];

/// g_p at u in {-2, -1, 0, 1, 2} next to the predicted right-hand
/// sides from class numbers / generalized Bernoulli numbers.
#[derive(Debug, Clone)]
pub struct SpecialValues {
    pub p: u64,
    /// g_p(u) by Horner, in the order of [`SPECIAL_POINTS`].
    pub actual: [BigInt; 5],
    /// Predicted values; computed in exact rationals and checked
    /// integral before landing here.
    pub predicted: [BigInt; 5],
    pub matches: [bool; 5],
}

impl SpecialValues {
    pub fn all_match(&self) -> bool {
        self.matches.iter().all(|&m| m)
    }
}

/// Evaluate g_p at the five special points and compare with the
/// predicted expressions. A non-integral prediction is a defect, not a
/// rounding issue: the underlying identities guarantee integrality.
pub fn special_values(p: u64) -> Result<SpecialValues> {
    special_values_of(&build(p)?)
}

/// As [`special_values`], reusing an already built triple.
pub fn special_values_of(triple: &FeketeTriple) -> Result<SpecialValues> {
    let p = triple.p;
    if p < 7 {
        return Err(Error::BadInput(format!(
            "special values start at p = 7; {p} is degenerate"
        )));
    }
    let g = triple.reduced();
    let actual: [BigInt; 5] = SPECIAL_POINTS.map(|u| g.evaluate(&BigInt::from(u)));

    let rat = |n: i64| BigRational::from(BigInt::from(n));
    let two = rat(2);
    let four = rat(4);
    let chi2 = rat(legendre_u64(2, p)? as i64);
    let chi3 = rat(legendre_u64(3, p)? as i64);
    let chi6 = &chi2 * &chi3;
    let pb = rat(p as i64);

    let predicted_rat: [BigRational; 5] = if p % 4 == 3 {
        let h = rat(class_number_of_sqrt_minus(p)? as i64);
        let p_on_3 = rat(legendre_u64(p as i64, 3)? as i64);
        let at_zero = -(&two * &chi2 - BigRational::one()) * &h;
        [
            at_zero.clone(),
            -(&p_on_3 + rat(3)) / &two * &h,
            at_zero,
            -&h / &two * &chi6 * (rat(6) - rat(3) * &chi2 - &two * &chi3 + &chi6),
            &pb * &h,
        ]
    } else {
        let b2 = gen_bernoulli(p, 2)?.value;
        let h4p = rat(class_number_of_sqrt_minus(4 * p)? as i64);
        let h3p = rat(class_number_of_sqrt_minus(3 * p)? as i64);
        [
            -(&four * &chi2 - BigRational::one()) / &four * &b2,
            -&chi3 / &two * &h3p,
            -&chi2 / &two * &h4p,
            -(&two * &chi2 + BigRational::one()) / &two * &h3p,
            &pb * &b2 / &four,
        ]
    };

    let mut predicted: [BigInt; 5] = Default::default();
    for (i, v) in predicted_rat.iter().enumerate() {
        if !v.is_integer() {
            return Err(Error::Defect(format!(
                "predicted g_{p}({}) = {v} is not an integer",
                SPECIAL_POINTS[i]
            )));
        }
        predicted[i] = v.to_integer();
    }
    let mut matches = [false; 5];
    for i in 0..5 {
        matches[i] = actual[i] == predicted[i];
    }
    Ok(SpecialValues {
        p,
        actual,
        predicted,
        matches,
    })
}
