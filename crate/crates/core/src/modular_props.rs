//! Mod-p shape of F_p and f_p, q-adic valuations, and the two
//! discriminant valuation bounds.
//!
//! Mod p, the Fekete polynomial collapses to (x-1)^((p-1)/2) h(x) with
//! h(1) != 0, and the core f_p to (x-1)^((p-1)/2 - r_p) g(x) where r_p
//! is the multiplicity of x = 1 in F_p over Z (1 for p = 3 mod 4, 2 for
//! p = 1 mod 4). The discriminant of f_p then satisfies
//! v_p >= (p-3)/2 - r_p and v_2 >= deg f_p; the first bound is checked
//! numerically here (its gcd-degree input is reported alongside), the
//! second follows the parity of the coefficients.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::is_prime_u64;
use crate::fekete::build;
use crate::polynomials::{discriminant, ModPolynomial};
use crate::{Error, Result};

/// Default cap for exact discriminant computations.
pub const DEFAULT_DISCRIMINANT_BUDGET: u64 = 150;

/// The (x-1)-multiplicities of F_p and f_p over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPShape {
    pub p: u64,
    /// Multiplicity of x - 1 in F_p mod p; equals (p-1)/2.
    pub fekete_multiplicity: u32,
    /// Multiplicity of x - 1 in f_p mod p; equals (p-1)/2 - r_p.
    pub symmetric_multiplicity: u32,
    /// Both cofactors are nonzero at x = 1.
    pub cofactor_nonvanishing_at_1: bool,
    /// Multiplicity of x = 1 as a root of F_p over Z (1 or 2).
    pub r_p: u32,
}

/// Compute the exact (x-1)-multiplicities of F_p and f_p in F_p[x] by
/// repeated exact division, plus the cofactor values at 1.
pub fn modp_shape(p: u64) -> Result<ModPShape> {
    if p < 7 || !is_prime_u64(p) {
        return Err(Error::BadInput(format!("{p} is not a prime >= 7")));
    }
    let triple = build(p)?;
    let fekete = ModPolynomial::reduce(triple.fekete(), p)?;
    let symmetric = ModPolynomial::reduce(triple.symmetric(), p)?;
    let (m_big, c_big) = strip_x_minus_1(&fekete)?;
    let (m_small, c_small) = strip_x_minus_1(&symmetric)?;
    Ok(ModPShape {
        p,
        fekete_multiplicity: m_big,
        symmetric_multiplicity: m_small,
        cofactor_nonvanishing_at_1: c_big.evaluate(1) != 0 && c_small.evaluate(1) != 0,
        r_p: if p % 4 == 1 { 2 } else { 1 },
    })
}

fn strip_x_minus_1(f: &ModPolynomial) -> Result<(u32, ModPolynomial)> {
    let q = f.modulus();
    let linear = ModPolynomial::new(q, vec![q - 1, 1])?;
    let mut mult = 0u32;
    let mut cur = f.clone();
    while !cur.is_zero() && cur.evaluate(1) == 0 {
        cur = cur.divrem(&linear)?.0;
        mult += 1;
    }
    Ok((mult, cur))
}

/// Exact q-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, q: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::BadInput("valuation of zero".into()));
    }
    if q < 2 || !is_prime_u64(q) {
        return Err(Error::BadModulus(format!("{q} is not prime")));
    }
    let qb = BigInt::from(q);
    let mut v = 0u32;
    let mut cur = n.clone();
    loop {
        let (d, r) = num_integer::Integer::div_rem(&cur, &qb);
        if !r.is_zero() {
            return Ok(v);
        }
        cur = d;
        v += 1;
    }
}

/// Exact valuations of disc(f_p) against the two lower bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantValuationReport {
    pub p: u64,
    pub v_p: u32,
    /// (p-3)/2 - r_p.
    pub bound_p: u32,
    pub v_2: u32,
    /// deg f_p.
    pub bound_2: u32,
    pub both_bounds_hold: bool,
    /// deg gcd(f_p, f_p') over F_p, the quantity feeding the v_p bound;
    /// reported as corroborating data.
    pub gcd_degree_mod_p: u32,
}

/// Exact discriminant valuations for p within the budget (default
/// [`DEFAULT_DISCRIMINANT_BUDGET`]; explicit refusal beyond it).
pub fn discriminant_valuation_report(
    p: u64,
    budget: Option<u64>,
) -> Result<DiscriminantValuationReport> {
    let budget = budget.unwrap_or(DEFAULT_DISCRIMINANT_BUDGET);
    if p > budget {
        return Err(Error::OutOfRange(format!(
            "exact discriminant valuations budgeted to p <= {budget}, got {p}"
        )));
    }
    if p < 7 || !is_prime_u64(p) {
        return Err(Error::BadInput(format!("{p} is not a prime >= 7")));
    }
    let triple = build(p)?;
    let f = triple.symmetric();
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::Defect(format!("disc(f_{p}) vanished")));
    }
    let r_p = if p % 4 == 1 { 2 } else { 1 };
    let deg_f = f.degree().unwrap() as u32;
    let v_p = valuation(&disc, p)?;
    let v_2 = valuation(&disc, 2)?;
    let bound_p = ((p - 3) / 2) as u32 - r_p;
    let bound_2 = deg_f;

    let reduced = ModPolynomial::reduce(f, p)?;
    let gcd_degree_mod_p = reduced.gcd(&reduced.derivative()).degree().unwrap_or(0) as u32;

    Ok(DiscriminantValuationReport {
        p,
        v_p,
        bound_p,
        v_2,
        bound_2,
        both_bounds_hold: v_p >= bound_p && v_2 >= bound_2,
        gcd_degree_mod_p,
    })
}
