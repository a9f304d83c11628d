//! Class numbers of imaginary quadratic fields by counting reduced
//! binary quadratic forms, plus the character-sum route and Berndt's
//! half sum. The form count is the independent oracle behind every
//! special-value identity in this crate, so it deliberately shares no
//! code path with the polynomial side.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{is_prime_u64, legendre_symbol_table};
use crate::{Error, Result};

/// Default cap on |D| for form enumeration; the loop is O(|D|).
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000_000;

/// A fundamental discriminant D < 0: either D = 1 mod 4 squarefree, or
/// D = 8, 12 mod 16 with D/4 squarefree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalDiscriminant(BigInt);

impl FundamentalDiscriminant {
    /// Validates the two congruence/squarefreeness shapes directly.
    pub fn new(d: BigInt) -> Result<Self> {
        if !d.is_negative() {
            return Err(Error::BadInput(format!("discriminant {d} must be negative")));
        }
        let m16 = d.mod_floor(&BigInt::from(16)).to_u64().unwrap();
        let ok = if m16 % 4 == 1 {
            is_squarefree(&d)?
        } else if m16 == 8 || m16 == 12 {
            let quarter: BigInt = &d / 4;
            is_squarefree(&quarter)?
        } else {
            false
        };
        if !ok {
            return Err(Error::BadInput(format!("{d} is not a fundamental discriminant")));
        }
        Ok(FundamentalDiscriminant(d))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }
}

/// Trial-division squarefreeness for |n| within the enumeration range.
fn is_squarefree(n: &BigInt) -> Result<bool> {
    let v = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::OutOfRange(format!("{n} too large for squarefree check")))?;
    if v == 0 {
        return Ok(false);
    }
    let mut m = v;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return Ok(false);
            }
        }
        d += 1;
    }
    Ok(true)
}

/// The fundamental discriminant of Q(sqrt(m)) for squarefree m < 0:
/// m itself when m = 1 mod 4, else 4m.
pub fn fundamental_discriminant(m: &BigInt) -> Result<FundamentalDiscriminant> {
    if !m.is_negative() {
        return Err(Error::BadInput(format!("{m} must be negative")));
    }
    if !is_squarefree(m)? {
        return Err(Error::BadInput(format!("{m} is not squarefree")));
    }
    let d = if m.mod_floor(&BigInt::from(4)).to_u64().unwrap() == 1 {
        m.clone()
    } else {
        m * 4
    };
    FundamentalDiscriminant::new(d)
}

/// Which route produced a class number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassNumberMethod {
    FormCount,
    CharacterSum,
}

#[derive(Debug, Clone)]
pub struct ClassNumberRecord {
    pub discriminant: FundamentalDiscriminant,
    pub h: u64,
    pub method: ClassNumberMethod,
}

/// h(D) as the number of reduced forms (a, b, c) with b^2 - 4ac = D,
/// -a < b <= a <= c, and b >= 0 when a = c or a = |b|.
pub fn class_number_by_forms(d: &FundamentalDiscriminant) -> Result<u64> {
    class_number_by_forms_bounded(d, DEFAULT_ENUMERATION_BOUND)
}

pub fn class_number_by_forms_bounded(d: &FundamentalDiscriminant, bound: u64) -> Result<u64> {
    let abs_d = d
        .value()
        .abs()
        .to_u64()
        .filter(|&v| v <= bound)
        .ok_or_else(|| {
            Error::OutOfRange(format!(
                "|D| = {} exceeds enumeration bound {bound}",
                d.value().abs()
            ))
        })?;
    let abs_d = abs_d as i64;
    let mut count = 0u64;
    let mut a = 1i64;
    while 3 * a * a <= abs_d {
        for b in (-a + 1)..=a {
            // b^2 - 4ac = -|D|  =>  4ac = b^2 + |D|
            let num = b * b + abs_d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (a == c || a == b.abs()) {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    Ok(count)
}

/// h(-p) from the character sum: sum_{r=1}^{p-1} (r/p) r = -p h(-p)
/// for a prime p = 3 mod 4, p > 3.
pub fn class_number_by_character_sum(p: u64) -> Result<u64> {
    require_three_mod_four(p)?;
    let table = legendre_symbol_table(p)?;
    let mut sum: i64 = 0;
    for (r, &chi) in table.iter().enumerate() {
        sum += chi as i64 * r as i64;
    }
    // sum = -p h(-p)
    if sum >= 0 || sum % p as i64 != 0 {
        return Err(Error::Defect(format!(
            "character sum {sum} is not a negative multiple of {p}"
        )));
    }
    Ok((-sum / p as i64) as u64)
}

/// Berndt's half sum sum_{a<=(p-1)/2} (a/p) for p = 3 mod 4, which
/// equals (2 - (2/p)) h(-p).
pub fn berndt_half_sum(p: u64) -> Result<i64> {
    require_three_mod_four(p)?;
    half_sum_legendre(p)
}

/// sum_{a=1}^{(p-1)/2} (a/p) for any odd prime (vanishes for p = 1 mod 4).
pub fn half_sum_legendre(p: u64) -> Result<i64> {
    let table = legendre_symbol_table(p)?;
    Ok(table[1..=(p as usize - 1) / 2].iter().map(|&c| c as i64).sum())
}

fn require_three_mod_four(p: u64) -> Result<()> {
    if p % 4 != 3 || p <= 3 || !is_prime_u64(p) {
        return Err(Error::BadInput(format!("{p} is not a prime = 3 mod 4 above 3")));
    }
    Ok(())
}

/// h of Q(sqrt(-n)) for positive n, normalized through the fundamental
/// discriminant of the squarefree kernel of -n. This is how h(-p),
/// h(-3p) and h(-4p) in the special-value formulas are all read.
pub fn class_number_of_sqrt_minus(n: u64) -> Result<u64> {
    let (kernel, _) = squarefree_kernel(n);
    let d = fundamental_discriminant(&BigInt::from(-(kernel as i64)))?;
    class_number_by_forms(&d)
}

/// n = kernel * square^2 with kernel squarefree.
fn squarefree_kernel(n: u64) -> (u64, u64) {
    let mut kernel = 1u64;
    let mut square = 1u64;
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            if e % 2 == 1 {
                kernel *= d;
            }
            square *= d.pow(e / 2);
        }
        d += 1;
    }
    kernel *= m;
    (kernel, square)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{legendre_u64, primes_in_range};

    fn fd(m: i64) -> FundamentalDiscriminant {
        fundamental_discriminant(&BigInt::from(m)).unwrap()
    }

    #[test]
    fn fundamental_discriminant_examples() {
        assert_eq!(fd(-7).value(), &BigInt::from(-7));
        assert_eq!(fd(-5).value(), &BigInt::from(-20));
        assert_eq!(fd(-13).value(), &BigInt::from(-52));
        assert!(fundamental_discriminant(&BigInt::from(-12)).is_err()); // not squarefree
        assert!(fundamental_discriminant(&BigInt::from(5)).is_err());
    }

    #[test]
    fn form_count_examples() {
        // D = -7: only (1, 1, 2)
        assert_eq!(class_number_by_forms(&fd(-7)).unwrap(), 1);
        // D = -23: (1,1,6), (2,+-1,3)
        assert_eq!(class_number_by_forms(&fd(-23)).unwrap(), 3);
        // D = -4: only (1, 0, 1)
        assert_eq!(
            class_number_by_forms(&FundamentalDiscriminant::new(BigInt::from(-4)).unwrap())
                .unwrap(),
            1
        );
        assert!(class_number_by_forms_bounded(&fd(-23), 10).is_err());
    }

    #[test]
    fn known_class_numbers() {
        // classical values used by the special-value checks
        for (m, h) in [(-39i64, 4u64), (-51, 2), (-52, 2), (-68, 4), (-84, 4)] {
            let d = FundamentalDiscriminant::new(BigInt::from(m)).unwrap();
            assert_eq!(class_number_by_forms(&d).unwrap(), h, "D={m}");
        }
    }

    #[test]
    fn character_sum_examples() {
        assert_eq!(class_number_by_character_sum(7).unwrap(), 1);
        assert_eq!(class_number_by_character_sum(11).unwrap(), 1);
        assert_eq!(class_number_by_character_sum(23).unwrap(), 3);
        assert!(class_number_by_character_sum(13).is_err()); // wrong residue class
    }

    #[test]
    fn oracle_agreement_to_2000() {
        for p in primes_in_range(7, 2000) {
            if p % 4 != 3 {
                continue;
            }
            let by_sum = class_number_by_character_sum(p).unwrap();
            let by_forms = class_number_by_forms(&fd(-(p as i64))).unwrap();
            assert_eq!(by_sum, by_forms, "p={p}");
        }
    }

    #[test]
    fn berndt_half_sum_examples() {
        // p=7: (1/7)+(2/7)+(3/7) = 1+1-1 = 1 and (2-(2/7)) h(-7) = 1
        assert_eq!(berndt_half_sum(7).unwrap(), 1);
        // p=11: 11 = 3 mod 8 so (2/11) = -1 and the sum is 3
        assert_eq!(berndt_half_sum(11).unwrap(), 3);
        assert_eq!(berndt_half_sum(23).unwrap(), 3);
        assert!(berndt_half_sum(13).is_err());
    }

    #[test]
    fn half_sum_properties() {
        for p in primes_in_range(7, 1000) {
            let s = half_sum_legendre(p).unwrap();
            if p % 4 == 1 {
                assert_eq!(s, 0, "half sum must vanish for p = 1 mod 4, p={p}");
            } else {
                let h = class_number_by_character_sum(p).unwrap() as i64;
                let two = legendre_u64(2, p).unwrap() as i64;
                assert_eq!(s, (2 - two) * h, "p={p}");
                assert!(s >= 1 && s <= (p as i64 - 1) / 2, "p={p}");
            }
        }
    }

    #[test]
    fn squarefree_kernel_examples() {
        assert_eq!(squarefree_kernel(12), (3, 2));
        assert_eq!(squarefree_kernel(49), (1, 7));
        assert_eq!(squarefree_kernel(30), (30, 1));
        assert_eq!(class_number_of_sqrt_minus(4 * 13).unwrap(), 2); // h(-52)
    }
}
