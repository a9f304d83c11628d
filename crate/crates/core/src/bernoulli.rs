//! Bernoulli numbers, the two generalized Bernoulli numbers attached to
//! the quadratic character mod p, mod-p Bernoulli values through
//! half-range power sums, and the irregularity / congruence criteria
//! built on them.
//!
//! Sign convention: the generating function t e^{xt}/(e^t - 1) fixes
//! B_1 = -1/2. Every identity verified here is insensitive to that
//! choice because the character sums involved kill the affected terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{inv_mod_u64, is_prime_u64, legendre_symbol_table, mul_mod_u64, pow_mod_u64};
use crate::{Error, Result};

/// Incrementally grown table of Bernoulli numbers B_0, B_1, ...
///
/// Grows monotonically; keep one per task or guard it externally when
/// sharing.
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    values: Vec<BigRational>,
    // Pascal row C(m, .) for the next recurrence step.
    choose_row: Vec<BigInt>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            values: vec![BigRational::one()],
            choose_row: vec![BigInt::one(), BigInt::one()], // row C(1, .)
        }
    }

    /// B_n under the t e^{xt}/(e^t - 1) convention, via the recurrence
    /// sum_{k=0}^{n} C(n+1, k) B_k = 0.
    pub fn bernoulli(&mut self, n: usize) -> BigRational {
        while self.values.len() <= n {
            let m = self.values.len(); // computing B_m from row C(m+1, .)
            let prev = &self.choose_row;
            let mut row = vec![BigInt::one(); m + 2];
            for k in 1..=m {
                row[k] = &prev[k - 1] + &prev[k];
            }
            self.choose_row = row;
            let mut sum = BigRational::zero();
            for (k, b) in self.values.iter().enumerate() {
                if !b.is_zero() {
                    sum += b * BigRational::from(self.choose_row[k].clone());
                }
            }
            let coeff = BigRational::from(self.choose_row[m].clone());
            self.values.push(-sum / coeff);
        }
        self.values[n].clone()
    }
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

/// One-shot B_n.
pub fn bernoulli(n: usize) -> BigRational {
    BernoulliCache::new().bernoulli(n)
}

/// An exact generalized Bernoulli number B_{n, chi_p} for n in {1, 2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenBernoulliValue {
    pub p: u64,
    pub n: u32,
    pub value: BigRational,
}

/// B_{1, chi_p} = (1/p) sum chi(a) a,
/// B_{2, chi_p} = (1/p) sum chi(a) a^2 - sum chi(a) a; both exact.
/// Higher indices are out of this crate's scope.
pub fn gen_bernoulli(p: u64, n: u32) -> Result<GenBernoulliValue> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::NotAnOddPrime(p.to_string()));
    }
    if !(n == 1 || n == 2) {
        return Err(Error::OutOfRange(format!(
            "generalized Bernoulli index {n} not in {{1, 2}}"
        )));
    }
    let table = legendre_symbol_table(p)?;
    // p < 2^31 keeps sum chi(a) a^2 < p^3 < 2^93 inside i128
    let mut s1: i128 = 0;
    let mut s2: i128 = 0;
    for (a, &chi) in table.iter().enumerate() {
        let a = a as i128;
        let c = chi as i128;
        s1 += c * a;
        if n == 2 {
            s2 += c * a * a;
        }
    }
    let pb = BigInt::from(p);
    let value = match n {
        1 => BigRational::new(BigInt::from(s1), pb),
        _ => BigRational::new(BigInt::from(s2), pb) - BigRational::from(BigInt::from(s1)),
    };
    Ok(GenBernoulliValue { p, n, value })
}

/// Exact moment sum_{a=1}^{p-1} (a/p) a^r.
pub fn moment_sum(p: u64, r: u32) -> Result<BigInt> {
    let table = legendre_symbol_table(p)?;
    let mut sum = BigInt::zero();
    for (a, &chi) in table.iter().enumerate().skip(1) {
        if chi != 0 {
            let term = BigInt::from(a).pow(r);
            if chi > 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    Ok(sum)
}

/// B_{2k} mod p recovered from the half-range power sum
/// sum_{a=1}^{(p-1)/2} (p - 2a)^{2k-1} = (2^{2k} - 1) B_{2k} / (2k) mod p,
/// valid for 2k != 2 mod (p-1) and (2^{2k} - 1) invertible mod p.
pub fn bernoulli_mod_p(p: u64, two_k: u64) -> Result<u64> {
    if p < 7 || !is_prime_u64(p) {
        return Err(Error::NotAnOddPrime(p.to_string()));
    }
    if !two_k.is_multiple_of(2) || two_k == 0 {
        return Err(Error::BadInput(format!("index {two_k} must be even and positive")));
    }
    if two_k % (p - 1) == 2 {
        return Err(Error::BadInput(format!(
            "index {two_k} = 2 mod (p-1) is inadmissible for p = {p}"
        )));
    }
    let cofactor = (pow_mod_u64(2, two_k, p) + p - 1) % p;
    if cofactor == 0 {
        return Err(Error::NotInvertible(format!("2^{two_k} - 1 vanishes mod {p}")));
    }
    let b_over_2k = mul_mod_u64(lehmer_power_sum(p, two_k - 1), inv_mod_u64(cofactor, p)?, p);
    Ok(mul_mod_u64(b_over_2k, two_k % p, p))
}

/// sum_{a=1}^{(p-1)/2} (p - 2a)^e mod p.
fn lehmer_power_sum(p: u64, e: u64) -> u64 {
    let mut sum = 0u64;
    for a in 1..=(p - 1) / 2 {
        sum = (sum + pow_mod_u64(p - 2 * a, e, p)) % p;
    }
    sum
}

/// Whether p divides B_{(p+3)/2}, for p = 1 mod 4, p > 5.
///
/// Evaluated through the O(p) equivalent criterion
/// p | sum_{a=1}^{(p-1)/2} (a/p) a rather than the exact Bernoulli
/// number, whose numerator would run to thousands of digits.
pub fn irregular_index_check(p: u64) -> Result<bool> {
    if p % 4 != 1 || p <= 5 || !is_prime_u64(p) {
        return Err(Error::BadInput(format!("{p} is not a prime = 1 mod 4 above 5")));
    }
    Ok(signed_half_moment_mod_p(p)? == 0)
}

/// sum_{a=1}^{(p-1)/2} (a/p) a mod p.
fn signed_half_moment_mod_p(p: u64) -> Result<u64> {
    let table = legendre_symbol_table(p)?;
    let mut sum = 0u64;
    for (a, &chi) in table.iter().enumerate().take((p as usize - 1) / 2 + 1).skip(1) {
        match chi {
            1 => sum += a as u64,
            _ => sum += p - a as u64,
        }
        if sum >= u64::MAX - 2 * p {
            sum %= p;
        }
    }
    Ok(sum % p)
}

/// The Kubota-Leopoldt style congruence
/// B_{2, chi_p}/2 = 2 B_{(p+3)/2}/(p+3) mod p for p = 1 mod 4, p > 5.
///
/// Left side from the exact generalized Bernoulli number (denominator
/// prime to p); right side equals B_{2k}/(2k) mod p with 2k = (p+3)/2,
/// read off the half-range power sum.
pub fn kubota_leopoldt_congruence_check(p: u64) -> Result<bool> {
    if p % 4 != 1 || p <= 5 || !is_prime_u64(p) {
        return Err(Error::BadInput(format!("{p} is not a prime = 1 mod 4 above 5")));
    }
    let b2 = gen_bernoulli(p, 2)?.value;
    let lhs = rational_mod_p(&(b2 / BigRational::from(BigInt::from(2))), p)?;
    let two_k = (p + 3) / 2;
    let cofactor = (pow_mod_u64(2, two_k, p) + p - 1) % p;
    if cofactor == 0 {
        return Err(Error::NotInvertible(format!("2^{two_k} - 1 vanishes mod {p}")));
    }
    let rhs = mul_mod_u64(lehmer_power_sum(p, two_k - 1), inv_mod_u64(cofactor, p)?, p);
    Ok(lhs == rhs)
}

/// Reduce an exact rational mod p; errors when p divides the denominator.
pub fn rational_mod_p(x: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let num = mod_floor(x.numer(), &pb).to_u64().unwrap();
    let den = mod_floor(x.denom(), &pb).to_u64().unwrap();
    if den == 0 {
        return Err(Error::NotInvertible(format!("denominator of {x} mod {p}")));
    }
    Ok(mul_mod_u64(num, inv_mod_u64(den, p)?, p))
}

fn mod_floor(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in_range;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bernoulli_small_values() {
        let mut cache = BernoulliCache::new();
        assert_eq!(cache.bernoulli(0), rat(1, 1));
        assert_eq!(cache.bernoulli(1), rat(-1, 2));
        assert_eq!(cache.bernoulli(2), rat(1, 6));
        assert_eq!(cache.bernoulli(3), rat(0, 1));
        assert_eq!(cache.bernoulli(4), rat(-1, 30));
        assert_eq!(cache.bernoulli(12), rat(-691, 2730));
        for n in (3..40).step_by(2) {
            assert!(cache.bernoulli(n).is_zero(), "B_{n}");
        }
    }

    #[test]
    fn bernoulli_second_route() {
        // independent double-sum formula (with 0^0 = 1):
        // B_n = sum_{k=0}^{n} 1/(k+1) sum_{j=0}^{k} (-1)^j C(k, j) j^n
        let double_sum = |n: u32| -> BigRational {
            let mut total = BigRational::zero();
            for k in 0..=n {
                let mut inner = BigInt::zero();
                let mut binom = BigInt::one();
                for j in 0..=k {
                    let jn = if j == 0 && n == 0 {
                        BigInt::one()
                    } else {
                        BigInt::from(j).pow(n)
                    };
                    let term = &binom * jn;
                    if j % 2 == 0 {
                        inner += term;
                    } else {
                        inner -= term;
                    }
                    binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
                }
                total += BigRational::new(inner, BigInt::from(k + 1));
            }
            total
        };
        let mut cache = BernoulliCache::new();
        for n in 0..=16u32 {
            assert_eq!(cache.bernoulli(n as usize), double_sum(n), "B_{n}");
        }
    }

    #[test]
    fn gen_bernoulli_examples() {
        // B_{1, chi_7} = -h(-7) = -1
        assert_eq!(gen_bernoulli(7, 1).unwrap().value, rat(-1, 1));
        // direct sums give B_{2, chi_13} = 4
        assert_eq!(gen_bernoulli(13, 2).unwrap().value, rat(4, 1));
        // parity vanishing at p = 7
        assert!(gen_bernoulli(7, 2).unwrap().value.is_zero());
        assert!(gen_bernoulli(7, 3).is_err());
        assert!(gen_bernoulli(9, 1).is_err());
    }

    #[test]
    fn parity_vanishing_to_500() {
        for p in primes_in_range(3, 500) {
            if p % 4 == 1 {
                assert!(gen_bernoulli(p, 1).unwrap().value.is_zero(), "B_1 chi_{p}");
                assert!(!gen_bernoulli(p, 2).unwrap().value.is_zero(), "B_2 chi_{p}");
            } else {
                assert!(gen_bernoulli(p, 2).unwrap().value.is_zero(), "B_2 chi_{p}");
                assert!(!gen_bernoulli(p, 1).unwrap().value.is_zero(), "B_1 chi_{p}");
            }
        }
    }

    #[test]
    fn first_gen_bernoulli_is_minus_class_number_to_2000() {
        use crate::class_numbers::class_number_by_character_sum;
        for p in primes_in_range(7, 2000) {
            if p % 4 != 3 {
                continue;
            }
            let b1 = gen_bernoulli(p, 1).unwrap().value;
            let h = class_number_by_character_sum(p).unwrap();
            assert_eq!(b1, rat(-(h as i64), 1), "p={p}");
        }
    }

    #[test]
    fn moment_sum_examples() {
        assert_eq!(moment_sum(13, 0).unwrap(), BigInt::zero());
        assert_eq!(moment_sum(13, 1).unwrap(), BigInt::zero());
        assert_eq!(moment_sum(7, 1).unwrap(), BigInt::from(-7));
        // equals p * B_{1, chi_p}
        assert_eq!(
            BigRational::from(moment_sum(7, 1).unwrap()),
            gen_bernoulli(7, 1).unwrap().value * rat(7, 1)
        );
    }

    #[test]
    fn moment_sums_mod_p_to_200() {
        for p in primes_in_range(7, 200) {
            let pb = BigInt::from(p);
            let half = (p - 1) / 2;
            for r in 0..half as u32 {
                let m = moment_sum(p, r).unwrap();
                assert!((&m % &pb).is_zero(), "p={p} r={r} m={m}");
            }
            // r = (p-1)/2 lands on -1 mod p
            let m = moment_sum(p, half as u32).unwrap();
            assert_eq!(mod_floor(&m, &pb), BigInt::from(p - 1), "p={p}");
        }
    }

    #[test]
    fn bernoulli_mod_p_matches_exact() {
        // exact B_4 = -1/30 reduces mod 7 to -inv(2) = 3, mod 11 to 4
        assert_eq!(bernoulli_mod_p(7, 4).unwrap(), 3);
        assert_eq!(bernoulli_mod_p(11, 4).unwrap(), 4);
        // the power-sum route agrees with exact reduction wherever the
        // exact value is cheap
        let mut cache = BernoulliCache::new();
        for (p, two_k) in [(7u64, 4u64), (11, 4), (11, 6), (13, 4), (13, 8), (31, 12)] {
            let exact = cache.bernoulli(two_k as usize);
            let expect = rational_mod_p(&exact, p).unwrap();
            assert_eq!(bernoulli_mod_p(p, two_k).unwrap(), expect, "p={p} 2k={two_k}");
        }
        assert!(bernoulli_mod_p(7, 8).is_err()); // 8 = 2 mod 6 inadmissible
    }

    #[test]
    fn irregular_checks() {
        assert!(!irregular_index_check(13).unwrap());
        assert!(!irregular_index_check(17).unwrap());
        assert!(irregular_index_check(89209).unwrap());
        assert!(irregular_index_check(7).is_err());

        // agreement with exact divisibility p | numerator(B_{(p+3)/2})
        let mut cache = BernoulliCache::new();
        for p in [13u64, 17, 29, 37] {
            let b = cache.bernoulli(((p + 3) / 2) as usize);
            let divides = (b.numer() % BigInt::from(p)).is_zero();
            assert_eq!(irregular_index_check(p).unwrap(), divides, "p={p}");
        }
    }

    #[test]
    fn kubota_leopoldt_examples() {
        assert!(kubota_leopoldt_congruence_check(13).unwrap());
        assert!(kubota_leopoldt_congruence_check(17).unwrap());
        assert!(kubota_leopoldt_congruence_check(29).unwrap());
        assert!(kubota_leopoldt_congruence_check(89209).unwrap());
        assert!(kubota_leopoldt_congruence_check(7).is_err());
    }
}
