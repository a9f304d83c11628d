//! Exact scalar arithmetic and elementary number theory used everywhere
//! else: Legendre/Jacobi symbols, modular exponentiation, primality, and
//! a deterministic ascending prime stream.
//!
//! All values here are immutable after construction; every function is
//! pure.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// a^e mod m for BigInt operands, result normalized into `[0, m)`.
///
/// Errors when `m < 2` or `e < 0`.
pub fn mod_pow(a: &BigInt, e: &BigInt, m: &BigInt) -> Result<BigInt> {
    if *m < BigInt::from(2) {
        return Err(Error::BadModulus(format!("modulus {m} < 2")));
    }
    if e.is_negative() {
        return Err(Error::BadInput(format!("negative exponent {e}")));
    }
    let base = a.mod_floor_ref(m);
    Ok(base.modpow(e, m))
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// u64 modular multiplication via u128 widening.
#[inline]
pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// u64 modular exponentiation.
pub(crate) fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    a %= m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, a, m);
        }
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

/// Modular inverse in `[0, m)` for gcd(a, m) = 1, via extended Euclid.
pub(crate) fn inv_mod_u64(a: u64, m: u64) -> Result<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible(format!("{a} mod {m}")));
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for u64.
///
/// The base set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be a correct witness set for every n < 3.3 * 10^24, which covers the
/// full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test for arbitrary-precision integers.
///
/// Policy: negative numbers, 0 and 1 are not prime; n < 2^64 is decided
/// by the deterministic Miller-Rabin base set above. Larger n (outside
/// the operating range of everything in this crate) fall back to a
/// strong-pseudoprime test with the same fixed bases: deterministic
/// output, but a composite passing all twelve bases is not ruled out by
/// a proof up there. No caller in this crate reaches that branch.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    // n >= 2^64: fixed-base strong pseudoprime test.
    let one = BigInt::one();
    let two = BigInt::from(2);
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        s += 1;
    }
    'witness: for &a in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigInt::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol (a/n) for odd positive n, by quadratic-reciprocity
/// descent. Returns 0 when gcd(a, n) > 1.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i32> {
    if !n.is_positive() || (n % 2u32).is_zero() {
        return Err(Error::BadInput(format!("jacobi needs odd positive n, got {n}")));
    }
    let mut a = a.mod_floor_ref(n);
    let mut n = n.clone();
    let mut sign = 1i32;
    while !a.is_zero() {
        // pull out factors of two, tracking (2/n) = (-1)^((n^2-1)/8)
        while (&a % 2u32).is_zero() {
            a /= 2u32;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32().unwrap() == 3 && (&n % 4u32).to_u32().unwrap() == 3 {
            sign = -sign;
        }
        a = a.mod_floor_ref(&n);
    }
    if n.is_one() {
        Ok(sign)
    } else {
        Ok(0)
    }
}

/// Legendre symbol (a/p) in {-1, 0, +1} for an odd prime p.
///
/// Computed by reciprocity descent (the Jacobi routine above); the
/// Euler-criterion route `a^((p-1)/2) mod p` is kept as an independent
/// cross-check in the test suite. Rejects even or composite p per the
/// primality policy of [`is_prime`].
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i32> {
    if (p % 2u32).is_zero() || !is_prime(p) {
        return Err(Error::NotAnOddPrime(p.to_string()));
    }
    jacobi(a, p)
}

/// Legendre symbol for machine-sized operands; p must be an odd prime.
pub fn legendre_u64(a: i64, p: u64) -> Result<i32> {
    legendre(&BigInt::from(a), &BigInt::from(p))
}

/// All Legendre symbols (a/p) for 0 <= a < p as a table, computed by
/// marking the nonzero squares mod p. O(p) time and space.
///
/// This is the workhorse behind Fekete coefficients, character sums and
/// the irregularity scans; its agreement with [`legendre`] is a tested
/// invariant.
pub fn legendre_symbol_table(p: u64) -> Result<Vec<i8>> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::NotAnOddPrime(p.to_string()));
    }
    let mut table = vec![-1i8; p as usize];
    table[0] = 0;
    let mut sq = 1u64;
    // (a+1)^2 = a^2 + 2a + 1 keeps the loop multiplication-free.
    for a in 1..=(p - 1) / 2 {
        table[sq as usize] = 1;
        sq += 2 * a + 1;
        while sq >= p {
            sq -= p;
        }
    }
    Ok(table)
}

/// Deterministic ascending stream of primes 2, 3, 5, 7, ...
///
/// Backed by a segmented sieve; each segment is verified prime-by-prime
/// against trial division in the test suite.
#[derive(Debug, Clone)]
pub struct PrimeIterator {
    primes: Vec<u64>,
    cursor: usize,
    sieved_to: u64,
}

impl PrimeIterator {
    const SEGMENT: u64 = 1 << 16;

    pub fn new() -> Self {
        // bootstrap with a plain sieve; the base primes below 2^16 keep
        // every later segment valid up to 2^32, beyond the operating range
        let n = Self::SEGMENT as usize;
        let mut is_p = vec![true; n];
        is_p[0] = false;
        is_p[1] = false;
        let mut i = 2usize;
        while i * i < n {
            if is_p[i] {
                let mut j = i * i;
                while j < n {
                    is_p[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        let primes = is_p
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| p.then_some(k as u64))
            .collect();
        PrimeIterator {
            primes,
            cursor: 0,
            sieved_to: Self::SEGMENT,
        }
    }

    fn extend(&mut self) {
        let lo = self.sieved_to;
        let hi = lo + Self::SEGMENT;
        assert!(hi <= 1 << 32, "prime stream limited to 32-bit range");
        let mut seg = vec![true; (hi - lo) as usize];
        for &p in &self.primes {
            if p * p >= hi {
                break;
            }
            let mut m = lo.div_ceil(p) * p;
            if m < p * p {
                m = p * p;
            }
            while m < hi {
                seg[(m - lo) as usize] = false;
                m += p;
            }
        }
        for (i, &is_p) in seg.iter().enumerate() {
            if is_p {
                self.primes.push(lo + i as u64);
            }
        }
        self.sieved_to = hi;
    }
}

impl Default for PrimeIterator {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeIterator {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.cursor >= self.primes.len() {
            self.extend();
        }
        let p = self.primes[self.cursor];
        self.cursor += 1;
        Some(p)
    }
}

/// Primes in ascending order in `[lo, hi]`.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    PrimeIterator::new()
        .skip_while(|&p| p < lo)
        .take_while(|&p| p <= hi)
        .collect()
}

/// Whether n >= 0 is a perfect square.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = num_integer::Roots::sqrt(n);
    &(&r * &r) == n
}

/// The squarefree part s0 of n = s0 * m^2 (sign carried by s0).
///
/// Factors by trial division up to `trial_bound`; a leftover cofactor
/// is then a prime, a prime square, or (if it exceeds bound^2 without
/// being either) uncertifiable, in which case this errors rather than
/// guessing.
pub fn integer_squarefree_part(n: &BigInt, trial_bound: u64) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::BadInput("squarefree part of zero".into()));
    }
    let sign = if n.is_negative() { -1i32 } else { 1 };
    if let Some(v) = n.abs().to_u64() {
        let (s0, rest) = squarefree_split_u64(v, trial_bound);
        let tail = if rest == 1 {
            BigInt::one()
        } else {
            classify_cofactor(&BigInt::from(rest), trial_bound)?
        };
        let out = BigInt::from(s0) * tail;
        return Ok(if sign < 0 { -out } else { out });
    }
    let mut rest = n.abs();
    let mut s0 = BigInt::one();
    let mut d = 2u64;
    while d <= trial_bound && !rest.is_one() {
        let db = BigInt::from(d);
        if (&db * &db) > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&rest, &db);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e % 2 == 1 {
            s0 *= &db;
        }
        d += 1;
    }
    if !rest.is_one() {
        s0 *= classify_cofactor(&rest, trial_bound)?;
    }
    Ok(if sign < 0 { -s0 } else { s0 })
}

/// Squarefree contribution of a trial-division cofactor: 1 for a
/// perfect square, the cofactor itself when certifiably prime or a
/// product of two distinct primes is impossible, an error otherwise.
fn classify_cofactor(rest: &BigInt, trial_bound: u64) -> Result<BigInt> {
    if is_perfect_square(rest) {
        return Ok(BigInt::one());
    }
    let bound_sq = BigInt::from(trial_bound) * BigInt::from(trial_bound);
    if *rest <= bound_sq || is_prime(rest) {
        // all remaining prime factors exceed the trial bound, so a
        // non-square cofactor below bound^2 must itself be prime
        Ok(rest.clone())
    } else {
        Err(Error::OutOfRange(format!(
            "cofactor {rest} not certified squarefree at trial bound {trial_bound}"
        )))
    }
}

fn squarefree_split_u64(mut v: u64, trial_bound: u64) -> (u64, u64) {
    let mut s0 = 1u64;
    let mut d = 2u64;
    while d <= trial_bound && d * d <= v {
        if v.is_multiple_of(d) {
            let mut e = 0u32;
            while v.is_multiple_of(d) {
                v /= d;
                e += 1;
            }
            if e % 2 == 1 {
                s0 *= d;
            }
        }
        d += 1;
    }
    (s0, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_pow_examples() {
        let b = |n: i64| BigInt::from(n);
        assert_eq!(mod_pow(&b(2), &b(0), &b(5)).unwrap(), b(1));
        assert_eq!(mod_pow(&b(2), &b(10), &b(1000)).unwrap(), b(24));
        // 3 = 5^2 mod 11, consistent with legendre(3, 11) = +1
        assert_eq!(mod_pow(&b(3), &b(5), &b(11)).unwrap(), b(1));
        assert!(mod_pow(&b(2), &b(3), &b(1)).is_err());
        assert_eq!(mod_pow(&b(-3), &b(1), &b(7)).unwrap(), b(4));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_u64(1, 7).unwrap(), 1);
        assert_eq!(legendre_u64(14, 7).unwrap(), 0);
        // squares mod 7 are {1, 2, 4} by brute force, so 3 is a non-residue
        let squares: Vec<u64> = (1..7u64).map(|a| a * a % 7).collect();
        assert!(!squares.contains(&3));
        assert_eq!(legendre_u64(3, 7).unwrap(), -1);
        assert!(legendre_u64(1, 15).is_err());
        assert!(legendre_u64(1, 2).is_err());
    }

    #[test]
    fn legendre_multiplicative() {
        for p in [3u64, 7, 11, 13, 17, 19, 23] {
            for a in -6i64..7 {
                for b in -6i64..7 {
                    let lhs = legendre_u64(a * b, p).unwrap();
                    let rhs = legendre_u64(a, p).unwrap() * legendre_u64(b, p).unwrap();
                    assert_eq!(lhs, rhs, "a={a} b={b} p={p}");
                }
            }
        }
    }

    #[test]
    fn euler_criterion_agreement_below_200() {
        // (a/p) = a^((p-1)/2) mod p for all 1 <= a <= p-1, every odd prime p < 200
        for p in primes_in_range(3, 199) {
            for a in 1..p {
                let via_descent = legendre_u64(a as i64, p).unwrap();
                let e = pow_mod_u64(a, (p - 1) / 2, p);
                let via_euler = if e == 1 {
                    1
                } else if e == p - 1 {
                    -1
                } else {
                    panic!("euler criterion broke for a={a}, p={p}")
                };
                assert_eq!(via_descent, via_euler);
            }
        }
    }

    #[test]
    fn legendre_table_matches_and_sums_to_zero() {
        for p in primes_in_range(3, 300) {
            let table = legendre_symbol_table(p).unwrap();
            let mut sum = 0i64;
            for a in 0..p {
                assert_eq!(table[a as usize] as i32, legendre_u64(a as i64, p).unwrap());
                sum += table[a as usize] as i64;
            }
            assert_eq!(sum, 0, "sum of (a/p) over a unit range must vanish, p={p}");
        }
    }

    #[test]
    fn primality_examples() {
        assert!(!is_prime(&BigInt::from(1)));
        assert!(is_prime(&BigInt::from(89209)));
        assert!(!is_prime(&BigInt::from(91))); // 7 * 13
        assert!(!is_prime(&BigInt::from(-7)));
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7... not all 12
    }

    #[test]
    fn prime_iterator_against_trial_division() {
        let by_iter: Vec<u64> = PrimeIterator::new().take_while(|&p| p < 100_000).collect();
        let by_trial: Vec<u64> = (2..100_000u64)
            .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(by_iter, by_trial);
    }

    #[test]
    fn jacobi_matches_legendre_products() {
        // (a/15) = (a/3)(a/5)
        for a in 0..30i64 {
            let j = jacobi(&BigInt::from(a), &BigInt::from(15)).unwrap();
            let l = legendre_u64(a, 3).unwrap() * legendre_u64(a, 5).unwrap();
            assert_eq!(j, l, "a={a}");
        }
    }
}
