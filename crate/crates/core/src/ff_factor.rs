//! Complete univariate factorization over prime fields: squarefree
//! decomposition in characteristic q, distinct-degree splitting through
//! Frobenius powers, and randomized (seeded) equal-degree splitting.
//!
//! Frobenius powers x^(q^i) mod f are walked one q-th powering at a
//! time; once enough steps remain, the walk switches to a table of
//! (x^q)^j mod f so each further step is the linear combination
//! h -> sum h_j (x^q)^j, one multiplication's worth of work instead of
//! log2(q) of them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polynomials::mod_poly::{Reducer, LAZY_LIMIT};
use crate::polynomials::{FactorizationPattern, ModPolynomial};
use crate::{Error, Result};

/// Seed used by the convenience entry points; reproducible by default.
pub const DEFAULT_SEED: u64 = 0x00FE_C0DE;

/// A complete factorization: unit * prod factor^multiplicity.
///
/// Factors are monic, irreducible, pairwise distinct, and canonically
/// ordered (by degree, then coefficients from the constant term up).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    unit: u64,
    factors: Vec<(ModPolynomial, usize)>,
}

impl FactorList {
    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn factors(&self) -> &[(ModPolynomial, usize)] {
        &self.factors
    }

    /// Multiply everything back out (the refactor check).
    pub fn product(&self) -> ModPolynomial {
        let q = self
            .factors
            .first()
            .map(|(f, _)| f.modulus())
            .expect("empty factor list has no field");
        let mut acc = ModPolynomial::constant(q, self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    pub fn pattern(&self) -> FactorizationPattern {
        FactorizationPattern::new(
            self.factors
                .iter()
                .map(|(f, m)| (f.degree().unwrap() as u32, *m as u32))
                .collect(),
        )
    }
}

/// Walks Frobenius powers modulo a fixed monic polynomial.
struct FrobeniusEngine {
    ctx: MonicCtx,
    xq: ModPolynomial,
    table: Option<Vec<ModPolynomial>>,
}

impl FrobeniusEngine {
    fn new(modulus: &ModPolynomial) -> Self {
        debug_assert!(modulus.is_monic());
        let q = modulus.modulus();
        let ctx = MonicCtx::new(modulus);
        let xq = ctx.pow_mod(&ModPolynomial::x(q), q);
        FrobeniusEngine {
            ctx,
            xq,
            table: None,
        }
    }

    fn modulus(&self) -> &ModPolynomial {
        self.ctx.modulus()
    }

    /// First Frobenius power x^q mod f.
    fn first(&self) -> ModPolynomial {
        self.xq.clone()
    }

    /// h -> h^q mod f, deciding between plain powering and the table
    /// by the number of steps still expected.
    fn step(&mut self, h: &ModPolynomial, remaining: usize) -> ModPolynomial {
        let n = self.modulus().degree().unwrap();
        if self.table.is_none() && n >= 8 {
            let log_q = 64 - self.modulus().modulus().leading_zeros() as usize;
            // table costs n multiplications, then saves ~1.5 log q - 1
            // multiplications per remaining step
            if remaining * (3 * log_q / 2).saturating_sub(1) > n {
                self.build_table();
            }
        }
        match &self.table {
            Some(_) => self.apply_table(h),
            None => self.ctx.pow_mod(h, self.modulus().modulus()),
        }
    }

    fn build_table(&mut self) {
        let n = self.modulus().degree().unwrap();
        let q = self.modulus().modulus();
        let mut powers = Vec::with_capacity(n);
        powers.push(ModPolynomial::constant(q, 1));
        for j in 1..n {
            let prev = &powers[j - 1];
            powers.push(self.ctx.mul_mod(prev, &self.xq));
        }
        self.table = Some(powers);
    }

    /// h(x^q) mod f = h^q mod f as the scalar combination
    /// sum_j h_j (x^q)^j.
    fn apply_table(&self, h: &ModPolynomial) -> ModPolynomial {
        let powers = self.table.as_ref().unwrap();
        let q = self.modulus.modulus();
        let n = self.modulus.degree().unwrap();
        if q < LAZY_LIMIT && n < (1 << 23) {
            let red = Reducer::new(q);
            let mut acc = vec![0u64; n];
            for (j, &hj) in h.coeffs().iter().enumerate() {
                if hj == 0 {
                    continue;
                }
                let hj = hj as u32;
                for (slot, &c) in acc.iter_mut().zip(powers[j].coeffs()) {
                    *slot += hj as u64 * (c as u32) as u64;
                }
            }
            ModPolynomial::new(q, acc.into_iter().map(|v| red.reduce(v)).collect()).unwrap()
        } else {
            let mut acc = vec![0u128; n];
            for (j, &hj) in h.coeffs().iter().enumerate() {
                if hj == 0 {
                    continue;
                }
                let hj = hj as u128;
                for (slot, &c) in acc.iter_mut().zip(powers[j].coeffs()) {
                    *slot += hj * c as u128;
                }
            }
            ModPolynomial::new(q, acc.into_iter().map(|v| (v % q as u128) as u64).collect())
                .unwrap()
        }
    }
}

/// Squarefree decomposition in characteristic q, including the
/// q-th-power descent for vanishing derivatives. Returns monic
/// (squarefree part, multiplicity) pairs; parts of equal multiplicity
/// from different descent levels stay separate entries.
pub fn squarefree_decomposition(f: &ModPolynomial) -> Result<Vec<(ModPolynomial, usize)>> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (_, monic) = f.clone().into_monic();
    let mut out = Vec::new();
    sqf_inner(&monic, 1, &mut out)?;
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

fn sqf_inner(f: &ModPolynomial, scale: usize, out: &mut Vec<(ModPolynomial, usize)>) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = u(x^q); its factors all carry multiplicity divisible by q
        return sqf_inner(&f.qth_root(), scale * f.modulus() as usize, out);
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.divrem(&c)?.0;
    let mut i = 1usize;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.divrem(&y)?.0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * scale));
        }
        c = c.divrem(&y)?.0;
        w = y;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        // multiplicities divisible by q survive in c as a perfect q-th power
        sqf_inner(&c.qth_root(), scale * f.modulus() as usize, out)?;
    }
    Ok(())
}

/// Distinct-degree profile of a squarefree monic polynomial: pairs
/// (d, product of all irreducible factors of degree d), ascending in d.
pub(crate) fn distinct_degree_profile(f: &ModPolynomial) -> Result<Vec<(usize, ModPolynomial)>> {
    debug_assert!(f.is_monic());
    let q = f.modulus();
    let n = match f.degree() {
        None => return Err(Error::DivisionByZero),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let x = ModPolynomial::x(q);
    let mut engine = FrobeniusEngine::new(f);
    let mut h = engine.first();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut d = 1usize;
    while 2 * d <= rest.degree().unwrap_or(0) {
        if d > 1 {
            let remaining = rest.degree().unwrap() / 2 - d + 1;
            h = engine.step(&h, remaining);
        }
        let g = h.sub(&x).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g)?.0;
            out.push((d, g));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push((rest.degree().unwrap(), rest));
    }
    debug_assert_eq!(out.iter().map(|(_, g)| g.degree().unwrap()).sum::<usize>(), n);
    Ok(out)
}

/// Degree of the smallest-degree irreducible factor if it is <= cap,
/// else None. Monic input of degree >= 1; abandons the Frobenius walk
/// at the first hit, which is what makes candidate scans cheap.
///
/// Most reducible candidates die within the first few rounds, so the
/// step table is withheld until the walk has survived long enough to
/// look like a genuine irreducibility proof.
pub(crate) fn smallest_factor_degree_capped(
    f: &ModPolynomial,
    cap: usize,
) -> Result<Option<usize>> {
    debug_assert!(f.is_monic());
    let q = f.modulus();
    let n = f
        .degree()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::BadInput("degree >= 1 required".into()))?;
    let x = ModPolynomial::x(q);
    // point scan beats x^q + gcd only while q stays below ~2n/3
    let scan_roots = q < (2 * n as u64) / 3;
    if scan_roots {
        for t in 0..q {
            if f.evaluate(t) == 0 {
                return Ok(Some(1));
            }
        }
        if cap < 2 {
            return Ok(None);
        }
    }
    let mut engine = FrobeniusEngine::new(f);
    let mut h = engine.first();
    if !scan_roots {
        if h.sub(&x).gcd(f).degree().unwrap_or(0) > 0 {
            return Ok(Some(1));
        }
        if cap < 2 {
            return Ok(None);
        }
    }
    for d in 2..=cap {
        let remaining = if d < 8 { 1 } else { cap - d + 1 };
        h = engine.step(&h, remaining);
        if h.sub(&x).gcd(f).degree().unwrap_or(0) > 0 {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Deterministic irreducibility test: x^(q^n) = x mod f together with
/// coprimality of x^(q^(n/l)) - x and f at every maximal proper
/// divisor n/l of n.
pub fn is_irreducible_mod(f: &ModPolynomial) -> Result<bool> {
    let n = f
        .degree()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::BadInput("irreducibility needs degree >= 1".into()))?;
    if n == 1 {
        return Ok(true);
    }
    let (_, monic) = f.clone().into_monic();
    let q = monic.modulus();
    let x = ModPolynomial::x(q);
    let checkpoints: Vec<usize> = prime_divisors(n).into_iter().map(|l| n / l).collect();
    let mut engine = FrobeniusEngine::new(&monic);
    let mut h = engine.first();
    for i in 1..=n {
        if i > 1 {
            h = engine.step(&h, n - i + 1);
        }
        if checkpoints.contains(&i) && h.sub(&x).gcd(&monic).degree().unwrap_or(0) > 0 {
            return Ok(false);
        }
    }
    Ok(h == x)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2usize;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Factorization pattern through squarefree decomposition plus
/// distinct-degree splitting only; no randomness involved.
pub fn pattern(f: &ModPolynomial) -> Result<FactorizationPattern> {
    let mut pairs = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for (d, prod) in distinct_degree_profile(&part)? {
            let count = prod.degree().unwrap() / d;
            for _ in 0..count {
                pairs.push((d as u32, mult as u32));
            }
        }
    }
    Ok(FactorizationPattern::new(pairs))
}

/// Full factorization with the default seed.
pub fn factor(f: &ModPolynomial) -> Result<FactorList> {
    factor_with_seed(f, DEFAULT_SEED)
}

/// Full factorization into monic irreducibles. The seed drives only the
/// equal-degree splitting; the output ordering is canonical either way.
pub fn factor_with_seed(f: &ModPolynomial, seed: u64) -> Result<FactorList> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (unit, monic) = f.clone().into_monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(ModPolynomial, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic)? {
        for (d, prod) in distinct_degree_profile(&part)? {
            let mut split = Vec::new();
            equal_degree_factor(&prod, d, &mut rng, &mut split)?;
            for piece in split {
                factors.push((piece, mult));
            }
        }
    }
    factors.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    Ok(FactorList { unit, factors })
}

fn cmp_poly(a: &ModPolynomial, b: &ModPolynomial) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Cantor-Zassenhaus equal-degree splitting of a monic product of
/// distinct irreducibles all of degree d. Odd q splits through
/// w^((q^d - 1)/2) computed as a Frobenius-normed power; q = 2 uses the
/// trace map sum w^(2^i).
fn equal_degree_factor(
    h: &ModPolynomial,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<ModPolynomial>,
) -> Result<()> {
    let deg = h.degree().unwrap();
    if deg == d {
        out.push(h.clone());
        return Ok(());
    }
    let q = h.modulus();
    let one = ModPolynomial::constant(q, 1);
    loop {
        let w = random_poly(q, deg, rng);
        if w.degree().unwrap_or(0) == 0 {
            continue;
        }
        let t = if q == 2 {
            // trace: w + w^2 + ... + w^(2^(d-1))
            let mut acc = w.clone();
            let mut pow = w.clone();
            for _ in 1..d {
                pow = pow.mul_mod(&pow, h);
                acc = acc.add(&pow);
            }
            acc
        } else {
            // v = w^(1 + q + ... + q^(d-1)), then t = v^((q-1)/2)
            let mut v = w.clone();
            for _ in 1..d {
                v = v.pow_mod(q, h).mul_mod(&w, h);
            }
            v.pow_mod((q - 1) / 2, h)
        };
        let candidate = if q == 2 { t } else { t.sub(&one) };
        let g = candidate.gcd(h);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            let rest = h.divrem(&g)?.0;
            equal_degree_factor(&g, d, rng, out)?;
            equal_degree_factor(&rest, d, rng, out)?;
            return Ok(());
        }
    }
}

fn random_poly(q: u64, below_degree: usize, rng: &mut ChaCha8Rng) -> ModPolynomial {
    let coeffs: Vec<u64> = (0..below_degree).map(|_| rng.gen_range(0..q)).collect();
    ModPolynomial::new(q, coeffs).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fekete;
    use crate::polynomials::IntPolynomial;

    fn mp(q: u64, cs: &[i64]) -> ModPolynomial {
        ModPolynomial::reduce(&IntPolynomial::from_i64_coeffs(cs), q).unwrap()
    }

    fn reduced_fekete(p: u64, q: u64) -> ModPolynomial {
        ModPolynomial::reduce(fekete::build(p).unwrap().reduced(), q).unwrap()
    }

    #[test]
    fn squarefree_decomposition_examples() {
        // (x-1)^3 (x+1) mod 5
        let f = {
            let a = mp(5, &[-1, 1]);
            let b = mp(5, &[1, 1]);
            a.mul(&a).mul(&a).mul(&b)
        };
        let dec = squarefree_decomposition(&f).unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec.contains(&(mp(5, &[-1, 1]), 3)));
        assert!(dec.contains(&(mp(5, &[1, 1]), 1)));

        // squarefree input comes back whole
        let g = mp(7, &[3, 1, 1]);
        assert_eq!(squarefree_decomposition(&g).unwrap(), vec![(g.clone(), 1)]);

        // q-th power part: (x^2 + 1)^5 mod 5 has zero derivative
        let h = {
            let b = mp(5, &[1, 0, 1]);
            let mut acc = ModPolynomial::constant(5, 1);
            for _ in 0..5 {
                acc = acc.mul(&b);
            }
            acc
        };
        // x^2 + 1 = (x+2)(x+3) mod 5, so the parts carry multiplicity 5
        let dec = squarefree_decomposition(&h).unwrap();
        assert_eq!(dec, vec![(mp(5, &[1, 0, 1]), 5)]);
    }

    #[test]
    fn fekete_mod_p_shape_has_x_minus_1_power() {
        // F_7 mod 7 contains (x-1)^3
        let f7 = ModPolynomial::reduce(&fekete::fekete_polynomial(7).unwrap(), 7).unwrap();
        let dec = squarefree_decomposition(&f7).unwrap();
        let x_minus_1 = mp(7, &[-1, 1]);
        assert!(dec.iter().any(|(part, m)| *m == 3
            && part.divrem(&x_minus_1).unwrap().1.is_zero()));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible_mod(&reduced_fekete(11, 5)).unwrap());
        assert!(is_irreducible_mod(&reduced_fekete(13, 3)).unwrap());
        assert!(!is_irreducible_mod(&mp(5, &[-1, 0, 1])).unwrap());
        assert!(!is_irreducible_mod(&reduced_fekete(11, 3)).unwrap());
        assert!(is_irreducible_mod(&mp(5, &[3, 1])).unwrap());
    }

    #[test]
    fn published_factorization_patterns() {
        let g11_7 = pattern(&reduced_fekete(11, 7)).unwrap();
        assert_eq!(g11_7.entries(), &[(1, 1), (3, 1)]);
        let g11_53 = pattern(&reduced_fekete(11, 53)).unwrap();
        assert_eq!(g11_53.entries(), &[(1, 1), (1, 1), (2, 1)]);
        let g13_61 = pattern(&reduced_fekete(13, 61)).unwrap();
        assert_eq!(g13_61.entries(), &[(1, 1), (1, 1), (2, 1)]);
        let g13_5 = pattern(&reduced_fekete(13, 5)).unwrap();
        assert_eq!(g13_5.entries(), &[(1, 1), (3, 1)]);
    }

    #[test]
    fn published_factor_sets() {
        // g_11 mod 7 = (x + 4)(x^3 + 3x^2 + 6x + 6)
        let fl = factor(&reduced_fekete(11, 7)).unwrap();
        let got: Vec<&ModPolynomial> = fl.factors().iter().map(|(f, _)| f).collect();
        assert_eq!(got, vec![&mp(7, &[4, 1]), &mp(7, &[6, 6, 3, 1])]);
        // g_11 mod 53 = (x + 26)(x + 30)(x^2 + 50x + 21)
        let fl = factor(&reduced_fekete(11, 53)).unwrap();
        let got: Vec<&ModPolynomial> = fl.factors().iter().map(|(f, _)| f).collect();
        assert_eq!(
            got,
            vec![&mp(53, &[26, 1]), &mp(53, &[30, 1]), &mp(53, &[21, 50, 1])]
        );
        // g_13 mod 5 = (x + 2)(x^3 + 3x^2 + 2x + 3)
        let fl = factor(&reduced_fekete(13, 5)).unwrap();
        let got: Vec<&ModPolynomial> = fl.factors().iter().map(|(f, _)| f).collect();
        assert_eq!(got, vec![&mp(5, &[2, 1]), &mp(5, &[3, 2, 3, 1])]);
        // g_13 mod 61 = (x + 51)(x + 54)(x^2 + 17x + 34)
        let fl = factor(&reduced_fekete(13, 61)).unwrap();
        let got: Vec<&ModPolynomial> = fl.factors().iter().map(|(f, _)| f).collect();
        assert_eq!(
            got,
            vec![&mp(61, &[51, 1]), &mp(61, &[54, 1]), &mp(61, &[34, 17, 1])]
        );
    }

    #[test]
    fn refactor_round_trip_random() {
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move |m: u64| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % m
        };
        for q in [2u64, 3, 5, 7, 101] {
            for trial in 0..60 {
                let deg = 1 + (next(12) as usize);
                let mut cs: Vec<u64> = (0..deg).map(|_| next(q)).collect();
                cs.push(1 + next(q - 1).min(q - 2)); // nonzero leading
                let f = ModPolynomial::new(q, cs).unwrap();
                if f.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let fl = factor_with_seed(&f, trial).unwrap();
                assert_eq!(fl.product(), f, "q={q} f={f}");
                assert_eq!(fl.pattern().total_degree(), f.degree().unwrap() as u64);
                for (fac, _) in fl.factors() {
                    assert!(is_irreducible_mod(fac).unwrap(), "q={q} fac={fac}");
                }
            }
        }
    }

    #[test]
    fn determinism_under_fixed_seed() {
        let f = reduced_fekete(23, 101);
        let a = factor_with_seed(&f, 7).unwrap();
        let b = factor_with_seed(&f, 7).unwrap();
        assert_eq!(a, b);
        // different seed still lands on the same canonical list
        let c = factor_with_seed(&f, 8).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn smallest_factor_scan() {
        // x^2 - 2 is irreducible mod 5, so no factor of degree <= 1
        assert_eq!(smallest_factor_degree_capped(&mp(5, &[-2, 0, 1]), 1).unwrap(), None);
        assert_eq!(smallest_factor_degree_capped(&mp(5, &[-1, 0, 1]), 1).unwrap(), Some(1));
        let g11_53 = reduced_fekete(11, 53);
        assert_eq!(smallest_factor_degree_capped(&g11_53, 2).unwrap(), Some(1));
        let g11_5 = reduced_fekete(11, 5); // irreducible quartic
        assert_eq!(smallest_factor_degree_capped(&g11_5, 2).unwrap(), None);
    }
}
