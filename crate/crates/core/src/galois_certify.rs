//! Finite-field certificates for the Galois groups of g_p and f_p.
//!
//! A validated triple (q1, q2, q3) for g_p witnesses an n-cycle, an
//! (n-1)-cycle and a transposition in Gal(Q(g_p)/Q) <= S_n, forcing the
//! full symmetric group. A validated quadruple (q1, q2, q3, q4) on the
//! reciprocal polynomial f_p witnesses a 2n-cycle, a (2n-2)-cycle, a
//! 2-cycle and a 4-cycle, forcing the signed permutation group
//! (Z/2)^n : S_n. Searches scan primes in ascending order with each
//! clause minimized independently.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::{integer_squarefree_part, is_perfect_square, legendre_u64, PrimeIterator};
use crate::bernoulli::gen_bernoulli;
use crate::class_numbers::class_number_of_sqrt_minus;
use crate::fekete::{build, FeketeTriple};
use crate::ff_factor::{pattern, smallest_factor_degree_capped};
use crate::polynomials::{discriminant, FactorizationPattern, IntPolynomial, ModPolynomial};
use crate::{Error, Result};

/// Trial bound for extracting squarefree parts of s_p.
const SQUAREFREE_TRIAL_BOUND: u64 = 1 << 20;

/// Largest p accepted by the exact-discriminant relation check; the
/// subresultant chains grow fast past this.
pub const DISCRIMINANT_BUDGET: u64 = 300;

/// s_p = f_p(1) f_p(-1) = g_p(2) g_p(-2), its closed-form prediction,
/// and its squarefree part.
#[derive(Debug, Clone)]
pub struct SpValue {
    pub p: u64,
    pub s: BigInt,
    pub predicted: BigInt,
    pub squarefree_part: BigInt,
}

/// Both routes to s_p plus the closed form; any disagreement is a
/// defect, not data.
pub fn s_value(p: u64) -> Result<SpValue> {
    s_value_of(&build(p)?)
}

/// As [`s_value`] on a prebuilt triple.
pub fn s_value_of(triple: &FeketeTriple) -> Result<SpValue> {
    let p = triple.p();
    if p < 7 {
        return Err(Error::BadInput(format!("s_p starts at p = 7, got {p}")));
    }
    let f = triple.symmetric();
    let g = triple.reduced();
    let one = BigInt::one();
    let via_f = f.evaluate(&one) * f.evaluate(&(-&one));
    let via_g = g.evaluate(&BigInt::from(2)) * g.evaluate(&BigInt::from(-2));
    if via_f != via_g {
        return Err(Error::Defect(format!(
            "s_{p} routes disagree: f gives {via_f}, g gives {via_g}"
        )));
    }
    let chi2 = legendre_u64(2, p)? as i64;
    let predicted = if p % 4 == 3 {
        let h = class_number_of_sqrt_minus(p)? as i64;
        BigInt::from(-(2 * chi2 - 1)) * BigInt::from(p) * BigInt::from(h * h)
    } else {
        let b2 = gen_bernoulli(p, 2)?.value;
        let quarter = b2 / BigRational::from(BigInt::from(4));
        let sq = &quarter * &quarter * BigRational::from(BigInt::from(p as i64 * (1 - 4 * chi2)));
        if !sq.is_integer() {
            return Err(Error::Defect(format!("predicted s_{p} = {sq} is not integral")));
        }
        sq.to_integer()
    };
    if via_f != predicted {
        return Err(Error::Defect(format!(
            "s_{p} = {via_f} does not match its closed form {predicted}"
        )));
    }
    let squarefree_part = integer_squarefree_part(&via_f, SQUAREFREE_TRIAL_BOUND)?;
    Ok(SpValue {
        p,
        s: via_f,
        predicted,
        squarefree_part,
    })
}

/// Exact check of disc(f_p) = s * disc(g_p)^2 with
/// s = (-1)^{h_p} f_p(1) f_p(-1), by subresultant discriminants.
pub fn discriminant_relation_check(p: u64) -> Result<bool> {
    if p > DISCRIMINANT_BUDGET {
        return Err(Error::OutOfRange(format!(
            "exact discriminants are budgeted to p <= {DISCRIMINANT_BUDGET}, got {p}"
        )));
    }
    let triple = build(p)?;
    if p < 7 {
        return Ok(true);
    }
    let f = triple.symmetric();
    let g = triple.reduced();
    let one = BigInt::one();
    let mut s = f.evaluate(&one) * f.evaluate(&(-&one));
    if triple.reduced_degree() % 2 == 1 {
        s = -s;
    }
    let disc_f = discriminant(f)?;
    let disc_g = discriminant(g)?;
    Ok(disc_f == s * &disc_g * &disc_g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Triple,
    Quadruple,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::Triple => "triple",
            CertificateKind::Quadruple => "quadruple",
        }
    }
}

/// A (re)checkable certificate. Only the reproducible fields go over
/// the wire; `validated` and `target_group` are always recomputed, so a
/// deserialized certificate starts unvalidated until [`recheck`] runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaloisCertificate {
    pub p: u64,
    pub kind: CertificateKind,
    #[serde(rename = "q")]
    pub primes: Vec<u64>,
    pub patterns: Vec<FactorizationPattern>,
    pub seed: u64,
    pub tool_version: String,
    #[serde(skip)]
    pub validated: bool,
    #[serde(skip)]
    pub target_group: String,
}

fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

fn target_group_name(kind: CertificateKind, n: usize) -> String {
    match kind {
        CertificateKind::Triple => format!("S_{n}"),
        CertificateKind::Quadruple => format!("(Z/2)^{n} : S_{n}"),
    }
}

// pattern-level clause predicates (entries are sorted by degree)

fn pat_n_cycle(pat: &FactorizationPattern, n: usize) -> bool {
    pat.entries() == [(n as u32, 1)]
}

fn pat_linears_plus_irreducible(pat: &FactorizationPattern, k: usize, n: usize) -> bool {
    let e = pat.entries();
    e.len() == k + 1
        && e.iter().all(|&(_, m)| m == 1)
        && e[..k].iter().all(|&(d, _)| d == 1)
        && e[k].0 as usize == n - k
}

fn pat_single_even_cycle(pat: &FactorizationPattern, even: usize) -> bool {
    if !pat.is_squarefree() {
        return false;
    }
    let evens: Vec<u32> = pat
        .entries()
        .iter()
        .filter(|&&(d, _)| d % 2 == 0)
        .map(|&(d, _)| d)
        .collect();
    evens == [even as u32]
}

fn triple_clause(pat: &FactorizationPattern, clause: usize, n: usize) -> bool {
    match clause {
        0 => pat_n_cycle(pat, n),
        1 => pat_linears_plus_irreducible(pat, 1, n),
        _ => pat_single_even_cycle(pat, 2),
    }
}

fn quadruple_clause(pat: &FactorizationPattern, clause: usize, two_n: usize) -> bool {
    match clause {
        0 => pat_n_cycle(pat, two_n),
        1 => pat_linears_plus_irreducible(pat, 2, two_n),
        2 => pat_single_even_cycle(pat, 2),
        _ => pat_single_even_cycle(pat, 4),
    }
}

fn reduce_checked(f: &IntPolynomial, p: u64, q: u64) -> Result<ModPolynomial> {
    if q == p {
        return Err(Error::BadInput(format!(
            "certificate primes must differ from p = {p}"
        )));
    }
    let r = ModPolynomial::reduce(f, q)?;
    // monic input, so the degree never drops
    debug_assert_eq!(r.degree(), f.degree());
    Ok(r)
}

/// Validate a candidate triple for g_p by factoring mod each prime and
/// testing the three cycle-type clauses. `validated` reports the
/// outcome; the observed patterns are always returned.
pub fn check_triple(p: u64, qs: [u64; 3], seed: u64) -> Result<GaloisCertificate> {
    check_tuple(p, &qs, CertificateKind::Triple, seed)
}

/// Validate a candidate quadruple for f_p (four cycle-type clauses).
pub fn check_quadruple(p: u64, qs: [u64; 4], seed: u64) -> Result<GaloisCertificate> {
    check_tuple(p, &qs, CertificateKind::Quadruple, seed)
}

fn check_tuple(p: u64, qs: &[u64], kind: CertificateKind, seed: u64) -> Result<GaloisCertificate> {
    let triple = build(p)?;
    let (poly, deg) = match kind {
        CertificateKind::Triple => (triple.reduced(), triple.reduced_degree()),
        CertificateKind::Quadruple => {
            (triple.symmetric(), triple.symmetric().degree().unwrap_or(0))
        }
    };
    if deg < 2 {
        return Err(Error::BadInput(format!(
            "p = {p} leaves a degenerate polynomial with no certificate"
        )));
    }
    let mut patterns = Vec::with_capacity(qs.len());
    let mut all_ok = true;
    for (i, &q) in qs.iter().enumerate() {
        let reduced = reduce_checked(poly, p, q)?;
        let pat = pattern(&reduced)?;
        let ok = match kind {
            CertificateKind::Triple => triple_clause(&pat, i, deg),
            CertificateKind::Quadruple => quadruple_clause(&pat, i, deg),
        };
        all_ok &= ok;
        patterns.push(pat);
    }
    let n = match kind {
        CertificateKind::Triple => deg,
        CertificateKind::Quadruple => deg / 2,
    };
    Ok(GaloisCertificate {
        p,
        kind,
        primes: qs.to_vec(),
        patterns,
        seed,
        tool_version: tool_version(),
        validated: all_ok,
        target_group: target_group_name(kind, n),
    })
}

/// Re-run the clause checks for a stored certificate. The result
/// carries freshly computed patterns; callers detect tampering by
/// comparing them (and `validated`) with the stored copy.
pub fn recheck(cert: &GaloisCertificate) -> Result<GaloisCertificate> {
    match cert.kind {
        CertificateKind::Triple => {
            let qs: [u64; 3] = cert
                .primes
                .clone()
                .try_into()
                .map_err(|_| Error::BadInput("triple certificate needs 3 primes".into()))?;
            check_triple(cert.p, qs, cert.seed)
        }
        CertificateKind::Quadruple => {
            let qs: [u64; 4] = cert
                .primes
                .clone()
                .try_into()
                .map_err(|_| Error::BadInput("quadruple certificate needs 4 primes".into()))?;
            check_quadruple(cert.p, qs, cert.seed)
        }
    }
}

// search-time clause evaluators; cheaper than full patterns because
// they abort on the first violation

fn search_n_cycle(f: &ModPolynomial) -> Result<bool> {
    let n = f.degree().unwrap();
    Ok(smallest_factor_degree_capped(f, n / 2)?.is_none())
}

/// Exactly k simple roots and an irreducible cofactor of degree n - k.
fn search_linears_plus_irreducible(f: &ModPolynomial, k: usize) -> Result<bool> {
    let q = f.modulus();
    let n = f.degree().unwrap();
    if n < k + 1 {
        return Ok(false);
    }
    let mut roots: Vec<u64> = Vec::with_capacity(k + 1);
    if (q as usize) <= 40 * n {
        for t in 0..q {
            if f.evaluate(t) == 0 {
                roots.push(t);
                if roots.len() > k {
                    return Ok(false);
                }
            }
        }
    } else {
        let xq = ModPolynomial::x(q).pow_mod(q, f);
        let lin = xq.sub(&ModPolynomial::x(q)).gcd(f);
        if lin.degree().unwrap_or(0) != k {
            return Ok(false);
        }
        // k <= 2 here, so roots drop out of the linear/quadratic factor
        match k {
            1 => roots.push((q - lin.coeff(0)) % q),
            2 => {
                for t in 0..q {
                    if lin.evaluate(t) == 0 {
                        roots.push(t);
                        if roots.len() == 2 {
                            break;
                        }
                    }
                }
            }
            _ => {
                return Err(Error::BadInput(format!("unsupported linear count {k}")));
            }
        }
    }
    if roots.len() != k {
        return Ok(false);
    }
    let deriv = f.derivative();
    let mut rest = f.clone();
    for &t in &roots {
        if deriv.evaluate(t) == 0 {
            return Ok(false); // repeated root
        }
        let lin = ModPolynomial::new(q, vec![(q - t) % q, 1])?;
        rest = rest.divrem(&lin)?.0;
    }
    if roots.iter().any(|&t| rest.evaluate(t) == 0) {
        return Ok(false);
    }
    let m = rest.degree().unwrap_or(0);
    if m != n - k {
        return Ok(false);
    }
    Ok(smallest_factor_degree_capped(&rest, m / 2)?.is_none())
}

/// Squarefree with exactly one even-degree irreducible factor, of the
/// given degree; all other factors of odd degree.
fn search_single_even(f: &ModPolynomial, even: usize) -> Result<bool> {
    if f.gcd(&f.derivative()).degree().unwrap_or(0) > 0 {
        return Ok(false);
    }
    let mut found = false;
    for (d, prod) in crate::ff_factor::distinct_degree_profile(f)? {
        if d % 2 == 1 {
            continue;
        }
        if d != even || prod.degree().unwrap() != even || found {
            return Ok(false);
        }
        found = true;
    }
    Ok(found)
}

fn search_clause(poly: &ModPolynomial, kind: CertificateKind, clause: usize) -> Result<bool> {
    match (kind, clause) {
        (_, 0) => search_n_cycle(poly),
        (CertificateKind::Triple, 1) => search_linears_plus_irreducible(poly, 1),
        (CertificateKind::Quadruple, 1) => search_linears_plus_irreducible(poly, 2),
        (CertificateKind::Triple, _) => search_single_even(poly, 2),
        (CertificateKind::Quadruple, 2) => search_single_even(poly, 2),
        (CertificateKind::Quadruple, _) => search_single_even(poly, 4),
    }
}

fn find_smallest(
    p: u64,
    kind: CertificateKind,
    q_bound: u64,
    seed: u64,
) -> Result<GaloisCertificate> {
    let triple = build(p)?;
    let poly = match kind {
        CertificateKind::Triple => triple.reduced(),
        CertificateKind::Quadruple => triple.symmetric(),
    };
    if poly.degree().unwrap_or(0) < 2 {
        return Err(Error::BadInput(format!(
            "p = {p} leaves a degenerate polynomial with no certificate"
        )));
    }
    let clauses = match kind {
        CertificateKind::Triple => 3,
        CertificateKind::Quadruple => 4,
    };
    let mut witnesses: Vec<Option<u64>> = vec![None; clauses];
    for (clause, witness) in witnesses.iter_mut().enumerate() {
        for q in PrimeIterator::new().take_while(|&q| q <= q_bound) {
            if q == p {
                continue;
            }
            let reduced = reduce_checked(poly, p, q)?;
            if search_clause(&reduced, kind, clause)? {
                *witness = Some(q);
                break;
            }
        }
        if witness.is_none() {
            return Err(Error::WitnessNotFound {
                clause: clause + 1,
                bound: q_bound,
            });
        }
    }
    let qs: Vec<u64> = witnesses.into_iter().map(|w| w.unwrap()).collect();
    let cert = match kind {
        CertificateKind::Triple => check_triple(p, [qs[0], qs[1], qs[2]], seed)?,
        CertificateKind::Quadruple => check_quadruple(p, [qs[0], qs[1], qs[2], qs[3]], seed)?,
    };
    if !cert.validated {
        return Err(Error::Defect(format!(
            "search produced a non-validating certificate for p = {p}: {:?}",
            cert.primes
        )));
    }
    Ok(cert)
}

/// Smallest witness prime per clause (independent ascending searches,
/// skipping p itself) for the S_n certificate of g_p.
pub fn find_smallest_triple(p: u64, q_bound: u64, seed: u64) -> Result<GaloisCertificate> {
    find_smallest(p, CertificateKind::Triple, q_bound, seed)
}

/// Smallest witness prime per clause for the hyperoctahedral
/// certificate of f_p.
pub fn find_smallest_quadruple(p: u64, q_bound: u64, seed: u64) -> Result<GaloisCertificate> {
    find_smallest(p, CertificateKind::Quadruple, q_bound, seed)
}

/// Outcome of irreducibility certification: a witness prime with g_p
/// irreducible mod q proves irreducibility over Q; the conclusion
/// transfers to f_p because |s_p| is not a perfect square. Exhausting
/// the bound proves nothing, hence `Unknown` rather than "reducible".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityOutcome {
    Irreducible {
        witness_q: u64,
        /// Whether the f_p conclusion is also certified (|s_p| checked
        /// to be a non-square).
        symmetric_too: bool,
    },
    Unknown,
}

pub fn irreducibility_certify(p: u64, q_bound: u64) -> Result<IrreducibilityOutcome> {
    let triple = build(p)?;
    irreducibility_certify_of(&triple, q_bound)
}

/// As [`irreducibility_certify`] on a prebuilt triple.
pub fn irreducibility_certify_of(
    triple: &FeketeTriple,
    q_bound: u64,
) -> Result<IrreducibilityOutcome> {
    let p = triple.p();
    if p < 7 {
        return Err(Error::BadInput(format!(
            "irreducibility certification starts at p = 7, got {p}"
        )));
    }
    let g = triple.reduced();
    for q in PrimeIterator::new().take_while(|&q| q <= q_bound) {
        if q == p {
            continue;
        }
        let reduced = reduce_checked(g, p, q)?;
        if search_n_cycle(&reduced)? {
            let sp = s_value_of(triple)?;
            if is_perfect_square(&sp.s.abs()) {
                return Err(Error::Defect(format!(
                    "|s_{p}| = {} is a perfect square; the transfer to f_p fails",
                    sp.s.abs()
                )));
            }
            return Ok(IrreducibilityOutcome::Irreducible {
                witness_q: q,
                symmetric_too: true,
            });
        }
    }
    Ok(IrreducibilityOutcome::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in_range;
    use crate::class_numbers::class_number_by_character_sum;

    #[test]
    fn s_value_examples() {
        // rows lifted from the special-value table
        let s7 = s_value(7).unwrap();
        assert_eq!(s7.s, BigInt::from(-7));
        assert_eq!(s7.squarefree_part, BigInt::from(-7));
        let s13 = s_value(13).unwrap();
        assert_eq!(s13.s, BigInt::from(65)); // 13 * 5
        assert_eq!(s13.squarefree_part, BigInt::from(65));
        let s17 = s_value(17).unwrap();
        assert_eq!(s17.s, BigInt::from(-204)); // 34 * (-6)
        assert_eq!(s17.squarefree_part, BigInt::from(-51));
    }

    #[test]
    fn s_value_shape_to_500() {
        for p in primes_in_range(7, 500) {
            let sp = s_value(p).unwrap();
            assert!(!is_perfect_square(&sp.s.abs()), "p={p}");
            let chi2 = legendre_u64(2, p).unwrap() as i64;
            let unit = if p % 4 == 3 { -(2 * chi2 - 1) } else { 1 - 4 * chi2 };
            assert_eq!(
                sp.squarefree_part,
                BigInt::from(unit * p as i64),
                "squarefree part shape p={p}"
            );
            let m2 = &sp.s / &sp.squarefree_part;
            assert!(is_perfect_square(&m2), "p={p}");
            if p % 4 == 3 {
                let h = class_number_by_character_sum(p).unwrap();
                assert_eq!(m2, BigInt::from(h * h), "p={p}");
            }
        }
    }

    #[test]
    fn discriminant_relation_small_primes() {
        for p in [7u64, 11, 13, 17, 19, 23, 29, 31] {
            assert!(discriminant_relation_check(p).unwrap(), "p={p}");
        }
        assert!(discriminant_relation_check(1000).is_err());
    }

    #[test]
    fn published_triples_validate() {
        for (p, qs, group) in [(11u64, [5u64, 7, 53], "S_4"), (13, [3, 5, 61], "S_4")] {
            let cert = check_triple(p, qs, 0).unwrap();
            assert!(cert.validated, "p={p}");
            assert_eq!(cert.target_group, group);
        }
    }

    #[test]
    fn counterexample_tuples_fail() {
        // condition 1 fails mod 3 for g_11
        let cert = check_triple(11, [3, 7, 53], 0).unwrap();
        assert!(!cert.validated);
        // and f_11 mod 2 is not irreducible
        let cert = check_quadruple(11, [2, 23, 7, 73], 0).unwrap();
        assert!(!cert.validated);
    }

    #[test]
    fn published_quadruples_validate() {
        for (p, qs) in [(11u64, [5u64, 23, 7, 73]), (13, [3, 19, 31, 103])] {
            let cert = check_quadruple(p, qs, 0).unwrap();
            assert!(cert.validated, "p={p}");
            assert_eq!(cert.target_group, format!("(Z/2)^4 : S_4"));
        }
    }

    #[test]
    fn smallest_triple_search() {
        assert_eq!(find_smallest_triple(11, 1000, 0).unwrap().primes, vec![5, 7, 53]);
        assert_eq!(find_smallest_triple(17, 1000, 0).unwrap().primes, vec![19, 3, 11]);
        assert_eq!(find_smallest_triple(43, 1000, 0).unwrap().primes, vec![5, 31, 23]);
    }

    #[test]
    fn smallest_quadruple_search() {
        assert_eq!(
            find_smallest_quadruple(11, 1000, 0).unwrap().primes,
            vec![5, 23, 7, 73]
        );
        assert_eq!(
            find_smallest_quadruple(37, 1000, 0).unwrap().primes,
            vec![7, 19, 109, 53]
        );
    }

    #[test]
    fn search_not_found_reports_clause() {
        match find_smallest_triple(11, 3, 0) {
            Err(Error::WitnessNotFound { clause, bound: 3 }) => assert_eq!(clause, 1),
            other => panic!("expected WitnessNotFound, got {other:?}"),
        }
    }

    #[test]
    fn certificate_serialization_round_trip() {
        let cert = check_triple(11, [5, 7, 53], 42).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"q\":[5,7,53]"), "{json}");
        assert!(json.contains("\"kind\":\"triple\""), "{json}");
        let back: GaloisCertificate = serde_json::from_str(&json).unwrap();
        assert!(!back.validated); // wire format never carries trust
        let fresh = recheck(&back).unwrap();
        assert!(fresh.validated);
        assert_eq!(fresh.patterns, cert.patterns);
    }

    #[test]
    fn irreducibility_examples() {
        assert_eq!(
            irreducibility_certify(11, 100).unwrap(),
            IrreducibilityOutcome::Irreducible { witness_q: 5, symmetric_too: true }
        );
        assert_eq!(
            irreducibility_certify(13, 100).unwrap(),
            IrreducibilityOutcome::Irreducible { witness_q: 3, symmetric_too: true }
        );
        match irreducibility_certify(23, 1_000_000).unwrap() {
            IrreducibilityOutcome::Irreducible { witness_q, .. } => assert_eq!(witness_q, 7),
            IrreducibilityOutcome::Unknown => panic!("witness expected for p = 23"),
        }
        // a tiny bound yields Unknown, never "reducible"
        assert_eq!(irreducibility_certify(23, 3).unwrap(), IrreducibilityOutcome::Unknown);
    }
}
