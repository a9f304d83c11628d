use std::time::Instant;
use num_bigint::BigInt;
use num_rational::BigRational;
use fekete_core::{fekete, polynomials, galois_certify, modular_props};

fn main() {
    // Polya: roots of f_67 in (0,1) = nontrivial roots of F_67/x there
    let t = Instant::now();
    let triple = fekete::build(67).unwrap();
    let lo = BigRational::new(BigInt::from(0), BigInt::from(1));
    let hi = BigRational::new(BigInt::from(1), BigInt::from(1));
    let count = polynomials::sturm_root_count(triple.symmetric(), &lo, &hi).unwrap();
    println!("f_67 roots in (0,1): {count}  [{:?}]", t.elapsed());
    for p in [7u64, 11, 13] {
        let t3 = fekete::build(p).unwrap();
        let c = polynomials::sturm_root_count(t3.symmetric(), &lo, &hi).unwrap();
        println!("f_{p} roots in (0,1): {c}");
    }

    let t = Instant::now();
    let tr = fekete::build(1999).unwrap();
    println!("build(1999): {:?} (h_p = {})", t.elapsed(), tr.reduced_degree());
    let t = Instant::now();
    let sv = fekete::special_values_of(&tr).unwrap();
    println!("special_values(1999): {:?} all_match={}", t.elapsed(), sv.all_match());

    let t = Instant::now();
    let r = modular_props::discriminant_valuation_report(149, None).unwrap();
    println!("disc report 149: {:?} v_p={} v_2={} holds={}", t.elapsed(), r.v_p, r.v_2, r.both_bounds_hold);

    let t = Instant::now();
    let c = galois_certify::check_triple(499, [947, 887, 59], 0).unwrap();
    println!("check_triple(499): {:?} validated={}", t.elapsed(), c.validated);

    let t = Instant::now();
    let c = galois_certify::check_quadruple(199, [547, 787, 8581, 499], 0).unwrap();
    println!("check_quadruple(199): {:?} validated={}", t.elapsed(), c.validated);

    for p in [499u64, 997] {
        let t = Instant::now();
        let out = galois_certify::irreducibility_certify(p, 1_000_000).unwrap();
        println!("irreducibility_certify({p}): {:?} -> {:?}", t.elapsed(), out);
    }
}
