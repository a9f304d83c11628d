use std::time::Instant;
use fekete_core::polynomials::ModPolynomial;

fn main() {
    println!("compiled with avx2={} avx512f={}", cfg!(target_feature = "avx2"), cfg!(target_feature = "avx512f"));
    let q = 4583u64;
    let n = 496usize;
    let f = {
        let mut cs: Vec<u64> = (0..n).map(|i| (i as u64 * 37 + 5) % q).collect();
        cs.push(1);
        ModPolynomial::new(q, cs).unwrap()
    };
    let a = ModPolynomial::new(q, (0..n).map(|i| (i as u64 * 91 + 3) % q).collect()).unwrap();

    let t = Instant::now();
    let mut prod = a.clone();
    for _ in 0..100 {
        prod = a.mul(&prod.divrem(&f).unwrap().1);
    }
    std::hint::black_box(&prod);
    println!("100 x (mul + divrem): {:?}", t.elapsed());

    let big = a.mul(&a);
    let t = Instant::now();
    for _ in 0..100 {
        std::hint::black_box(big.divrem(&f).unwrap());
    }
    println!("100 divrem (deg 990 by 496): {:?}", t.elapsed());

    let t = Instant::now();
    for _ in 0..100 {
        std::hint::black_box(a.mul(&a));
    }
    println!("100 mul (496x496): {:?}", t.elapsed());

    let t = Instant::now();
    let xq = ModPolynomial::x(q).pow_mod(q, &f);
    println!("x^q mod f: {:?}", t.elapsed());
    std::hint::black_box(&xq);
}
