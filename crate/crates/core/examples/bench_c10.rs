use std::time::Instant;
use fekete_core::{arith, galois_certify};
use rayon::prelude::*;

fn main() {
    let t = Instant::now();
    let primes = arith::primes_in_range(7, 1000);
    let bad: Vec<u64> = primes
        .par_iter()
        .filter(|&&p| {
            !matches!(
                galois_certify::irreducibility_certify(p, 1_000_000),
                Ok(galois_certify::IrreducibilityOutcome::Irreducible { .. })
            )
        })
        .copied()
        .collect();
    println!("criterion 10 sweep: {:?}, non-certified: {:?}", t.elapsed(), bad);
}
