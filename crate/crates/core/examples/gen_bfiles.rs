//! Regenerates the vendored b-files under `data/` from the brute-force
//! routes: A001055 by recursive factorization counting, A096276 as its
//! partial sums, and A319005/A114324 as p(n) minus those sums. The
//! closed-form counting module is deliberately not involved, so the
//! vendored data stays an independent reference for it.
//!
//! Run from anywhere with:
//!     cargo run -p partition-products --release --example gen_bfiles

use std::path::Path;

use num_bigint::{BigInt, BigUint};
use partition_products::arith::partition_count;
use partition_products::oeis::{render_bfile, OeisSeries};
use partition_products::oracle::count_factorizations;

const TERMS: u64 = 1000;

fn write_series(id: &str, values: Vec<BigInt>) {
    let series = OeisSeries::new(id, 1, values).expect("generated series is valid");
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("b{}.txt", &id[1..]));
    std::fs::write(&path, render_bfile(&series)).expect("write b-file");
    println!("wrote {} ({} terms)", path.display(), series.len());
}

fn main() {
    let factorization_counts: Vec<u64> = (1..=TERMS)
        .map(|m| count_factorizations(m, m).expect("count fits u64"))
        .collect();

    let mut partial_sums = Vec::with_capacity(TERMS as usize);
    let mut acc = 0u64;
    for &count in &factorization_counts {
        acc += count;
        partial_sums.push(acc);
    }

    let partitions: Vec<BigUint> = (1..=TERMS).map(partition_count).collect();

    // product >= n is everything except product <= n - 1, and the sums
    // with product <= n - 1 biject with factorizations of m <= n - 1 by
    // dropping the padding ones.
    let geq: Vec<BigInt> = (0..TERMS as usize)
        .map(|i| {
            let below = if i == 0 { 0 } else { partial_sums[i - 1] };
            BigInt::from(&partitions[i] - BigUint::from(below))
        })
        .collect();
    let greater: Vec<BigInt> = (0..TERMS as usize)
        .map(|i| BigInt::from(&partitions[i] - BigUint::from(partial_sums[i])))
        .collect();

    write_series(
        "A001055",
        factorization_counts.into_iter().map(BigInt::from).collect(),
    );
    write_series(
        "A096276",
        partial_sums.into_iter().map(BigInt::from).collect(),
    );
    write_series("A319005", geq);
    write_series("A114324", greater);
}
