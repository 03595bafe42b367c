//! Exact counts of the partitions of `n` classified by how the product of
//! their summands compares to `n`.
//!
//! [`counting`] evaluates an explicit nested floor-function sum for the
//! `<=` and `<` counts; their difference is the multiplicative-partition
//! count (unordered factorizations, OEIS A001055), and the `>=`/`>` counts
//! follow as complements through the partition function p(n). [`oracle`]
//! re-derives every count by brute-force enumeration so the two routes can
//! be checked against each other, and [`oeis`] cross-checks both against
//! b-files for A001055, A096276, A319005 and A114324.
//!
//! All fixed-width counts use checked 64-bit arithmetic; overflow is
//! reported as an error, never wrapped. p(n) and the complement counts are
//! arbitrary precision.

pub mod arith;
pub mod counting;
pub mod oeis;
pub mod oracle;

pub use arith::{factorize, integer_kth_root, max_nonone_parts, partition_count, Factorization};
pub use counting::{
    count_product_at_least, count_product_at_most, count_product_equal, count_product_greater,
    count_product_less, count_row, count_with_k_nonone, CountError, CountRow,
};
pub use num_bigint::BigUint;
pub use oracle::{
    count_factorizations, enumerate_product_bounded, oracle_count, prime_power_parts_count,
    prime_power_parts_oracle, verify_proposition1, OracleError, Partition, Relation,
};
