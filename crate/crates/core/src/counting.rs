//! Closed-form counting of partitions by product, via a nested sum over the
//! non-one parts.
//!
//! A partition of `n` whose product of parts is at most `n` is determined by
//! its multiset of parts `>= 2`: such parts multiply to at least their sum,
//! so the remainder can always be padded with ones. Counting therefore
//! reduces to counting nondecreasing tuples `2 <= i_1 <= ... <= i_k` with
//! bounded product, summed over the possible lengths `k <= log2(n)`. The
//! innermost index is never enumerated; its admissible range collapses to a
//! single floor-division term, which keeps the total work far below the
//! number of partitions counted.

use num_bigint::BigUint;
use thiserror::Error;

use crate::arith::{integer_kth_root, max_nonone_parts, partition_count};

/// Errors from the counting entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    /// The counts are defined for positive `n` only.
    #[error("n must be positive")]
    ZeroInput,
    /// A count does not fit in 64 bits.
    #[error("count for n = {n} exceeds u64")]
    Overflow { n: u64 },
}

/// Every count for a single `n`.
///
/// The row satisfies `p_less + p_geq = p_all`, `p_leq + p_greater = p_all`
/// and `p_leq - p_less = p_eq`. The three bounded counts fit in `u64` for
/// any representable `n`; the complements grow like p(n) and are kept
/// exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub n: u64,
    /// p(n), all partitions of `n`.
    pub p_all: BigUint,
    /// Partitions with product of parts < n.
    pub p_less: u64,
    /// Partitions with product of parts <= n.
    pub p_leq: u64,
    /// Partitions with product of parts = n.
    pub p_eq: u64,
    /// Partitions with product of parts >= n.
    pub p_geq: BigUint,
    /// Partitions with product of parts > n.
    pub p_greater: BigUint,
}

/// Counts nondecreasing tuples `2 <= i_1 <= ... <= i_k` with
/// `i_1 * ... * i_k <= cap`, where `cap` is `n` or `n - 1`.
///
/// Each tuple is the multiset of non-one parts of a partition of `n` with
/// product `<= cap`, so summing over `k = 0..=log2(n)` yields
/// [`count_product_at_most`] (`cap = n`) or [`count_product_less`]
/// (`cap = n - 1`). The index bounds are k-th roots of `n`; with
/// `cap = n - 1` the final term can shrink to zero but never below, which
/// is what makes the two caps the only valid ones.
///
/// # Panics
///
/// Panics if `cap` is neither `n` nor `n - 1`.
pub fn count_with_k_nonone(n: u64, k: u32, cap: u64) -> Result<u64, CountError> {
    if n == 0 {
        return Err(CountError::ZeroInput);
    }
    assert!(
        cap == n || cap == n - 1,
        "cap must be n or n - 1, got n = {n}, cap = {cap}"
    );
    match k {
        // The empty tuple has product 1.
        0 => Ok(u64::from(cap >= 1)),
        // Single part i in 2..=cap.
        1 => Ok(cap.saturating_sub(1)),
        _ => suffix_count(n, cap, 1, 2, k),
    }
}

/// Sum over the remaining `remaining >= 1` indices, the current one being
/// at least `min_part`, with `prefix` the product of the indices already
/// fixed.
fn suffix_count(n: u64, cap: u64, prefix: u64, min_part: u64, remaining: u32) -> Result<u64, CountError> {
    if remaining == 1 {
        // All choices of the last index collapse into one term: it ranges
        // over min_part..=cap/prefix.
        let hi = cap / prefix;
        debug_assert!(cap < n || hi >= min_part);
        return Ok((hi + 1).saturating_sub(min_part));
    }
    let hi = integer_kth_root(n / prefix, remaining);
    let mut total: u64 = 0;
    for i in min_part..=hi {
        // prefix * i <= prefix * (n / prefix) <= n, no overflow.
        let sub = suffix_count(n, cap, prefix * i, i, remaining - 1)?;
        total = total
            .checked_add(sub)
            .ok_or(CountError::Overflow { n })?;
    }
    Ok(total)
}

fn sum_over_lengths(n: u64, cap: u64) -> Result<u64, CountError> {
    if n == 0 {
        return Err(CountError::ZeroInput);
    }
    let mut total: u64 = 0;
    for k in 0..=max_nonone_parts(n) {
        let part = count_with_k_nonone(n, k, cap)?;
        total = total
            .checked_add(part)
            .ok_or(CountError::Overflow { n })?;
    }
    Ok(total)
}

/// Number of partitions of `n` whose product of parts is at most `n`.
pub fn count_product_at_most(n: u64) -> Result<u64, CountError> {
    sum_over_lengths(n, n)
}

/// Number of partitions of `n` whose product of parts is less than `n`.
pub fn count_product_less(n: u64) -> Result<u64, CountError> {
    if n == 0 {
        return Err(CountError::ZeroInput);
    }
    sum_over_lengths(n, n - 1)
}

/// Number of partitions of `n` whose product of parts equals `n`.
///
/// This is also the number of factorizations of `n` into integer factors
/// at least 2 (OEIS A001055), since padding with ones converts one object
/// into the other.
pub fn count_product_equal(n: u64) -> Result<u64, CountError> {
    let at_most = count_product_at_most(n)?;
    let less = count_product_less(n)?;
    debug_assert!(at_most >= less);
    Ok(at_most - less)
}

/// Number of partitions of `n` whose product of parts is at least `n`.
pub fn count_product_at_least(n: u64) -> Result<BigUint, CountError> {
    let less = count_product_less(n)?;
    Ok(partition_count(n) - BigUint::from(less))
}

/// Number of partitions of `n` whose product of parts exceeds `n`.
pub fn count_product_greater(n: u64) -> Result<BigUint, CountError> {
    let at_most = count_product_at_most(n)?;
    Ok(partition_count(n) - BigUint::from(at_most))
}

/// Computes the full row of counts for `n`.
pub fn count_row(n: u64) -> Result<CountRow, CountError> {
    let p_leq = count_product_at_most(n)?;
    let p_less = count_product_less(n)?;
    debug_assert!(p_leq >= p_less);
    let p_all = partition_count(n);
    let p_geq = &p_all - BigUint::from(p_less);
    let p_greater = &p_all - BigUint::from(p_leq);
    Ok(CountRow {
        n,
        p_all,
        p_less,
        p_leq,
        p_eq: p_leq - p_less,
        p_geq,
        p_greater,
    })
}
