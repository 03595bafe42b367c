//! Brute-force ground truth for the counting module.
//!
//! Everything here is deliberately naive: partitions are enumerated
//! outright, factorizations are counted by recursive descent over
//! divisors, and the proposition checkers test the stated conditions
//! verbatim. None of it shares code with the closed-form path beyond the
//! shared arithmetic primitives, so agreement between the two routes is
//! meaningful evidence.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::arith::{factorize, partition_count};

/// Largest number of partitions an enumeration will materialize before
/// giving up with [`OracleError::CapExceeded`].
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// Errors from the oracle entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// An enumeration produced more partitions than the caller allowed.
    #[error("enumeration for n = {n} exceeded the cap of {cap} partitions")]
    CapExceeded { n: u64, cap: usize },
    /// A count does not fit in 64 bits.
    #[error("count for n = {n} exceeds u64")]
    Overflow { n: u64 },
}

/// A partition of `n`: its parts in non-decreasing order, their sum, and
/// their exact product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<u64>,
    n: u64,
    product: BigUint,
}

impl Partition {
    /// Builds a partition from its parts, sorting them.
    ///
    /// # Panics
    ///
    /// Panics if `parts` is empty, contains a zero, or sums past `u64`.
    pub fn new(mut parts: Vec<u64>) -> Self {
        assert!(!parts.is_empty(), "a partition has at least one part");
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        parts.sort_unstable();
        let n = parts
            .iter()
            .try_fold(0u64, |acc, &p| acc.checked_add(p))
            .expect("partition sum exceeds u64");
        let product = parts.iter().fold(BigUint::one(), |acc, &p| acc * p);
        Partition { parts, n, product }
    }

    /// Parts in non-decreasing order.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Product of the parts.
    pub fn product(&self) -> &BigUint {
        &self.product
    }
}

/// How a partition's product compares to its sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Less,
    AtMost,
    Equal,
    AtLeast,
    Greater,
}

/// All partitions of `n` whose product of parts is at most `bound`,
/// in lexicographic order of the parts list, capped at
/// [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_product_bounded(n: u64, bound: u64) -> Result<Vec<Partition>, OracleError> {
    enumerate_product_bounded_capped(n, bound, DEFAULT_ENUMERATION_CAP)
}

/// [`enumerate_product_bounded`] with an explicit partition cap.
///
/// Only the multisets of parts `>= 2` are walked (their product already
/// exceeds `bound` or their sum exceeds `n` otherwise), and each is padded
/// with ones to a full partition of `n`, so the work is proportional to
/// the number of partitions returned rather than to p(n).
///
/// # Panics
///
/// Panics if `n == 0` or `bound == 0`.
pub fn enumerate_product_bounded_capped(
    n: u64,
    bound: u64,
    cap: usize,
) -> Result<Vec<Partition>, OracleError> {
    assert!(n >= 1, "n must be positive");
    assert!(bound >= 1, "bound must be positive");
    let mut out = Vec::new();
    let mut stack = Vec::new();
    walk(n, bound, cap, &mut stack, 0, 1, &mut out)?;
    out.sort_unstable_by(|a, b| a.parts.cmp(&b.parts));
    Ok(out)
}

fn walk(
    n: u64,
    bound: u64,
    cap: usize,
    stack: &mut Vec<u64>,
    sum: u64,
    prod: u64,
    out: &mut Vec<Partition>,
) -> Result<(), OracleError> {
    if out.len() >= cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let mut parts = vec![1u64; (n - sum) as usize];
    parts.extend_from_slice(stack);
    out.push(Partition {
        parts,
        n,
        product: BigUint::from(prod),
    });
    let lo = stack.last().copied().unwrap_or(2);
    let hi = (n - sum).min(bound / prod);
    for i in lo..=hi {
        stack.push(i);
        walk(n, bound, cap, stack, sum + i, prod * i, out)?;
        stack.pop();
    }
    Ok(())
}

/// Visits every partition of `n` (all p(n) of them) in lexicographic
/// order of the parts list. Intended for small `n`; the product is kept
/// exact however large it grows.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn for_each_partition(n: u64, mut visit: impl FnMut(&Partition)) {
    assert!(n >= 1, "n must be positive");
    fn rec(
        n: u64,
        rem: u64,
        min_part: u64,
        stack: &mut Vec<u64>,
        prod: &mut BigUint,
        visit: &mut impl FnMut(&Partition),
    ) {
        if rem == 0 {
            visit(&Partition {
                parts: stack.clone(),
                n,
                product: prod.clone(),
            });
            return;
        }
        for part in min_part..=rem {
            stack.push(part);
            *prod *= part;
            rec(n, rem - part, part, stack, prod, visit);
            *prod /= part;
            stack.pop();
        }
    }
    let mut stack = Vec::new();
    let mut prod = BigUint::one();
    rec(n, n, 1, &mut stack, &mut prod, &mut visit);
}

/// Counts, by enumeration, the partitions of `n` whose product stands in
/// `relation` to `n`.
///
/// The two high-product relations are counted as p(n) minus the enumerated
/// complement; enumerating them directly would visit nearly all p(n)
/// partitions.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn oracle_count(n: u64, relation: Relation) -> Result<u64, OracleError> {
    assert!(n >= 1, "n must be positive");
    let low_side = |bound: u64| -> Result<u64, OracleError> {
        if bound == 0 {
            return Ok(0);
        }
        Ok(enumerate_product_bounded(n, bound)?.len() as u64)
    };
    match relation {
        Relation::Less => low_side(n - 1),
        Relation::AtMost => low_side(n),
        Relation::Equal => {
            let target = BigUint::from(n);
            let matching = enumerate_product_bounded(n, n)?
                .iter()
                .filter(|p| p.product == target)
                .count();
            Ok(matching as u64)
        }
        Relation::AtLeast => complement(n, low_side(n - 1)?),
        Relation::Greater => complement(n, low_side(n)?),
    }
}

fn complement(n: u64, low: u64) -> Result<u64, OracleError> {
    let all = u64::try_from(&partition_count(n)).map_err(|_| OracleError::Overflow { n })?;
    Ok(all - low)
}

/// Counts the multisets of integers in `2..=max_factor` whose product is
/// `m`, by recursive descent over the divisors of `m`. The empty multiset
/// counts for `m = 1`.
///
/// # Panics
///
/// Panics if `m == 0` or `max_factor == 0`.
pub fn count_factorizations(m: u64, max_factor: u64) -> Result<u64, OracleError> {
    assert!(m >= 1, "m must be positive");
    assert!(max_factor >= 1, "max_factor must be positive");
    if m == 1 {
        return Ok(1);
    }
    let mut divisors = Vec::new();
    let mut i = 1;
    while i * i <= m {
        if m % i == 0 {
            divisors.push(i);
            divisors.push(m / i);
        }
        i += 1;
    }
    divisors.sort_unstable_by(|a, b| b.cmp(a));
    divisors.dedup();
    let mut total: u64 = 0;
    for &d in divisors.iter().filter(|&&d| d >= 2 && d <= max_factor) {
        let sub = count_factorizations(m / d, d)?;
        total = total
            .checked_add(sub)
            .ok_or(OracleError::Overflow { n: m })?;
    }
    Ok(total)
}

/// Checks the divisor-and-exponent condition: every part divides `p.n`,
/// and for each prime of `p.n` the exponents contributed by the parts sum
/// to the prime's exponent in `p.n`. This holds exactly when the product
/// of the parts equals `p.n`.
pub fn verify_proposition1(p: &Partition) -> bool {
    let n = p.n();
    if p.parts().iter().any(|&part| n % part != 0) {
        return false;
    }
    let target = factorize(n);
    let mut exponents = vec![0u32; target.factors().len()];
    for &part in p.parts().iter().filter(|&&part| part > 1) {
        for &(prime, exp) in factorize(part).factors() {
            match target.factors().iter().position(|&(q, _)| q == prime) {
                Some(idx) => exponents[idx] += exp,
                None => return false,
            }
        }
    }
    exponents
        .iter()
        .zip(target.factors())
        .all(|(&got, &(_, want))| got == want)
}

/// Number of partitions of `n` with product `n` in which every part
/// larger than one is a prime power: the product of p(alpha) over the
/// prime exponents alpha of `n`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn prime_power_parts_count(n: u64) -> Result<u64, OracleError> {
    assert!(n >= 1, "n must be positive");
    let mut total: u64 = 1;
    for &(_, alpha) in factorize(n).factors() {
        let factor = u64::try_from(&partition_count(u64::from(alpha)))
            .map_err(|_| OracleError::Overflow { n })?;
        total = total
            .checked_mul(factor)
            .ok_or(OracleError::Overflow { n })?;
    }
    Ok(total)
}

/// Counts, by enumeration, the factorizations of `n` into prime-power
/// factors whose sum is at most `n` (so each extends to a partition of `n`
/// by padding with ones). The sum condition is checked even though a
/// factorization's factors can never outgrow their product.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn prime_power_parts_oracle(n: u64) -> Result<u64, OracleError> {
    assert!(n >= 1, "n must be positive");
    let mut prime_powers = Vec::new();
    for &(p, alpha) in factorize(n).factors() {
        let mut power = 1u64;
        for _ in 0..alpha {
            power *= p;
            prime_powers.push(power);
        }
    }
    prime_powers.sort_unstable_by(|a, b| b.cmp(a));
    fn rec(n: u64, m: u64, max_part: u64, sum: u64, prime_powers: &[u64]) -> Result<u64, OracleError> {
        if m == 1 {
            return Ok(u64::from(sum <= n));
        }
        let mut total: u64 = 0;
        for &d in prime_powers.iter().filter(|&&d| d <= max_part && m % d == 0) {
            let sub = rec(n, m / d, d, sum + d, prime_powers)?;
            total = total
                .checked_add(sub)
                .ok_or(OracleError::Overflow { n })?;
        }
        Ok(total)
    }
    rec(n, n, n, 0, &prime_powers)
}
