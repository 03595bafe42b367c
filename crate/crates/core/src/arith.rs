//! Shared integer arithmetic: exact k-th roots, trial-division
//! factorization, and the partition function p(n).

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Computes `base^exp` unless it would exceed `limit`, in which case the
/// exact power is irrelevant and `None` is returned.
fn pow_at_most(base: u64, exp: u32, limit: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).filter(|&v| v <= limit)?;
    }
    Some(acc)
}

/// Returns `⌊x^(1/k)⌋`, the largest `r` with `r^k <= x`.
///
/// Exact for the full `u64` range; no floating point is involved, so there
/// are no rounding edge cases near perfect powers.
///
/// # Panics
///
/// Panics if `k == 0`.
pub fn integer_kth_root(x: u64, k: u32) -> u64 {
    assert!(k >= 1, "zeroth root is undefined");
    if k == 1 || x <= 1 {
        return x;
    }
    // r^k <= x implies r < 2^ceil(bits(x)/k), which gives a tight upper
    // bound for the binary search.
    let bits = 64 - x.leading_zeros();
    let hi_exp = bits.div_ceil(k);
    let mut lo: u64 = 1;
    let mut hi: u64 = 1u64 << hi_exp.min(63);
    // Invariant: lo^k <= x < hi^k (treating overflowing hi^k as infinite).
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match pow_at_most(mid, k, x) {
            Some(_) => lo = mid,
            None => hi = mid,
        }
    }
    lo
}

/// Returns the largest number of parts `>= 2` a partition can have while
/// its product of parts stays `<= n`, namely `⌊log2 n⌋`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn max_nonone_parts(n: u64) -> u32 {
    assert!(n >= 1, "n must be positive");
    63 - n.leading_zeros()
}

/// Prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored integer.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Prime factors with multiplicities, in increasing prime order.
    /// Empty exactly when `n == 1`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// True when `n = p^a` for a single prime `p` (so also for primes).
    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }
}

/// Factors `n` by trial division.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "cannot factor zero");
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut exp = 0;
        while *rest % p == 0 {
            *rest /= p;
            exp += 1;
        }
        if exp > 0 {
            factors.push((p, exp));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut p: u64 = 5;
    // 6k +- 1 wheel; p*p can't overflow before exceeding rest <= u64::MAX.
    while rest > 1 {
        match p.checked_mul(p) {
            Some(sq) if sq <= rest => {}
            _ => break,
        }
        push(p, &mut rest);
        push(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Factorization { n, factors }
}

fn partition_memo() -> &'static Mutex<Vec<BigUint>> {
    static MEMO: OnceLock<Mutex<Vec<BigUint>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(vec![BigUint::one()]))
}

/// Returns p(n), the number of partitions of `n`, with `p(0) = 1`.
///
/// Computed by Euler's pentagonal-number recurrence over a process-wide
/// memo table, so a sweep over `0..=n` costs `O(n^1.5)` big-integer
/// additions in total.
pub fn partition_count(n: u64) -> BigUint {
    let n = usize::try_from(n).expect("partition index exceeds address space");
    let mut memo = partition_memo().lock().expect("partition memo poisoned");
    while memo.len() <= n {
        let m = memo.len();
        // Signs come in pairs (+ + - -), so accumulate the positive and
        // negative sides separately and subtract once at the end.
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let side = if k % 2 == 1 { &mut plus } else { &mut minus };
            *side += &memo[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                *side += &memo[m - g2];
            }
            k += 1;
        }
        memo.push(plus - minus);
    }
    memo[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kth_root_small_cases() {
        assert_eq!(integer_kth_root(0, 3), 0);
        assert_eq!(integer_kth_root(1, 7), 1);
        assert_eq!(integer_kth_root(7, 2), 2);
        assert_eq!(integer_kth_root(8, 3), 2);
        assert_eq!(integer_kth_root(9, 2), 3);
        assert_eq!(integer_kth_root(26, 3), 2);
        assert_eq!(integer_kth_root(27, 3), 3);
        assert_eq!(integer_kth_root(999_999, 2), 999);
        assert_eq!(integer_kth_root(1_000_000, 2), 1000);
    }

    #[test]
    fn kth_root_first_root_is_identity() {
        for x in [0, 1, 2, u64::MAX - 1, u64::MAX] {
            assert_eq!(integer_kth_root(x, 1), x);
        }
    }

    #[test]
    fn kth_root_near_u64_max() {
        assert_eq!(integer_kth_root(u64::MAX, 2), 4_294_967_295);
        assert_eq!(integer_kth_root(u64::MAX, 64), 1);
        assert_eq!(integer_kth_root(u64::MAX, 63), 2);
        let r = integer_kth_root(u64::MAX, 3);
        assert!(pow_at_most(r, 3, u64::MAX).is_some());
        assert!(pow_at_most(r + 1, 3, u64::MAX).is_none());
    }

    #[test]
    #[should_panic(expected = "zeroth root")]
    fn kth_root_rejects_k_zero() {
        integer_kth_root(10, 0);
    }

    #[test]
    fn max_nonone_parts_follows_log2() {
        assert_eq!(max_nonone_parts(1), 0);
        assert_eq!(max_nonone_parts(2), 1);
        assert_eq!(max_nonone_parts(3), 1);
        assert_eq!(max_nonone_parts(4), 2);
        assert_eq!(max_nonone_parts(7), 2);
        assert_eq!(max_nonone_parts(8), 3);
        assert_eq!(max_nonone_parts(1023), 9);
        assert_eq!(max_nonone_parts(1024), 10);
        assert_eq!(max_nonone_parts(u64::MAX), 63);
    }

    #[test]
    fn factorize_small_numbers() {
        assert_eq!(factorize(1).factors(), &[]);
        assert_eq!(factorize(2).factors(), &[(2, 1)]);
        assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97).factors(), &[(97, 1)]);
        assert_eq!(factorize(720).factors(), &[(2, 4), (3, 2), (5, 1)]);
        assert_eq!(
            factorize(2 * 3 * 5 * 7 * 11 * 13).factors(),
            &[(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1)]
        );
    }

    #[test]
    fn factorize_recognizes_primes_and_prime_powers() {
        assert!(factorize(2).is_prime());
        assert!(factorize(97).is_prime());
        assert!(!factorize(1).is_prime());
        assert!(!factorize(4).is_prime());
        assert!(factorize(4).is_prime_power());
        assert!(factorize(243).is_prime_power());
        assert!(!factorize(12).is_prime_power());
        assert!(!factorize(1).is_prime_power());
    }

    #[test]
    fn factorize_large_semiprime() {
        let p = 1_000_003; // first prime above 10^6
        let f = factorize(p * p);
        assert_eq!(f.factors(), &[(p, 2)]);
        assert!(f.is_prime_power());
        assert!(factorize(999_999_937).is_prime());
    }

    #[test]
    fn partition_count_matches_dp_oracle() {
        // Independent route: count by largest allowed part, one part size
        // at a time.
        let n = 200usize;
        let mut ways = vec![BigUint::zero(); n + 1];
        ways[0] = BigUint::one();
        for part in 1..=n {
            for s in part..=n {
                let add = ways[s - part].clone();
                ways[s] += add;
            }
        }
        for (m, want) in ways.iter().enumerate() {
            assert_eq!(&partition_count(m as u64), want, "p({m})");
        }
    }

    #[test]
    fn partition_count_matches_known_values() {
        let expect: [u64; 13] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(partition_count(n as u64), BigUint::from(e), "p({n})");
        }
        assert_eq!(partition_count(50), BigUint::from(204_226u64));
        assert_eq!(partition_count(100), BigUint::from(190_569_292u64));
        assert_eq!(
            partition_count(1000).to_string(),
            "24061467864032622473692149727991"
        );
    }
}
