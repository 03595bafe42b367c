//! The release gate: one test per acceptance criterion, each printing a
//! single PASS or FAIL line (run with `--nocapture` to see them) and
//! enforcing its runtime budget where one is stated.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use partition_products::oeis::{cross_check, vendored_series, Quantity};
use partition_products::oracle::{for_each_partition, Relation};
use partition_products::{
    count_factorizations, count_product_at_least, count_product_at_most, count_product_equal,
    count_product_greater, count_product_less, factorize, integer_kth_root, oracle_count,
    partition_count, prime_power_parts_count, prime_power_parts_oracle,
};
use rayon::prelude::*;

fn run(name: &str, budget: Option<Duration>, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) => {
            if let Some(budget) = budget {
                if elapsed > budget {
                    println!("[FAIL] {name}: took {elapsed:.2?}, budget {budget:?}");
                    panic!("{name} exceeded its budget: {elapsed:.2?} > {budget:?}");
                }
            }
            println!("[PASS] {name} ({elapsed:.2?})");
        }
        Err(reason) => {
            println!("[FAIL] {name}: {reason}");
            panic!("{name}: {reason}");
        }
    }
}

fn first_failure<I>(failures: I) -> Result<(), String>
where
    I: IntoIterator<Item = String>,
{
    match failures.into_iter().next() {
        None => Ok(()),
        Some(first) => Err(first),
    }
}

#[test]
fn acceptance_1_partition_constant() {
    run("criterion 1: p(7) = 15", None, || {
        let got = partition_count(7);
        if got == BigUint::from(15u32) {
            Ok(())
        } else {
            Err(format!("p(7) = {got}, want 15"))
        }
    });
}

#[test]
fn acceptance_2_oracle_equivalence() {
    run(
        "criterion 2: formula = enumeration for all five relations, n <= 300",
        Some(Duration::from_secs(60)),
        || {
            let failures: Vec<String> = (1..=300u64)
                .into_par_iter()
                .filter_map(|n| {
                    let checks: [(&str, u64, u64); 5] = [
                        (
                            "p_less",
                            count_product_less(n).unwrap(),
                            oracle_count(n, Relation::Less).unwrap(),
                        ),
                        (
                            "p_leq",
                            count_product_at_most(n).unwrap(),
                            oracle_count(n, Relation::AtMost).unwrap(),
                        ),
                        (
                            "p_eq",
                            count_product_equal(n).unwrap(),
                            oracle_count(n, Relation::Equal).unwrap(),
                        ),
                        (
                            "p_geq",
                            u64::try_from(&count_product_at_least(n).unwrap()).unwrap(),
                            oracle_count(n, Relation::AtLeast).unwrap(),
                        ),
                        (
                            "p_greater",
                            u64::try_from(&count_product_greater(n).unwrap()).unwrap(),
                            oracle_count(n, Relation::Greater).unwrap(),
                        ),
                    ];
                    checks.iter().find_map(|(label, formula, oracle)| {
                        (formula != oracle).then(|| {
                            format!("{label}({n}): formula {formula}, oracle {oracle}")
                        })
                    })
                })
                .collect();
            first_failure(failures)
        },
    );
}

#[test]
fn acceptance_3_factorization_agreement() {
    run(
        "criterion 3: p_eq(n) = count_factorizations(n, n), n <= 5000",
        Some(Duration::from_secs(120)),
        || {
            let failures: Vec<String> = (1..=5000u64)
                .into_par_iter()
                .filter_map(|n| {
                    let eq = count_product_equal(n).unwrap();
                    let fact = count_factorizations(n, n).unwrap();
                    (eq != fact).then(|| format!("n = {n}: p_eq {eq}, factorizations {fact}"))
                })
                .collect();
            first_failure(failures)
        },
    );
}

#[test]
fn acceptance_4_oeis_cross_check() {
    run(
        "criterion 4: vendored OEIS b-files match on their full ranges",
        None,
        || {
            let checks = [
                ("A001055", Quantity::PEq),
                ("A096276", Quantity::PLeq),
                ("A096276", Quantity::PLessNext),
                ("A319005", Quantity::PGeq),
                ("A114324", Quantity::PGreater),
            ];
            for (id, quantity) in checks {
                let series = vendored_series(id).map_err(|e| format!("{id}: {e}"))?;
                let range = series.min_index()..=series.max_index();
                let report = cross_check(&series, quantity, range)
                    .map_err(|e| format!("{id}: {e}"))?;
                if !report.pass() {
                    let m = &report.mismatches[0];
                    return Err(format!(
                        "{id} vs {quantity}: {} mismatches, first at n = {}: file {}, computed {}",
                        report.mismatches.len(),
                        m.index,
                        m.expected,
                        m.computed
                    ));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_5_identity_suite() {
    run(
        "criterion 5: shift/recurrence identities to 1e5, prime step to 1e4",
        Some(Duration::from_secs(300)),
        || {
            let max_n = 100_000u64;
            // One pass computes both formulas for every n; the identity
            // checks then only index into the results.
            let at_most: Vec<u64> = (1..=max_n + 1)
                .into_par_iter()
                .map(|n| count_product_at_most(n).unwrap())
                .collect();
            let less: Vec<u64> = (1..=max_n + 1)
                .into_par_iter()
                .map(|n| count_product_less(n).unwrap())
                .collect();
            let leq = |n: u64| at_most[n as usize - 1];
            let lt = |n: u64| less[n as usize - 1];

            for n in 1..=max_n {
                if leq(n) != lt(n + 1) {
                    return Err(format!(
                        "shift identity: p_leq({n}) = {}, p_less({}) = {}",
                        leq(n),
                        n + 1,
                        lt(n + 1)
                    ));
                }
            }
            let eq_failures: Vec<String> = (2..=max_n)
                .into_par_iter()
                .filter_map(|n| {
                    let eq = count_product_equal(n).unwrap();
                    (leq(n) != eq + leq(n - 1)).then(|| {
                        format!(
                            "recurrence: p_leq({n}) = {}, p_eq({n}) + p_leq({}) = {}",
                            leq(n),
                            n - 1,
                            eq + leq(n - 1)
                        )
                    })
                })
                .collect();
            first_failure(eq_failures)?;
            for p in (2..=10_000u64).filter(|&p| factorize(p).is_prime()) {
                if leq(p) != leq(p - 1) + 1 {
                    return Err(format!(
                        "prime step: p_leq({p}) = {}, p_leq({}) + 1 = {}",
                        leq(p),
                        p - 1,
                        leq(p - 1) + 1
                    ));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_6_characterization_suite() {
    run(
        "criterion 6: divisor-exponent iff to 60, prime-power counts to 2000",
        None,
        || {
            use partition_products::verify_proposition1;
            let iff_failures: Vec<String> = (1..=60u64)
                .into_par_iter()
                .filter_map(|n| {
                    let target = BigUint::from(n);
                    let mut bad = None;
                    for_each_partition(n, |p| {
                        if bad.is_none() && verify_proposition1(p) != (p.product() == &target) {
                            bad = Some(format!(
                                "iff fails at n = {n}, parts {:?}",
                                p.parts()
                            ));
                        }
                    });
                    bad
                })
                .collect();
            first_failure(iff_failures)?;
            let count_failures: Vec<String> = (1..=2000u64)
                .into_par_iter()
                .filter_map(|n| {
                    let formula = prime_power_parts_count(n).unwrap();
                    let oracle = prime_power_parts_oracle(n).unwrap();
                    (formula != oracle).then(|| {
                        format!("prime-power count at {n}: formula {formula}, oracle {oracle}")
                    })
                })
                .collect();
            first_failure(count_failures)
        },
    );
}

/// `r^k <= x`, in u128 so nothing can overflow.
fn pow_leq(r: u128, k: u32, x: u128) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = match acc.checked_mul(r) {
            Some(v) if v <= x => v,
            _ => return false,
        };
    }
    true
}

/// Largest `r` with `r^k <= limit`, by doubling then bisection on the
/// definitional u128 check.
fn max_base(k: u32, limit: u64) -> u64 {
    let limit = limit as u128;
    let mut r: u64 = 1;
    while pow_leq(r as u128 * 2, k, limit) {
        r *= 2;
    }
    let mut step = r / 2;
    while step > 0 {
        if pow_leq((r + step) as u128, k, limit) {
            r += step;
        }
        step /= 2;
    }
    r
}

#[test]
fn acceptance_7_root_robustness() {
    run(
        "criterion 7: exact roots for x <= 1e5, k <= 20, and perfect powers to 2^63 - 1",
        None,
        || {
            let definitional = |x: u64, k: u32| -> Result<(), String> {
                let r = integer_kth_root(x, k);
                let ok = pow_leq(r as u128, k, x as u128)
                    && !pow_leq(r as u128 + 1, k, x as u128);
                if ok {
                    Ok(())
                } else {
                    Err(format!("root({x}, {k}) = {r} fails r^k <= x < (r+1)^k"))
                }
            };
            for x in 0..=100_000u64 {
                for k in 1..=20 {
                    definitional(x, k)?;
                }
            }
            let limit = (1u64 << 63) - 1;
            let around_power = |r: u64, k: u32| -> Result<(), String> {
                let mut power = 1u64;
                for _ in 0..k {
                    power *= r;
                }
                if integer_kth_root(power, k) != r {
                    return Err(format!("root({r}^{k}) != {r}"));
                }
                if integer_kth_root(power - 1, k) != r - 1 {
                    return Err(format!("root({r}^{k} - 1) != {}", r - 1));
                }
                if integer_kth_root(power + 1, k) != r {
                    return Err(format!("root({r}^{k} + 1) != {r}"));
                }
                Ok(())
            };
            // Dense strides for the small exponents (their bases run into
            // the billions), exhaustive bases for k >= 5.
            for (k, stride) in [(2u32, 9973u64), (3, 97), (4, 7)] {
                let top = max_base(k, limit);
                let mut r = 2;
                while r <= top {
                    around_power(r, k)?;
                    r += stride;
                }
                around_power(top, k)?;
            }
            for k in 5..=62 {
                let top = max_base(k, limit);
                for r in 2..=top {
                    around_power(r, k)?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_8_performance_floor() {
    run(
        "criterion 8: p_leq(1e5) under 1 s and p_leq(1e6) under 60 s",
        None,
        || {
            let start = Instant::now();
            let at_1e5 = count_product_at_most(100_000).unwrap();
            let t_1e5 = start.elapsed();
            let start = Instant::now();
            let at_1e6 = count_product_at_most(1_000_000).unwrap();
            let t_1e6 = start.elapsed();
            if at_1e5 != 2_511_541 {
                return Err(format!("p_leq(1e5) = {at_1e5}, want 2511541"));
            }
            if at_1e6 != 43_089_531 {
                return Err(format!("p_leq(1e6) = {at_1e6}, want 43089531"));
            }
            if t_1e5 > Duration::from_secs(1) {
                return Err(format!("p_leq(1e5) took {t_1e5:.2?}, budget 1 s"));
            }
            if t_1e6 > Duration::from_secs(60) {
                return Err(format!("p_leq(1e6) took {t_1e6:.2?}, budget 60 s"));
            }
            Ok(())
        },
    );
}
