use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `P_D(a)` for every `a ≤ max`: partitions of `a` into distinct parts.
///
/// Knapsack over parts `k = 1..=max`, each used at most once.
pub fn partitions_distinct_table(max: usize) -> Vec<BigUint> {
    let mut p = vec![BigUint::zero(); max + 1];
    p[0] = BigUint::one();
    for k in 1..=max {
        for a in (k..=max).rev() {
            let add = p[a - k].clone();
            p[a] += add;
        }
    }
    p
}

pub fn count_partitions_distinct(a: usize) -> BigUint {
    partitions_distinct_table(a).pop().expect("nonempty table")
}
