use etapoly::partitions::{
    contributing_partitions, enumerate_partitions, freq_multiset, hook_multiset, partition_count, top_strip, Partition,
};
use num_bigint::BigInt;
use proptest::prelude::*;

/// `p(n)` from the product `Π 1/(1 - q^k)`, independent of the pentagonal recurrence.
fn partition_counts_by_product(n_max: usize) -> Vec<u64> {
    let mut c = vec![0u64; n_max + 1];
    c[0] = 1;
    for part in 1..=n_max {
        for n in part..=n_max {
            c[n] += c[n - part];
        }
    }
    c
}

#[test]
fn counts_agree_with_product_expansion() {
    let by_product = partition_counts_by_product(60);
    for (n, &expected) in by_product.iter().enumerate() {
        assert_eq!(partition_count(n), BigInt::from(expected), "p({n})");
    }
    for n in 0..=20 {
        assert_eq!(enumerate_partitions(n).len() as u64, by_product[n as usize]);
    }
}

#[test]
fn top_strip_is_the_frequency_multiset() {
    for n in 0..=12 {
        for lambda in enumerate_partitions(n) {
            assert_eq!(top_strip(&lambda), freq_multiset(&lambda).values, "{lambda}");
            let hooks = hook_multiset(&lambda);
            assert_eq!(hooks.values.len(), n as usize);
            assert_eq!(hooks.n, n);
        }
    }
}

#[test]
fn hooks_are_conjugation_invariant() {
    for n in 0..=10 {
        for lambda in enumerate_partitions(n) {
            assert_eq!(hook_multiset(&lambda).values, hook_multiset(&lambda.conjugate()).values);
        }
    }
}

#[test]
fn squared_tableau_counts_sum_to_factorial() {
    // f^λ = n! / Π h, and Σ (f^λ)^2 = n!
    let fact: u64 = (1..=6).product();
    let total: u64 = enumerate_partitions(6)
        .iter()
        .map(|l| {
            let prod: u64 = hook_multiset(l).values.iter().map(|&h| h as u64).product();
            assert_eq!(fact % prod, 0);
            (fact / prod).pow(2)
        })
        .sum();
    assert_eq!(enumerate_partitions(6).len(), 11);
    assert_eq!(total, 720);
}

#[test]
fn contributing_counts_are_partition_counts() {
    let counts = partition_counts_by_product(12);
    for p in [3u64, 5, 7, 11] {
        for r in 0..p {
            let got = contributing_partitions(p, r).unwrap();
            assert_eq!(got.len() as u64, counts[r as usize]);
            assert!(got.iter().all(|(e, m)| e.n() as u64 == r && m == &freq_multiset(e)));
        }
    }
}

proptest! {
    #[test]
    fn from_parts_round_trips(parts in prop::collection::vec(1u32..9, 0..12)) {
        let lambda = Partition::from_parts(&parts);
        let mut sorted = parts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(lambda.parts(), sorted);
        prop_assert_eq!(lambda.n(), parts.iter().sum::<u32>());
        prop_assert_eq!(lambda.freqs().iter().map(|&(j, e)| j * e).sum::<u32>(), lambda.n());
        prop_assert!(lambda.freqs().iter().all(|&(_, e)| e >= 1));
        prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
        let m = freq_multiset(&lambda);
        prop_assert_eq!(m.values.len(), lambda.freqs().iter().map(|&(_, e)| e as usize).sum::<usize>());
    }
}
