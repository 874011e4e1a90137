use std::sync::OnceLock;

use etapoly::cache::PolyCache;
use etapoly::eta::{compute_recurrence, Budget};
use etapoly::grouping::{
    grouping_coefficients, grouping_coefficients_by_series, grouping_coefficients_for_residue, Predictor,
};
use etapoly::lemmas::{binomsum_bruteforce, binomsum_closed, binomsum_compositions, shiftbinom_check};
use etapoly::modular::{binom_mod, digit_domination, is_prime, reduce_mod, residue_census, ResidueVector};
use etapoly::partitions::partition_count;
use etapoly::theorems::{
    pascal_entry, population_divisibility, progression_census, self_similarity_check, mod5_check,
    equidist_check, triangle_row, Source, Style, PAPER_TRIANGLE,
};
use etapoly::IntPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn exact() -> &'static [IntPoly] {
    static POLYS: OnceLock<Vec<IntPoly>> = OnceLock::new();
    POLYS.get_or_init(|| compute_recurrence(160))
}

fn residues(n: usize, p: u64) -> ResidueVector {
    reduce_mod(&exact()[n], p).unwrap()
}

#[test]
fn reductions_mod_7() {
    assert_eq!(residues(6, 7).residues, vec![3, 0, 2, 3, 0, 5, 1]);
    assert_eq!(residues(5, 7).residues, vec![0, 6, 4, 5, 0, 6]);
    assert_eq!(residues(0, 11).residues, vec![1]);
}

#[test]
fn census_examples() {
    assert_eq!(residue_census(&residues(19, 5)).counts, vec![4, 4, 4, 4, 4]);
    assert!(residue_census(&residues(19, 5)).verdicts.equidistributed);
    let c = residue_census(&residues(6, 7));
    assert_eq!(&c.counts[1..], &[1, 1, 2, 0, 1, 0]);
    assert!(!c.verdicts.equidistributed);
}

#[test]
fn mod5_for_every_n_up_to_154() {
    for n in (4..=154).step_by(5) {
        let verdict = mod5_check(n, &residues(n, 5)).unwrap();
        assert!(verdict.all(), "n={n}: {verdict:?}");
    }
    let first = &residues(19, 5).residues[4..8];
    assert_eq!(first, &[2, 4, 3, 1]);
    assert!(residues(9, 5).residues[..2].iter().all(|&r| r == 0));
}

#[test]
fn triangle_is_pascal_through_k_30() {
    for k in 0..=30usize {
        let n = 5 * k + 4;
        let row = triangle_row(&residues(n, 5), n).unwrap();
        for (m, &e) in row.entries.iter().enumerate() {
            assert_eq!(e, pascal_entry(k as u64, m as u64).unwrap(), "k={k} m={m}");
            assert_eq!(digit_domination(m as u64, k as u64, 5).unwrap(), e != 0, "k={k} m={m}");
        }
    }
}

#[test]
fn paper_rows_reproduced() {
    let ours: Vec<String> = (0..=26)
        .map(|k| {
            let n = 5 * k + 4;
            triangle_row(&residues(n, 5), n).unwrap().render(Style::Paper)
        })
        .collect();
    let golden: Vec<&str> = PAPER_TRIANGLE.lines().collect();
    assert_eq!(ours, golden);
}

#[test]
fn triangle_self_similarity() {
    let rows: Vec<_> = (0..=26)
        .map(|k| {
            let n = 5 * k + 4;
            triangle_row(&residues(n, 5), n).unwrap()
        })
        .collect();
    let report = self_similarity_check(2, &rows);
    assert!(report.passed(), "{report:?}");
    assert_eq!(rows[5].entries, vec![2, 0, 0, 0, 0, 3]);
    assert!(rows[24].entries.iter().all(|&e| e == 2));
}

#[test]
fn binomsum_routes_agree() {
    for p in [2u64, 3, 5, 7] {
        for k in 0..=5 {
            for total in 0..=(p - 1) * k {
                let closed = binomsum_closed(p, k, total).unwrap();
                assert_eq!(binomsum_bruteforce(p, k, total, Budget::Capped).unwrap(), closed, "p={p} k={k} total={total}");
                if k <= 3 {
                    assert_eq!(binomsum_compositions(p, k, total, Budget::Capped).unwrap(), closed);
                }
            }
        }
    }
}

#[test]
fn shiftbinom_holds() {
    for p in [3u64, 5, 7, 11] {
        for j in 0..=6 {
            for s in 0..=p * j + p - 2 {
                let (lhs, rhs) = shiftbinom_check(p, j, s).unwrap();
                assert_eq!(lhs, rhs, "p={p} j={j} s={s}");
            }
        }
    }
}

#[test]
fn grouping_invariants_through_31() {
    for p in (2..=31).filter(|&p| is_prime(p)) {
        let t = grouping_coefficients(p).unwrap();
        assert_eq!(t.a.len() as u64, p);
        assert_eq!(t.a[p as usize - 1], p - 1, "a_(p-1) for p={p}");
        let count = partition_count(p as usize - 1) % BigInt::from(p);
        assert_eq!(BigInt::from(t.a[0]), count, "a_0 for p={p}");
        assert_eq!(grouping_coefficients_by_series(p, p - 1).unwrap(), t);
    }
}

#[test]
fn predictor_is_sound_through_160() {
    for p in [3u64, 5, 7, 11, 13] {
        let predictor = Predictor::new(grouping_coefficients(p).unwrap());
        let mut k = 0;
        while p * k + p - 1 <= 160 {
            let n = (p * k + p - 1) as usize;
            assert_eq!(predictor.residues(k), residues(n, p), "p={p} n={n}");
            k += 1;
        }
    }
}

#[test]
fn predictor_for_other_residues() {
    for p in [3u64, 5, 7] {
        for r in 0..p {
            let predictor = Predictor::new(grouping_coefficients_for_residue(p, r).unwrap());
            for k in 0..=(100 / p) {
                let n = (p * k + r) as usize;
                if n > 100 {
                    break;
                }
                assert_eq!(predictor.residues(k), residues(n, p), "p={p} n={n}");
            }
        }
    }
}

#[test]
fn progression_verdicts() {
    for p in [2u64, 3, 5, 7] {
        let predictor = Predictor::for_residue(p, p - 1).unwrap();
        for n in ((p - 1) as usize..=120).step_by(p as usize) {
            let report = progression_census(&residues(n, p), &predictor).unwrap();
            assert_eq!(report.verdicts.zero_prefix, Some(true), "p={p} n={n}");
            assert_eq!(report.verdicts.rotation.is_some(), p == 5);
            if p == 2 {
                assert!(report.verdicts.equidistributed);
            }
        }
    }
}

#[test]
fn equidist_at_desk_scale() {
    let cache = PolyCache::from_polys(exact());
    for p in [3u64, 5, 7, 11, 13] {
        let report = equidist_check(p, Some(&cache)).unwrap();
        assert_eq!(report.source, Source::Exact);
        assert_eq!(report.n as u64, p * p - p - 1);
        assert!(!report.exceptional);
        assert!(report.holds(), "p={p}: {:?}", report.census.counts);
    }
    assert_eq!(residue_census(&residues(5, 3)).counts[1..], [2, 2]);
}

#[test]
fn population_divisibility_samples() {
    let cache = PolyCache::from_polys(exact());
    for (p, q, divisor) in [(3u64, 3u32, 2u64), (5, 2, 1), (5, 3, 4)] {
        let report = population_divisibility(p, q, Some(&cache)).unwrap();
        assert_eq!(report.source, Source::Exact);
        assert_eq!(report.divisor, divisor);
        assert!(report.divisible, "p={p} q={q}: {:?}", report.census.counts);
    }
}

proptest! {
    #[test]
    fn domination_iff_nonzero_binomial(k in 0u64..5000, m in 0u64..5000, pi in 0usize..5) {
        let p = [2u64, 3, 5, 7, 11][pi];
        let nonzero = binom_mod(k, m, p).unwrap() != 0;
        prop_assert_eq!(digit_domination(m, k, p).unwrap() && m <= k, nonzero);
    }

    #[test]
    fn reduction_lifts_back(n in 0usize..=160, pi in 0usize..6) {
        let p = [2u64, 3, 5, 7, 11, 13][pi];
        let v = residues(n, p);
        prop_assert_eq!(v.residues.len(), n + 1);
        prop_assert!(v.residues.iter().all(|&r| r < p));
        let diff = &exact()[n] - &v.lift();
        prop_assert!(diff.coeffs().iter().all(|c| (c % BigInt::from(p)) == BigInt::from(0)));
    }
}
