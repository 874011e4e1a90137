//! Integer partitions, hooklengths and the frequency multisets `M_e`.
//!
//! A partition is stored in frequency notation `1^{e_1} 2^{e_2} ...`: a list
//! of `(part, multiplicity)` pairs sorted by part size with every
//! multiplicity at least one. Multisets are sorted vectors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::modular::is_prime;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    freqs: Vec<(u32, u32)>,
    n: u32,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from parts given in any order. Zero parts are ignored.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut sorted: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        sorted.sort_unstable();
        let mut freqs: Vec<(u32, u32)> = Vec::new();
        for part in sorted {
            match freqs.last_mut() {
                Some((p, e)) if *p == part => *e += 1,
                _ => freqs.push((part, 1)),
            }
        }
        let n = freqs.iter().map(|&(p, e)| p * e).sum();
        Self { freqs, n }
    }

    /// Builds a partition from `(part, multiplicity)` pairs. Pairs with zero
    /// multiplicity are dropped; repeated parts are merged.
    pub fn from_freqs(pairs: &[(u32, u32)]) -> Self {
        let parts: Vec<u32> = pairs
            .iter()
            .flat_map(|&(p, e)| std::iter::repeat(p).take(e as usize))
            .collect();
        Self::from_parts(&parts)
    }

    /// The number partitioned.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn freqs(&self) -> &[(u32, u32)] {
        &self.freqs
    }

    /// Multiplicity `e_j` of part `j`, zero when absent.
    pub fn multiplicity(&self, part: u32) -> u32 {
        self.freqs
            .iter()
            .find(|&&(p, _)| p == part)
            .map_or(0, |&(_, e)| e)
    }

    /// Parts in nonincreasing order, `(λ_1, λ_2, ..., λ_ℓ)`.
    pub fn parts(&self) -> Vec<u32> {
        self.freqs
            .iter()
            .rev()
            .flat_map(|&(p, e)| std::iter::repeat(p).take(e as usize))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.freqs.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let parts = self.parts();
        let width = parts.first().copied().unwrap_or(0);
        let cols: Vec<u32> = (1..=width)
            .map(|j| parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Self::from_parts(&cols)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    /// Frequency notation, e.g. `1^2 2^1`; the empty partition prints as `∅`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.freqs.is_empty() {
            return write!(f, "∅");
        }
        let mut first = true;
        for &(p, e) in &self.freqs {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HookMultiset {
    pub values: Vec<u32>,
    pub n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreqMultiset {
    pub values: Vec<u32>,
}

/// Every partition of `n` exactly once, in reverse-lexicographic order of
/// the descending part lists: `(n)` first and `(1, ..., 1)` last.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |parts| out.push(Partition::from_parts(parts)));
    out
}

/// Visits the descending part lists of `n` in reverse-lexicographic order
/// without allocating a `Partition` per step.
pub fn for_each_partition(n: u32, mut visit: impl FnMut(&[u32])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut parts = vec![n];
    loop {
        visit(&parts);
        // Rightmost part larger than one; everything after it is a 1.
        let Some(pos) = parts.iter().rposition(|&p| p > 1) else {
            return;
        };
        let mut rest: u32 = parts[pos + 1..].iter().sum::<u32>() + 1;
        let head = parts[pos] - 1;
        parts.truncate(pos);
        parts.push(head);
        while rest > 0 {
            let next = rest.min(head);
            parts.push(next);
            rest -= next;
        }
    }
}

/// Number of partitions of `n`, by Euler's pentagonal-number recurrence.
pub fn partition_count(n: usize) -> BigInt {
    partition_counts(n).pop().expect("nonempty")
}

/// `p(0), ..., p(n_max)` by Euler's pentagonal-number recurrence.
pub fn partition_counts(n_max: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    p.push(BigInt::from(1));
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

/// Hooklengths `h_ij = λ_i - j + #{a >= i : λ_a >= j}` over every cell.
pub fn hook_multiset(lambda: &Partition) -> HookMultiset {
    let parts = lambda.parts();
    let conj = lambda.conjugate().parts();
    let mut values = Vec::with_capacity(lambda.n() as usize);
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row as usize {
            // arm + leg + 1, with the leg counted from the conjugate column.
            values.push(row - j as u32 + conj[j] - i as u32 - 1);
        }
    }
    values.sort_unstable();
    HookMultiset { values, n: lambda.n() }
}

/// Hooklengths of the last cell in each row, `h_{i, λ_i}`.
pub fn top_strip(lambda: &Partition) -> Vec<u32> {
    let parts = lambda.parts();
    let mut values: Vec<u32> = (0..parts.len())
        .map(|i| parts[i..].iter().filter(|&&p| p >= parts[i]).count() as u32)
        .collect();
    values.sort_unstable();
    values
}

/// `M_e`: the disjoint union of `{1, ..., e_j}` over all parts `j`.
pub fn freq_multiset(e: &Partition) -> FreqMultiset {
    let mut values: Vec<u32> = e.freqs().iter().flat_map(|&(_, m)| 1..=m).collect();
    values.sort_unstable();
    FreqMultiset { values }
}

/// The partitions of `r` paired with their frequency multisets.
///
/// For `n = p k + r` these are the reduced tails of the only partitions of
/// `n` whose terms survive reduction mod `p`: each full contributing
/// partition is the tail with `p k` extra ones.
pub fn contributing_partitions(p: u64, r: u64) -> Result<Vec<(Partition, FreqMultiset)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r >= p {
        return Err(Error::ResidueOutOfRange { p, r });
    }
    let r = u32::try_from(r).map_err(|_| Error::ResidueOutOfRange { p, r })?;
    Ok(enumerate_partitions(r)
        .into_iter()
        .map(|e| {
            let m = freq_multiset(&e);
            (e, m)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn descending(ps: &[Partition]) -> Vec<Vec<u32>> {
        ps.iter().map(Partition::parts).collect()
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(
            descending(&enumerate_partitions(4)),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
    }

    #[test]
    fn enumeration_is_reverse_lexicographic() {
        let lists = descending(&enumerate_partitions(12));
        assert!(lists.windows(2).all(|w| w[0] > w[1]));
        assert!(enumerate_partitions(12).iter().all(|p| p.n() == 12));
    }

    #[test]
    fn pentagonal_counts() {
        let p = partition_counts(10);
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        assert_eq!(p, expected.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        assert_eq!(partition_count(100), "190569292".parse::<BigInt>().unwrap());
    }

    #[test]
    fn thirty_has_5604_partitions() {
        assert_eq!(enumerate_partitions(30).len(), 5604);
        assert_eq!(partition_count(30), BigInt::from(5604));
    }

    #[test]
    fn frequency_notation() {
        let e = Partition::from_parts(&[2, 1, 1]);
        assert_eq!(e.freqs(), &[(1, 2), (2, 1)]);
        assert_eq!(e.multiplicity(1), 2);
        assert_eq!(e.multiplicity(3), 0);
        assert_eq!(e.to_string(), "1^2 2^1");
        assert_eq!(Partition::from_freqs(&[(1, 2), (2, 1), (5, 0)]), e);
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn hooks_of_small_shapes() {
        assert_eq!(hook_multiset(&Partition::from_parts(&[1])).values, vec![1]);
        assert_eq!(hook_multiset(&Partition::from_parts(&[2, 1])).values, vec![1, 1, 3]);
        assert_eq!(hook_multiset(&Partition::from_parts(&[3, 1])).values, vec![1, 1, 2, 4]);
        assert!(hook_multiset(&Partition::empty()).values.is_empty());
    }

    #[test]
    fn freq_multisets() {
        let ones = Partition::from_parts(&[1, 1, 1, 1]);
        assert_eq!(freq_multiset(&ones).values, vec![1, 2, 3, 4]);
        assert_eq!(freq_multiset(&Partition::from_parts(&[4])).values, vec![1]);
        assert!(freq_multiset(&Partition::empty()).values.is_empty());
    }

    #[test]
    fn conjugates() {
        let l = Partition::from_parts(&[4, 2, 1]);
        assert_eq!(l.conjugate().parts(), vec![3, 2, 1, 1]);
        assert_eq!(l.conjugate().conjugate(), l);
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn contributing_mod_5() {
        let got = contributing_partitions(5, 4).unwrap();
        let tails: Vec<(Vec<u32>, Vec<u32>)> =
            got.iter().map(|(e, m)| (e.parts(), m.values.clone())).collect();
        assert_eq!(
            tails,
            vec![
                (vec![4], vec![1]),
                (vec![3, 1], vec![1, 1]),
                (vec![2, 2], vec![1, 2]),
                (vec![2, 1, 1], vec![1, 1, 2]),
                (vec![1, 1, 1, 1], vec![1, 2, 3, 4]),
            ]
        );
        assert_eq!(contributing_partitions(7, 0).unwrap(), vec![(Partition::empty(), FreqMultiset::default())]);
        assert_eq!(contributing_partitions(7, 6).unwrap().len(), 11);
    }

    #[test]
    fn contributing_rejects_bad_input() {
        assert_eq!(contributing_partitions(6, 1), Err(Error::NotPrime(6)));
        assert_eq!(contributing_partitions(5, 5), Err(Error::ResidueOutOfRange { p: 5, r: 5 }));
    }
}
