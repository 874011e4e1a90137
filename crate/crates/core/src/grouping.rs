//! Grouping coefficients `a_c` and the mod-`p` coefficient predictor.
//!
//! For `n = p k + r` with `0 <= r < p`, only partitions with at least `p k`
//! ones survive mod `p`, and their frequency multisets reduce to a common
//! block `C` (k copies of `1..p-1`) plus the tail `M_e` of a partition of `r`.
//! Collecting the tail choices gives
//!
//! `a_c = Σ_{e ⊢ r} e_c(M_e^{-1}) mod p`,
//!
//! and the coefficient of `b^{k+m}` in `p_n` is congruent to
//! `(-1)^m r! Σ_c a_c Λ(m - c, k)` where `Λ(x, k)` is the closed form of the
//! first binomial-sum lemma. For `r = p - 1` the prefactor is `-(-1)^m`.

use crate::error::{Error, Result};
use crate::lemmas::binomsum_value;
use crate::modular::{inv_mod, mul_mod, neg_mod, require_prime, sign_mod, ResidueVector};
use crate::partitions::contributing_partitions;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupingTable {
    pub p: u64,
    /// Residue of `n` mod `p` the table belongs to.
    pub r: u64,
    /// `a_0, ..., a_r`, each in `[0, p)`.
    pub a: Vec<u64>,
}

impl GroupingTable {
    pub fn get(&self, c: usize) -> u64 {
        self.a.get(c).copied().unwrap_or(0)
    }
}

fn esf_mod(values: &[u64], p: u64) -> Vec<u64> {
    let mut e = vec![0u64; values.len() + 1];
    e[0] = 1 % p;
    for (i, &v) in values.iter().enumerate() {
        for t in (1..=i + 1).rev() {
            e[t] = (e[t] + mul_mod(e[t - 1], v, p)) % p;
        }
    }
    e
}

/// `(a_0, ..., a_{p-1})` for the progression `n ≡ p - 1 mod p`.
pub fn grouping_coefficients(p: u64) -> Result<GroupingTable> {
    require_prime(p)?;
    grouping_coefficients_for_residue(p, p - 1)
}

/// `a_c` summed over the tails of every partition of `r`.
pub fn grouping_coefficients_for_residue(p: u64, r: u64) -> Result<GroupingTable> {
    let tails = contributing_partitions(p, r)?;
    let mut a = vec![0u64; r as usize + 1];
    for (_, m) in &tails {
        let inverses: Vec<u64> = m.values.iter().map(|&s| inv_mod(s as u64, p)).collect();
        for (c, e) in esf_mod(&inverses, p).into_iter().enumerate() {
            a[c] = (a[c] + e) % p;
        }
    }
    Ok(GroupingTable { p, r, a })
}

/// The same table from the generating function
/// `Π_j Σ_e y^{j e} Π_{i=1}^{e} (1 + x/i)`, read at `y^r`, without
/// enumerating partitions. Needed once `p(r)` is too large to enumerate.
pub fn grouping_coefficients_by_series(p: u64, r: u64) -> Result<GroupingTable> {
    require_prime(p)?;
    if r >= p {
        return Err(Error::ResidueOutOfRange { p, r });
    }
    let r = r as usize;
    let width = r + 1;
    // prefix[e] = Π_{i<=e} (1 + x/i), degree e.
    let mut prefix: Vec<Vec<u64>> = vec![vec![1 % p]];
    for e in 1..=r {
        let inv = inv_mod(e as u64, p);
        let prev = &prefix[e - 1];
        let mut next = vec![0u64; e + 1];
        for (t, &c) in prev.iter().enumerate() {
            next[t] = (next[t] + c) % p;
            next[t + 1] = (next[t + 1] + mul_mod(c, inv, p)) % p;
        }
        prefix.push(next);
    }
    // acc[y * width + x]
    let mut acc = vec![0u64; width * width];
    acc[0] = 1 % p;
    for part in 1..=r {
        let mut next = vec![0u64; width * width];
        for y in 0..=r {
            let row = &acc[y * width..(y + 1) * width];
            if row.iter().all(|&v| v == 0) {
                continue;
            }
            let mut e = 0;
            while y + part * e <= r {
                let target = y + part * e;
                let factor = &prefix[e];
                for (x, &v) in row.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    for (dx, &f) in factor.iter().enumerate() {
                        if x + dx > r {
                            break;
                        }
                        let slot = &mut next[target * width + x + dx];
                        *slot = (*slot + mul_mod(v, f, p)) % p;
                    }
                }
                e += 1;
            }
        }
        acc = next;
    }
    let a = acc[r * width..(r + 1) * width].to_vec();
    Ok(GroupingTable { p, r: r as u64, a })
}

/// Predicts every coefficient of `p_{pk+r}` mod `p` from a grouping table.
#[derive(Clone, Debug)]
pub struct Predictor {
    table: GroupingTable,
    r_factorial: u64,
}

impl Predictor {
    pub fn new(table: GroupingTable) -> Self {
        let p = table.p;
        let r_factorial = (1..=table.r).fold(1 % p, |acc, i| mul_mod(acc, i, p));
        Self { table, r_factorial }
    }

    /// Builds the table for residue `r` by the generating-function route.
    pub fn for_residue(p: u64, r: u64) -> Result<Self> {
        Ok(Self::new(grouping_coefficients_by_series(p, r)?))
    }

    pub fn table(&self) -> &GroupingTable {
        &self.table
    }

    pub fn n(&self, k: u64) -> u64 {
        self.table.p * k + self.table.r
    }

    /// Coefficient of `b^t` in `p_{pk+r}` mod `p`.
    pub fn coefficient(&self, k: u64, t: u64) -> Result<u64> {
        let n = self.n(k);
        if t > n {
            return Err(Error::DegreeOutOfRange { n: n as usize, t: t as usize });
        }
        Ok(self.coefficient_unchecked(k, t))
    }

    fn coefficient_unchecked(&self, k: u64, t: u64) -> u64 {
        let p = self.table.p;
        if t < k {
            return 0;
        }
        let m = t - k;
        let mut acc = 0u64;
        // Λ(m - c, k) vanishes unless (p - 1) | (m - c).
        let mut c = m % (p - 1);
        while c <= self.table.r && c <= m {
            let a_c = self.table.get(c as usize);
            if a_c != 0 {
                acc = (acc + mul_mod(a_c, binomsum_value(p, k, m - c), p)) % p;
            }
            c += p - 1;
        }
        mul_mod(mul_mod(sign_mod(m, p), self.r_factorial, p), acc, p)
    }

    /// All `n + 1` predicted residues of `p_{pk+r}`.
    pub fn residues(&self, k: u64) -> ResidueVector {
        let n = self.n(k);
        let residues = (0..=n).map(|t| self.coefficient_unchecked(k, t)).collect();
        ResidueVector { p: self.table.p, n: n as usize, residues }
    }
}

/// Coefficient of `b^t` in `p_n` mod `p` for `n = pk + (p - 1)`.
pub fn predict_coefficient(p: u64, k: u64, t: u64) -> Result<u64> {
    Predictor::new(grouping_coefficients(p)?).coefficient(k, t)
}

/// `-a_0` at degree `k`: the coefficient there vanishes exactly when `a_0 ≡ 0`.
pub(crate) fn degree_k_value(table: &GroupingTable) -> u64 {
    neg_mod(table.get(0), table.p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_mod_5() {
        assert_eq!(grouping_coefficients(5).unwrap().a, vec![0, 2, 1, 3, 4]);
    }

    #[test]
    fn table_mod_3() {
        assert_eq!(grouping_coefficients(3).unwrap().a, vec![2, 1, 2]);
    }

    #[test]
    fn series_matches_enumeration() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for r in 0..p {
                assert_eq!(
                    grouping_coefficients_by_series(p, r).unwrap(),
                    grouping_coefficients_for_residue(p, r).unwrap(),
                    "p={p} r={r}"
                );
            }
        }
    }

    #[test]
    fn predictor_examples() {
        assert_eq!(predict_coefficient(5, 3, 4), Ok(2));
        assert_eq!(predict_coefficient(5, 3, 3), Ok(0));
        assert_eq!(predict_coefficient(7, 0, 6), Ok(1));
        assert!(matches!(predict_coefficient(7, 0, 7), Err(Error::DegreeOutOfRange { .. })));
        assert_eq!(predict_coefficient(6, 0, 0), Err(Error::NotPrime(6)));
    }

    #[test]
    fn k_zero_reads_off_the_table() {
        let pred = Predictor::for_residue(7, 6).unwrap();
        assert_eq!(pred.residues(0).residues, vec![3, 0, 2, 3, 0, 5, 1]);
        // p_5 = 840 - 1814b + 1285b^2 - 345b^3 + 35b^4 - b^5, and -345 ≡ 5 mod 7
        let pred5 = Predictor::for_residue(7, 5).unwrap();
        assert_eq!(pred5.residues(0).residues, vec![0, 6, 4, 5, 0, 6]);
    }

    #[test]
    fn wilson_and_partition_count() {
        let t = grouping_coefficients(7).unwrap();
        assert_eq!(t.a[6], 6);
        assert_eq!(t.a[0], 11 % 7);
        assert_eq!(degree_k_value(&t), 3);
    }
}
