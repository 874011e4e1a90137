//! Reduction mod a prime, residue censuses and Lucas binomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::IntPoly;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a unit mod the prime `p`, by Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// `(-1)^e` as a residue mod `p`.
pub(crate) fn sign_mod(e: u64, p: u64) -> u64 {
    if e % 2 == 0 {
        1 % p
    } else {
        (p - 1) % p
    }
}

pub(crate) fn neg_mod(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

/// `C(k, m)` for `0 <= m <= k < p` by the multiplicative formula mod `p`.
fn small_binom_mod(k: u64, m: u64, p: u64) -> u64 {
    if m > k {
        return 0;
    }
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..m {
        num = mul_mod(num, k - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, inv_mod(den, p), p)
}

/// `C(k, m) mod p` as the product of digitwise binomials of the base-`p`
/// expansions; zero when `m > k`.
pub fn binom_mod(k: u64, m: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    Ok(lucas(k, m, p))
}

pub(crate) fn lucas(mut k: u64, mut m: u64, p: u64) -> u64 {
    if m > k {
        return 0;
    }
    let mut acc = 1 % p;
    while m > 0 || k > 0 {
        let (kd, md) = (k % p, m % p);
        if md > kd {
            return 0;
        }
        acc = mul_mod(acc, small_binom_mod(kd, md, p), p);
        k /= p;
        m /= p;
    }
    acc
}

/// True iff every base-`p` digit of `m` is at most the matching digit of `k`.
pub fn digit_domination(mut m: u64, mut k: u64, p: u64) -> Result<bool> {
    require_prime(p)?;
    while m > 0 {
        if m % p > k % p {
            return Ok(false);
        }
        m /= p;
        k /= p;
    }
    Ok(true)
}

/// Exact binomial coefficient; zero when `m > k`.
pub fn binomial(k: u64, m: u64) -> BigInt {
    if m > k {
        return BigInt::zero();
    }
    let m = m.min(k - m);
    let mut acc = BigInt::one();
    for i in 0..m {
        acc *= k - i;
        acc /= i + 1;
    }
    acc
}

/// Coefficients of `p_n` reduced mod a prime, ascending degree, each in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueVector {
    pub p: u64,
    pub n: usize,
    pub residues: Vec<u64>,
}

impl ResidueVector {
    pub fn new(p: u64, residues: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if residues.is_empty() {
            return Err(Error::InvalidArgument("empty residue vector".into()));
        }
        if let Some(&r) = residues.iter().find(|&&r| r >= p) {
            return Err(Error::ResidueOutOfRange { p, r });
        }
        Ok(Self { p, n: residues.len() - 1, residues })
    }

    pub fn get(&self, t: usize) -> u64 {
        self.residues[t]
    }

    /// `Σ r_t b^t` lifted back to the integers.
    pub fn lift(&self) -> IntPoly {
        IntPoly::new(self.residues.iter().map(|&r| BigInt::from(r)).collect())
    }
}

/// Coefficientwise reduction of `poly` into `[0, p)`.
pub fn reduce_mod(poly: &IntPoly, p: u64) -> Result<ResidueVector> {
    require_prime(p)?;
    let mut residues = poly.residues(p);
    if residues.is_empty() {
        residues.push(0);
    }
    Ok(ResidueVector { p, n: residues.len() - 1, residues })
}

/// Population counts per residue class plus named verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub p: u64,
    pub n: usize,
    /// `counts[c]` is the number of coefficients congruent to `c`.
    pub counts: Vec<usize>,
    pub verdicts: Verdicts,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdicts {
    /// Classes `1..p` are equally populated.
    pub equidistributed: bool,
    pub zero_prefix: Option<bool>,
    pub rotation: Option<bool>,
}

impl CensusReport {
    pub fn nonzero_counts(&self) -> &[usize] {
        &self.counts[1..]
    }
}

pub fn residue_census(v: &ResidueVector) -> CensusReport {
    let mut counts = vec![0usize; v.p as usize];
    for &r in &v.residues {
        counts[r as usize] += 1;
    }
    let nonzero = &counts[1..];
    let equidistributed = nonzero.windows(2).all(|w| w[0] == w[1]);
    CensusReport {
        p: v.p,
        n: v.n,
        counts,
        verdicts: Verdicts { equidistributed, ..Verdicts::default() },
    }
}

/// `a mod p` for a signed big integer, in `[0, p)`.
pub(crate) fn big_mod(a: &BigInt, p: u64) -> u64 {
    u64::try_from(a.mod_floor(&BigInt::from(p))).expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(71));
        assert!(!is_prime(1));
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binomial(19, 4), BigInt::from(3876));
        assert_eq!(binom_mod(19, 4, 5), Ok(1));
        assert_eq!(binom_mod(9, 0, 7), Ok(1));
        assert_eq!(binom_mod(5, 1, 5), Ok(0));
        assert_eq!(binom_mod(3, 4, 5), Ok(0));
        assert_eq!(binom_mod(5, 1, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn lucas_agrees_with_exact_binomials() {
        for p in [2u64, 3, 5, 7] {
            for k in 0..40 {
                for m in 0..=k + 1 {
                    assert_eq!(binom_mod(k, m, p).unwrap(), big_mod(&binomial(k, m), p), "C({k},{m}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn domination() {
        assert_eq!(digit_domination(2, 3, 5), Ok(true));
        assert_eq!(digit_domination(1, 5, 5), Ok(false));
        assert_eq!(digit_domination(6, 31, 5), Ok(true));
        assert_ne!(big_mod(&binomial(31, 6), 5), 0);
        assert_eq!(digit_domination(0, 0, 3), Ok(true));
    }

    #[test]
    fn reduction_normalizes_signs() {
        let poly = IntPoly::new([7920i64, -18144, 14674, -5205, 805, -51, 1].map(BigInt::from).to_vec());
        assert_eq!(reduce_mod(&poly, 7).unwrap().residues, vec![3, 0, 2, 3, 0, 5, 1]);
        assert_eq!(reduce_mod(&IntPoly::one(), 13).unwrap().residues, vec![1]);
        assert_eq!(reduce_mod(&poly, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn census_counts() {
        let v = ResidueVector::new(7, vec![3, 0, 2, 3, 0, 5, 1]).unwrap();
        let c = residue_census(&v);
        assert_eq!(c.counts, vec![2, 1, 1, 2, 0, 1, 0]);
        assert!(!c.verdicts.equidistributed);
        let zeros = ResidueVector::new(5, vec![0; 6]).unwrap();
        assert!(residue_census(&zeros).verdicts.equidistributed);
    }

    #[test]
    fn residue_vector_validation() {
        assert_eq!(ResidueVector::new(5, vec![1, 5]), Err(Error::ResidueOutOfRange { p: 5, r: 5 }));
        assert!(ResidueVector::new(5, vec![]).is_err());
    }
}
