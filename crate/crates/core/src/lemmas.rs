//! The two binomial-sum lemmas behind the congruences, each with a closed
//! form and an independent brute-force route.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::eta::Budget;
use crate::modular::{big_mod, binomial, lucas, mul_mod, require_prime, sign_mod};
use crate::IntPoly;

pub const LEMMA21_MAX_P: u64 = 7;
pub const LEMMA21_MAX_K: u64 = 6;
/// Largest `k` for the literal composition sum.
pub const COMPOSITION_MAX_K: u64 = 3;

/// Closed form of
/// `Σ_{r_1+...+r_{p-1} = total} Π C(k, r_i) Π i^{r_i} mod p`:
/// `(-1)^s C(k, s)` when `total = (p-1) s`, otherwise 0.
pub fn binomsum_closed(p: u64, k: u64, total: u64) -> Result<u64> {
    require_prime(p)?;
    Ok(binomsum_value(p, k, total))
}

pub(crate) fn binomsum_value(p: u64, k: u64, total: u64) -> u64 {
    if total % (p - 1) != 0 {
        return 0;
    }
    let s = total / (p - 1);
    mul_mod(sign_mod(s, p), lucas(k, s, p), p)
}

/// The same sum, as the coefficient of `q^total` in `Π_{i=1}^{p-1} (1 + i q)^k`
/// expanded over the integers and then reduced.
pub fn binomsum_bruteforce(p: u64, k: u64, total: u64, budget: Budget) -> Result<u64> {
    require_prime(p)?;
    budget.check("p", p, LEMMA21_MAX_P)?;
    budget.check("k", k, LEMMA21_MAX_K)?;
    let exp = u32::try_from(k).map_err(|_| Error::InvalidArgument(format!("k = {k} too large")))?;
    let mut product = IntPoly::one();
    for i in 1..p {
        product = &product * &IntPoly::linear(BigInt::one(), BigInt::from(i)).pow(exp);
    }
    let t = usize::try_from(total).map_err(|_| Error::InvalidArgument(format!("total = {total} too large")))?;
    Ok(big_mod(&product.coeff(t), p))
}

/// The sum taken literally over compositions `r_1 + ... + r_{p-1} = total`
/// with `0 <= r_i <= k`. Restricted to `k <= 3` unless unbounded.
pub fn binomsum_compositions(p: u64, k: u64, total: u64, budget: Budget) -> Result<u64> {
    require_prime(p)?;
    budget.check("p", p, LEMMA21_MAX_P)?;
    budget.check("k", k, COMPOSITION_MAX_K)?;
    let binoms: Vec<BigInt> = (0..=k).map(|r| binomial(k, r)).collect();
    let mut acc = BigInt::from(0);
    let mut rs = vec![0u64; (p - 1) as usize];
    compose(&mut rs, 0, total, k, &mut |rs| {
        let mut term = BigInt::one();
        for (idx, &r) in rs.iter().enumerate() {
            term *= &binoms[r as usize];
            term *= BigInt::from(idx as u64 + 1).pow(r as u32);
        }
        acc += term;
    });
    Ok(big_mod(&acc, p))
}

fn compose(rs: &mut [u64], pos: usize, remaining: u64, k: u64, visit: &mut impl FnMut(&[u64])) {
    if pos == rs.len() {
        if remaining == 0 {
            visit(rs);
        }
        return;
    }
    let slots_after = (rs.len() - pos - 1) as u64;
    for r in 0..=k.min(remaining) {
        if remaining - r > slots_after * k {
            continue;
        }
        rs[pos] = r;
        compose(rs, pos + 1, remaining - r, k, visit);
    }
    rs[pos] = 0;
}

/// Both sides of `(-1)^s C(pj+p-2, s) ≡ (h+1) (-1)^g C(j, g) mod p`
/// where `s = g p + h`. The left side uses the exact binomial.
pub fn shiftbinom_check(p: u64, j: u64, s: u64) -> Result<(u64, u64)> {
    require_prime(p)?;
    let top = p * j + p - 2;
    if s > top {
        return Err(Error::IndexOutOfRange { k: top, m: s });
    }
    let mut lhs = binomial(top, s);
    if s % 2 == 1 {
        lhs = -lhs;
    }
    let (g, h) = (s / p, s % p);
    let rhs = mul_mod((h + 1) % p, mul_mod(sign_mod(g, p), lucas(j, g, p), p), p);
    Ok((big_mod(&lhs, p), rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(binomsum_closed(5, 1, 4), Ok(4));
        assert_eq!(binomsum_closed(5, 1, 2), Ok(0));
        assert_eq!(binomsum_closed(7, 3, 0), Ok(1));
        assert_eq!(binomsum_closed(3, 2, 2), Ok(1));
        assert_eq!(binomsum_closed(4, 2, 2), Err(Error::NotPrime(4)));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(binomsum_bruteforce(5, 1, 4, Budget::Capped), Ok(4));
        assert_eq!(binomsum_bruteforce(5, 1, 2, Budget::Capped), Ok(0));
        assert_eq!(binomsum_bruteforce(3, 2, 2, Budget::Capped), Ok(1));
        assert_eq!(binomsum_bruteforce(7, 4, 0, Budget::Capped), Ok(1));
        // beyond the top degree the coefficient is zero
        assert_eq!(binomsum_bruteforce(3, 1, 9, Budget::Capped), Ok(0));
    }

    #[test]
    fn brute_force_caps() {
        assert!(matches!(
            binomsum_bruteforce(11, 1, 0, Budget::Capped),
            Err(Error::CapExceeded { what: "p", .. })
        ));
        assert!(matches!(
            binomsum_bruteforce(5, 7, 0, Budget::Capped),
            Err(Error::CapExceeded { what: "k", .. })
        ));
        assert_eq!(binomsum_bruteforce(11, 1, 10, Budget::Unbounded), Ok(10));
    }

    #[test]
    fn composition_sums_match_hand_values() {
        // pairs (r1, r2, r3, r4) with sum 2 and k = 1: Σ_{i<j} i j = 35
        assert_eq!(binomsum_compositions(5, 1, 2, Budget::Capped), Ok(0));
        assert_eq!(binomsum_compositions(5, 1, 4, Budget::Capped), Ok(4));
        assert!(binomsum_compositions(5, 4, 0, Budget::Capped).is_err());
    }

    #[test]
    fn shiftbinom_examples() {
        assert_eq!(shiftbinom_check(5, 1, 3), Ok((4, 4)));
        assert_eq!(shiftbinom_check(11, 4, 0), Ok((1, 1)));
        assert_eq!(shiftbinom_check(3, 2, 5), Ok((0, 0)));
        assert!(shiftbinom_check(3, 2, 8).is_err());
    }
}
