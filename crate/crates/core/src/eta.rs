//! The integer polynomials `p_n(b)` defined by
//! `prod_k (1 - q^k)^(b-1) = sum_n p_n(b) q^n / n!`.
//!
//! Three independent routes are provided:
//!
//! * [`EtaSequence`]: the divisor-sum recurrence
//!   `p_n = (n-1)! (b-1) sum_{m=1}^n -σ(m) p_{n-m} / (n-m)!`, the production engine;
//! * [`hno_oracle`]: `n!` times the sum over `λ ⊢ n` of `prod_h (1 - b/h²)`;
//! * [`multiset_expansion_oracle`]: the generalized-binomial expansion
//!   `sum_{e ⊢ n} n! prod_j (1-b)(2-b)...(e_j-b) / e_j!`.
//!
//! [`coefficient_formula`] extracts a single coefficient through elementary
//! symmetric functions of the inverses of `M_e`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, freq_multiset, hook_multiset};
use crate::poly::elementary_symmetric;
use crate::{IntPoly, RatPoly};

/// Default size cap for the hooklength and multiset oracles.
pub const ORACLE_CAP: usize = 25;
/// Default size cap for [`coefficient_formula`].
pub const COEFFICIENT_CAP: usize = 18;

/// Whether a call may exceed the default size caps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Budget {
    #[default]
    Capped,
    Unbounded,
}

impl Budget {
    pub fn from_override(allow_expensive: bool) -> Self {
        if allow_expensive {
            Budget::Unbounded
        } else {
            Budget::Capped
        }
    }

    pub(crate) fn check(self, what: &'static str, value: u64, cap: u64) -> Result<()> {
        if self == Budget::Capped && value > cap {
            return Err(Error::CapExceeded { what, value, cap });
        }
        Ok(())
    }
}

/// Sum of the positive divisors of `m`.
pub fn sigma1(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("sigma1 is undefined at 0".into()));
    }
    let mut total = 0;
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            total += d;
            if d * d != m {
                total += m / d;
            }
        }
        d += 1;
    }
    Ok(total)
}

/// Incrementally extended chain `p_0, p_1, ...` with memoized factorials and
/// divisor sums.
#[derive(Clone, Debug)]
pub struct EtaSequence {
    polys: Vec<IntPoly>,
    factorials: Vec<BigInt>,
    sigma: Vec<BigInt>,
}

impl Default for EtaSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl EtaSequence {
    pub fn new() -> Self {
        Self {
            polys: vec![IntPoly::one()],
            factorials: vec![BigInt::one()],
            sigma: vec![BigInt::zero()],
        }
    }

    /// Resumes from a known prefix `p_0, ..., p_j`. The prefix is trusted;
    /// validate it first when it comes from disk.
    pub fn from_prefix(prefix: Vec<IntPoly>) -> Self {
        let mut seq = Self::new();
        if !prefix.is_empty() {
            seq.polys = prefix;
        }
        seq.grow_tables(seq.polys.len() - 1);
        seq
    }

    fn grow_tables(&mut self, n: usize) {
        while self.factorials.len() <= n {
            let i = self.factorials.len();
            let next = &self.factorials[i - 1] * BigInt::from(i);
            self.factorials.push(next);
        }
        while self.sigma.len() <= n {
            let m = self.sigma.len() as u64;
            self.sigma.push(BigInt::from(sigma1(m).expect("m >= 1")));
        }
    }

    /// Highest index computed so far.
    pub fn max_n(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<IntPoly> {
        self.polys
    }

    pub fn get(&self, n: usize) -> Option<&IntPoly> {
        self.polys.get(n)
    }

    pub fn factorial(&self, n: usize) -> &BigInt {
        &self.factorials[n]
    }

    pub fn extend_to(&mut self, n_max: usize) {
        self.grow_tables(n_max);
        for n in self.polys.len()..=n_max {
            let next = self.step(n);
            self.polys.push(next);
        }
    }

    /// One step of the recurrence. The factor `(n-1)! / (n-m)!` is formed by
    /// exact division of the memoized factorials and checked for remainder.
    fn step(&self, n: usize) -> IntPoly {
        let mut sum = IntPoly::zero();
        for m in 1..=n {
            let (ratio, rem) = self.factorials[n - 1].div_rem(&self.factorials[n - m]);
            assert!(rem.is_zero(), "(n-1)!/(n-m)! not integral at n={n}, m={m}");
            let weight = -(&self.sigma[m] * ratio);
            sum.add_scaled(&self.polys[n - m], &weight);
        }
        let out = sum.mul_linear(&-BigInt::one(), &BigInt::one());
        assert_eq!(out.degree(), Some(n), "p_{n} has the wrong degree");
        out
    }
}

/// `p_0, ..., p_{n_max}` by the recurrence.
pub fn compute_recurrence(n_max: usize) -> Vec<IntPoly> {
    let mut seq = EtaSequence::new();
    seq.extend_to(n_max);
    seq.into_polys()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn integral(n: usize, poly: RatPoly) -> Result<IntPoly> {
    poly.to_integer().map_err(|t| Error::NonIntegral { n, t })
}

/// `n! sum_{λ ⊢ n} prod_{h ∈ hooks(λ)} (1 - b/h²)` in exact rationals.
pub fn hno_oracle(n: usize, budget: Budget) -> Result<IntPoly> {
    budget.check("n", n as u64, ORACLE_CAP as u64)?;
    let n_fact = BigRational::from_integer(factorial(n));
    let mut total = RatPoly::zero();
    for lambda in enumerate_partitions(n as u32) {
        let mut term = RatPoly::constant(n_fact.clone());
        for h in hook_multiset(&lambda).values {
            let h2 = BigInt::from(h) * BigInt::from(h);
            term = term.mul_linear(&BigRational::one(), &-BigRational::new(BigInt::one(), h2));
        }
        total.add_scaled(&term, &BigRational::one());
    }
    integral(n, total)
}

/// `sum_{e ⊢ n} n! prod_j (1-b)(2-b)...(e_j-b) / e_j!` in exact rationals.
pub fn multiset_expansion_oracle(n: usize, budget: Budget) -> Result<IntPoly> {
    budget.check("n", n as u64, ORACLE_CAP as u64)?;
    let n_fact = factorial(n);
    let mut total = RatPoly::zero();
    for e in enumerate_partitions(n as u32) {
        let denom = e
            .freqs()
            .iter()
            .fold(BigInt::one(), |acc, &(_, m)| acc * factorial(m as usize));
        let mut term = RatPoly::constant(BigRational::new(n_fact.clone(), denom));
        for &(_, m) in e.freqs() {
            for i in 1..=m {
                term = term.mul_linear(&BigRational::from_integer(i.into()), &-BigRational::one());
            }
        }
        total.add_scaled(&term, &BigRational::one());
    }
    integral(n, total)
}

/// Coefficient of `b^t` in `p_n`:
/// `(-1)^t n! sum_{e ⊢ n} sum_{S ⊆ M_e, |S| = t} 1/(s_1 ... s_t)`.
///
/// The inner subset sum is the `t`-th elementary symmetric function of the
/// inverses of `M_e`, so no subsets are enumerated.
pub fn coefficient_formula(n: usize, t: usize, budget: Budget) -> Result<BigInt> {
    if t > n {
        return Err(Error::DegreeOutOfRange { n, t });
    }
    budget.check("n", n as u64, COEFFICIENT_CAP as u64)?;
    let mut sum = BigRational::zero();
    for e in enumerate_partitions(n as u32) {
        let inverses: Vec<BigRational> = freq_multiset(&e)
            .values
            .iter()
            .map(|&s| BigRational::new(BigInt::one(), BigInt::from(s)))
            .collect();
        if inverses.len() < t {
            continue;
        }
        sum += &elementary_symmetric(&inverses, t)[t];
    }
    let mut value = sum * BigRational::from_integer(factorial(n));
    if t % 2 == 1 {
        value = -value;
    }
    if !value.is_integer() {
        return Err(Error::NonIntegral { n, t });
    }
    Ok(value.to_integer())
}

/// First coefficient where `a` and `b` differ, with both values.
pub fn first_divergence(a: &IntPoly, b: &IntPoly) -> Option<(usize, BigInt, BigInt)> {
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len).find_map(|t| {
        let (x, y) = (a.coeff(t), b.coeff(t));
        (x != y).then_some((t, x, y))
    })
}

/// `(-1)^n` as a big integer.
pub(crate) fn alternating(n: usize) -> BigInt {
    if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}
