//! Dense univariate polynomials over an arbitrary commutative ring.
//!
//! Coefficients are stored in ascending degree: index `t` holds the
//! coefficient of `b^t`. Trailing zeros are trimmed on construction, so the
//! zero polynomial has no coefficients and `degree()` is `None`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Scalar ring usable as polynomial coefficients.
///
/// Blanket-implemented for every type with the required `num-traits`
/// arithmetic, which covers `BigInt`, `BigRational`, the primitive integers
/// and the primitive floats.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
{
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> DensePolynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1 * b`.
    pub fn linear(c0: T, c1: T) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `b^t`; zero past the degree.
    pub fn coeff(&self, t: usize) -> T {
        self.coeffs.get(t).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    /// Multiply by `c0 + c1 * b` in place of a full convolution.
    pub fn mul_linear(&self, c0: &T, c1: &T) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (t, c) in self.coeffs.iter().enumerate() {
            out[t] = out[t].clone() + &(c.clone() * c0);
            out[t + 1] = out[t + 1].clone() + &(c.clone() * c1);
        }
        Self::new(out)
    }

    /// Add `s * other` into `self`.
    pub fn add_scaled(&mut self, other: &Self, s: &T) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), T::zero());
        }
        for (dst, c) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *dst = dst.clone() + &(c.clone() * s);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DensePolynomial<U> {
        DensePolynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Truncated product keeping only degrees `<= max_degree`.
    pub fn mul_truncated(&self, rhs: &Self, max_degree: usize) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1).min(max_degree + 1);
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<T: Scalar> Default for DensePolynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> From<Vec<T>> for DensePolynomial<T> {
    fn from(coeffs: Vec<T>) -> Self {
        Self::new(coeffs)
    }
}

impl<T: fmt::Debug> fmt::Debug for DensePolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<'a, T: Scalar> Add for &'a DensePolynomial<T> {
    type Output = DensePolynomial<T>;

    fn add(self, rhs: Self) -> DensePolynomial<T> {
        let mut out = self.clone();
        out.add_scaled(rhs, &T::one());
        out
    }
}

impl<'a, T: Scalar> Sub for &'a DensePolynomial<T> {
    type Output = DensePolynomial<T>;

    fn sub(self, rhs: Self) -> DensePolynomial<T> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-T::one());
        out
    }
}

impl<'a, T: Scalar> Mul for &'a DensePolynomial<T> {
    type Output = DensePolynomial<T>;

    fn mul(self, rhs: Self) -> DensePolynomial<T> {
        match (self.degree(), rhs.degree()) {
            (Some(a), Some(b)) => self.mul_truncated(rhs, a + b),
            _ => DensePolynomial::zero(),
        }
    }
}

impl<T: Scalar> Neg for DensePolynomial<T> {
    type Output = DensePolynomial<T>;

    fn neg(self) -> DensePolynomial<T> {
        DensePolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl DensePolynomial<BigRational> {
    /// Converts to an integer polynomial, or reports the first degree whose
    /// coefficient has a nontrivial denominator.
    pub fn to_integer(&self) -> std::result::Result<DensePolynomial<BigInt>, usize> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(t, c)| if c.is_integer() { Ok(c.to_integer()) } else { Err(t) })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(DensePolynomial::new)
    }
}

impl DensePolynomial<BigInt> {
    pub fn to_rational(&self) -> DensePolynomial<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn residues(&self, m: u64) -> Vec<u64> {
        let m = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&m);
                u64::try_from(r).expect("residue fits in u64")
            })
            .collect()
    }
}

/// Elementary symmetric functions `e_0, ..., e_up_to` of `values`,
/// read off as the coefficients of `prod (1 + v x)` truncated at `x^up_to`.
pub fn elementary_symmetric<T: Scalar>(values: &[T], up_to: usize) -> Vec<T> {
    let mut e = vec![T::zero(); up_to + 1];
    e[0] = T::one();
    let mut top = 0;
    for v in values {
        top = (top + 1).min(up_to);
        for t in (1..=top).rev() {
            let shifted = e[t - 1].clone() * v;
            e[t] = e[t].clone() + &shifted;
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> DensePolynomial<BigInt> {
        DensePolynomial::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = ip(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(ip(&[0, 0]).is_zero());
        assert_eq!(ip(&[]).degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = ip(&[1, -1]);
        let b = ip(&[2, 0, 1]);
        assert_eq!(&a * &b, ip(&[2, -2, 1, -1]));
        assert_eq!(&a + &b, ip(&[3, -1, 1]));
        assert_eq!(&a - &a, DensePolynomial::zero());
        assert_eq!(a.mul_linear(&BigInt::from(-1), &BigInt::from(1)), ip(&[-1, 2, -1]));
        assert_eq!(a.pow(3), ip(&[1, -3, 3, -1]));
        assert_eq!(b.eval(&BigInt::from(3)), BigInt::from(11));
    }

    #[test]
    fn generic_over_floats_and_machine_ints() {
        let p: DensePolynomial<f64> = DensePolynomial::new(vec![0.5, 2.0]);
        assert_eq!(p.eval(&2.0), 4.5);
        let q: DensePolynomial<i64> = DensePolynomial::linear(1, 1);
        assert_eq!(q.pow(4).coeffs(), &[1, 4, 6, 4, 1]);
    }

    #[test]
    fn esf_matches_expansion() {
        let e = elementary_symmetric(&[1i64, 2, 3], 3);
        assert_eq!(e, vec![1, 6, 11, 6]);
        let truncated = elementary_symmetric(&[1i64, 2, 3], 1);
        assert_eq!(truncated, vec![1, 6]);
        assert_eq!(elementary_symmetric::<i64>(&[], 2), vec![1, 0, 0]);
    }

    #[test]
    fn rational_to_integer_reports_first_bad_degree() {
        let half = BigRational::new(1.into(), 2.into());
        let p = DensePolynomial::new(vec![BigRational::one(), half]);
        assert_eq!(p.to_integer(), Err(1));
        assert_eq!(ip(&[3, 4]).to_rational().to_integer(), Ok(ip(&[3, 4])));
    }

    #[test]
    fn residues_are_normalized() {
        assert_eq!(ip(&[-1, 7, -15]).residues(5), vec![4, 2, 0]);
    }
}
