//! Dense univariate polynomials with exact, overflow-checked integer
//! coefficients. Houses f-, h- and γ-polynomials.

use std::fmt;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Integer scalar usable as a polynomial coefficient: `i64`, `i128` or
/// `num_bigint::BigInt`.
pub trait Coefficient: Clone + fmt::Debug + fmt::Display + PartialEq + Eq + PartialOrd + Zero + One + Signed + CheckedAdd + CheckedSub + CheckedMul {}

impl<T> Coefficient for T where T: Clone + fmt::Debug + fmt::Display + PartialEq + Eq + PartialOrd + Zero + One + Signed + CheckedAdd + CheckedSub + CheckedMul {}

/// Coefficients indexed by degree, constant term first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial<T> {
  coeffs: Vec<T>,
}

pub(crate) fn add<T: Coefficient>(a: &T, b: &T) -> Result<T> {
  a.checked_add(b).ok_or(Error::Overflow("addition"))
}

pub(crate) fn sub<T: Coefficient>(a: &T, b: &T) -> Result<T> {
  a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

pub(crate) fn mul<T: Coefficient>(a: &T, b: &T) -> Result<T> {
  a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row<T: Coefficient>(n: usize) -> Result<Vec<T>> {
  let mut row = vec![T::one()];
  for _ in 0..n {
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(T::one());
    for w in row.windows(2) {
      next.push(add(&w[0], &w[1])?);
    }
    next.push(T::one());
    row = next;
  }
  Ok(row)
}

/// `C(n, k)` for machine-sized arguments; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
  if k > n {
    return 0;
  }
  let k = k.min(n - k);
  (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl<T: Coefficient> Polynomial<T> {
  pub fn new(mut coeffs: Vec<T>) -> Self {
    while coeffs.last().is_some_and(Zero::is_zero) {
      coeffs.pop();
    }
    Polynomial { coeffs }
  }

  pub fn zero() -> Self {
    Polynomial { coeffs: Vec::new() }
  }

  pub fn one() -> Self {
    Polynomial { coeffs: vec![T::one()] }
  }

  /// `t`
  pub fn t() -> Self {
    Polynomial { coeffs: vec![T::zero(), T::one()] }
  }

  pub fn from_ints(coeffs: &[i64]) -> Self
  where
    T: From<i64>,
  {
    Polynomial::new(coeffs.iter().map(|&c| T::from(c)).collect())
  }

  /// `(1 + t)^k`
  pub fn one_plus_t_pow(k: usize) -> Result<Self> {
    Ok(Polynomial::new(binomial_row(k)?))
  }

  pub fn coeffs(&self) -> &[T] {
    &self.coeffs
  }

  pub fn into_coeffs(self) -> Vec<T> {
    self.coeffs
  }

  pub fn is_zero(&self) -> bool {
    self.coeffs.is_empty()
  }

  /// Degree of a nonzero polynomial; `None` for zero.
  pub fn degree(&self) -> Option<usize> {
    self.coeffs.len().checked_sub(1)
  }

  /// Number of stored coefficients (`degree + 1`, or 0).
  pub fn len(&self) -> usize {
    self.coeffs.len()
  }

  pub fn is_empty(&self) -> bool {
    self.coeffs.is_empty()
  }

  /// Coefficient of `t^i`, zero beyond the degree.
  pub fn coeff(&self, i: usize) -> T {
    self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
  }

  pub fn checked_add(&self, other: &Self) -> Result<Self> {
    let n = self.len().max(other.len());
    (0..n).map(|i| add(&self.coeff(i), &other.coeff(i))).collect::<Result<_>>().map(Polynomial::new)
  }

  pub fn checked_sub(&self, other: &Self) -> Result<Self> {
    let n = self.len().max(other.len());
    (0..n).map(|i| sub(&self.coeff(i), &other.coeff(i))).collect::<Result<_>>().map(Polynomial::new)
  }

  pub fn checked_mul(&self, other: &Self) -> Result<Self> {
    if self.is_zero() || other.is_zero() {
      return Ok(Polynomial::zero());
    }
    let mut out = vec![T::zero(); self.len() + other.len() - 1];
    for (i, a) in self.coeffs.iter().enumerate() {
      for (j, b) in other.coeffs.iter().enumerate() {
        out[i + j] = add(&out[i + j], &mul(a, b)?)?;
      }
    }
    Ok(Polynomial::new(out))
  }

  pub fn scale(&self, c: &T) -> Result<Self> {
    self.coeffs.iter().map(|a| mul(a, c)).collect::<Result<_>>().map(Polynomial::new)
  }

  /// Multiplication by `t^k`.
  pub fn shift(&self, k: usize) -> Self {
    if self.is_zero() {
      return Polynomial::zero();
    }
    let mut coeffs = vec![T::zero(); k];
    coeffs.extend(self.coeffs.iter().cloned());
    Polynomial { coeffs }
  }

  /// Exact division by `t`, if the constant term vanishes.
  pub fn div_t(&self) -> Option<Self> {
    match self.coeffs.first() {
      None => Some(Polynomial::zero()),
      Some(c) if c.is_zero() => Some(Polynomial { coeffs: self.coeffs[1..].to_vec() }),
      Some(_) => None,
    }
  }

  /// Value at `t = -1`; zero iff `(1 + t)` divides the polynomial.
  pub fn eval_at_minus_one(&self) -> Result<T> {
    let mut acc = T::zero();
    for (i, c) in self.coeffs.iter().enumerate() {
      acc = if i % 2 == 0 { add(&acc, c)? } else { sub(&acc, c)? };
    }
    Ok(acc)
  }

  pub fn divisible_by_one_plus_t(&self) -> Result<bool> {
    Ok(self.eval_at_minus_one()?.is_zero())
  }

  pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
    Polynomial::new(self.coeffs.iter().map(f).collect())
  }
}

impl<T: Coefficient> fmt::Debug for Polynomial<T> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.debug_list().entries(&self.coeffs).finish()
  }
}

impl<T: Coefficient> fmt::Display for Polynomial<T> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.is_zero() {
      return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in self.coeffs.iter().enumerate() {
      if c.is_zero() {
        continue;
      }
      let neg = c.is_negative();
      if !first {
        write!(f, "{}", if neg { " - " } else { " + " })?;
      } else if neg {
        write!(f, "-")?;
      }
      first = false;
      let a = c.abs();
      match i {
        0 => write!(f, "{a}")?,
        _ => {
          if !a.is_one() {
            write!(f, "{a}")?;
          }
          if i == 1 {
            write!(f, "t")?;
          } else {
            write!(f, "t^{i}")?;
          }
        }
      }
    }
    Ok(())
  }
}

impl<T: Coefficient + Serialize> Serialize for Polynomial<T> {
  fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
    self.coeffs.serialize(s)
  }
}

impl<'de, T: Coefficient + Deserialize<'de>> Deserialize<'de> for Polynomial<T> {
  fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
    Ok(Polynomial::new(Vec::<T>::deserialize(d)?))
  }
}

#[cfg(test)]
mod tests {
  use num_bigint::BigInt;

  use super::*;

  type P = Polynomial<i64>;

  #[test]
  fn trims_trailing_zeros() {
    let p = P::from_ints(&[1, 2, 0, 0]);
    assert_eq!(p.coeffs(), &[1, 2]);
    assert_eq!(P::from_ints(&[0, 0]).degree(), None);
  }

  #[test]
  fn binomial_powers() {
    assert_eq!(P::one_plus_t_pow(3).unwrap().coeffs(), &[1, 3, 3, 1]);
    assert_eq!(binomial(6, 2), 15);
    assert_eq!(binomial(2, 3), 0);
  }

  #[test]
  fn products_and_divisibility() {
    let a = P::from_ints(&[1, 1]);
    let b = P::from_ints(&[1, 2]);
    assert_eq!(a.checked_mul(&b).unwrap().coeffs(), &[1, 3, 2]);
    assert!(a.checked_mul(&b).unwrap().divisible_by_one_plus_t().unwrap());
    assert!(!b.divisible_by_one_plus_t().unwrap());
    assert_eq!(b.shift(2).coeffs(), &[0, 0, 1, 2]);
    assert_eq!(b.shift(1).div_t().unwrap(), b);
  }

  #[test]
  fn overflow_is_reported() {
    let big = P::from_ints(&[i64::MAX]);
    assert_eq!(big.checked_add(&P::one()), Err(Error::Overflow("addition")));
    let row = binomial_row::<i64>(80);
    assert!(row.is_err());
    assert!(binomial_row::<BigInt>(80).is_ok());
  }

  #[test]
  fn display() {
    assert_eq!(P::from_ints(&[1, 3, 2]).to_string(), "1 + 3t + 2t^2");
    assert_eq!(P::from_ints(&[0, -1, 0, 1]).to_string(), "-t + t^3");
  }
}
