//! f-, h- and γ-polynomials.
//!
//! The γ-polynomial is the coordinate vector of a palindromic h-polynomial
//! of degree `d` in the basis `z^i (1 + z)^(d - 2i)`, `0 ≤ i ≤ ⌊d/2⌋`. The
//! basis is triangular when read from the low end, so γ is extracted by
//! peeling off one basis element at a time.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::poly::{self, binomial_row, Coefficient, Polynomial};
use crate::{Error, IntPolynomial, Result};

/// The f-polynomial `Σ f_i z^i` of a complex.
pub fn f_polynomial<T: Coefficient + From<i64>>(c: &SimplicialComplex) -> Result<Polynomial<T>> {
  let f = c.f_vector();
  let coeffs = f.iter().map(|&x| i64::try_from(x).map(T::from).map_err(|_| Error::Overflow("f-vector entry"))).collect::<Result<Vec<T>>>()?;
  Ok(Polynomial::new(coeffs))
}

/// `h_k = Σ_{i ≤ k} (-1)^(k-i) C(d-i, d-k) f_i`.
pub fn h_polynomial<T: Coefficient>(f: &Polynomial<T>, d: usize) -> Result<Polynomial<T>> {
  if let Some(deg) = f.degree() {
    if deg > d {
      return Err(Error::DimensionMismatch { degree: deg, d });
    }
  }
  let rows: Vec<Vec<T>> = (0..=d).map(binomial_row).collect::<Result<_>>()?;
  let mut h = Vec::with_capacity(d + 1);
  for k in 0..=d {
    let mut acc = T::zero();
    for i in 0..=k {
      let term = poly::mul(&rows[d - i][d - k], &f.coeff(i))?;
      acc = if (k - i) % 2 == 0 { poly::add(&acc, &term)? } else { poly::sub(&acc, &term)? };
    }
    h.push(acc);
  }
  Ok(Polynomial::new(h))
}

/// `h_k = h_{d-k}` for all `k`.
pub fn is_dehn_sommerville<T: Coefficient>(h: &Polynomial<T>, d: usize) -> bool {
  if h.degree().is_some_and(|deg| deg > d) {
    return false;
  }
  (0..=d).all(|k| h.coeff(k) == h.coeff(d - k))
}

/// γ-polynomial of a palindromic h-polynomial of formal degree `d`.
pub fn gamma_vector<T: Coefficient>(h: &Polynomial<T>, d: usize) -> Result<Polynomial<T>> {
  if !is_dehn_sommerville(h, d) {
    return Err(Error::NotPalindromic { d });
  }
  let mut residual: Vec<T> = (0..=d).map(|k| h.coeff(k)).collect();
  let mut gamma = Vec::with_capacity(d / 2 + 1);
  for i in 0..=d / 2 {
    let g = residual[i].clone();
    if !g.is_zero() {
      let basis = binomial_row::<T>(d - 2 * i)?;
      for (j, b) in basis.iter().enumerate() {
        residual[i + j] = poly::sub(&residual[i + j], &poly::mul(&g, b)?)?;
      }
    }
    gamma.push(g);
  }
  debug_assert!(residual.iter().all(|r| r.is_zero()));
  Ok(Polynomial::new(gamma))
}

/// Rebuilds `h = Σ γ_i z^i (1 + z)^(d - 2i)`.
pub fn h_from_gamma<T: Coefficient>(gamma: &Polynomial<T>, d: usize) -> Result<Polynomial<T>> {
  if gamma.degree().is_some_and(|deg| 2 * deg > d) {
    return Err(Error::DimensionMismatch { degree: gamma.degree().unwrap(), d: d / 2 });
  }
  let mut h = Polynomial::zero();
  for (i, g) in gamma.coeffs().iter().enumerate() {
    let term = Polynomial::one_plus_t_pow(d - 2 * i)?.shift(i).scale(g)?;
    h = h.checked_add(&term)?;
  }
  Ok(h)
}

/// h-polynomial of a complex, with `d = dim + 1`.
pub fn complex_h(c: &SimplicialComplex) -> Result<IntPolynomial> {
  h_polynomial(&f_polynomial(c)?, c.d())
}

/// γ-polynomial of a complex; fails unless its h-polynomial is palindromic.
pub fn complex_gamma(c: &SimplicialComplex) -> Result<IntPolynomial> {
  gamma_vector(&complex_h(c)?, c.d())
}

/// `(γ_0, γ_1, γ_2)` from the closed forms in `f_1`, `f_2` and `d`, valid for
/// homology spheres.
pub fn gamma_closed_forms(c: &SimplicialComplex) -> (i64, i64, i64) {
  let f = c.f_vector();
  let d = c.d() as i64;
  let f1 = f.get(1).copied().unwrap_or(0) as i64;
  let f2 = f.get(2).copied().unwrap_or(0) as i64;
  (1, f1 - 2 * d, f2 - (2 * d - 3) * f1 + 2 * d * (d - 2))
}

/// Checks `α + γ_2 = γ_1 (γ_1 + 5) / 2 + d` with `α` the missing-edge count.
pub fn missing_edge_identity(c: &SimplicialComplex) -> bool {
  let (_, g1, g2) = gamma_closed_forms(c);
  let alpha = c.graph().complement().edge_count() as i64;
  2 * (alpha + g2) == g1 * (g1 + 5) + 2 * c.d() as i64
}

/// γ of a join of homology spheres is the product of their γ's.
pub fn gamma_join_product<T: Coefficient>(a: &Polynomial<T>, b: &Polynomial<T>) -> Result<Polynomial<T>> {
  a.checked_mul(b)
}

/// Outcome of [`forbidden_gamma_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ForbiddenVerdict {
  /// `p = (1+t)^k + t·r` with `k ≥ 3`, `deg r ≤ k - 2`, `r(0) = 1` and
  /// `(1+t) ∤ r`: no flag homology sphere has this γ-polynomial.
  Forbidden {
    k: usize,
    r: IntPolynomial,
  },
  NotApplicable,
}

impl ForbiddenVerdict {
  pub fn is_forbidden(&self) -> bool {
    matches!(self, ForbiddenVerdict::Forbidden { .. })
  }
}

/// Decides membership in the forbidden family `(1+t)^k + t·r(t)`.
///
/// The only candidate `k` is `deg p`: the remainder `t·r` has degree at most
/// `k - 1`, so the leading coefficient of `p` must be that of `(1+t)^k`.
/// Conditions are applied literally; `r` may have negative coefficients.
pub fn forbidden_gamma_check(p: &IntPolynomial) -> Result<ForbiddenVerdict> {
  let Some(k) = p.degree() else {
    return Ok(ForbiddenVerdict::NotApplicable);
  };
  if k < 3 {
    return Ok(ForbiddenVerdict::NotApplicable);
  }
  let diff = p.checked_sub(&Polynomial::one_plus_t_pow(k)?)?;
  let Some(r) = diff.div_t() else {
    return Ok(ForbiddenVerdict::NotApplicable);
  };
  let low_degree = r.degree().is_some_and(|deg| deg + 2 <= k);
  if !low_degree || r.coeff(0) != 1 || r.divisible_by_one_plus_t()? {
    return Ok(ForbiddenVerdict::NotApplicable);
  }
  Ok(ForbiddenVerdict::Forbidden { k, r })
}

/// f/h/γ summary of a complex; serializes with a fixed field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaReport {
  pub d: usize,
  pub f: IntPolynomial,
  pub h: IntPolynomial,
  /// Empty when `h` is not palindromic.
  pub gamma: IntPolynomial,
  pub alpha: usize,
  pub palindromic: bool,
}

impl GammaReport {
  pub fn of(c: &SimplicialComplex) -> Result<Self> {
    let d = c.d();
    let f = f_polynomial(c)?;
    let h = h_polynomial(&f, d)?;
    let palindromic = is_dehn_sommerville(&h, d);
    let gamma = if palindromic { gamma_vector(&h, d)? } else { Polynomial::zero() };
    let alpha = c.graph().complement().edge_count();
    Ok(GammaReport { d, f, h, gamma, alpha, palindromic })
  }

  /// `γ_1`, the number of vertices beyond `2d`.
  pub fn ell(&self) -> i64 {
    self.gamma.coeff(1)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn p(c: &[i64]) -> IntPolynomial {
    Polynomial::from_ints(c)
  }

  #[test]
  fn h_vectors() {
    assert_eq!(h_polynomial(&p(&[1, 5, 5]), 2).unwrap(), p(&[1, 3, 1]));
    assert_eq!(h_polynomial(&p(&[1, 6, 12, 8]), 3).unwrap(), p(&[1, 3, 3, 1]));
    assert_eq!(h_polynomial(&p(&[1]), 0).unwrap(), p(&[1]));
    assert_eq!(h_polynomial(&p(&[1, 2, 3]), 1), Err(Error::DimensionMismatch { degree: 2, d: 1 }));
  }

  #[test]
  fn dehn_sommerville() {
    assert!(is_dehn_sommerville(&p(&[1, 3, 3, 1]), 3));
    assert!(is_dehn_sommerville(&p(&[1, 4, 1]), 2));
    assert!(!is_dehn_sommerville(&p(&[1, 2, 3]), 2));
  }

  #[test]
  fn gamma_vectors() {
    assert_eq!(gamma_vector(&p(&[1, 3, 1]), 2).unwrap(), p(&[1, 1]));
    assert_eq!(gamma_vector(&p(&[1, 4, 1]), 2).unwrap(), p(&[1, 2]));
    assert_eq!(gamma_vector(&p(&[1, 3, 3, 1]), 3).unwrap(), p(&[1]));
    assert_eq!(gamma_vector(&p(&[1, 2, 3]), 2), Err(Error::NotPalindromic { d: 2 }));
    let h = p(&[1, 6, 12, 6, 1]);
    let g = gamma_vector(&h, 4).unwrap();
    assert_eq!(h_from_gamma(&g, 4).unwrap(), h);
  }

  #[test]
  fn closed_forms() {
    let c5 = SimplicialComplex::cycle(5).unwrap();
    let j = c5.join(&c5).unwrap();
    assert_eq!(gamma_closed_forms(&j), (1, 2, 1));
    assert!(missing_edge_identity(&j));
    let s = c5.suspension().unwrap();
    assert_eq!(gamma_closed_forms(&s), (1, 1, 0));
    let oct = SimplicialComplex::octahedral(3).unwrap();
    assert_eq!(gamma_closed_forms(&oct), (1, 0, 0));
    assert!(missing_edge_identity(&oct));
    assert!(missing_edge_identity(&SimplicialComplex::cycle(6).unwrap()));
  }

  #[test]
  fn join_products() {
    assert_eq!(gamma_join_product(&p(&[1, 1]), &p(&[1, 1])).unwrap(), p(&[1, 2, 1]));
    assert_eq!(gamma_join_product(&p(&[1]), &p(&[1, 4, 2])).unwrap(), p(&[1, 4, 2]));
    assert_eq!(gamma_join_product(&p(&[1, 1]), &p(&[1, 2])).unwrap(), p(&[1, 3, 2]));
  }

  #[test]
  fn forbidden_family() {
    let v = forbidden_gamma_check(&p(&[1, 4, 3, 1])).unwrap();
    assert_eq!(v, ForbiddenVerdict::Forbidden { k: 3, r: p(&[1]) });
    assert_eq!(forbidden_gamma_check(&p(&[1, 3, 3, 1])).unwrap(), ForbiddenVerdict::NotApplicable);
    // (1+t)^4 + t(1+t)
    assert_eq!(forbidden_gamma_check(&p(&[1, 5, 7, 4, 1])).unwrap(), ForbiddenVerdict::NotApplicable);
    assert_eq!(forbidden_gamma_check(&p(&[1, 2])).unwrap(), ForbiddenVerdict::NotApplicable);
    assert_eq!(forbidden_gamma_check(&p(&[])).unwrap(), ForbiddenVerdict::NotApplicable);
  }

  #[test]
  fn report_json_shape() {
    let r = GammaReport::of(&SimplicialComplex::cycle(5).unwrap()).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    assert_eq!(s, r#"{"d":2,"f":[1,5,5],"h":[1,3,1],"gamma":[1,1],"alpha":5,"palindromic":true}"#);
  }
}
