//! Reduced simplicial homology over GF(2) or ℚ, and the sphere / ball /
//! pseudomanifold certificates built on it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub};
use serde::Serialize;

use crate::complex::{Relabeled, SimplicialComplex};
use crate::face::Face;
use crate::Error;

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
  #[default]
  #[serde(rename = "gf2")]
  GF2,
  #[serde(rename = "q")]
  Rational,
}

impl FromStr for Field {
  type Err = Error;

  fn from_str(s: &str) -> Result<Self, Error> {
    match s.to_ascii_lowercase().as_str() {
      "gf2" | "f2" | "z2" => Ok(Field::GF2),
      "q" | "rational" | "qq" => Ok(Field::Rational),
      _ => Err(Error::InvalidParameter(format!("unknown field `{s}` (expected gf2 or q)"))),
    }
  }
}

impl fmt::Display for Field {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(match self {
      Field::GF2 => "gf2",
      Field::Rational => "q",
    })
  }
}

/// Reduced Betti numbers; `reduced_betti[i]` is the rank of `H̃_{i-1}`, so
/// the first entry is dimension −1 (nonzero only for the empty complex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
  pub field: Field,
  pub reduced_betti: Vec<usize>,
}

impl HomologyProfile {
  /// `β̃_k` for `k ≥ -1`; zero above the top dimension.
  pub fn betti(&self, k: isize) -> usize {
    usize::try_from(k + 1).ok().and_then(|i| self.reduced_betti.get(i)).copied().unwrap_or(0)
  }

  pub fn is_acyclic(&self) -> bool {
    self.reduced_betti.iter().all(|&b| b == 0)
  }

  /// Homology of `S^k` (`k = -1` is the empty complex).
  pub fn is_sphere_of_dim(&self, k: isize) -> bool {
    self.reduced_betti.iter().enumerate().all(|(i, &b)| b == usize::from(i as isize - 1 == k)) && self.betti(k) == 1
  }

  /// `Σ (-1)^k β̃_k` over `k ≥ -1`.
  pub fn euler_characteristic(&self) -> i64 {
    self.reduced_betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { -(b as i64) } else { b as i64 }).sum()
  }
}

/// GF(2) rank by elimination on bit-packed rows.
fn rank_gf2(rows: Vec<Vec<u64>>) -> usize {
  let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
  for mut row in rows {
    while let Some(lead) = row.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize) {
      match pivots.get(&lead) {
        Some(p) => row.iter_mut().zip(p).for_each(|(a, b)| *a ^= b),
        None => {
          pivots.insert(lead, row);
          break;
        }
      }
    }
  }
  pivots.len()
}

/// Rank over ℚ of an integer matrix by fraction-free (Bareiss) elimination.
/// Returns `None` if an intermediate value overflows `T`.
#[allow(clippy::needless_range_loop)]
pub fn fraction_free_rank<T>(mut m: Vec<Vec<T>>) -> Option<usize>
where
  T: Integer + Clone + CheckedMul + CheckedSub,
{
  let rows = m.len();
  let cols = m.first().map_or(0, Vec::len);
  let mut rank = 0;
  let mut prev = T::one();
  for col in 0..cols {
    if rank == rows {
      break;
    }
    let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
      continue;
    };
    m.swap(rank, p);
    let pivot = m[rank][col].clone();
    for r in rank + 1..rows {
      let factor = m[r][col].clone();
      for c in col + 1..cols {
        let a = pivot.checked_mul(&m[r][c])?;
        let b = factor.checked_mul(&m[rank][c])?;
        let num = a.checked_sub(&b)?;
        debug_assert!(num.is_multiple_of(&prev));
        m[r][c] = num.div_floor(&prev);
      }
      m[r][col] = T::zero();
    }
    prev = pivot;
    rank += 1;
  }
  Some(rank)
}

fn rank_rational(m: Vec<Vec<i8>>) -> usize {
  let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
  if let Some(r) = fraction_free_rank(small) {
    return r;
  }
  let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
  fraction_free_rank(big).expect("arbitrary precision cannot overflow")
}

/// Rank of the boundary map from faces of cardinality `k` to cardinality `k - 1`.
fn boundary_rank(c: &SimplicialComplex, k: usize, field: Field) -> usize {
  if k == 0 {
    return 0;
  }
  let upper = c.faces_of_card(k);
  let lower = c.faces_of_card(k - 1);
  if upper.is_empty() || lower.is_empty() {
    return 0;
  }
  let index: HashMap<Face, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
  match field {
    Field::GF2 => {
      let words = lower.len().div_ceil(64);
      let rows = upper
        .iter()
        .map(|f| {
          let mut row = vec![0u64; words];
          for v in f.iter() {
            let j = index[&f.without(v)];
            row[j / 64] |= 1 << (j % 64);
          }
          row
        })
        .collect();
      rank_gf2(rows)
    }
    Field::Rational => {
      let rows = upper
        .iter()
        .map(|f| {
          let mut row = vec![0i8; lower.len()];
          for (pos, v) in f.iter().enumerate() {
            row[index[&f.without(v)]] = if pos % 2 == 0 { 1 } else { -1 };
          }
          row
        })
        .collect();
      rank_rational(rows)
    }
  }
}

/// Reduced Betti numbers of `c` over `field`, dimensions −1 through `dim c`.
pub fn betti_numbers(c: &SimplicialComplex, field: Field) -> HomologyProfile {
  let d = c.d();
  let ranks: Vec<usize> = (0..=d + 1).map(|k| boundary_rank(c, k, field)).collect();
  let reduced_betti = (0..=d).map(|k| c.faces_of_card(k).len() - ranks[k] - ranks[k + 1]).collect();
  HomologyProfile { field, reduced_betti }
}

/// Every face of the top-but-one cardinality lies in one or two facets.
pub fn is_pseudomanifold(c: &SimplicialComplex) -> bool {
  ridge_degrees(c).is_some_and(|deg| deg.values().all(|&k| k == 1 || k == 2))
}

/// Every ridge lies in exactly two facets.
pub fn is_closed_pseudomanifold(c: &SimplicialComplex) -> bool {
  ridge_degrees(c).is_some_and(|deg| deg.values().all(|&k| k == 2))
}

fn ridge_degrees(c: &SimplicialComplex) -> Option<HashMap<Face, usize>> {
  if !c.is_pure() || c.d() == 0 {
    return None;
  }
  let mut deg: HashMap<Face, usize> = HashMap::new();
  for f in c.facets() {
    for v in f.iter() {
      *deg.entry(f.without(v)).or_default() += 1;
    }
  }
  Some(deg)
}

/// Whether `c` is a homology sphere over `field`: pure of dimension `d - 1`,
/// and the link of every face `f` (including `∅`) has the reduced homology of
/// `S^(d-1-|f|)`. The empty complex is the (−1)-sphere.
pub fn is_homology_sphere(c: &SimplicialComplex, field: Field) -> bool {
  if c.n() == 0 {
    return *c == SimplicialComplex::empty();
  }
  if !is_closed_pseudomanifold(c) {
    return false;
  }
  let d = c.d();
  // Links of ridges and facets are settled by the pseudomanifold check; go
  // from small links to large ones so that failures surface cheaply.
  for k in (0..=d.saturating_sub(2)).rev() {
    for &f in c.faces_of_card(k) {
      let link = SimplicialComplex::generated(c.link_faces(f)).complex;
      if !betti_numbers(&link, field).is_sphere_of_dim(d as isize - 1 - k as isize) {
        return false;
      }
    }
  }
  true
}

/// Certificate of a homology ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallCertificate {
  /// The faces with acyclic link, as a complex on its own vertex set.
  pub boundary: Relabeled,
}

/// Checks the homology-ball conditions and returns the boundary sphere.
pub fn is_homology_ball(c: &SimplicialComplex, field: Field) -> Option<BallCertificate> {
  if c.n() == 0 || !c.is_pure() {
    return None;
  }
  let d = c.d() as isize;
  let mut acyclic: Vec<Face> = Vec::new();
  for f in c.faces() {
    let link = SimplicialComplex::generated(c.link_faces(f)).complex;
    let profile = betti_numbers(&link, field);
    if profile.is_acyclic() {
      acyclic.push(f);
    } else {
      let k = d - 1 - f.len() as isize;
      if link.dim() != k || !is_homology_sphere(&link, field) {
        return None;
      }
    }
  }
  // The acyclic faces must be closed under taking subsets.
  let set: std::collections::HashSet<Face> = acyclic.iter().copied().collect();
  if !acyclic.iter().all(|f| f.subsets().all(|g| set.contains(&g))) {
    return None;
  }
  let boundary = SimplicialComplex::generated(acyclic.into_iter().filter(|f| !f.is_empty()).collect());
  if boundary.complex.dim() != d - 2 || !is_homology_sphere(&boundary.complex, field) {
    return None;
  }
  Some(BallCertificate { boundary })
}

pub fn is_acyclic(c: &SimplicialComplex, field: Field) -> bool {
  betti_numbers(c, field).is_acyclic()
}
