//! Faces as fixed-width vertex bitsets.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported vertex count; faces are single `u64` words.
pub const MAX_VERTICES: usize = 64;

/// Index of a vertex in `[0, n)`.
pub type VertexId = usize;

/// A finite set of vertices, stored as a bitset over `[0, 64)`.
///
/// Ordering is lexicographic on the sorted vertex sequence, so sorting a
/// facet list yields the canonical textual order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Face(u64);

impl Face {
  pub const EMPTY: Face = Face(0);

  pub fn from_bits(bits: u64) -> Self {
    Face(bits)
  }

  pub fn bits(self) -> u64 {
    self.0
  }

  pub fn singleton(v: VertexId) -> Self {
    debug_assert!(v < MAX_VERTICES);
    Face(1 << v)
  }

  pub fn edge(a: VertexId, b: VertexId) -> Self {
    Face::singleton(a).with(b)
  }

  /// The full simplex on `[0, n)`.
  pub fn range(n: usize) -> Self {
    if n >= 64 {
      Face(u64::MAX)
    } else {
      Face((1u64 << n) - 1)
    }
  }

  pub fn len(self) -> usize {
    self.0.count_ones() as usize
  }

  pub fn is_empty(self) -> bool {
    self.0 == 0
  }

  /// Dimension `len - 1`; the empty face has dimension -1.
  pub fn dim(self) -> isize {
    self.len() as isize - 1
  }

  pub fn contains(self, v: VertexId) -> bool {
    v < 64 && self.0 >> v & 1 == 1
  }

  pub fn is_subset(self, other: Face) -> bool {
    self.0 & !other.0 == 0
  }

  pub fn is_disjoint(self, other: Face) -> bool {
    self.0 & other.0 == 0
  }

  pub fn union(self, other: Face) -> Face {
    Face(self.0 | other.0)
  }

  pub fn intersection(self, other: Face) -> Face {
    Face(self.0 & other.0)
  }

  pub fn difference(self, other: Face) -> Face {
    Face(self.0 & !other.0)
  }

  pub fn with(self, v: VertexId) -> Face {
    Face(self.0 | 1 << v)
  }

  pub fn without(self, v: VertexId) -> Face {
    Face(self.0 & !(1 << v))
  }

  pub fn min_vertex(self) -> Option<VertexId> {
    (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
  }

  pub fn max_vertex(self) -> Option<VertexId> {
    (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
  }

  pub fn iter(self) -> FaceIter {
    FaceIter(self.0)
  }

  pub fn to_vec(self) -> Vec<VertexId> {
    self.iter().collect()
  }

  /// All subsets of this face, including the empty face and the face itself.
  pub fn subsets(self) -> impl Iterator<Item = Face> {
    let full = self.0;
    let mut sub = 0u64;
    let mut done = false;
    std::iter::from_fn(move || {
      if done {
        return None;
      }
      let out = Face(sub);
      // next subset of `full` in increasing integer order
      sub = sub.wrapping_sub(full) & full;
      if sub == 0 {
        done = true;
      }
      Some(out)
    })
  }

  /// Relabels vertices through `map`; vertices mapped to `None` are dropped.
  pub fn map(self, map: impl Fn(VertexId) -> Option<VertexId>) -> Face {
    self.iter().filter_map(map).collect()
  }
}

impl FromIterator<VertexId> for Face {
  fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
    iter.into_iter().fold(Face::EMPTY, Face::with)
  }
}

impl<'a> FromIterator<&'a VertexId> for Face {
  fn from_iter<I: IntoIterator<Item = &'a VertexId>>(iter: I) -> Self {
    iter.into_iter().copied().collect()
  }
}

impl PartialOrd for Face {
  fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
    Some(self.cmp(other))
  }
}

impl Ord for Face {
  fn cmp(&self, other: &Self) -> std::cmp::Ordering {
    self.iter().cmp(other.iter())
  }
}

impl fmt::Debug for Face {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.debug_set().entries(self.iter()).finish()
  }
}

impl fmt::Display for Face {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, v) in self.iter().enumerate() {
      if i > 0 {
        write!(f, ",")?;
      }
      write!(f, "{v}")?;
    }
    write!(f, "}}")
  }
}

impl Serialize for Face {
  fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
    self.to_vec().serialize(s)
  }
}

impl<'de> Deserialize<'de> for Face {
  fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
    let v = Vec::<usize>::deserialize(d)?;
    if let Some(&bad) = v.iter().find(|&&x| x >= MAX_VERTICES) {
      return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
    }
    Ok(v.into_iter().collect())
  }
}

/// Iterator over the vertices of a face in increasing order.
#[derive(Clone)]
pub struct FaceIter(u64);

impl Iterator for FaceIter {
  type Item = VertexId;

  fn next(&mut self) -> Option<VertexId> {
    if self.0 == 0 {
      return None;
    }
    let v = self.0.trailing_zeros() as usize;
    self.0 &= self.0 - 1;
    Some(v)
  }

  fn size_hint(&self) -> (usize, Option<usize>) {
    let n = self.0.count_ones() as usize;
    (n, Some(n))
  }
}

impl ExactSizeIterator for FaceIter {}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn subsets_enumerates_power_set() {
    let f: Face = [1, 3, 4].iter().collect();
    let subs: Vec<Face> = f.subsets().collect();
    assert_eq!(subs.len(), 8);
    assert!(subs.contains(&Face::EMPTY));
    assert!(subs.contains(&f));
    assert_eq!(Face::EMPTY.subsets().count(), 1);
  }

  #[test]
  fn lexicographic_order() {
    let a: Face = [0, 5].iter().collect();
    let b: Face = [1, 2].iter().collect();
    let c: Face = [0, 1, 9].iter().collect();
    let mut v = vec![b, a, c];
    v.sort();
    assert_eq!(v, vec![c, a, b]);
  }

  #[test]
  fn dims() {
    assert_eq!(Face::EMPTY.dim(), -1);
    assert_eq!(Face::edge(2, 7).dim(), 1);
    assert_eq!(Face::edge(2, 7).to_string(), "{2,7}");
  }
}
