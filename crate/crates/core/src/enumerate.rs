//! Exhaustive enumeration of flag homology spheres on a fixed number of
//! vertices.
//!
//! Graphs are generated up to isomorphism by canonical augmentation: a graph
//! on `k + 1` vertices is accepted from its parent only if the added vertex
//! lies in the automorphism orbit of the vertex labeled last canonically.
//! At the final level candidates go through cheap filters (connectivity,
//! degrees, purity, closed pseudomanifold, Euler characteristic) before the
//! canonicity test and full homology certification.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_labeling, same_orbit, Canonical, ColoredGraph};
use crate::complex::SimplicialComplex;
use crate::graph::Graph;
use crate::homology::{is_closed_pseudomanifold, is_homology_sphere, Field};
use crate::iso::{canonical_form, canonical_relabel, flag_complex_from_canonical_form};
use crate::structure::{antipode_profile, recognize_family, FamilyDescriptor};
use crate::vectors::complex_gamma;
use crate::{Error, IntPolynomial, Result};

/// Default largest vertex count accepted by the enumerator.
pub const DEFAULT_CAP: usize = 12;

/// Slice `index` of `count` of the candidate space, `0 ≤ index < count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shard {
  pub index: usize,
  pub count: usize,
}

impl Shard {
  pub const ALL: Shard = Shard { index: 0, count: 1 };

  pub fn new(index: usize, count: usize) -> Result<Self> {
    if count == 0 || index >= count {
      return Err(Error::InvalidParameter(format!("shard {index}/{count}: need 0 <= index < count")));
    }
    Ok(Shard { index, count })
  }

  fn owns(self, i: usize) -> bool {
    i % self.count == self.index
  }
}

impl Default for Shard {
  fn default() -> Self {
    Shard::ALL
  }
}

impl fmt::Display for Shard {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{}/{}", self.index, self.count)
  }
}

impl FromStr for Shard {
  type Err = Error;

  fn from_str(s: &str) -> Result<Self> {
    let bad = || Error::InvalidParameter(format!("shard `{s}`: expected i/k"));
    let (i, k) = s.split_once('/').ok_or_else(bad)?;
    Shard::new(i.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?)
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
  pub n: usize,
  /// Keep only spheres of this dimension (`d - 1`).
  pub dim_filter: Option<usize>,
  pub field: Field,
  pub shard: Shard,
  pub cap: usize,
}

impl EnumerationTask {
  pub fn new(n: usize) -> Self {
    EnumerationTask { n, dim_filter: None, field: Field::GF2, shard: Shard::ALL, cap: DEFAULT_CAP }
  }

  pub fn dim(mut self, dim: Option<usize>) -> Self {
    self.dim_filter = dim;
    self
  }

  pub fn field(mut self, field: Field) -> Self {
    self.field = field;
    self
  }

  pub fn shard(mut self, shard: Shard) -> Self {
    self.shard = shard;
    self
  }

  pub fn cap(mut self, cap: usize) -> Self {
    self.cap = cap;
    self
  }
}

/// One isomorphism class of flag homology spheres.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
  /// Hex-encoded canonical form.
  pub canonical_form: String,
  pub n: usize,
  pub d: usize,
  pub gamma: IntPolynomial,
  pub polar_size: usize,
  pub family: FamilyDescriptor,
}

impl CensusEntry {
  /// Describes a certified flag homology sphere. The witness refers to
  /// canonical labels, the same ones [`CensusEntry::complex`] returns.
  pub fn of(c: &SimplicialComplex) -> Result<Self> {
    let c = &canonical_relabel(c);
    Ok(CensusEntry {
      canonical_form: hex::encode(canonical_form(c)),
      n: c.n(),
      d: c.d(),
      gamma: complex_gamma(c)?,
      polar_size: antipode_profile(c).polar_size,
      family: recognize_family(c),
    })
  }

  /// The complex in canonical labels.
  pub fn complex(&self) -> Result<SimplicialComplex> {
    let bytes = hex::decode(&self.canonical_form).map_err(|e| Error::Format(format!("canonical form: {e}")))?;
    flag_complex_from_canonical_form(&bytes)
  }

  pub fn dim(&self) -> isize {
    self.d as isize - 1
  }
}

fn colored(rows: &[u64]) -> ColoredGraph {
  ColoredGraph::from_rows(rows)
}

fn relabel_rows(rows: &[u64], canon: &Canonical) -> Vec<u64> {
  let mut out = vec![0u64; rows.len()];
  for (v, &row) in rows.iter().enumerate() {
    let mut bits = row;
    while bits != 0 {
      let w = bits.trailing_zeros() as usize;
      bits &= bits - 1;
      out[canon.position[v]] |= 1 << canon.position[w];
    }
  }
  out
}

/// Rows of `parent` with a new last vertex adjacent to `mask`.
fn extend(parent: &[u64], mask: u64) -> Vec<u64> {
  let k = parent.len();
  let mut rows: Vec<u64> = parent.iter().enumerate().map(|(v, &r)| r | (mask >> v & 1) << k).collect();
  rows.push(mask);
  rows
}

fn orbit_by_generators(gens: &[Vec<usize>], v: usize) -> u64 {
  let mut orbit = 1u64 << v;
  let mut stack = vec![v];
  while let Some(x) = stack.pop() {
    for g in gens {
      let y = g[x];
      if orbit >> y & 1 == 0 {
        orbit |= 1 << y;
        stack.push(y);
      }
    }
  }
  orbit
}

/// Canonical augmentation test: is the last vertex of `rows` equivalent to
/// the canonically last one? Returns the canonical labeling on success.
fn accept(rows: &[u64]) -> Option<Canonical> {
  let g = colored(rows);
  let canon = canonical_labeling(&g);
  let k = rows.len() - 1;
  let last = canon.vertex_at(k);
  if last == k || orbit_by_generators(&canon.automorphisms, k) >> last & 1 == 1 || same_orbit(&g, k, last) {
    Some(canon)
  } else {
    None
  }
}

fn children(parent: &[u64]) -> Vec<Vec<u64>> {
  let k = parent.len();
  let mut seen = HashSet::new();
  let mut out = Vec::new();
  for mask in 0..1u64 << k {
    let rows = extend(parent, mask);
    if let Some(canon) = accept(&rows) {
      if seen.insert(canon.certificate.clone()) {
        out.push(relabel_rows(&rows, &canon));
      }
    }
  }
  out
}

/// All graphs on `n` vertices up to isomorphism, in canonical labels.
pub fn enumerate_graphs(n: usize) -> Vec<Graph> {
  graph_levels(n).pop().unwrap().into_iter().map(Graph::from_rows).collect()
}

/// Graph representatives on `0..=n` vertices, one level per vertex count.
fn graph_levels(n: usize) -> Vec<Vec<Vec<u64>>> {
  let mut levels = vec![vec![Vec::new()]];
  for _ in 0..n {
    let mut next: Vec<Vec<u64>> = levels.last().unwrap().par_iter().flat_map_iter(|p| children(p)).collect();
    next.sort();
    levels.push(next);
  }
  levels
}

fn reduced_euler(c: &SimplicialComplex) -> i64 {
  c.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { -(f as i64) } else { f as i64 }).sum()
}

/// Cheap necessary conditions on the graph of a flag sphere with at least
/// three vertices: connected, minimum degree 2 and no cone point.
fn graph_may_be_sphere(rows: &[u64]) -> bool {
  let n = rows.len();
  if n < 3 {
    return true;
  }
  if rows.iter().any(|r| r.count_ones() < 2 || r.count_ones() as usize == n - 1) {
    return false;
  }
  let mut seen = 1u64;
  let mut frontier = 1u64;
  while frontier != 0 {
    let v = frontier.trailing_zeros() as usize;
    frontier &= frontier - 1;
    let new = rows[v] & !seen;
    seen |= new;
    frontier |= new;
  }
  seen.count_ones() as usize == n
}

/// Clique complex of `rows` if it passes the combinatorial filters.
fn sphere_candidate(rows: &[u64], dim_filter: Option<usize>) -> Option<SimplicialComplex> {
  if !graph_may_be_sphere(rows) {
    return None;
  }
  let c = SimplicialComplex::clique_complex(&Graph::from_rows(rows.to_vec()));
  if dim_filter.is_some_and(|k| c.dim() != k as isize) || !c.is_pure() {
    return None;
  }
  if rows.len() >= 2 && !is_closed_pseudomanifold(&c) {
    return None;
  }
  let expected = if c.d() % 2 == 1 { 1 } else { -1 };
  (reduced_euler(&c) == expected).then_some(c)
}

fn certify(c: &SimplicialComplex, field: Field) -> bool {
  is_homology_sphere(c, field)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
  if n > cap || n > 64 {
    return Err(Error::CapExceeded { n, cap });
  }
  Ok(())
}

fn final_level(parents: &[Vec<u64>], task: &EnumerationTask) -> Result<Vec<CensusEntry>> {
  let found: Vec<SimplicialComplex> = parents
    .par_iter()
    .enumerate()
    .filter(|(i, _)| task.shard.owns(*i))
    .flat_map_iter(|(_, parent)| {
      let k = parent.len();
      let mut seen = HashSet::new();
      let mut out = Vec::new();
      for mask in 0..1u64 << k {
        let rows = extend(parent, mask);
        let Some(c) = sphere_candidate(&rows, task.dim_filter) else {
          continue;
        };
        let Some(canon) = accept(&rows) else { continue };
        if seen.insert(canon.certificate) && certify(&c, task.field) {
          out.push(c);
        }
      }
      out
    })
    .collect();
  let mut by_form = BTreeMap::new();
  for c in found {
    let entry = CensusEntry::of(&c)?;
    by_form.entry(entry.canonical_form.clone()).or_insert(entry);
  }
  Ok(by_form.into_values().collect())
}

/// Every flag homology sphere on exactly `task.n` vertices within the task's
/// shard, one per isomorphism class, sorted by canonical form.
pub fn enumerate_flag_spheres(task: &EnumerationTask) -> Result<Vec<CensusEntry>> {
  check_cap(task.n, task.cap)?;
  if task.n == 0 {
    let empty = SimplicialComplex::empty();
    let keep = task.shard.owns(0) && task.dim_filter.is_none();
    return Ok(if keep { vec![CensusEntry::of(&empty)?] } else { Vec::new() });
  }
  let levels = graph_levels(task.n - 1);
  final_level(levels.last().unwrap(), task)
}

/// Spheres on `0..=max_n` vertices, sharing the graph levels between sizes.
pub fn census(max_n: usize, dim_filter: Option<usize>, field: Field, cap: usize) -> Result<Vec<CensusEntry>> {
  check_cap(max_n, cap)?;
  let levels = graph_levels(max_n.saturating_sub(1));
  let mut all = Vec::new();
  for n in 0..=max_n {
    let task = EnumerationTask::new(n).dim(dim_filter).field(field).cap(cap);
    if n == 0 {
      all.extend(enumerate_flag_spheres(&task)?);
    } else {
      all.extend(final_level(&levels[n - 1], &task)?);
    }
  }
  Ok(all)
}

/// Oracle: sweeps every labeled graph on `n` vertices and returns the
/// sorted canonical forms of the flag homology spheres among them.
pub fn naive_flag_spheres(n: usize, dim_filter: Option<usize>, field: Field) -> Result<Vec<Vec<u8>>> {
  check_cap(n, 8)?;
  let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
  let forms: HashSet<Vec<u8>> = (0u64..1 << pairs.len())
    .into_par_iter()
    .filter_map(|mask| {
      let mut rows = vec![0u64; n];
      for (i, &(a, b)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
          rows[a] |= 1 << b;
          rows[b] |= 1 << a;
        }
      }
      let c = SimplicialComplex::clique_complex(&Graph::from_rows(rows));
      let keep = dim_filter.is_none_or(|k| c.dim() == k as isize) && is_homology_sphere(&c, field);
      keep.then(|| canonical_form(&c))
    })
    .collect();
  let mut forms: Vec<Vec<u8>> = forms.into_iter().collect();
  forms.sort();
  Ok(forms)
}

/// Union of shard outputs, deduplicated and sorted by canonical form.
pub fn merge_shards(parts: impl IntoIterator<Item = Vec<CensusEntry>>) -> Vec<CensusEntry> {
  let mut by_form = BTreeMap::new();
  for entry in parts.into_iter().flatten() {
    by_form.entry(entry.canonical_form.clone()).or_insert(entry);
  }
  by_form.into_values().collect()
}

pub fn write_ndjson(entries: &[CensusEntry], mut out: impl Write) -> Result<()> {
  for e in entries {
    let line = serde_json::to_string(e).map_err(|err| Error::Format(err.to_string()))?;
    writeln!(out, "{line}").map_err(|err| Error::Format(err.to_string()))?;
  }
  Ok(())
}

pub fn read_ndjson(input: impl BufRead) -> Result<Vec<CensusEntry>> {
  let mut out = Vec::new();
  for (i, line) in input.lines().enumerate() {
    let line = line.map_err(|e| Error::Format(e.to_string()))?;
    if line.trim().is_empty() {
      continue;
    }
    out.push(serde_json::from_str(&line).map_err(|e| Error::Format(format!("line {}: {e}", i + 1)))?);
  }
  Ok(out)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::structure::FamilyKind;

  #[test]
  fn graph_counts() {
    let counts: Vec<usize> = graph_levels(7).iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
  }

  #[test]
  fn graphs_match_labeled_sweep() {
    for n in 0..=5 {
      let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
      let mut naive = HashSet::new();
      for mask in 0u64..1 << pairs.len() {
        let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
        naive.insert(crate::iso::graph_canonical_form(&g));
      }
      let orderly: HashSet<_> = enumerate_graphs(n).iter().map(crate::iso::graph_canonical_form).collect();
      assert_eq!(orderly, naive);
    }
  }

  #[test]
  fn small_spheres() {
    let count = |n| enumerate_flag_spheres(&EnumerationTask::new(n)).unwrap();
    assert_eq!(count(0).len(), 1);
    assert_eq!(count(1).len(), 0);
    assert_eq!(count(2).len(), 1);
    assert_eq!(count(3).len(), 0);
    let five = count(5);
    assert_eq!(five.len(), 1);
    assert_eq!(five[0].gamma.coeffs(), &[1, 1]);
    let six = count(6);
    assert_eq!(six.len(), 2);
    let oct = six.iter().find(|e| e.d == 3).unwrap();
    assert_eq!(oct.family.kind, FamilyKind::OctahedralJoinC5Power);
    assert_eq!(oct.family.m, 3);
  }

  #[test]
  fn shard_parsing() {
    assert_eq!("1/4".parse::<Shard>().unwrap(), Shard { index: 1, count: 4 });
    assert!("4/4".parse::<Shard>().is_err());
    assert!("x".parse::<Shard>().is_err());
    assert_eq!(Shard::new(2, 3).unwrap().to_string(), "2/3");
  }

  #[test]
  fn cap_is_enforced() {
    let err = enumerate_flag_spheres(&EnumerationTask::new(13)).unwrap_err();
    assert_eq!(err, Error::CapExceeded { n: 13, cap: 12 });
  }

  #[test]
  fn ndjson_round_trip() {
    let entries = enumerate_flag_spheres(&EnumerationTask::new(6)).unwrap();
    let mut buf = Vec::new();
    write_ndjson(&entries, &mut buf).unwrap();
    let back = read_ndjson(buf.as_slice()).unwrap();
    assert_eq!(back, entries);
    for e in &back {
      assert_eq!(CensusEntry::of(&e.complex().unwrap()).unwrap(), *e);
    }
  }
}
