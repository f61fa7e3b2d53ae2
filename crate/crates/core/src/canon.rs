//! Canonical labeling of vertex-colored graphs.
//!
//! Individualization-refinement: colour refinement to an equitable
//! partition, then a search tree that individualizes one vertex of the
//! smallest non-singleton cell at a time. Each discrete leaf yields a
//! certificate (colour sequence plus permuted adjacency); the smallest
//! certificate is canonical. Two leaves with equal certificates give an
//! automorphism, and siblings lying in the same orbit of the automorphisms
//! found so far (restricted to those fixing the current prefix) are pruned.

use std::cmp::Ordering;

/// An undirected graph with an initial vertex colouring, adjacency stored as
/// `words` 64-bit words per row.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
  n: usize,
  words: usize,
  adj: Vec<u64>,
  colors: Vec<u32>,
}

impl ColoredGraph {
  pub fn new(n: usize, colors: Vec<u32>) -> Self {
    assert_eq!(colors.len(), n);
    let words = n.div_ceil(64).max(1);
    ColoredGraph { n, words, adj: vec![0; n * words], colors }
  }

  pub fn uncolored(n: usize) -> Self {
    ColoredGraph::new(n, vec![0; n])
  }

  /// Graph on at most 64 vertices from single-word adjacency rows.
  pub fn from_rows(rows: &[u64]) -> Self {
    let mut g = ColoredGraph::uncolored(rows.len());
    g.adj.copy_from_slice(rows);
    g
  }

  pub fn n(&self) -> usize {
    self.n
  }

  pub fn add_edge(&mut self, a: usize, b: usize) {
    self.adj[a * self.words + b / 64] |= 1 << (b % 64);
    self.adj[b * self.words + a / 64] |= 1 << (a % 64);
  }

  pub fn has_edge(&self, a: usize, b: usize) -> bool {
    self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
  }

  pub fn set_color(&mut self, v: usize, c: u32) {
    self.colors[v] = c;
  }

  fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
    let row = &self.adj[v * self.words..(v + 1) * self.words];
    row.iter().enumerate().flat_map(|(w, &bits)| {
      let mut b = bits;
      std::iter::from_fn(move || {
        if b == 0 {
          return None;
        }
        let i = b.trailing_zeros() as usize;
        b &= b - 1;
        Some(w * 64 + i)
      })
    })
  }
}

/// Result of canonical labeling.
#[derive(Clone, Debug)]
pub struct Canonical {
  /// `position[v]` is the canonical index of vertex `v`.
  pub position: Vec<usize>,
  /// Colour sequence and adjacency rows in canonical order; equal exactly
  /// for isomorphic coloured graphs.
  pub certificate: Vec<u64>,
  /// Generators of (a subgroup of) the automorphism group found during search.
  pub automorphisms: Vec<Vec<usize>>,
}

impl Canonical {
  /// The vertex placed at canonical index `i`.
  pub fn vertex_at(&self, i: usize) -> usize {
    self.position.iter().position(|&p| p == i).unwrap()
  }
}

/// Colour refinement to the coarsest equitable partition finer than `colors`.
/// Colours are renumbered densely `0..k` preserving the relative order of the
/// input colours; returns the number of cells.
fn refine(g: &ColoredGraph, colors: &mut [u32]) -> usize {
  let n = g.n;
  let mut cells = normalize(colors);
  let mut counts = vec![0u32; n * n.max(1)];
  loop {
    if cells == n {
      return cells;
    }
    counts[..n * cells].iter_mut().for_each(|c| *c = 0);
    for v in 0..n {
      for w in g.neighbors(v) {
        counts[v * cells + colors[w] as usize] += 1;
      }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| colors[a].cmp(&colors[b]).then_with(|| counts[a * cells..(a + 1) * cells].cmp(&counts[b * cells..(b + 1) * cells])));
    let mut next = vec![0u32; n];
    let mut k = 0u32;
    for i in 0..n {
      if i > 0 {
        let (a, b) = (order[i - 1], order[i]);
        if colors[a] != colors[b] || counts[a * cells..(a + 1) * cells] != counts[b * cells..(b + 1) * cells] {
          k += 1;
        }
      }
      next[order[i]] = k;
    }
    let new_cells = if n == 0 { 0 } else { k as usize + 1 };
    colors.copy_from_slice(&next);
    if new_cells == cells {
      return cells;
    }
    cells = new_cells;
  }
}

fn normalize(colors: &mut [u32]) -> usize {
  let mut distinct: Vec<u32> = colors.to_vec();
  distinct.sort_unstable();
  distinct.dedup();
  for c in colors.iter_mut() {
    *c = distinct.binary_search(c).unwrap() as u32;
  }
  distinct.len()
}

struct Search<'g> {
  g: &'g ColoredGraph,
  first: Option<(Vec<usize>, Vec<u64>)>,
  best: Option<(Vec<usize>, Vec<u64>)>,
  autos: Vec<Vec<usize>>,
  base_colors: Vec<u32>,
}

impl Search<'_> {
  fn certificate(&self, position: &[usize]) -> Vec<u64> {
    let g = self.g;
    let n = g.n;
    let mut inv = vec![0usize; n];
    for (v, &p) in position.iter().enumerate() {
      inv[p] = v;
    }
    let mut cert = Vec::with_capacity(n + n * g.words);
    cert.extend(inv.iter().map(|&v| self.base_colors[v] as u64));
    for &v in &inv {
      let mut row = vec![0u64; g.words];
      for w in g.neighbors(v) {
        let p = position[w];
        row[p / 64] |= 1 << (p % 64);
      }
      cert.extend(row);
    }
    cert
  }

  fn leaf(&mut self, colors: &[u32]) {
    let position: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
    let cert = self.certificate(&position);
    match &self.first {
      None => {
        self.first = Some((position.clone(), cert.clone()));
        self.best = Some((position, cert));
        return;
      }
      Some((fpos, fcert)) if *fcert == cert => {
        let a = automorphism(fpos, &position);
        self.autos.push(a);
        return;
      }
      _ => {}
    }
    let (bpos, bcert) = self.best.as_ref().unwrap();
    match cert.cmp(bcert) {
      Ordering::Less => self.best = Some((position, cert)),
      Ordering::Equal => {
        let a = automorphism(bpos, &position);
        self.autos.push(a);
      }
      Ordering::Greater => {}
    }
  }

  fn descend(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) {
    let n = self.g.n;
    let cells = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    if cells == n {
      self.leaf(&colors);
      return;
    }
    let mut size = vec![0usize; cells];
    for &c in &colors {
      size[c as usize] += 1;
    }
    let target = (0..cells).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c)).unwrap() as u32;
    let members: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let mut explored: Vec<usize> = Vec::new();
    for &u in &members {
      if !explored.is_empty() {
        let orbit_rep = self.orbits_fixing(prefix);
        if explored.iter().any(|&e| orbit_rep[e] == orbit_rep[u]) {
          continue;
        }
      }
      let mut child: Vec<u32> = colors.iter().enumerate().map(|(v, &c)| 2 * c + u32::from(c == target && v != u)).collect();
      refine(self.g, &mut child);
      prefix.push(u);
      self.descend(child, prefix);
      prefix.pop();
      explored.push(u);
    }
  }

  /// Orbit representatives under the automorphisms found so far that fix
  /// every vertex of `prefix`.
  fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
    let n = self.g.n;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
      while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
      }
      x
    }
    for a in &self.autos {
      if prefix.iter().any(|&v| a[v] != v) {
        continue;
      }
      for (v, &w) in a.iter().enumerate() {
        let (x, y) = (find(&mut parent, v), find(&mut parent, w));
        if x != y {
          parent[x.max(y)] = x.min(y);
        }
      }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
  }
}

/// Maps each vertex `v` to the vertex occupying `v`'s position under `to`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
  let mut inv_from = vec![0usize; from.len()];
  for (v, &p) in from.iter().enumerate() {
    inv_from[p] = v;
  }
  to.iter().map(|&p| inv_from[p]).collect()
}

/// Computes the canonical labeling of a coloured graph.
pub fn canonical_labeling(g: &ColoredGraph) -> Canonical {
  let mut colors = g.colors.clone();
  normalize(&mut colors);
  let base_colors = colors.clone();
  refine(g, &mut colors);
  let mut search = Search { g, first: None, best: None, autos: Vec::new(), base_colors };
  search.descend(colors, &mut Vec::new());
  let (position, certificate) = search.best.take().unwrap_or_default();
  Canonical { position, certificate, automorphisms: search.autos }
}

/// Whether `a` and `b` lie in the same automorphism orbit of `g`.
pub fn same_orbit(g: &ColoredGraph, a: usize, b: usize) -> bool {
  if a == b {
    return true;
  }
  let mut colors = g.colors.clone();
  normalize(&mut colors);
  refine(g, &mut colors);
  if colors[a] != colors[b] {
    return false;
  }
  let mark = |v: usize| {
    let mut h = g.clone();
    let top = h.colors.iter().copied().max().unwrap_or(0) + 1;
    h.set_color(v, top);
    canonical_labeling(&h).certificate
  };
  mark(a) == mark(b)
}

#[cfg(test)]
mod tests {
  use super::*;

  fn cycle(n: usize, perm: &[usize]) -> ColoredGraph {
    let mut g = ColoredGraph::uncolored(n);
    for i in 0..n {
      g.add_edge(perm[i], perm[(i + 1) % n]);
    }
    g
  }

  #[test]
  fn relabeled_cycles_share_certificate() {
    let a = cycle(6, &[0, 1, 2, 3, 4, 5]);
    let b = cycle(6, &[3, 0, 5, 1, 4, 2]);
    assert_eq!(canonical_labeling(&a).certificate, canonical_labeling(&b).certificate);
  }

  #[test]
  fn distinguishes_c6_from_two_triangles() {
    let a = cycle(6, &[0, 1, 2, 3, 4, 5]);
    let mut b = ColoredGraph::uncolored(6);
    for (x, y) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
      b.add_edge(x, y);
    }
    assert_ne!(canonical_labeling(&a).certificate, canonical_labeling(&b).certificate);
  }

  #[test]
  fn colours_matter() {
    let mut a = ColoredGraph::uncolored(2);
    a.add_edge(0, 1);
    let mut b = a.clone();
    a.set_color(0, 1);
    b.set_color(1, 1);
    assert_eq!(canonical_labeling(&a).certificate, canonical_labeling(&b).certificate);
    let c = ColoredGraph::from_rows(&[0b10, 0b01]);
    assert_ne!(canonical_labeling(&a).certificate, canonical_labeling(&c).certificate);
  }

  #[test]
  fn orbits_of_a_path() {
    let mut g = ColoredGraph::uncolored(4);
    for i in 0..3 {
      g.add_edge(i, i + 1);
    }
    assert!(same_orbit(&g, 0, 3));
    assert!(same_orbit(&g, 1, 2));
    assert!(!same_orbit(&g, 0, 1));
  }

  #[test]
  fn highly_symmetric_graph_is_fast() {
    // cocktail-party graph on 16 vertices (octahedral 7-sphere skeleton)
    let n = 16;
    let mut g = ColoredGraph::uncolored(n);
    for a in 0..n {
      for b in a + 1..n {
        if a / 2 != b / 2 {
          g.add_edge(a, b);
        }
      }
    }
    let c = canonical_labeling(&g);
    assert_eq!(c.position.len(), n);
    assert!(!c.automorphisms.is_empty());
  }
}
