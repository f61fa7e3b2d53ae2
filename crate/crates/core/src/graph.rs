//! Simple undirected graphs on at most 64 vertices.

use crate::face::{Face, VertexId, MAX_VERTICES};
use crate::{Error, Result};

/// Symmetric, irreflexive adjacency on `[0, n)`, one bitset row per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
  n: usize,
  rows: Vec<u64>,
}

impl Graph {
  pub fn empty(n: usize) -> Self {
    assert!(n <= MAX_VERTICES, "graph on {n} vertices exceeds {MAX_VERTICES}");
    Graph { n, rows: vec![0; n] }
  }

  pub fn complete(n: usize) -> Self {
    let mut g = Graph::empty(n);
    for v in 0..n {
      g.rows[v] = Face::range(n).without(v).bits();
    }
    g
  }

  pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
    if n > MAX_VERTICES {
      return Err(Error::InvalidParameter(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
    }
    let mut g = Graph::empty(n);
    for (a, b) in edges {
      if a >= n || b >= n {
        return Err(Error::InvalidVertex { vertex: a.max(b), n });
      }
      if a == b {
        return Err(Error::InvalidParameter(format!("self-loop at vertex {a}")));
      }
      g.add_edge(a, b);
    }
    Ok(g)
  }

  /// Builds a graph from raw rows; rows must already be symmetric and loop-free.
  pub(crate) fn from_rows(rows: Vec<u64>) -> Self {
    debug_assert!(rows.iter().enumerate().all(|(v, r)| r >> v & 1 == 0));
    Graph { n: rows.len(), rows }
  }

  pub fn n(&self) -> usize {
    self.n
  }

  pub fn rows(&self) -> &[u64] {
    &self.rows
  }

  pub fn add_edge(&mut self, a: VertexId, b: VertexId) {
    self.rows[a] |= 1 << b;
    self.rows[b] |= 1 << a;
  }

  pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
    self.rows[a] >> b & 1 == 1
  }

  pub fn neighbors(&self, v: VertexId) -> Face {
    Face::from_bits(self.rows[v])
  }

  pub fn degree(&self, v: VertexId) -> usize {
    self.rows[v].count_ones() as usize
  }

  pub fn edge_count(&self) -> usize {
    self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
  }

  pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
    (0..self.n).flat_map(move |a| Face::from_bits(self.rows[a] >> a >> 1 << a << 1).iter().map(move |b| (a, b)))
  }

  /// The complement graph (missing edges of a flag complex live here).
  pub fn complement(&self) -> Graph {
    let all = Face::range(self.n).bits();
    let rows = (0..self.n).map(|v| all & !self.rows[v] & !(1 << v)).collect();
    Graph { n: self.n, rows }
  }

  pub fn is_clique(&self, f: Face) -> bool {
    f.iter().all(|v| f.without(v).is_subset(self.neighbors(v)))
  }

  /// Subgraph induced on `vertices`, relabeled in increasing order.
  pub fn induced(&self, vertices: Face) -> Graph {
    let old: Vec<VertexId> = vertices.iter().collect();
    let rows = old.iter().map(|&v| old.iter().enumerate().filter(|&(_, &w)| self.has_edge(v, w)).fold(0u64, |acc, (i, _)| acc | 1 << i)).collect();
    Graph { n: old.len(), rows }
  }

  /// Connected components, each as a vertex set, ordered by smallest vertex.
  pub fn components(&self) -> Vec<Face> {
    self.components_within(Face::range(self.n))
  }

  /// Components of the subgraph induced on `within`.
  pub fn components_within(&self, within: Face) -> Vec<Face> {
    let mut left = within;
    let mut out = Vec::new();
    while let Some(start) = left.min_vertex() {
      let mut comp = Face::singleton(start);
      let mut frontier = comp;
      while !frontier.is_empty() {
        let mut next = Face::EMPTY;
        for v in frontier.iter() {
          next = next.union(self.neighbors(v));
        }
        next = next.intersection(within).difference(comp);
        comp = comp.union(next);
        frontier = next;
      }
      left = left.difference(comp);
      out.push(comp);
    }
    out
  }

  pub fn is_connected(&self) -> bool {
    self.n == 0 || self.components().len() == 1
  }

  /// All maximal cliques (Bron–Kerbosch with pivoting), sorted.
  pub fn maximal_cliques(&self) -> Vec<Face> {
    let mut out = Vec::new();
    self.bron_kerbosch(0, Face::range(self.n).bits(), 0, &mut out);
    out.sort();
    out
  }

  fn bron_kerbosch(&self, r: u64, mut p: u64, mut x: u64, out: &mut Vec<Face>) {
    if p == 0 {
      if x == 0 {
        out.push(Face::from_bits(r));
      }
      return;
    }
    let px = p | x;
    let pivot = Face::from_bits(px).iter().max_by_key(|&u| (self.rows[u] & p).count_ones()).unwrap();
    for v in Face::from_bits(p & !self.rows[pivot]).iter() {
      let nv = self.rows[v];
      self.bron_kerbosch(r | 1 << v, p & nv, x & nv, out);
      p &= !(1 << v);
      x |= 1 << v;
    }
  }

  pub fn clique_number(&self) -> usize {
    self.maximal_cliques().iter().map(|c| c.len()).max().unwrap_or(0)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn cliques_of_octahedron_graph() {
    // K_{2,2,2}: pairs (0,1), (2,3), (4,5) are the non-edges
    let mut g = Graph::complete(6);
    for i in 0..3 {
      g.rows[2 * i] &= !(1 << (2 * i + 1));
      g.rows[2 * i + 1] &= !(1 << (2 * i));
    }
    assert_eq!(g.edge_count(), 12);
    let cl = g.maximal_cliques();
    assert_eq!(cl.len(), 8);
    assert!(cl.iter().all(|c| c.len() == 3));
  }

  #[test]
  fn components_and_complement() {
    let g = Graph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
    assert_eq!(g.components().len(), 3);
    assert_eq!(g.complement().edge_count(), 10 - 2);
    assert!(g.complement().is_connected());
  }

  #[test]
  fn rejects_loops_and_bad_vertices() {
    assert!(Graph::from_edges(3, [(1, 1)]).is_err());
    assert!(matches!(Graph::from_edges(3, [(0, 3)]), Err(Error::InvalidVertex { .. })));
  }
}
