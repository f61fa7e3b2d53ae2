//! Isomorphism testing and canonical forms for complexes.
//!
//! Flag complexes are determined by their 1-skeleton, so they are labeled
//! through the graph. Other complexes go through the vertex–facet incidence
//! graph with vertices and facets in separate colour classes.

use crate::canon::{canonical_labeling, Canonical, ColoredGraph};
use crate::complex::SimplicialComplex;
use crate::face::Face;
use crate::graph::Graph;
use crate::{Error, Result};

const FLAG_TAG: u8 = b'F';
const GENERAL_TAG: u8 = b'G';

pub(crate) fn graph_canonical(g: &Graph) -> Canonical {
  canonical_labeling(&ColoredGraph::from_rows(g.rows()))
}

/// Canonical byte string of a graph on at most 64 vertices.
pub fn graph_canonical_form(g: &Graph) -> Vec<u8> {
  encode_graph(g.n(), &graph_canonical(g))
}

fn encode_graph(n: usize, c: &Canonical) -> Vec<u8> {
  let bytes = n.div_ceil(8);
  let mut out = Vec::with_capacity(2 + n * bytes);
  out.push(FLAG_TAG);
  out.push(n as u8);
  // certificate: n colours, then n one-word rows
  for row in &c.certificate[n..] {
    out.extend_from_slice(&row.to_le_bytes()[..bytes]);
  }
  out
}

fn incidence_graph(c: &SimplicialComplex) -> ColoredGraph {
  let n = c.n();
  let facets = c.facets();
  let mut colors = vec![0u32; n];
  colors.extend(std::iter::repeat_n(1, facets.len()));
  let mut g = ColoredGraph::new(n + facets.len(), colors);
  for (i, f) in facets.iter().enumerate() {
    for v in f.iter() {
      g.add_edge(v, n + i);
    }
  }
  g
}

/// Canonical form: equal exactly for isomorphic complexes.
pub fn canonical_form(c: &SimplicialComplex) -> Vec<u8> {
  if c.is_flag() {
    return encode_graph(c.n(), &graph_canonical(c.graph()));
  }
  let g = incidence_graph(c);
  let canon = canonical_labeling(&g);
  let mut out = vec![GENERAL_TAG, c.n() as u8];
  out.extend_from_slice(&(c.facets().len() as u32).to_le_bytes());
  for w in &canon.certificate[g.n()..] {
    out.extend_from_slice(&w.to_le_bytes());
  }
  out
}

/// Relabels `c` into canonical vertex order.
pub fn canonical_relabel(c: &SimplicialComplex) -> SimplicialComplex {
  let position = if c.is_flag() { graph_canonical(c.graph()).position } else { canonical_labeling(&incidence_graph(c)).position };
  let facets: Vec<Face> = c.facets().iter().map(|f| f.iter().map(|v| position[v]).collect()).collect();
  SimplicialComplex::from_facets(c.n(), facets).expect("relabeling stays in range")
}

/// Rebuilds a flag complex from its canonical form (in canonical labels).
pub fn flag_complex_from_canonical_form(bytes: &[u8]) -> Result<SimplicialComplex> {
  let bad = |m: &str| Error::Format(format!("canonical form: {m}"));
  let (&tag, rest) = bytes.split_first().ok_or_else(|| bad("empty"))?;
  if tag != FLAG_TAG {
    return Err(bad("not a flag complex form"));
  }
  let (&n, rows) = rest.split_first().ok_or_else(|| bad("missing vertex count"))?;
  let n = n as usize;
  let width = n.div_ceil(8);
  if n > 64 || rows.len() != n * width {
    return Err(bad("length does not match vertex count"));
  }
  let rows: Vec<u64> = rows
    .chunks(width.max(1))
    .take(n)
    .map(|chunk| {
      let mut word = [0u8; 8];
      word[..chunk.len()].copy_from_slice(chunk);
      u64::from_le_bytes(word)
    })
    .collect();
  for (v, &row) in rows.iter().enumerate() {
    let nb = Face::from_bits(row);
    if nb.contains(v) || nb.iter().any(|w| w >= n || rows[w] >> v & 1 == 0) {
      return Err(bad("adjacency is not a simple graph"));
    }
  }
  Ok(SimplicialComplex::clique_complex(&Graph::from_rows(rows)))
}

pub fn is_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
  if a.n() != b.n() || a.facets().len() != b.facets().len() || a.f_vector() != b.f_vector() {
    return false;
  }
  canonical_form(a) == canonical_form(b)
}
