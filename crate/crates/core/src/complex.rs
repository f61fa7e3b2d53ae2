//! Immutable simplicial complexes given by their facets.
//!
//! A complex on `n` vertices stores its inclusion-maximal faces; a face is a
//! member iff it is contained in some facet. Every index in `[0, n)` is a
//! vertex. Operations that produce a complex on a subset of the vertices
//! return a [`Relabeled`] carrying the dense re-indexing.
//!
//! Labeling conventions used by the constructors and transformations:
//!
//! - `join(a, b)`: `a` keeps its labels, `b` is shifted by `a.n()`.
//! - `suspension(c)`: the two new vertices are `n` and `n + 1`.
//! - `cycle(k)`: vertex `i` is adjacent to `i ± 1 mod k`.
//! - `octahedral(d)`: antipodal pairs are `(2i, 2i + 1)`.
//! - `simplex(k)`: the full `k`-simplex on vertices `0..=k`.
//! - `contract_edge(c, {a, b})` with `a < b`: `b` is identified with `a`,
//!   labels above `b` shift down by one.
//! - `edge_subdivision(c, {a, b})`: the new vertex is `n`.
//! - `vertex_split(c, v, J)`: `v⁺` keeps label `v`, `v⁻` is `n`; `v⁺` is
//!   coned over the hemisphere containing the smallest link vertex outside `J`.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::face::{Face, VertexId, MAX_VERTICES};
use crate::graph::Graph;
use crate::{Error, Result};

pub struct SimplicialComplex {
  n: usize,
  facets: Vec<Face>,
  faces: OnceLock<Vec<Vec<Face>>>,
  skeleton: OnceLock<Graph>,
}

/// A complex produced on a subset of another complex's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
  pub complex: SimplicialComplex,
  /// `old_labels[i]` is the original label of new vertex `i`; increasing.
  pub old_labels: Vec<VertexId>,
}

impl Relabeled {
  pub fn new_label(&self, old: VertexId) -> Option<VertexId> {
    self.old_labels.binary_search(&old).ok()
  }

  pub fn to_old(&self, f: Face) -> Face {
    f.iter().map(|v| self.old_labels[v]).collect()
  }

  /// Translates a face in original labels; `None` if it leaves the vertex set.
  pub fn to_new(&self, f: Face) -> Option<Face> {
    f.iter().map(|v| self.new_label(v)).collect::<Option<Vec<_>>>().map(|v| v.into_iter().collect())
  }

  pub fn old_vertex_set(&self) -> Face {
    self.old_labels.iter().collect()
  }

  pub fn into_complex(self) -> SimplicialComplex {
    self.complex
  }
}

/// Inclusion-maximal elements of `faces`, sorted lexicographically.
pub(crate) fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
  faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
  faces.dedup();
  let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
  for f in faces {
    if !kept.iter().any(|&g| f.is_subset(g)) {
      kept.push(f);
    }
  }
  kept.sort();
  kept
}

impl SimplicialComplex {
  fn raw(n: usize, facets: Vec<Face>) -> Self {
    SimplicialComplex { n, facets, faces: OnceLock::new(), skeleton: OnceLock::new() }
  }

  /// Builds a complex from (possibly dominated) faces. Vertices of `[0, n)`
  /// covered by no face become singleton facets.
  pub fn from_facets(n: usize, facets: impl IntoIterator<Item = Face>) -> Result<Self> {
    if n > MAX_VERTICES {
      return Err(Error::InvalidParameter(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
    }
    let all = Face::range(n);
    let mut list: Vec<Face> = Vec::new();
    let mut covered = Face::EMPTY;
    for f in facets {
      if !f.is_subset(all) {
        let vertex = f.difference(all).min_vertex().unwrap();
        return Err(Error::InvalidVertex { vertex, n });
      }
      covered = covered.union(f);
      list.push(f);
    }
    list.extend(all.difference(covered).iter().map(Face::singleton));
    if list.is_empty() {
      list.push(Face::EMPTY);
    }
    Ok(Self::raw(n, maximal_faces(list)))
  }

  /// Convenience constructor from vertex lists.
  pub fn from_vertex_lists<I, F>(n: usize, facets: I) -> Result<Self>
  where
    I: IntoIterator<Item = F>,
    F: AsRef<[VertexId]>,
  {
    let mut faces = Vec::new();
    for f in facets {
      let f = f.as_ref();
      if let Some(&v) = f.iter().find(|&&v| v >= n.min(MAX_VERTICES)) {
        return Err(Error::InvalidVertex { vertex: v, n });
      }
      faces.push(f.iter().collect::<Face>());
    }
    Self::from_facets(n, faces)
  }

  /// Builds the complex generated by `faces` and relabels it densely onto
  /// the vertices those faces cover.
  pub(crate) fn generated(faces: Vec<Face>) -> Relabeled {
    let support = faces.iter().fold(Face::EMPTY, |a, &f| a.union(f));
    let old_labels: Vec<VertexId> = support.iter().collect();
    let mut index = [usize::MAX; MAX_VERTICES];
    for (i, &v) in old_labels.iter().enumerate() {
      index[v] = i;
    }
    let relabeled: Vec<Face> = faces.into_iter().map(|f| f.iter().map(|v| index[v]).collect()).collect();
    let n = old_labels.len();
    let facets = if relabeled.is_empty() { vec![Face::EMPTY] } else { maximal_faces(relabeled) };
    Relabeled { complex: Self::raw(n, facets), old_labels }
  }

  /// The empty complex `{∅}`: the (−1)-sphere.
  pub fn empty() -> Self {
    Self::raw(0, vec![Face::EMPTY])
  }

  pub fn point() -> Self {
    Self::simplex(0)
  }

  /// `S⁰`: two isolated vertices.
  pub fn sphere0() -> Self {
    Self::raw(2, vec![Face::singleton(0), Face::singleton(1)])
  }

  /// The full `k`-dimensional simplex on vertices `0..=k`.
  pub fn simplex(k: usize) -> Self {
    assert!(k < MAX_VERTICES);
    Self::raw(k + 1, vec![Face::range(k + 1)])
  }

  /// The `k`-cycle `C_k`.
  pub fn cycle(k: usize) -> Result<Self> {
    if !(3..=MAX_VERTICES).contains(&k) {
      return Err(Error::InvalidParameter(format!("cycle length {k} must be in 3..={MAX_VERTICES}")));
    }
    Self::from_facets(k, (0..k).map(|i| Face::edge(i, (i + 1) % k)))
  }

  /// Boundary of the `d`-dimensional cross-polytope: the `d`-fold suspension
  /// of the empty complex, antipodal pairs `(2i, 2i + 1)`.
  pub fn octahedral(d: usize) -> Result<Self> {
    if 2 * d > MAX_VERTICES || d > 20 {
      return Err(Error::InvalidParameter(format!("octahedral dimension {d} too large")));
    }
    let facets = (0u64..1 << d).map(|choice| (0..d).map(|i| 2 * i + (choice >> i & 1) as usize).collect::<Face>()).collect();
    Ok(Self::raw(2 * d, maximal_faces(facets)))
  }

  /// The clique complex of `g`.
  pub fn clique_complex(g: &Graph) -> Self {
    let facets = if g.n() == 0 { vec![Face::EMPTY] } else { g.maximal_cliques() };
    let c = Self::raw(g.n(), facets);
    let _ = c.skeleton.set(g.clone());
    c
  }

  pub fn n(&self) -> usize {
    self.n
  }

  pub fn vertex_set(&self) -> Face {
    Face::range(self.n)
  }

  pub fn facets(&self) -> &[Face] {
    &self.facets
  }

  /// Dimension of the largest facet; −1 for the empty complex.
  pub fn dim(&self) -> isize {
    self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
  }

  /// `dim + 1`, the size of a largest facet.
  pub fn d(&self) -> usize {
    (self.dim() + 1) as usize
  }

  pub fn is_pure(&self) -> bool {
    let d = self.d();
    self.facets.iter().all(|f| f.len() == d)
  }

  pub fn contains(&self, f: Face) -> bool {
    self.facets.iter().any(|&g| f.is_subset(g))
  }

  pub fn is_edge(&self, e: Face) -> bool {
    e.len() == 2 && self.contains(e)
  }

  fn face_lists(&self) -> &Vec<Vec<Face>> {
    self.faces.get_or_init(|| {
      let mut seen: HashSet<Face> = HashSet::new();
      for &f in &self.facets {
        seen.extend(f.subsets());
      }
      let mut by_card = vec![Vec::new(); self.d() + 1];
      for f in seen {
        by_card[f.len()].push(f);
      }
      by_card.iter_mut().for_each(|l| l.sort());
      by_card
    })
  }

  /// Faces with exactly `k` vertices, sorted lexicographically.
  pub fn faces_of_card(&self, k: usize) -> &[Face] {
    self.face_lists().get(k).map_or(&[], |v| v.as_slice())
  }

  /// All faces, including the empty face, by increasing cardinality.
  pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
    self.face_lists().iter().flatten().copied()
  }

  pub fn face_count(&self) -> usize {
    self.face_lists().iter().map(Vec::len).sum()
  }

  /// `(f_0, …, f_d)` with `f_0 = 1` counting the empty face.
  pub fn f_vector(&self) -> Vec<u64> {
    self.face_lists().iter().map(|l| l.len() as u64).collect()
  }

  /// The 1-skeleton as a graph.
  pub fn graph(&self) -> &Graph {
    self.skeleton.get_or_init(|| {
      let mut g = Graph::empty(self.n);
      for &f in &self.facets {
        for a in f.iter() {
          for b in f.iter().filter(|&b| b > a) {
            g.add_edge(a, b);
          }
        }
      }
      g
    })
  }

  pub fn edges(&self) -> Vec<Face> {
    self.graph().edges().map(|(a, b)| Face::edge(a, b)).collect()
  }

  /// Minimal non-faces of cardinality at least 2, sorted.
  pub fn missing_faces(&self) -> Vec<Face> {
    let all = self.vertex_set();
    let mut out = Vec::new();
    for f in self.faces() {
      let above = match f.max_vertex() {
        Some(m) => Face::from_bits(all.bits() >> m >> 1 << m << 1),
        None => continue,
      };
      for v in above.iter() {
        let m = f.with(v);
        if !self.contains(m) && m.iter().all(|u| self.contains(m.without(u))) {
          out.push(m);
        }
      }
    }
    out.sort();
    out
  }

  /// Missing edges, i.e. non-adjacent vertex pairs.
  pub fn missing_edges(&self) -> Vec<Face> {
    self.graph().complement().edges().map(|(a, b)| Face::edge(a, b)).collect()
  }

  /// True iff every missing face is an edge, i.e. the complex equals the
  /// clique complex of its 1-skeleton.
  pub fn is_flag(&self) -> bool {
    self.graph().maximal_cliques() == self.facets || self.n == 0
  }

  fn check_face(&self, f: Face) -> Result<()> {
    if self.contains(f) && f.is_subset(self.vertex_set()) {
      Ok(())
    } else {
      Err(Error::NotAFace(f))
    }
  }

  fn check_edge(&self, e: Face) -> Result<(VertexId, VertexId)> {
    if !self.is_edge(e) {
      return Err(Error::NotAnEdge(e));
    }
    let mut it = e.iter();
    Ok((it.next().unwrap(), it.next().unwrap()))
  }

  /// `lk(f) = {g ∈ Δ : g ∩ f = ∅, g ∪ f ∈ Δ}`.
  pub fn link(&self, f: Face) -> Result<Relabeled> {
    self.check_face(f)?;
    Ok(Self::generated(self.facets.iter().filter(|g| f.is_subset(**g)).map(|g| g.difference(f)).collect()))
  }

  /// Link in original labels, without relabeling; `f` must be a face.
  pub(crate) fn link_faces(&self, f: Face) -> Vec<Face> {
    maximal_faces(self.facets.iter().filter(|g| f.is_subset(**g)).map(|g| g.difference(f)).collect())
  }

  /// `st(f) = {g ∈ Δ : g ∪ f ∈ Δ}`.
  pub fn star(&self, f: Face) -> Result<Relabeled> {
    self.check_face(f)?;
    Ok(Self::generated(self.facets.iter().filter(|g| f.is_subset(**g)).copied().collect()))
  }

  /// `del(f) = {g ∈ Δ : f ⊄ g}`; proper subsets of `f` survive.
  pub fn delete_face(&self, f: Face) -> Result<Relabeled> {
    if f.is_empty() {
      return Err(Error::InvalidParameter("deleting the empty face removes every face".into()));
    }
    let mut gens = Vec::new();
    for &g in &self.facets {
      if f.is_subset(g) {
        gens.extend(f.iter().map(|v| g.without(v)));
      } else {
        gens.push(g);
      }
    }
    Ok(Self::generated(gens))
  }

  /// Faces supported on `vertices` (relabeled densely).
  pub fn induced_subcomplex(&self, vertices: Face) -> Result<Relabeled> {
    if let Some(v) = vertices.difference(self.vertex_set()).min_vertex() {
      return Err(Error::InvalidVertex { vertex: v, n: self.n });
    }
    let mut r = Self::generated(self.facets.iter().map(|g| g.intersection(vertices)).collect());
    if vertices.is_empty() {
      r.complex = Self::empty();
    }
    Ok(r)
  }

  /// Removes every face touching `vertices`.
  pub fn delete_subcomplex(&self, vertices: Face) -> Result<Relabeled> {
    if let Some(v) = vertices.difference(self.vertex_set()).min_vertex() {
      return Err(Error::InvalidVertex { vertex: v, n: self.n });
    }
    self.induced_subcomplex(self.vertex_set().difference(vertices))
  }

  /// Faces of cardinality at most `k + 1`.
  pub fn k_skeleton(&self, k: usize) -> SimplicialComplex {
    if k as isize >= self.dim() {
      return self.clone();
    }
    let mut gens: Vec<Face> = self.facets.iter().filter(|f| f.len() <= k + 1).copied().collect();
    gens.extend(self.faces_of_card(k + 1).iter().copied());
    Self::raw(self.n, maximal_faces(gens))
  }

  /// `a ⋆ b = {f ⊔ g}`, with `b` shifted above `a`.
  pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
    let n = self.n + other.n;
    if n > MAX_VERTICES {
      return Err(Error::InvalidParameter(format!("join on {n} vertices exceeds {MAX_VERTICES}")));
    }
    let shift = self.n;
    let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
    for &a in &self.facets {
      for &b in &other.facets {
        facets.push(a.union(Face::from_bits(b.bits() << shift)));
      }
    }
    facets.sort();
    Ok(Self::raw(n, facets))
  }

  pub fn suspension(&self) -> Result<SimplicialComplex> {
    self.join(&Self::sphere0())
  }

  pub fn suspend_k(&self, k: usize) -> Result<SimplicialComplex> {
    (0..k).try_fold(self.clone(), |c, _| c.suspension())
  }

  /// Whether the edge `e = {a, b}` lies on an induced 4-cycle `a, b, s, t`.
  pub fn edge_in_induced_4cycle(&self, e: Face) -> Result<bool> {
    let (a, b) = self.check_edge(e)?;
    let g = self.graph();
    let na = g.neighbors(a).with(a);
    let nb = g.neighbors(b).with(b);
    let s_side = g.neighbors(b).difference(na);
    let t_side = g.neighbors(a).difference(nb);
    Ok(s_side.iter().any(|s| !g.neighbors(s).intersection(t_side).is_empty()))
  }

  /// Image under the map identifying the endpoints of `e`.
  pub fn contract_edge(&self, e: Face) -> Result<SimplicialComplex> {
    let (a, b) = self.check_edge(e)?;
    let relabel = |v: VertexId| {
      if v == b {
        a
      } else if v > b {
        v - 1
      } else {
        v
      }
    };
    let facets = self.facets.iter().map(|f| f.iter().map(relabel).collect()).collect();
    Ok(Self::raw(self.n - 1, maximal_faces(facets)))
  }

  /// Stellar subdivision of the edge `e`; the new vertex is `n`.
  pub fn edge_subdivision(&self, e: Face) -> Result<SimplicialComplex> {
    let (a, b) = self.check_edge(e)?;
    if self.n + 1 > MAX_VERTICES {
      return Err(Error::InvalidParameter("subdivision exceeds the vertex limit".into()));
    }
    let w = self.n;
    let mut facets = Vec::new();
    for &f in &self.facets {
      if e.is_subset(f) {
        facets.push(f.without(a).with(w));
        facets.push(f.without(b).with(w));
      } else {
        facets.push(f);
      }
    }
    Ok(Self::raw(self.n + 1, maximal_faces(facets)))
  }

  /// Vertex split of `v` along the equator `equator` (vertex set in this
  /// complex's labels) of its link. The equator is certified first.
  pub fn vertex_split(&self, v: VertexId, equator: Face) -> Result<SimplicialComplex> {
    if v >= self.n {
      return Err(Error::InvalidVertex { vertex: v, n: self.n });
    }
    if self.n + 1 > MAX_VERTICES {
      return Err(Error::InvalidParameter("split exceeds the vertex limit".into()));
    }
    let link = self.link(Face::singleton(v))?;
    let j = link.to_new(equator).ok_or_else(|| Error::JNotEquator(format!("{equator} is not inside the link of {v}")))?;
    if !crate::structure::is_equator(&link.complex, j) {
      return Err(Error::JNotEquator(format!("{equator} does not induce a codimension-1 sphere in lk({v})")));
    }
    let (plus, minus) = crate::structure::hemisphere_vertex_sets(&link.complex, j).map_err(|e| Error::JNotEquator(e.to_string()))?;
    let lk = &link.complex;
    let vp = v;
    let vm = self.n;
    let mut gens: Vec<Face> = self.facets.iter().filter(|f| !f.contains(v)).copied().collect();
    let cone = |vertices: Face, apex: Face, gens: &mut Vec<Face>| {
      for f in lk.facets() {
        gens.push(link.to_old(f.intersection(vertices)).union(apex));
      }
    };
    cone(j, Face::edge(vp, vm), &mut gens);
    cone(plus, Face::singleton(vp), &mut gens);
    cone(minus, Face::singleton(vm), &mut gens);
    Ok(Self::raw(self.n + 1, maximal_faces(gens)))
  }

  /// Facet-list text: `#n=<count>` then one facet per line, sorted.
  pub fn to_text(&self) -> String {
    let mut s = format!("#n={}\n", self.n);
    for f in &self.facets {
      let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
      s.push_str(&line.join(" "));
      s.push('\n');
    }
    s
  }
}

impl Clone for SimplicialComplex {
  fn clone(&self) -> Self {
    let c = Self::raw(self.n, self.facets.clone());
    if let Some(g) = self.skeleton.get() {
      let _ = c.skeleton.set(g.clone());
    }
    c
  }
}

impl PartialEq for SimplicialComplex {
  fn eq(&self, other: &Self) -> bool {
    self.n == other.n && self.facets == other.facets
  }
}

impl Eq for SimplicialComplex {}

impl std::hash::Hash for SimplicialComplex {
  fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
    self.n.hash(state);
    self.facets.hash(state);
  }
}

impl fmt::Debug for SimplicialComplex {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "SimplicialComplex(n={}, facets=[", self.n)?;
    for (i, g) in self.facets.iter().enumerate() {
      if i > 0 {
        write!(f, " ")?;
      }
      write!(f, "{g}")?;
    }
    write!(f, "])")
  }
}
