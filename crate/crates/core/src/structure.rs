//! Structural analysis of flag homology spheres: antipodes and polar size,
//! suspension pairs and desuspension, equators and hemispheres, join
//! factorization, and the extremal families `Σ^m ⋆^ℓ C5`, `Υ1` and `Υ2`.
//!
//! Unless stated otherwise, functions here assume a flag complex and use the
//! 1-skeleton freely: faces of a flag complex are the cliques of its graph,
//! links are induced, and connectivity is graph connectivity.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Relabeled, SimplicialComplex};
use crate::face::{Face, VertexId};
use crate::homology::{is_homology_sphere, Field};
use crate::iso::is_isomorphic;
use crate::vectors::complex_gamma;
use crate::{Error, Result};

/// `γ_1 = n - 2d` of a homology sphere on `n` vertices of dimension `d - 1`.
pub fn ell(c: &SimplicialComplex) -> i64 {
  c.n() as i64 - 2 * c.d() as i64
}

/// Vertices `w` with `{v, w}` a missing edge.
pub fn antipodes(c: &SimplicialComplex, v: VertexId) -> Face {
  c.vertex_set().without(v).difference(c.graph().neighbors(v))
}

/// Antipode numbers `ι(v)` and the polar size `π = min ι`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntipodeProfile {
  pub iota: Vec<usize>,
  pub polar_size: usize,
}

pub fn antipode_profile(c: &SimplicialComplex) -> AntipodeProfile {
  let iota: Vec<usize> = (0..c.n()).map(|v| antipodes(c, v).len()).collect();
  let polar_size = iota.iter().copied().min().unwrap_or(0);
  AntipodeProfile { iota, polar_size }
}

/// For a flag homology sphere on `2d + ℓ` vertices: `1 ≤ π ≤ ℓ + 1`, and the
/// link of every vertex `v` has `γ_1 = ℓ - ι(v) + 1`.
pub fn polar_size_bounds_check(c: &SimplicialComplex) -> bool {
  let l = ell(c);
  let profile = antipode_profile(c);
  let pi = profile.polar_size as i64;
  if !(1..=l + 1).contains(&pi) {
    return false;
  }
  (0..c.n()).all(|v| {
    let link = c.link(Face::singleton(v)).expect("vertices are faces").complex;
    complex_gamma(&link).is_ok_and(|g| g.coeff(1) == l - profile.iota[v] as i64 + 1)
  })
}

/// Pairs `{u, w}` of mutually unique antipodes, sorted.
pub fn suspension_pairs(c: &SimplicialComplex) -> Vec<Face> {
  let mut pairs = Vec::new();
  for u in 0..c.n() {
    let a = antipodes(c, u);
    if a.len() == 1 {
      let w = a.min_vertex().unwrap();
      if w > u && antipodes(c, w) == Face::singleton(u) {
        pairs.push(Face::edge(u, w));
      }
    }
  }
  pairs
}

pub fn is_suspension(c: &SimplicialComplex) -> bool {
  !suspension_pairs(c).is_empty()
}

/// Result of stripping suspension pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Desuspension {
  /// The core with no suspension pair left, on the surviving vertices.
  pub core: Relabeled,
  /// Stripped pairs in the input's labels, in stripping order.
  pub pairs: Vec<Face>,
}

impl Desuspension {
  pub fn m(&self) -> usize {
    self.pairs.len()
  }
}

/// Strips suspension pairs one at a time until none is left.
pub fn desuspend_core(c: &SimplicialComplex) -> Desuspension {
  desuspend_core_with(c, |_| 0)
}

/// As [`desuspend_core`], with `pick` choosing which of the current pairs to
/// strip next (index into the sorted pair list).
pub fn desuspend_core_with(c: &SimplicialComplex, mut pick: impl FnMut(&[Face]) -> usize) -> Desuspension {
  let mut current = Relabeled { complex: c.clone(), old_labels: (0..c.n()).collect() };
  let mut stripped = Vec::new();
  loop {
    let pairs = suspension_pairs(&current.complex);
    if pairs.is_empty() {
      return Desuspension { core: current, pairs: stripped };
    }
    let pair = pairs[pick(&pairs) % pairs.len()];
    stripped.push(current.to_old(pair));
    let next = current.complex.delete_subcomplex(pair).expect("pair vertices exist");
    let old_labels = next.old_labels.iter().map(|&v| current.old_labels[v]).collect();
    current = Relabeled { complex: next.complex, old_labels };
  }
}

/// Whether the subcomplex induced on `vertices` is a homology sphere of
/// dimension `dim c - 1`.
pub fn is_equator(c: &SimplicialComplex, vertices: Face) -> bool {
  let Ok(sub) = c.induced_subcomplex(vertices) else {
    return false;
  };
  sub.complex.dim() == c.dim() - 1 && is_homology_sphere(&sub.complex, Field::GF2)
}

/// Largest vertex count [`find_equators`] searches.
pub const EQUATOR_SEARCH_LIMIT: usize = 24;

/// All equators of a flag homology sphere, as sorted vertex sets.
///
/// Candidates must have at least `2(d - 1)` vertices, induce a pure complex
/// of dimension `d - 2`, and leave a complement with exactly two connected
/// components; survivors are certified. The search is exhaustive over
/// vertex subsets, so complexes above [`EQUATOR_SEARCH_LIMIT`] vertices get
/// an empty list.
pub fn find_equators(c: &SimplicialComplex) -> Vec<Face> {
  let n = c.n();
  let d = c.d();
  if n == 0 || n > EQUATOR_SEARCH_LIMIT {
    return Vec::new();
  }
  let min_size = 2 * d.saturating_sub(1);
  let all = c.vertex_set();
  let g = c.graph();
  let mut found: Vec<Face> = (0u64..1 << n)
    .into_par_iter()
    .map(Face::from_bits)
    .filter(|s| s.len() >= min_size && s.len() + 2 <= n)
    .filter(|&s| g.components_within(all.difference(s)).len() == 2)
    .filter(|&s| {
      let sub = c.induced_subcomplex(s).expect("subset of vertices").complex;
      sub.dim() == d as isize - 2 && sub.is_pure() && is_homology_sphere(&sub, Field::GF2)
    })
    .collect();
  found.sort_by_key(|s| (s.len(), *s));
  found
}

/// Vertex sets `(V⁺, V⁻)` of the two hemispheres along `equator`: each is
/// the complement of one component of the deletion. `V⁺` is the side whose
/// removed component does not contain the smallest non-equator vertex.
pub fn hemisphere_vertex_sets(c: &SimplicialComplex, equator: Face) -> Result<(Face, Face)> {
  let rest = c.vertex_set().difference(equator);
  let comps = c.graph().components_within(rest);
  if comps.len() != 2 {
    return Err(Error::ComponentCountNotTwo(comps.len()));
  }
  let all = c.vertex_set();
  Ok((all.difference(comps[1]), all.difference(comps[0])))
}

/// The two hemispheres `(Δ⁺, Δ⁻)` along an equator, in relabeled form.
pub fn hemispheres(c: &SimplicialComplex, equator: Face) -> Result<(Relabeled, Relabeled)> {
  let (plus, minus) = hemisphere_vertex_sets(c, equator)?;
  Ok((c.induced_subcomplex(plus)?, c.induced_subcomplex(minus)?))
}

/// Maximal join factorization of a flag complex: one factor per connected
/// component of the missing-edge graph, ordered by smallest vertex.
pub fn join_factorization(c: &SimplicialComplex) -> Vec<Relabeled> {
  c.graph().complement().components().into_iter().map(|comp| c.induced_subcomplex(comp).expect("component of the vertex set")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
  OctahedralJoinC5Power,
  Upsilon1,
  Upsilon2,
  Other,
}

/// Re-checkable evidence for a family recognition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
  pub suspension_pairs: Vec<Face>,
  pub pentagons: Vec<Face>,
  pub hexagon: Option<Face>,
  /// Edge of the input whose contraction yields the base `Σ^m ⋆^(ℓ-1) C5`.
  pub contracted_edge: Option<Face>,
  /// Edge of that base (base labels) whose subdivision rebuilds the input.
  pub subdivided_edge: Option<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
  pub kind: FamilyKind,
  pub m: usize,
  pub ell: usize,
  pub witness: Witness,
}

impl FamilyDescriptor {
  fn other() -> Self {
    FamilyDescriptor { kind: FamilyKind::Other, m: 0, ell: 0, witness: Witness::default() }
  }
}

enum Factor {
  S0,
  Cycle(usize),
  Unknown,
}

fn classify_factor(f: &SimplicialComplex) -> Factor {
  if f.n() == 2 && f.facets().len() == 2 && f.dim() == 0 {
    return Factor::S0;
  }
  let g = f.graph();
  if f.dim() == 1 && f.n() >= 4 && (0..f.n()).all(|v| g.degree(v) == 2) && g.is_connected() {
    return Factor::Cycle(f.n());
  }
  Factor::Unknown
}

/// Recognizes `Σ^m ⋆^ℓ C5` and `Υ1` from the join factorization alone.
fn recognize_by_factors(c: &SimplicialComplex) -> Option<FamilyDescriptor> {
  let mut w = Witness::default();
  for factor in join_factorization(c) {
    let verts = factor.old_vertex_set();
    match classify_factor(&factor.complex) {
      Factor::S0 => w.suspension_pairs.push(verts),
      Factor::Cycle(5) => w.pentagons.push(verts),
      Factor::Cycle(6) if w.hexagon.is_none() => w.hexagon = Some(verts),
      _ => return None,
    }
  }
  let m = w.suspension_pairs.len();
  Some(match w.hexagon {
    None => FamilyDescriptor { kind: FamilyKind::OctahedralJoinC5Power, m, ell: w.pentagons.len(), witness: w },
    Some(_) => FamilyDescriptor { kind: FamilyKind::Upsilon1, m, ell: w.pentagons.len() + 2, witness: w },
  })
}

/// Classifies a flag homology sphere into one of the extremal families.
///
/// `Υ2` is found by contracting every edge outside induced 4-cycles and
/// looking for a base `Σ^m ⋆^(ℓ-1) C5` (`m ≥ 1`) in which the input is the
/// subdivision of an edge at a suspension vertex; the witness is verified by
/// rebuilding and an isomorphism test.
pub fn recognize_family(c: &SimplicialComplex) -> FamilyDescriptor {
  if let Some(found) = recognize_by_factors(c) {
    return found;
  }
  let l = ell(c);
  if l < 2 {
    return FamilyDescriptor::other();
  }
  for e in c.edges() {
    if c.edge_in_induced_4cycle(e).unwrap_or(true) {
      continue;
    }
    let base = c.contract_edge(e).expect("edge of c");
    let Some(bd) = recognize_by_factors(&base) else {
      continue;
    };
    if bd.kind != FamilyKind::OctahedralJoinC5Power || bd.m == 0 || bd.ell as i64 != l - 1 {
      continue;
    }
    if let Some(edge) = subdivided_edge(c, e, &base, &bd) {
      return FamilyDescriptor {
        kind: FamilyKind::Upsilon2,
        m: bd.m,
        ell: l as usize,
        witness: Witness { contracted_edge: Some(e), subdivided_edge: Some(edge), ..bd.witness },
      };
    }
  }
  FamilyDescriptor::other()
}

/// Finds the edge `{a, x}` of `base` whose subdivision gives `c`, where `a`
/// is the image of the contracted edge `e`, and `a` or `x` is a suspension
/// vertex of the base.
fn subdivided_edge(c: &SimplicialComplex, e: Face, base: &SimplicialComplex, bd: &FamilyDescriptor) -> Option<Face> {
  let a = e.min_vertex().unwrap();
  let b = e.max_vertex().unwrap();
  let to_base = |v: VertexId| if v > b { v - 1 } else { v };
  let equator: Face = c.link(e).ok()?.old_labels.iter().map(|&v| to_base(v)).collect();
  let suspension_vertices = bd.witness.suspension_pairs.iter().fold(Face::EMPTY, |acc, p| acc.union(*p));
  let g = base.graph();
  for x in g.neighbors(a).iter() {
    let edge = Face::edge(a, x);
    if !suspension_vertices.contains(a) && !suspension_vertices.contains(x) {
      continue;
    }
    let common = g.neighbors(a).intersection(g.neighbors(x));
    if common != equator {
      continue;
    }
    let rebuilt = base.edge_subdivision(edge).ok()?;
    if is_isomorphic(&rebuilt, c) {
      return Some(edge);
    }
  }
  None
}

/// Builds the canonical instance of a family:
///
/// - `Σ^m ⋆^ℓ C5`: pentagons on `5i..5i+4`, then suspension pairs.
/// - `Υ1 = Σ^m ⋆^(ℓ-2) C5 ⋆ C6` (`ℓ ≥ 2`): pentagons, the hexagon, then pairs.
/// - `Υ2` (`m ≥ 1`, `ℓ ≥ 2`): `Σ^m ⋆^(ℓ-1) C5` with the edge from the first
///   suspension vertex to vertex 0 subdivided; the new vertex is last.
pub fn construct_family(kind: FamilyKind, m: usize, ell: usize) -> Result<SimplicialComplex> {
  let facets_estimate = 2f64.powi(m as i32) * 5f64.powi(ell as i32);
  if facets_estimate > 4e6 || 2 * m + 5 * ell + 2 > 64 {
    return Err(Error::InvalidParameter(format!("family instance m={m}, ell={ell} is too large")));
  }
  let pentagons = |k: usize| -> Result<SimplicialComplex> {
    let c5 = SimplicialComplex::cycle(5)?;
    (0..k).try_fold(SimplicialComplex::empty(), |acc, _| acc.join(&c5))
  };
  match kind {
    FamilyKind::OctahedralJoinC5Power => pentagons(ell)?.suspend_k(m),
    FamilyKind::Upsilon1 => {
      if ell < 2 {
        return Err(Error::InvalidParameter("Upsilon1 needs ell >= 2".into()));
      }
      pentagons(ell - 2)?.join(&SimplicialComplex::cycle(6)?)?.suspend_k(m)
    }
    FamilyKind::Upsilon2 => {
      if m < 1 || ell < 2 {
        return Err(Error::InvalidParameter("Upsilon2 needs m >= 1 and ell >= 2".into()));
      }
      let base = pentagons(ell - 1)?.suspend_k(m)?;
      base.edge_subdivision(Face::edge(0, 5 * (ell - 1)))
    }
    FamilyKind::Other => Err(Error::InvalidParameter("no construction for Other".into())),
  }
}

/// Result of splitting off a cycle join factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinCycle {
  /// `Γ` with `c ≅ Γ ⋆ C_{π+3}`, on its vertices in `c`.
  pub factor: Relabeled,
  pub cycle_len: usize,
  /// The minimal-antipode vertex whose link is `ΣΓ`.
  pub apex: VertexId,
}

/// If some vertex of minimal antipode number `π > 1` has a suspension link
/// `ΣΓ`, returns `Γ` and `π + 3` once `c ≅ Γ ⋆ C_{π+3}` is verified.
pub fn extract_join_cycle(c: &SimplicialComplex) -> Option<JoinCycle> {
  let profile = antipode_profile(c);
  let pi = profile.polar_size;
  if pi <= 1 {
    return None;
  }
  for v in (0..c.n()).filter(|&v| profile.iota[v] == pi) {
    let link = c.link(Face::singleton(v)).ok()?;
    let Some(&pair) = suspension_pairs(&link.complex).first() else {
      continue;
    };
    let gamma = link.complex.delete_subcomplex(pair).ok()?;
    let factor = Relabeled { old_labels: gamma.old_labels.iter().map(|&i| link.old_labels[i]).collect(), complex: gamma.complex };
    let cycle = SimplicialComplex::cycle(pi + 3).ok()?;
    if is_isomorphic(&factor.complex.join(&cycle).ok()?, c) {
      return Some(JoinCycle { factor, cycle_len: pi + 3, apex: v });
    }
  }
  None
}

/// Two disjoint facets, neither containing `avoid`. With `avoid` set the
/// complex must not be a suspension.
pub fn disjoint_facets(c: &SimplicialComplex, avoid: Option<VertexId>) -> Result<Option<(Face, Face)>> {
  if let Some(s) = avoid {
    if s >= c.n() {
      return Err(Error::InvalidVertex { vertex: s, n: c.n() });
    }
    if is_suspension(c) {
      return Err(Error::HypothesisViolated("complex is a suspension".into()));
    }
  }
  let usable: Vec<Face> = c.facets().iter().filter(|f| avoid.is_none_or(|s| !f.contains(s))).copied().collect();
  for (i, &a) in usable.iter().enumerate() {
    if let Some(&b) = usable[i + 1..].iter().find(|b| a.is_disjoint(**b)) {
      return Ok(Some((a, b)));
    }
  }
  Ok(None)
}

#[cfg(test)]
mod tests {
  use super::*;

  fn c5() -> SimplicialComplex {
    SimplicialComplex::cycle(5).unwrap()
  }

  fn oct(d: usize) -> SimplicialComplex {
    SimplicialComplex::octahedral(d).unwrap()
  }

  #[test]
  fn antipode_numbers() {
    let p = antipode_profile(&oct(3));
    assert!(p.iota.iter().all(|&i| i == 1));
    assert_eq!(p.polar_size, 1);
    assert_eq!(antipode_profile(&c5()).iota, vec![2; 5]);
    let j = c5().join(&c5()).unwrap();
    let p = antipode_profile(&j);
    assert!(p.iota.iter().all(|&i| i == 2));
    let sum: usize = p.iota.iter().sum();
    assert_eq!(sum, 2 * j.missing_edges().len());
  }

  #[test]
  fn polar_bounds() {
    assert!(polar_size_bounds_check(&c5().suspension().unwrap()));
    assert!(polar_size_bounds_check(&c5().join(&c5()).unwrap()));
    assert!(polar_size_bounds_check(&oct(4)));
  }

  #[test]
  fn suspension_detection() {
    assert_eq!(suspension_pairs(&c5().suspension().unwrap()), vec![Face::edge(5, 6)]);
    assert_eq!(suspension_pairs(&oct(4)).len(), 4);
    assert!(suspension_pairs(&c5().join(&c5()).unwrap()).is_empty());
  }

  #[test]
  fn desuspension() {
    let d = desuspend_core(&c5().suspend_k(2).unwrap());
    assert_eq!(d.m(), 2);
    assert_eq!(d.core.complex, c5());
    let d = desuspend_core(&oct(3));
    assert_eq!(d.m(), 3);
    assert_eq!(d.core.complex, SimplicialComplex::empty());
  }

  #[test]
  fn equators_of_octahedron() {
    let eq = find_equators(&oct(3));
    assert_eq!(eq.len(), 3);
    for s in eq {
      let sub = oct(3).induced_subcomplex(s).unwrap().complex;
      assert_eq!(sub.f_vector(), vec![1, 4, 4]);
    }
  }

  #[test]
  fn hemispheres_of_octahedron() {
    let eq: Face = [2, 3, 4, 5].iter().collect();
    let (plus, minus) = hemispheres(&oct(3), eq).unwrap();
    assert_eq!(plus.complex.facets().len(), 4);
    assert_eq!(minus.complex.facets().len(), 4);
    assert_eq!(plus.old_labels, vec![0, 2, 3, 4, 5]);
    assert!(matches!(hemispheres(&oct(3), Face::singleton(0)), Err(Error::ComponentCountNotTwo(1))));
  }

  #[test]
  fn factorization() {
    let j = c5().join(&c5()).unwrap();
    let f = join_factorization(&j);
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|x| x.complex == c5()));
    assert_eq!(join_factorization(&oct(4)).len(), 4);
    assert_eq!(join_factorization(&SimplicialComplex::cycle(6).unwrap()).len(), 1);
  }

  #[test]
  fn family_round_trips() {
    for (kind, m, l) in [
      (FamilyKind::OctahedralJoinC5Power, 2, 2),
      (FamilyKind::OctahedralJoinC5Power, 0, 3),
      (FamilyKind::Upsilon1, 0, 2),
      (FamilyKind::Upsilon1, 1, 3),
      (FamilyKind::Upsilon2, 1, 2),
      (FamilyKind::Upsilon2, 2, 2),
    ] {
      let c = construct_family(kind, m, l).unwrap();
      let r = recognize_family(&c);
      assert_eq!((r.kind, r.m, r.ell), (kind, m, l), "{c:?}");
    }
    assert!(construct_family(FamilyKind::Upsilon2, 0, 2).is_err());
    assert!(construct_family(FamilyKind::Upsilon1, 0, 1).is_err());
  }

  #[test]
  fn join_cycles() {
    let j = c5().join(&c5()).unwrap();
    let x = extract_join_cycle(&j).unwrap();
    assert_eq!(x.cycle_len, 5);
    assert!(is_isomorphic(&x.factor.complex, &c5()));
    let j = c5().join(&SimplicialComplex::cycle(6).unwrap()).unwrap();
    let x = extract_join_cycle(&j).unwrap();
    assert_eq!(x.cycle_len, 5);
    assert_eq!(x.factor.complex.n(), 6);
    assert!(extract_join_cycle(&oct(3)).is_none());
  }

  #[test]
  fn disjoint_facet_pairs() {
    let (a, b) = disjoint_facets(&c5(), None).unwrap().unwrap();
    assert!(a.is_disjoint(b));
    for v in 0..5 {
      let (a, b) = disjoint_facets(&c5(), Some(v)).unwrap().unwrap();
      assert!(a.is_disjoint(b) && !a.contains(v) && !b.contains(v));
    }
    let (a, b) = disjoint_facets(&oct(3), None).unwrap().unwrap();
    assert_eq!(a.union(b), Face::range(6));
    assert!(matches!(disjoint_facets(&oct(3), Some(0)), Err(Error::HypothesisViolated(_))));
  }
}
