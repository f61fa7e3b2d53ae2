use std::collections::BTreeSet;
use std::sync::OnceLock;

use flagsphere::enumerate::{census, enumerate_flag_spheres, enumerate_graphs, merge_shards, CensusEntry, EnumerationTask, Shard};
use flagsphere::homology::{betti_numbers, is_homology_ball, is_homology_sphere};
use flagsphere::iso::{canonical_form, is_isomorphic};
use flagsphere::structure::{antipode_profile, find_equators, hemispheres, is_suspension};
use flagsphere::vectors::complex_gamma;
use flagsphere::{Face, Field, SimplicialComplex};
use proptest::prelude::*;

fn census9() -> &'static [CensusEntry] {
  static CENSUS: OnceLock<Vec<CensusEntry>> = OnceLock::new();
  CENSUS.get_or_init(|| census(9, None, Field::GF2, 12).unwrap())
}

fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
  (1usize..=8).prop_flat_map(|n| {
    prop::collection::vec(1u64..(1 << n), 1..7).prop_map(move |masks| SimplicialComplex::from_facets(n, masks.into_iter().map(Face::from_bits)).unwrap())
  })
}

fn seeds() -> Vec<SimplicialComplex> {
  let c = |k| SimplicialComplex::cycle(k).unwrap();
  vec![
    c(4),
    c(5),
    c(6),
    SimplicialComplex::octahedral(3).unwrap(),
    c(5).suspension().unwrap(),
    c(5).join(&c(5)).unwrap(),
    SimplicialComplex::octahedral(4).unwrap(),
  ]
}

/// Flag spheres grown from small seeds by random edge subdivisions.
fn arb_flag_sphere() -> impl Strategy<Value = SimplicialComplex> {
  (0usize..7, prop::collection::vec(any::<usize>(), 0..3)).prop_map(|(seed, picks)| {
    let mut c = seeds().swap_remove(seed);
    for p in picks {
      let edges = c.edges();
      c = c.edge_subdivision(edges[p % edges.len()]).unwrap();
    }
    c
  })
}

fn reduced_euler(c: &SimplicialComplex) -> i64 {
  c.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) }).sum()
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(64))]

  #[test]
  fn faces_are_downward_closed(c in arb_complex()) {
    for &f in c.facets() {
      for g in f.subsets() {
        prop_assert!(c.contains(g));
      }
    }
    let faces: BTreeSet<Face> = c.faces().collect();
    prop_assert_eq!(faces.len(), c.face_count());
  }

  #[test]
  fn star_is_face_join_link(c in arb_complex(), pick in any::<usize>()) {
    let faces: Vec<Face> = c.faces().collect();
    let f = faces[pick % faces.len()];
    let star = c.star(f).unwrap().complex;
    let cell = if f.is_empty() { SimplicialComplex::empty() } else { SimplicialComplex::simplex(f.len() - 1) };
    let joined = cell.join(&c.link(f).unwrap().complex).unwrap();
    prop_assert!(is_isomorphic(&star, &joined));
  }

  #[test]
  fn join_is_commutative_and_associative(a in arb_complex(), b in arb_complex(), c in arb_complex()) {
    prop_assert!(is_isomorphic(&a.join(&b).unwrap(), &b.join(&a).unwrap()));
    let left = a.join(&b).unwrap().join(&c).unwrap();
    let right = a.join(&b.join(&c).unwrap()).unwrap();
    prop_assert_eq!(left, right);
  }

  #[test]
  fn euler_poincare(c in arb_complex()) {
    for field in [Field::GF2, Field::Rational] {
      let b = betti_numbers(&c, field);
      prop_assert_eq!(b.euler_characteristic(), reduced_euler(&c));
    }
  }

  #[test]
  fn suspension_shifts_homology(c in arb_complex()) {
    let b = betti_numbers(&c, Field::GF2);
    let s = betti_numbers(&c.suspension().unwrap(), Field::GF2);
    for k in -1..=c.dim() {
      prop_assert_eq!(s.betti(k + 1), b.betti(k));
    }
    prop_assert_eq!(s.betti(-1), 0);
  }

  #[test]
  fn clique_complex_recovers_exactly_flag_complexes(c in arb_complex()) {
    let rebuilt = SimplicialComplex::clique_complex(c.graph());
    prop_assert_eq!(rebuilt == c, c.is_flag());
  }

  #[test]
  fn subdivision_then_contraction_is_identity(c in arb_complex()) {
    for e in c.edges() {
      let s = c.edge_subdivision(e).unwrap();
      let a = e.min_vertex().unwrap();
      prop_assert_eq!(s.contract_edge(Face::edge(a, c.n())).unwrap(), c.clone());
    }
  }

  #[test]
  fn antipodes_count_missing_edges(c in arb_complex()) {
    let total: usize = antipode_profile(&c).iota.iter().sum();
    prop_assert_eq!(total, 2 * c.missing_edges().len());
  }

  #[test]
  fn links_of_flag_spheres_are_induced(c in arb_flag_sphere()) {
    prop_assert!(c.is_flag() && is_homology_sphere(&c, Field::GF2));
    for f in c.faces() {
      let link = c.link(f).unwrap();
      prop_assert!(link.complex.is_flag());
      let induced = c.induced_subcomplex(link.old_vertex_set()).unwrap();
      prop_assert_eq!(&induced.complex, &link.complex);
    }
  }

  #[test]
  fn gamma_is_suspension_invariant(c in arb_flag_sphere()) {
    prop_assert_eq!(complex_gamma(&c.suspension().unwrap()).unwrap(), complex_gamma(&c).unwrap());
  }

  #[test]
  fn suspension_iff_polar_size_one(c in arb_flag_sphere()) {
    prop_assert_eq!(is_suspension(&c), antipode_profile(&c).polar_size == 1);
  }

  #[test]
  fn vertex_split_inverts_contraction(c in arb_flag_sphere(), pick in any::<usize>()) {
    let v = pick % c.n();
    let link = c.link(Face::singleton(v)).unwrap();
    for eq in find_equators(&link.complex).into_iter().take(4) {
      let j = link.to_old(eq);
      let split = c.vertex_split(v, j).unwrap();
      prop_assert!(is_homology_sphere(&split, Field::GF2));
      prop_assert_eq!(split.contract_edge(Face::edge(v, c.n())).unwrap(), c.clone());
    }
  }
}

#[test]
fn clique_complexes_of_all_small_graphs_are_flag() {
  for n in 0..=7 {
    for g in enumerate_graphs(n) {
      let c = SimplicialComplex::clique_complex(&g);
      assert!(c.is_flag());
      assert_eq!(&SimplicialComplex::clique_complex(c.graph()), &c);
    }
  }
}

#[test]
fn equators_split_into_two_balls() {
  for entry in census9().iter().filter(|e| e.n >= 4) {
    let c = entry.complex().unwrap();
    for eq in find_equators(&c) {
      let deleted = c.delete_subcomplex(eq).unwrap().complex;
      let b = betti_numbers(&deleted, Field::GF2);
      assert!(b.is_sphere_of_dim(0), "{eq} in {}", entry.canonical_form);
      assert_eq!(deleted.graph().components().len(), 2);
      let (plus, minus) = hemispheres(&c, eq).unwrap();
      for h in [&plus, &minus] {
        let cert = is_homology_ball(&h.complex, Field::GF2).expect("hemisphere is a ball");
        assert_eq!(h.to_old(cert.boundary.old_vertex_set()), eq);
      }
      let union: BTreeSet<Face> =
        plus.complex.facets().iter().map(|&f| plus.to_old(f)).chain(minus.complex.facets().iter().map(|&f| minus.to_old(f))).collect();
      let facets: BTreeSet<Face> = c.facets().iter().copied().collect();
      assert_eq!(union, facets);
    }
  }
}

#[test]
fn fields_agree_on_census() {
  let mut disagreements = 0;
  for e in census9() {
    let c = e.complex().unwrap();
    if is_homology_sphere(&c, Field::GF2) != is_homology_sphere(&c, Field::Rational) {
      disagreements += 1;
      eprintln!("field disagreement on {}", e.canonical_form);
    }
  }
  assert_eq!(disagreements, 0);
}

#[test]
fn shards_merge_to_full_census() {
  let full: Vec<String> = enumerate_flag_spheres(&EnumerationTask::new(8)).unwrap().into_iter().map(|e| e.canonical_form).collect();
  for k in [2, 3, 5] {
    let parts = (0..k).map(|i| enumerate_flag_spheres(&EnumerationTask::new(8).shard(Shard::new(i, k).unwrap())).unwrap());
    let merged: Vec<String> = merge_shards(parts).into_iter().map(|e| e.canonical_form).collect();
    assert_eq!(merged, full, "{k} shards");
  }
}

#[test]
fn census_is_closed_under_suspension() {
  let forms: BTreeSet<&str> = census9().iter().map(|e| e.canonical_form.as_str()).collect();
  for e in census9().iter().filter(|e| e.n <= 7) {
    let s = e.complex().unwrap().suspension().unwrap();
    assert!(forms.contains(hex::encode(canonical_form(&s)).as_str()), "suspension of {} missing", e.canonical_form);
  }
}

#[test]
fn census_entries_are_distinct_certified_spheres() {
  let forms: BTreeSet<&str> = census9().iter().map(|e| e.canonical_form.as_str()).collect();
  assert_eq!(forms.len(), census9().len());
  for e in census9() {
    let c = e.complex().unwrap();
    assert!(c.is_flag() && is_homology_sphere(&c, Field::GF2));
    assert_eq!(CensusEntry::of(&c).unwrap(), *e);
    let ell = e.n as i64 - 2 * e.d as i64;
    if e.d as i64 > 2 * ell && e.n > 0 {
      assert_eq!(e.polar_size, 1);
    }
  }
}

#[test]
fn census_counts_by_size_and_dimension() {
  let mut counts = std::collections::BTreeMap::new();
  for e in census9() {
    *counts.entry((e.n, e.dim())).or_insert(0) += 1;
  }
  let expected = [
    ((0, -1), 1),
    ((2, 0), 1),
    ((4, 1), 1),
    ((5, 1), 1),
    ((6, 1), 1),
    ((6, 2), 1),
    ((7, 1), 1),
    ((7, 2), 1),
    ((8, 1), 1),
    ((8, 2), 2),
    ((8, 3), 1),
    ((9, 1), 1),
    ((9, 2), 4),
    ((9, 3), 1),
  ];
  let expected: std::collections::BTreeMap<_, _> = expected.into_iter().collect();
  assert_eq!(counts, expected);
}

/// Subdividing any suspension-to-pentagon edge gives one isomorphism class
/// per (m, ell); a suspension-to-suspension edge falls back into the
/// pentagon-join family.
#[test]
fn upsilon2_edge_choices() {
  use flagsphere::structure::{construct_family, recognize_family, FamilyKind};
  for (m, ell) in [(1, 2), (2, 2), (1, 3), (3, 2)] {
    let base = construct_family(FamilyKind::OctahedralJoinC5Power, m, ell - 1).unwrap();
    let pentagon = 5 * (ell - 1);
    let mut classes: BTreeSet<Vec<u8>> = BTreeSet::new();
    for s in pentagon..base.n() {
      for x in base.graph().neighbors(s).iter() {
        let sub = base.edge_subdivision(Face::edge(s, x)).unwrap();
        let fam = recognize_family(&sub);
        if x < pentagon {
          assert_eq!((fam.kind, fam.m, fam.ell), (FamilyKind::Upsilon2, m, ell));
          classes.insert(canonical_form(&sub));
        } else {
          assert_eq!((fam.kind, fam.m, fam.ell), (FamilyKind::OctahedralJoinC5Power, m - 2, ell));
        }
      }
    }
    assert_eq!(classes.len(), 1, "({m}, {ell})");
  }
}
