//! Property suites run over a corpus of certified flag homology spheres.
//!
//! Each suite checks one structural statement on every corpus item and
//! collects counterexamples. The `gamma-nonneg` suite only reports.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::enumerate::CensusEntry;
use crate::face::Face;
use crate::homology::{is_homology_sphere, Field};
use crate::iso::is_isomorphic;
use crate::poly::binomial;
use crate::structure::{
  antipode_profile, antipodes, construct_family, desuspend_core, desuspend_core_with, disjoint_facets, ell, find_equators, is_suspension,
  polar_size_bounds_check, suspension_pairs, FamilyKind,
};
use crate::vectors::{complex_gamma, complex_h, forbidden_gamma_check, gamma_closed_forms, h_from_gamma, is_dehn_sommerville, missing_edge_identity};
use crate::{Error, IntPolynomial, Result};

/// A certified flag homology sphere together with its census data.
#[derive(Clone, Debug)]
pub struct CorpusItem {
  pub label: String,
  pub complex: SimplicialComplex,
  pub entry: CensusEntry,
}

impl CorpusItem {
  pub fn new(label: impl Into<String>, complex: SimplicialComplex) -> Result<Self> {
    let entry = CensusEntry::of(&complex)?;
    Ok(CorpusItem { label: label.into(), complex, entry })
  }

  fn gamma(&self) -> &IntPolynomial {
    &self.entry.gamma
  }

  fn ell(&self) -> i64 {
    ell(&self.complex)
  }
}

pub fn corpus_from_census(entries: &[CensusEntry]) -> Result<Vec<CorpusItem>> {
  entries
    .par_iter()
    .map(|e| {
      let complex = e.complex()?;
      Ok(CorpusItem { label: format!("census n={} d={} {}", e.n, e.d, e.canonical_form), complex, entry: e.clone() })
    })
    .collect()
}

/// Named spheres on at most `max_n` vertices: cycles, octahedral spheres,
/// the three extremal families, joins of two cycles and their suspensions.
pub fn constructed_corpus(max_n: usize) -> Result<Vec<CorpusItem>> {
  let mut named: Vec<(String, SimplicialComplex)> = Vec::new();
  for k in 4..=max_n {
    named.push((format!("C{k}"), SimplicialComplex::cycle(k)?));
  }
  for d in 1..=max_n / 2 {
    named.push((format!("oct({d})"), SimplicialComplex::octahedral(d)?));
  }
  for l in 1..=max_n / 5 {
    for m in 0..=(max_n - 5 * l) / 2 {
      named.push((format!("susp^{m}(C5^{l})"), construct_family(FamilyKind::OctahedralJoinC5Power, m, l)?));
    }
  }
  for l in 2..=max_n.div_ceil(5) {
    let base = 5 * (l - 2) + 6;
    for m in 0..=max_n.saturating_sub(base) / 2 {
      if base + 2 * m <= max_n {
        named.push((format!("upsilon1({m},{l})"), construct_family(FamilyKind::Upsilon1, m, l)?));
      }
    }
    for m in 1.. {
      if 5 * (l - 1) + 2 * m + 1 > max_n {
        break;
      }
      named.push((format!("upsilon2({m},{l})"), construct_family(FamilyKind::Upsilon2, m, l)?));
    }
  }
  for a in 4..=max_n {
    for b in a..=max_n.saturating_sub(a) {
      let j = SimplicialComplex::cycle(a)?.join(&SimplicialComplex::cycle(b)?)?;
      named.push((format!("C{a} * C{b}"), j.clone()));
      if a + b + 2 <= max_n {
        named.push((format!("susp(C{a} * C{b})"), j.suspension()?));
      }
    }
    if a + 2 <= max_n && a != 5 {
      named.push((format!("susp(C{a})"), SimplicialComplex::cycle(a)?.suspension()?));
    }
  }
  named.into_par_iter().map(|(label, c)| CorpusItem::new(label, c)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
  /// `γ2 ≤ C(ℓ,2)`, with equality exactly on `Σ^m ⋆^ℓ C5`.
  Gamma2Bound,
  /// `γ_j = 0` above `ℓ`, `γ_ℓ ∈ {0,1}`, and `γ_ℓ = 1` exactly on `Σ^m ⋆^ℓ C5`.
  TopGamma,
  /// Degree bound from the polar size when `π ≥ 3`.
  PolarDegree,
  /// `γ_{ℓ-1} ∈ {0,1,2,ℓ}` and the `Υ1`/`Υ2` characterization.
  SubTopGamma,
  /// Equators of `Σ^m ⋆^k C5` are vertex links of the two expected types.
  PentagonEquators,
  /// No γ-polynomial is of the forbidden `(1+t)^k + t r(t)` shape.
  ForbiddenGamma,
  /// Suspension invariance and the contraction recursion for γ.
  ContractionRecursion,
  /// Antipode numbers, polar size and suspension detection.
  PolarSize,
  /// A vertex with two antipodes sees them as a contractible edge.
  AntipodeEdge,
  /// Disjoint facet pairs, also avoiding a vertex when not a suspension.
  DisjointFacets,
  /// High-dimensional spheres are suspensions; desuspension keeps γ.
  HighDimSuspension,
  DehnSommerville,
  /// `0 ≤ γ_i ≤ C(γ1, i)`; report only.
  GammaNonneg,
}

const IDS: [(Suite, &str); 13] = [
  (Suite::Gamma2Bound, "thm3.8"),
  (Suite::TopGamma, "thm4.2"),
  (Suite::PolarDegree, "cor4.3"),
  (Suite::SubTopGamma, "thm5.2"),
  (Suite::PentagonEquators, "lem5.1"),
  (Suite::ForbiddenGamma, "thm5.3"),
  (Suite::ContractionRecursion, "lem2.4"),
  (Suite::PolarSize, "lem3.2"),
  (Suite::AntipodeEdge, "lem3.5"),
  (Suite::DisjointFacets, "lem3.9"),
  (Suite::HighDimSuspension, "lem4.1"),
  (Suite::DehnSommerville, "dehn-sommerville"),
  (Suite::GammaNonneg, "gamma-nonneg"),
];

impl Suite {
  pub fn all() -> impl Iterator<Item = Suite> {
    IDS.iter().map(|(s, _)| *s)
  }

  pub fn id(self) -> &'static str {
    IDS.iter().find(|(s, _)| *s == self).unwrap().1
  }

  pub fn report_only(self) -> bool {
    self == Suite::GammaNonneg
  }

  fn check(self, item: &CorpusItem) -> Check {
    match self {
      Suite::Gamma2Bound => gamma2_bound(item),
      Suite::TopGamma => top_gamma(item),
      Suite::PolarDegree => polar_degree(item),
      Suite::SubTopGamma => sub_top_gamma(item),
      Suite::PentagonEquators => pentagon_equators(item),
      Suite::ForbiddenGamma => forbidden_gamma(item),
      Suite::ContractionRecursion => contraction_recursion(item),
      Suite::PolarSize => polar_size(item),
      Suite::AntipodeEdge => antipode_edge(item),
      Suite::DisjointFacets => disjoint_facet_pairs(item),
      Suite::HighDimSuspension => high_dim_suspension(item),
      Suite::DehnSommerville => dehn_sommerville(item),
      Suite::GammaNonneg => gamma_nonneg(item),
    }
  }
}

impl fmt::Display for Suite {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(self.id())
  }
}

impl FromStr for Suite {
  type Err = Error;

  fn from_str(s: &str) -> Result<Self> {
    IDS.iter().find(|(_, id)| *id == s).map(|(suite, _)| *suite).ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Check {
  Pass,
  Skip,
  Fail(String),
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Check {
  if cond {
    Check::Pass
  } else {
    Check::Fail(msg())
  }
}

/// Runs checks in order, stopping at the first failure; `Skip` only if all skip.
fn all_of(checks: impl IntoIterator<Item = Check>) -> Check {
  let mut any = false;
  for c in checks {
    match c {
      Check::Fail(_) => return c,
      Check::Pass => any = true,
      Check::Skip => {}
    }
  }
  if any {
    Check::Pass
  } else {
    Check::Skip
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
  pub label: String,
  pub canonical_form: String,
  pub facets: Vec<Face>,
  pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
  pub suite: String,
  pub checked: usize,
  pub passed: usize,
  pub skipped: usize,
  pub report_only: bool,
  pub failures: Vec<Failure>,
}

impl SuiteReport {
  /// True when no assertion failed; report-only suites always pass.
  pub fn ok(&self) -> bool {
    self.report_only || self.failures.is_empty()
  }
}

pub fn run_suite(suite: Suite, corpus: &[CorpusItem]) -> SuiteReport {
  let results: Vec<Check> = corpus.par_iter().map(|item| suite.check(item)).collect();
  let mut report =
    SuiteReport { suite: suite.id().to_string(), checked: corpus.len(), passed: 0, skipped: 0, report_only: suite.report_only(), failures: Vec::new() };
  for (item, result) in corpus.iter().zip(results) {
    match result {
      Check::Pass => report.passed += 1,
      Check::Skip => report.skipped += 1,
      Check::Fail(message) => report.failures.push(Failure {
        label: item.label.clone(),
        canonical_form: item.entry.canonical_form.clone(),
        facets: item.complex.facets().to_vec(),
        message,
      }),
    }
  }
  report
}

pub fn verify_on_census(entries: &[CensusEntry], suite: Suite) -> Result<SuiteReport> {
  Ok(run_suite(suite, &corpus_from_census(entries)?))
}

fn is_octahedral_c5(item: &CorpusItem) -> bool {
  item.entry.family.kind == FamilyKind::OctahedralJoinC5Power
}

fn gamma2_bound(item: &CorpusItem) -> Check {
  let l = item.ell();
  let bound = binomial(l as u64, 2) as i64;
  let g2 = item.gamma().coeff(2);
  all_of([
    require(g2 <= bound, || format!("gamma2 = {g2} exceeds C({l},2) = {bound}")),
    require((g2 == bound) == is_octahedral_c5(item), || format!("gamma2 = {g2}, C({l},2) = {bound}, family {:?}", item.entry.family.kind)),
  ])
}

fn top_gamma(item: &CorpusItem) -> Check {
  if item.entry.d < 2 {
    return Check::Skip;
  }
  let l = item.ell() as usize;
  let g = item.gamma();
  let top = g.coeff(l);
  all_of([
    require(g.len() <= l + 1, || format!("gamma {g:?} has degree above ell = {l}")),
    require(top == 0 || top == 1, || format!("gamma_ell = {top}")),
    require((top == 1) == is_octahedral_c5(item), || format!("gamma_ell = {top}, family {:?}", item.entry.family.kind)),
  ])
}

fn polar_degree(item: &CorpusItem) -> Check {
  let pi = item.entry.polar_size as i64;
  let d = item.entry.d as i64;
  if pi < 3 || d < 3 {
    return Check::Skip;
  }
  let l = item.ell();
  let g = item.gamma();
  let from = (l - pi + 2).max(0) as usize;
  let vanish = (from..g.len()).all(|j| g.coeff(j) == 0);
  let divides = d < 2 * (l - pi + 2) || g.coeffs().last().is_some_and(|&c| c % (pi - 1) == 0);
  all_of([
    require(vanish, || format!("gamma {g:?} nonzero at or above index {from} (pi = {pi})")),
    require(divides, || format!("pi - 1 = {} does not divide the leading coefficient of {g:?}", pi - 1)),
  ])
}

fn sub_top_gamma(item: &CorpusItem) -> Check {
  let l = item.ell();
  if l < 2 {
    return Check::Skip;
  }
  let g = item.gamma();
  let top = g.coeff(l as usize);
  let sub = g.coeff(l as usize - 1);
  let kind = item.entry.family.kind;
  let upsilon = matches!(kind, FamilyKind::Upsilon1 | FamilyKind::Upsilon2);
  let mut checks = vec![require([0, 1, 2, l].contains(&sub), || format!("gamma_(ell-1) = {sub} with ell = {l}"))];
  if top == 0 {
    checks.push(require(sub <= 2, || format!("gamma_ell = 0 but gamma_(ell-1) = {sub}")));
    checks.push(require((sub == 2) == upsilon, || format!("gamma_(ell-1) = {sub}, family {kind:?}")));
  }
  all_of(checks)
}

fn pentagon_equators(item: &CorpusItem) -> Check {
  let fam = &item.entry.family;
  if fam.kind != FamilyKind::OctahedralJoinC5Power || item.complex.n() > 12 || item.complex.n() == 0 {
    return Check::Skip;
  }
  let (m, k) = (fam.m, fam.ell);
  let mut shapes = Vec::new();
  if m >= 1 {
    shapes.push(construct_family(FamilyKind::OctahedralJoinC5Power, m - 1, k).expect("small"));
  }
  if k >= 1 {
    shapes.push(construct_family(FamilyKind::OctahedralJoinC5Power, m + 1, k - 1).expect("small"));
  }
  let c = &item.complex;
  let links: Vec<Face> = (0..c.n()).map(|v| c.graph().neighbors(v)).collect();
  let equators = find_equators(c);
  all_of(equators.iter().map(|&s| {
    let sub = c.induced_subcomplex(s).expect("vertex subset").complex;
    all_of([
      require(shapes.iter().any(|x| is_isomorphic(x, &sub)), || format!("equator {s} has unexpected type")),
      require(links.contains(&s), || format!("equator {s} is not a vertex link")),
    ])
  }))
}

fn forbidden_gamma(item: &CorpusItem) -> Check {
  match forbidden_gamma_check(item.gamma()) {
    Ok(v) => require(!v.is_forbidden(), || format!("gamma {:?} has the forbidden shape", item.gamma())),
    Err(e) => Check::Fail(e.to_string()),
  }
}

fn contraction_recursion(item: &CorpusItem) -> Check {
  let c = &item.complex;
  let g = item.gamma();
  let susp = c.suspension().map_err(|e| e.to_string()).and_then(|s| complex_gamma(&s).map_err(|e| e.to_string()));
  let mut checks = vec![require(susp.as_ref() == Ok(g), || format!("gamma of the suspension is {susp:?}, expected {g:?}"))];
  for e in c.edges() {
    if c.edge_in_induced_4cycle(e).unwrap_or(true) {
      continue;
    }
    let contracted = c.contract_edge(e).expect("edge");
    let link = c.link(e).expect("edge").complex;
    let sphere = contracted.is_flag() && is_homology_sphere(&contracted, Field::GF2);
    checks.push(require(sphere, || format!("contraction of {e} is not a flag homology sphere")));
    let rhs = complex_gamma(&contracted).and_then(|a| complex_gamma(&link).and_then(|b| a.checked_add(&b.shift(1))));
    checks.push(require(rhs.as_ref() == Ok(g), || format!("contraction of {e}: {rhs:?} != {g:?}")));
  }
  all_of(checks)
}

fn polar_size(item: &CorpusItem) -> Check {
  let c = &item.complex;
  if c.n() == 0 {
    return Check::Skip;
  }
  let profile = antipode_profile(c);
  let pi = profile.polar_size;
  let l = item.ell();
  let total: usize = profile.iota.iter().sum();
  let mut checks = vec![
    require(total == 2 * c.missing_edges().len(), || "antipode numbers do not sum to twice the missing edges".into()),
    require(polar_size_bounds_check(c), || format!("polar size {pi} or link gamma_1 out of range (ell = {l})")),
    require(is_suspension(c) == (pi == 1), || format!("suspension detection disagrees with pi = {pi}")),
  ];
  if item.entry.d >= 3 {
    let fam = &item.entry.family;
    let octahedral = fam.kind == FamilyKind::OctahedralJoinC5Power && fam.ell == 0 && fam.m == item.entry.d;
    checks.push(require((pi as i64 == l + 1) == octahedral, || format!("pi = {pi}, ell = {l}, family {fam:?}")));
  }
  all_of(checks)
}

fn antipode_edge(item: &CorpusItem) -> Check {
  let c = &item.complex;
  all_of((0..c.n()).map(|v| {
    let a = antipodes(c, v);
    if a.len() != 2 {
      return Check::Skip;
    }
    if !c.is_edge(a) {
      return Check::Fail(format!("antipodes {a} of {v} do not span an edge"));
    }
    if c.edge_in_induced_4cycle(a).unwrap_or(true) {
      return Check::Fail(format!("antipode edge {a} of {v} lies in an induced 4-cycle"));
    }
    let lhs = complex_gamma(&c.link(Face::singleton(v)).expect("vertex").complex);
    let rhs = complex_gamma(&c.link(a).expect("edge").complex);
    let sum = lhs.and_then(|l| rhs.and_then(|r| l.checked_add(&r.shift(1))));
    require(sum.as_ref() == Ok(item.gamma()), || format!("vertex {v}: gamma(L) + t gamma(J) = {sum:?}"))
  }))
}

fn disjoint_facet_pairs(item: &CorpusItem) -> Check {
  let c = &item.complex;
  if c.d() == 0 {
    return Check::Skip;
  }
  let mut checks: Vec<Check> =
    c.facets().iter().map(|&t| require(c.facets().iter().any(|&u| u.is_disjoint(t)), || format!("facet {t} meets every other facet"))).collect();
  if !is_suspension(c) {
    for s in 0..c.n() {
      let found = disjoint_facets(c, Some(s));
      checks.push(require(matches!(found, Ok(Some(_))), || format!("no disjoint facets avoiding {s}: {found:?}")));
    }
  }
  all_of(checks)
}

fn high_dim_suspension(item: &CorpusItem) -> Check {
  let c = &item.complex;
  let l = item.ell();
  let mut checks = Vec::new();
  if item.entry.d as i64 > 2 * l && c.n() > 0 {
    checks.push(require(is_suspension(c), || format!("d = {} >= 2 ell + 1 = {} but not a suspension", item.entry.d, 2 * l + 1)));
    if let Some(&pair) = suspension_pairs(c).first() {
      let gamma = c.delete_subcomplex(pair).expect("pair").complex;
      let ok = gamma.is_flag() && gamma.dim() == c.dim() - 1 && is_homology_sphere(&gamma, Field::GF2);
      checks.push(require(ok, || format!("removing {pair} does not leave a flag homology sphere")));
    }
  }
  let first = desuspend_core(c);
  let last = desuspend_core_with(c, |pairs| pairs.len() - 1);
  let core_gamma = complex_gamma(&first.core.complex);
  checks.push(require(core_gamma.as_ref() == Ok(item.gamma()), || format!("core gamma {core_gamma:?} differs")));
  checks
    .push(require(first.m() == last.m() && is_isomorphic(&first.core.complex, &last.core.complex), || "desuspension depends on the stripping order".into()));
  all_of(checks)
}

fn dehn_sommerville(item: &CorpusItem) -> Check {
  let c = &item.complex;
  let d = c.d();
  let h = match complex_h(c) {
    Ok(h) => h,
    Err(e) => return Check::Fail(e.to_string()),
  };
  let rebuilt = h_from_gamma(item.gamma(), d);
  let (_, g1, g2) = gamma_closed_forms(c);
  all_of([
    require(is_dehn_sommerville(&h, d), || format!("h = {h:?} is not palindromic")),
    require(rebuilt.as_ref() == Ok(&h), || format!("h from gamma {rebuilt:?} != {h:?}")),
    require(g1 == item.gamma().coeff(1) && g2 == item.gamma().coeff(2), || format!("closed forms ({g1}, {g2}) disagree")),
    require(missing_edge_identity(c), || "missing-edge identity fails".into()),
  ])
}

fn gamma_nonneg(item: &CorpusItem) -> Check {
  let g = item.gamma();
  let g1 = g.coeff(1).max(0) as u64;
  let bad: Vec<usize> = (0..g.len()).filter(|&i| g.coeff(i) < 0 || g.coeff(i) > binomial(g1, i as u64) as i64).collect();
  require(bad.is_empty(), || format!("gamma {g:?} leaves the window at indices {bad:?}"))
}
