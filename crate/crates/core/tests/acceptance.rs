//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use flagsphere::enumerate::{census, enumerate_flag_spheres, naive_flag_spheres, CensusEntry, EnumerationTask, DEFAULT_CAP};
use flagsphere::homology::is_homology_sphere;
use flagsphere::iso::is_isomorphic;
use flagsphere::structure::{construct_family, desuspend_core, desuspend_core_with, find_equators, FamilyKind};
use flagsphere::vectors::{complex_gamma, forbidden_gamma_check};
use flagsphere::verify::{constructed_corpus, corpus_from_census, run_suite, CorpusItem, Suite};
use flagsphere::{Field, IntPolynomial, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn poly(c: &[i64]) -> IntPolynomial {
  IntPolynomial::from_ints(c)
}

/// Naive product of integer coefficient lists.
fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
  let mut out = vec![0; a.len() + b.len() - 1];
  for (i, x) in a.iter().enumerate() {
    for (j, y) in b.iter().enumerate() {
      out[i + j] += x * y;
    }
  }
  out
}

/// γ from scratch: faces counted by subset scan, `Σ h_k x^k = Σ f_i x^i (1-x)^(d-i)`,
/// then γ read off against `x^i (1+x)^(d-2i)` from the bottom up.
fn oracle_gamma(c: &SimplicialComplex) -> Vec<i64> {
  let n = c.n();
  let d = c.d();
  let mut f = vec![0i64; d + 1];
  for bits in 0u64..1 << n {
    let face = flagsphere::Face::from_bits(bits);
    if c.contains(face) {
      f[face.len()] += 1;
    }
  }
  let mut h = vec![0i64; d + 1];
  for (i, &fi) in f.iter().enumerate() {
    let mut term = vec![0i64; i];
    term.push(fi);
    for _ in 0..d - i {
      term = mul(&term, &[1, -1]);
    }
    for (k, t) in term.iter().enumerate() {
      h[k] += t;
    }
  }
  let mut gamma = Vec::new();
  for i in 0..=d / 2 {
    let g = h[i];
    let mut basis = vec![0i64; i];
    basis.push(1);
    for _ in 0..d - 2 * i {
      basis = mul(&basis, &[1, 1]);
    }
    for (k, b) in basis.iter().enumerate() {
      h[k] -= g * b;
    }
    gamma.push(g);
  }
  assert!(h.iter().all(|&x| x == 0), "h is not palindromic");
  while gamma.last() == Some(&0) {
    gamma.pop();
  }
  gamma
}

fn named(expr: &str) -> SimplicialComplex {
  flagsphere::expr::eval_expr(expr).unwrap()
}

fn criterion_1() -> Outcome {
  let start = Instant::now();
  let mut cases: Vec<(String, SimplicialComplex, Vec<i64>)> = vec![
    ("C5".into(), named("C5"), vec![1, 1]),
    ("C6".into(), named("C6"), vec![1, 2]),
    ("C5 * C5".into(), named("C5 * C5"), mul(&[1, 1], &[1, 1])),
    ("C5 * C5 * C5".into(), named("C5 * C5 * C5"), mul(&mul(&[1, 1], &[1, 1]), &[1, 1])),
    ("C5 * C6".into(), named("C5 * C6"), mul(&[1, 1], &[1, 2])),
  ];
  for d in 1..=6 {
    cases.push((format!("oct({d})"), named(&format!("oct({d})")), vec![1]));
  }
  for (name, c, want) in &cases {
    let got = complex_gamma(c).map_err(|e| format!("{name}: {e}"))?;
    if got != poly(want) || oracle_gamma(c) != *want {
      return Err(format!("{name}: gamma {got:?}, oracle {:?}, expected {want:?}", oracle_gamma(c)));
    }
  }
  let elapsed = start.elapsed();
  if elapsed > Duration::from_secs(1) {
    return Err(format!("took {elapsed:?}"));
  }
  Ok(format!("{} instances", cases.len()))
}

struct Corpus {
  census: Vec<CensusEntry>,
  items: Vec<CorpusItem>,
  constructed: usize,
}

fn build_corpus() -> Corpus {
  let census = census(9, None, Field::GF2, DEFAULT_CAP).expect("census");
  let mut items = corpus_from_census(&census).expect("census corpus");
  let extra = constructed_corpus(14).expect("constructed corpus");
  let constructed = extra.len();
  items.extend(extra);
  Corpus { census, items, constructed }
}

fn suite(s: Suite, items: &[CorpusItem]) -> Outcome {
  let r = run_suite(s, items);
  if r.ok() {
    Ok(format!("{}: {} checked, {} applicable", s, r.checked, r.passed))
  } else {
    let f = &r.failures[0];
    Err(format!("{}: {} failures, first {} ({})", s, r.failures.len(), f.label, f.message))
  }
}

fn criterion_2(c: &Corpus) -> Outcome {
  let start = Instant::now();
  let certified = c.items.iter().all(|i| is_homology_sphere(&i.complex, Field::GF2));
  if !certified {
    return Err("corpus item fails certification".into());
  }
  let r = suite(Suite::DehnSommerville, &c.items)?;
  let elapsed = start.elapsed();
  if elapsed > Duration::from_secs(600) {
    return Err(format!("took {elapsed:?}"));
  }
  Ok(format!("{r}; {} census + {} constructed", c.census.len(), c.constructed))
}

fn criterion_5(c: &Corpus) -> Outcome {
  let r = suite(Suite::SubTopGamma, &c.items)?;
  for (kind, m, ell) in [
    (FamilyKind::Upsilon1, 0, 2),
    (FamilyKind::Upsilon1, 1, 3),
    (FamilyKind::Upsilon1, 2, 2),
    (FamilyKind::Upsilon2, 1, 2),
    (FamilyKind::Upsilon2, 2, 2),
    (FamilyKind::Upsilon2, 1, 3),
  ] {
    let s = construct_family(kind, m, ell).map_err(|e| e.to_string())?;
    let g = complex_gamma(&s).map_err(|e| e.to_string())?;
    let ok = s.is_flag() && is_homology_sphere(&s, Field::GF2) && g.coeff(ell - 1) == 2 && g.coeff(ell) == 0;
    if !ok {
      return Err(format!("{kind:?}({m},{ell}) has gamma {g:?}"));
    }
  }
  Ok(r)
}

fn criterion_7() -> Outcome {
  let start = Instant::now();
  let mut total = 0;
  for (m, k) in [(1, 1), (0, 2), (2, 1), (1, 2)] {
    let z = construct_family(FamilyKind::OctahedralJoinC5Power, m, k).unwrap();
    let mut shapes = Vec::new();
    if m >= 1 {
      shapes.push(construct_family(FamilyKind::OctahedralJoinC5Power, m - 1, k).unwrap());
    }
    shapes.push(construct_family(FamilyKind::OctahedralJoinC5Power, m + 1, k - 1).unwrap());
    let equators = find_equators(&z);
    if equators.is_empty() {
      return Err(format!("no equators found for ({m},{k})"));
    }
    for s in &equators {
      let sub = z.induced_subcomplex(*s).unwrap().complex;
      if !shapes.iter().any(|x| is_isomorphic(x, &sub)) {
        return Err(format!("({m},{k}): equator {s} has an unexpected type"));
      }
      if !(0..z.n()).any(|v| z.graph().neighbors(v) == *s) {
        return Err(format!("({m},{k}): equator {s} is not a vertex link"));
      }
    }
    total += equators.len();
  }
  let elapsed = start.elapsed();
  if elapsed > Duration::from_secs(300) {
    return Err(format!("took {elapsed:?}"));
  }
  Ok(format!("{total} equators over 4 instances in {elapsed:.2?}"))
}

fn criterion_8(c: &Corpus) -> Outcome {
  for k in 3..=5 {
    let mut p = vec![0i64; k + 1];
    for (i, slot) in p.iter_mut().enumerate() {
      *slot = (1..=i as i64).fold(1, |acc, j| acc * (k as i64 - j + 1) / j);
    }
    p[1] += 1;
    let verdict = forbidden_gamma_check(&poly(&p)).map_err(|e| e.to_string())?;
    if !verdict.is_forbidden() {
      return Err(format!("(1+t)^{k} + t not flagged: {verdict:?}"));
    }
  }
  suite(Suite::ForbiddenGamma, &c.items)
}

fn criterion_9(c: &Corpus) -> Outcome {
  let r = suite(Suite::HighDimSuspension, &c.items)?;
  let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
  let mut instances = 0;
  for item in c.items.iter().filter(|i| !flagsphere::structure::suspension_pairs(&i.complex).is_empty()) {
    let reference = desuspend_core(&item.complex);
    if complex_gamma(&reference.core.complex).ok().as_ref() != Some(&item.entry.gamma) {
      return Err(format!("{}: gamma changes under desuspension", item.label));
    }
    for _ in 0..100 {
      let mut order_rng = ChaCha8Rng::seed_from_u64(rand::Rng::gen(&mut rng));
      let other = desuspend_core_with(&item.complex, |pairs| {
        let idx: Vec<usize> = (0..pairs.len()).collect();
        *idx.choose(&mut order_rng).unwrap()
      });
      if other.m() != reference.m() || !is_isomorphic(&other.core.complex, &reference.core.complex) {
        return Err(format!("{}: desuspension depends on order", item.label));
      }
    }
    instances += 1;
  }
  Ok(format!("{r}; 100 random orders on {instances} suspensions"))
}

fn criterion_10() -> Outcome {
  for n in 0..=7 {
    let naive: BTreeSet<Vec<u8>> = naive_flag_spheres(n, None, Field::GF2).map_err(|e| e.to_string())?.into_iter().collect();
    let orderly: BTreeSet<Vec<u8>> =
      enumerate_flag_spheres(&EnumerationTask::new(n)).map_err(|e| e.to_string())?.iter().map(|e| hex::decode(&e.canonical_form).unwrap()).collect();
    if naive != orderly {
      return Err(format!("n = {n}: naive {} vs orderly {}", naive.len(), orderly.len()));
    }
  }
  let frozen = [(5, 1), (6, 2), (7, 2)];
  for (n, want) in frozen {
    let got = enumerate_flag_spheres(&EnumerationTask::new(n)).map_err(|e| e.to_string())?.len();
    if got != want {
      return Err(format!("n = {n}: {got} spheres, expected {want}"));
    }
  }
  for n in [6, 7] {
    let two = enumerate_flag_spheres(&EnumerationTask::new(n).dim(Some(2))).map_err(|e| e.to_string())?;
    if two.len() != 1 {
      return Err(format!("n = {n}: {} flag 2-spheres", two.len()));
    }
  }
  Ok("orderly = naive for n <= 7; counts 1, 2, 2 at n = 5, 6, 7".into())
}

fn main() {
  let mut failed = 0;
  let mut report = |id: usize, title: &str, run: &dyn Fn() -> Outcome| {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    match outcome {
      Ok(detail) => println!("criterion {id:>2} PASS  {title} [{detail}] ({elapsed:.2?})"),
      Err(detail) => {
        failed += 1;
        println!("criterion {id:>2} FAIL  {title} [{detail}] ({elapsed:.2?})");
      }
    }
  };
  report(1, "exact gamma of named instances", &criterion_1);
  let start = Instant::now();
  let corpus = build_corpus();
  println!("corpus: {} census entries (n <= 9), {} constructed (n <= 14), built in {:.2?}", corpus.census.len(), corpus.constructed, start.elapsed());
  report(2, "h from gamma equals h from f; Dehn-Sommerville", &|| criterion_2(&corpus));
  report(3, "gamma_2 <= C(ell,2) with equality exactly on susp^m C5^ell", &|| suite(Suite::Gamma2Bound, &corpus.items));
  report(4, "gamma_j = 0 above ell; gamma_ell in {0,1}, 1 exactly on susp^m C5^ell", &|| suite(Suite::TopGamma, &corpus.items));
  report(5, "gamma_(ell-1) in {0,1,2,ell}; Upsilon characterization", &|| criterion_5(&corpus));
  report(6, "contraction recursion and contracted spheres", &|| suite(Suite::ContractionRecursion, &corpus.items));
  report(7, "equators of susp^m C5^k", &criterion_7);
  report(8, "forbidden gamma family", &|| criterion_8(&corpus));
  report(9, "high-dimensional spheres are suspensions; desuspension", &|| criterion_9(&corpus));
  report(10, "orderly generation equals naive sweep", &criterion_10);
  if failed > 0 {
    println!("{failed} criteria failed");
    std::process::exit(1);
  }
  println!("all 10 criteria passed");
}
