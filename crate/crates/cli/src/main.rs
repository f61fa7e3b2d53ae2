mod input;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use flagsphere::enumerate::{enumerate_flag_spheres, merge_shards, read_ndjson, write_ndjson, CensusEntry, EnumerationTask, Shard, DEFAULT_CAP};
use flagsphere::homology::{betti_numbers, is_homology_sphere};
use flagsphere::io::format_facets;
use flagsphere::iso::{canonical_form, canonical_relabel};
use flagsphere::structure::{find_equators, hemisphere_vertex_sets, recognize_family, FamilyDescriptor, EQUATOR_SEARCH_LIMIT};
use flagsphere::vectors::{complex_gamma, GammaReport};
use flagsphere::verify::{run_suite, Suite, SuiteReport};
use flagsphere::{Face, Field, IntPolynomial, SimplicialComplex};
use input::{resolve, Input};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "flagsphere", version, about = "Flag homology spheres: construction, certification, gamma-vectors, enumeration")]
struct Cli {
  /// Coefficient field for homology.
  #[arg(long, global = true, default_value = "gf2", value_parser = parse_field)]
  field: Field,
  #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
  format: Format,
  #[command(subcommand)]
  cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
  Json,
  Text,
}

fn parse_field(s: &str) -> Result<Field, String> {
  s.parse().map_err(|e: flagsphere::Error| e.to_string())
}

fn parse_shard(s: &str) -> Result<Shard, String> {
  s.parse().map_err(|e: flagsphere::Error| e.to_string())
}

#[derive(Args)]
struct InputArgs {
  /// Construction expression, or path to a facet file.
  input: Option<String>,
  #[arg(long, conflicts_with = "input")]
  expr: Option<String>,
  #[arg(long, conflicts_with_all = ["input", "expr"])]
  file: Option<PathBuf>,
}

impl InputArgs {
  fn load(&self) -> Result<Input> {
    resolve(self.input.as_deref(), self.expr.as_deref(), self.file.as_deref())
  }
}

#[derive(Subcommand)]
enum Command {
  /// f-, h- and gamma-vectors.
  Gamma(InputArgs),
  /// Flagness, homology-sphere certification and gamma-vector.
  Check(InputArgs),
  /// Equators with their two hemisphere vertex sets.
  Equators(InputArgs),
  /// Enumerate flag homology spheres as NDJSON census entries.
  Enumerate(EnumerateArgs),
  /// Merge shard outputs into one sorted census.
  Merge {
    files: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
  },
  /// Run structural checks on a corpus.
  Verify(VerifyArgs),
  /// Apply one operation and print the resulting complex.
  Transform {
    #[command(flatten)]
    input: InputArgs,
    #[command(subcommand)]
    op: Op,
  },
}

#[derive(Args)]
struct EnumerateArgs {
  /// Every size from 0 up to this bound.
  #[arg(long, conflicts_with = "n", required_unless_present = "n")]
  max_n: Option<usize>,
  /// Exactly this many vertices.
  #[arg(long)]
  n: Option<usize>,
  /// Keep only spheres of this dimension.
  #[arg(long)]
  dim: Option<usize>,
  #[arg(long, value_parser = parse_shard, default_value = "0/1")]
  shards: Shard,
  #[arg(long, default_value_t = DEFAULT_CAP)]
  cap: usize,
  /// Output file; per-size parts and `.done` markers next to it make reruns resume.
  #[arg(long)]
  out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
  /// Suite id, or `all`.
  #[arg(long, default_value = "all")]
  suite: String,
  /// `census:n<=9`, `constructed:n<=14`, `expr:<text>`, `file:<path>`, or a bare expression or path.
  #[arg(long, default_value = "census:n<=9")]
  source: Vec<String>,
  /// Where to write counterexamples on failure.
  #[arg(long)]
  out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Op {
  /// Subdivide edge {u, v}; the new vertex is last.
  Subdivide { u: usize, v: usize },
  /// Contract edge {u, v} onto the smaller vertex.
  Contract { u: usize, v: usize },
  /// Link of a face.
  Link { face: Vec<usize> },
  /// Split vertex v along an equator of its link; the new vertex is last.
  Split { v: usize, set: Vec<usize> },
  /// Suspend `times` times.
  Suspend {
    #[arg(default_value_t = 1)]
    times: usize,
  },
  /// Relabel into canonical order.
  Canonical,
}

enum Outcome {
  Pass,
  Fail,
}

fn main() -> ExitCode {
  let cli = Cli::parse();
  match run(cli) {
    Ok(Outcome::Pass) => ExitCode::SUCCESS,
    Ok(Outcome::Fail) => ExitCode::from(1),
    Err(e) => {
      eprintln!("error: {e:#}");
      ExitCode::from(2)
    }
  }
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
  let mut s = serde_json::to_string_pretty(value)?;
  s.push('\n');
  emit_text(&s)
}

/// Writes to stdout; a closed pipe downstream is not an error.
fn emit_text(s: &str) -> Result<()> {
  match io::stdout().lock().write_all(s.as_bytes()) {
    Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
    _ => Ok(()),
  }
}

fn coeffs(p: &IntPolynomial) -> String {
  let c: Vec<String> = p.coeffs().iter().map(i64::to_string).collect();
  format!("[{}]", c.join(", "))
}

fn run(cli: Cli) -> Result<Outcome> {
  let field = cli.field;
  let text = cli.format == Format::Text;
  match cli.cmd {
    Command::Gamma(args) => {
      let report = GammaReport::of(&args.load()?.complex)?;
      if text {
        let mut t = String::new();
        writeln!(t, "d: {}\nf: {}\nh: {}\ngamma: {}\nmissing edges: {}", report.d, coeffs(&report.f), coeffs(&report.h), coeffs(&report.gamma), report.alpha)?;
        emit_text(&t)?;
      } else {
        emit(&report)?;
      }
    }
    Command::Check(args) => {
      let report = check(&args.load()?.complex, field)?;
      if text {
        let mut t = String::new();
        writeln!(t, "flag: {}\nhomology sphere ({field}): {}", report.flag, report.homology_sphere)?;
        match &report.gamma {
          Some(g) => writeln!(t, "gamma: {}", coeffs(g))?,
          None => writeln!(t, "gamma: undefined")?,
        }
        if let Some(f) = &report.family {
          writeln!(t, "family: {:?} m={} ell={}", f.kind, f.m, f.ell)?;
        }
        emit_text(&t)?;
      } else {
        emit(&report)?;
      }
    }
    Command::Equators(args) => {
      let input = args.load()?;
      if input.complex.n() > EQUATOR_SEARCH_LIMIT {
        bail!("equator search is limited to {EQUATOR_SEARCH_LIMIT} vertices, got {}", input.complex.n());
      }
      let mut rows = Vec::new();
      for eq in find_equators(&input.complex) {
        let (plus, minus) = hemisphere_vertex_sets(&input.complex, eq)?;
        rows.push(EquatorRow { equator: input.user_face(eq), plus: input.user_face(plus), minus: input.user_face(minus) });
      }
      if text {
        let mut t = String::new();
        for r in &rows {
          writeln!(t, "{:?} | {:?} | {:?}", r.equator, r.plus, r.minus)?;
        }
        emit_text(&t)?;
      } else {
        emit(&rows)?;
      }
    }
    Command::Enumerate(args) => enumerate(args, field, text)?,
    Command::Merge { files, out } => {
      let mut parts = Vec::new();
      for f in &files {
        let file = fs::File::open(f).with_context(|| format!("opening {}", f.display()))?;
        parts.push(read_ndjson(BufReader::new(file)).with_context(|| format!("reading {}", f.display()))?);
      }
      write_census(&merge_shards(parts), out.as_deref())?;
    }
    Command::Verify(args) => return verify(args, field, text),
    Command::Transform { input, op } => {
      let input = input.load()?;
      let c = &input.complex;
      let one = |v: usize| -> Result<usize> { Ok(input.dense(&[v as u64])?[0]) };
      let set = |vs: Vec<usize>| -> Result<Face> { Ok(input.dense(&vs.into_iter().map(|v| v as u64).collect::<Vec<_>>())?.into_iter().collect()) };
      let result = match op {
        Op::Subdivide { u, v } => c.edge_subdivision(Face::edge(one(u)?, one(v)?))?,
        Op::Contract { u, v } => c.contract_edge(Face::edge(one(u)?, one(v)?))?,
        Op::Link { face } => c.link(set(face)?)?.into_complex(),
        Op::Split { v, set: j } => c.vertex_split(one(v)?, set(j)?)?,
        Op::Suspend { times } => c.suspend_k(times)?,
        Op::Canonical => canonical_relabel(c),
      };
      if text {
        emit_text(&format_facets(&result))?;
      } else {
        emit(&Described::of(&result, field))?;
      }
    }
  }
  Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct CheckReport {
  flag: bool,
  homology_sphere: bool,
  gamma: Option<IntPolynomial>,
  n: usize,
  dim: isize,
  betti: Vec<usize>,
  field: Field,
  family: Option<FamilyDescriptor>,
}

fn check(c: &SimplicialComplex, field: Field) -> Result<CheckReport> {
  let flag = c.is_flag();
  let homology_sphere = is_homology_sphere(c, field);
  let gamma = if homology_sphere { Some(complex_gamma(c)?) } else { None };
  let family = (flag && homology_sphere).then(|| recognize_family(c));
  let betti = betti_numbers(c, field).reduced_betti;
  Ok(CheckReport { flag, homology_sphere, gamma, n: c.n(), dim: c.dim(), betti, field, family })
}

#[derive(Serialize)]
struct EquatorRow {
  equator: Vec<u64>,
  plus: Vec<u64>,
  minus: Vec<u64>,
}

#[derive(Serialize)]
struct Described {
  n: usize,
  dim: isize,
  facets: Vec<Face>,
  flag: bool,
  homology_sphere: bool,
  canonical_form: String,
}

impl Described {
  fn of(c: &SimplicialComplex, field: Field) -> Self {
    let mut facets: Vec<Face> = c.facets().iter().copied().filter(|f| !f.is_empty()).collect();
    facets.sort_by_key(|f| f.to_vec());
    Described {
      n: c.n(),
      dim: c.dim(),
      facets,
      flag: c.is_flag(),
      homology_sphere: is_homology_sphere(c, field),
      canonical_form: hex::encode(canonical_form(c)),
    }
  }
}

fn write_census(entries: &[CensusEntry], out: Option<&Path>) -> Result<()> {
  match out {
    Some(p) => {
      let mut buf = Vec::new();
      write_ndjson(entries, &mut buf)?;
      write_atomic(p, &buf)
    }
    None => Ok(write_ndjson(entries, io::stdout().lock())?),
  }
}

fn write_atomic(p: &Path, bytes: &[u8]) -> Result<()> {
  if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
  }
  let mut tmp = p.as_os_str().to_owned();
  tmp.push(".tmp");
  fs::write(&tmp, bytes).with_context(|| format!("writing {}", p.display()))?;
  fs::rename(&tmp, p).with_context(|| format!("writing {}", p.display()))?;
  Ok(())
}

fn sibling(p: &Path, suffix: &str) -> PathBuf {
  let mut s = p.as_os_str().to_owned();
  s.push(suffix);
  PathBuf::from(s)
}

#[derive(Serialize)]
struct EnumerateSummary {
  out: String,
  shard: String,
  field: Field,
  dim: Option<usize>,
  counts: Vec<(usize, usize)>,
  resumed: Vec<usize>,
}

fn enumerate(args: EnumerateArgs, field: Field, text: bool) -> Result<()> {
  let sizes: Vec<usize> = match (args.n, args.max_n) {
    (Some(n), _) => vec![n],
    (None, Some(m)) => (0..=m).collect(),
    (None, None) => bail!("pass --n or --max-n"),
  };
  let task = |n| EnumerationTask::new(n).dim(args.dim).field(field).shard(args.shards).cap(args.cap);
  let Some(out) = args.out else {
    let mut all = Vec::new();
    for &n in &sizes {
      all.extend(enumerate_flag_spheres(&task(n))?);
    }
    return write_census(&all, None);
  };
  // Parts are tagged with everything that changes their content, so a
  // marker from a run with other settings is never reused.
  let tag = format!("{field}-dim{}-shard{}of{}", args.dim.map_or("all".into(), |d| d.to_string()), args.shards.index, args.shards.count);
  let mut all = Vec::new();
  let mut counts = Vec::new();
  let mut resumed = Vec::new();
  for &n in &sizes {
    let part = sibling(&out, &format!(".n{n}-{tag}.part"));
    let done = sibling(&part, ".done");
    let entries = if done.is_file() && part.is_file() {
      resumed.push(n);
      read_ndjson(BufReader::new(fs::File::open(&part)?)).with_context(|| format!("reading {}", part.display()))?
    } else {
      let entries = enumerate_flag_spheres(&task(n))?;
      write_census(&entries, Some(&part))?;
      fs::write(&done, b"")?;
      entries
    };
    counts.push((n, entries.len()));
    all.extend(entries);
  }
  write_census(&all, Some(&out))?;
  for &n in &sizes {
    let part = sibling(&out, &format!(".n{n}-{tag}.part"));
    let _ = fs::remove_file(sibling(&part, ".done"));
    let _ = fs::remove_file(&part);
  }
  let summary = EnumerateSummary { out: out.display().to_string(), shard: args.shards.to_string(), field, dim: args.dim, counts, resumed };
  if text {
    let mut t = String::new();
    for (n, k) in &summary.counts {
      writeln!(t, "n={n}: {k}")?;
    }
    writeln!(t, "wrote {}", summary.out)?;
    emit_text(&t)
  } else {
    emit(&summary)
  }
}

#[derive(Serialize)]
struct VerifyOutput {
  ok: bool,
  sources: Vec<String>,
  field: Field,
  reports: Vec<SuiteReport>,
  counterexample: Option<String>,
}

fn verify(args: VerifyArgs, field: Field, text: bool) -> Result<Outcome> {
  let suites: Vec<Suite> = if args.suite == "all" {
    Suite::all().collect()
  } else {
    args.suite.split(',').map(|s| s.trim().parse::<Suite>().map_err(anyhow::Error::from)).collect::<Result<_>>()?
  };
  let mut corpus = Vec::new();
  for s in &args.source {
    corpus.extend(input::corpus(s, field)?);
  }
  let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &corpus)).collect();
  let ok = reports.iter().all(SuiteReport::ok);
  let mut counterexample = None;
  if !ok {
    let path = args.out.unwrap_or_else(|| {
      let name = format!("counterexample-{}.json", suites.iter().map(|s| s.id()).collect::<Vec<_>>().join("+"));
      input::cache_dir().unwrap_or_default().join(name)
    });
    let failing: Vec<&SuiteReport> = reports.iter().filter(|r| !r.ok()).collect();
    let mut bytes = serde_json::to_vec_pretty(&failing)?;
    bytes.push(b'\n');
    write_atomic(&path, &bytes)?;
    counterexample = Some(path.display().to_string());
  }
  let output = VerifyOutput { ok, sources: args.source, field, reports, counterexample };
  if text {
    let mut t = String::new();
    for r in &output.reports {
      let verdict = if r.report_only {
        "REPORT"
      } else if r.ok() {
        "PASS"
      } else {
        "FAIL"
      };
      writeln!(t, "{:<18} {verdict:<6} checked={} passed={} skipped={} failures={}", r.suite, r.checked, r.passed, r.skipped, r.failures.len())?;
    }
    if let Some(p) = &output.counterexample {
      writeln!(t, "counterexamples written to {p}")?;
    }
    emit_text(&t)?;
  } else {
    emit(&output)?;
  }
  Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}
