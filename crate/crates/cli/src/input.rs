//! Resolving command inputs: expressions, facet files and census sources.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use flagsphere::enumerate::{census, read_ndjson, write_ndjson, CensusEntry, DEFAULT_CAP};
use flagsphere::expr::eval_expr;
use flagsphere::homology::is_homology_sphere;
use flagsphere::io::parse_facets;
use flagsphere::verify::{constructed_corpus, corpus_from_census, CorpusItem};
use flagsphere::{Face, Field, SimplicialComplex};

/// A complex plus the label each dense vertex carries in the user's input.
pub struct Input {
  pub complex: SimplicialComplex,
  pub labels: Option<Vec<u64>>,
}

impl Input {
  /// Face in the user's labels, as a sorted list.
  pub fn user_face(&self, f: Face) -> Vec<u64> {
    match &self.labels {
      Some(l) => f.iter().map(|v| l[v]).collect(),
      None => f.iter().map(|v| v as u64).collect(),
    }
  }

  /// Translates user labels back to dense vertices.
  pub fn dense(&self, labels: &[u64]) -> Result<Vec<usize>> {
    labels
      .iter()
      .map(|&l| match &self.labels {
        Some(ls) => ls.iter().position(|&x| x == l).with_context(|| format!("vertex {l} does not occur in the input")),
        None => Ok(l as usize),
      })
      .collect()
  }
}

/// `--expr` wins, then `--file`; a bare argument is a file if one exists at
/// that path and an expression otherwise.
pub fn resolve(positional: Option<&str>, expr: Option<&str>, file: Option<&Path>) -> Result<Input> {
  match (positional, expr, file) {
    (None, Some(e), None) => from_expr(e),
    (None, None, Some(p)) => load_file(p),
    (Some(s), None, None) if Path::new(s).is_file() => load_file(Path::new(s)),
    (Some(s), None, None) => from_expr(s),
    (None, None, None) => bail!("no input: pass an expression, a facet file, --expr or --file"),
    _ => bail!("give exactly one input"),
  }
}

fn from_expr(e: &str) -> Result<Input> {
  Ok(Input { complex: eval_expr(e).with_context(|| format!("expression `{e}`"))?, labels: None })
}

fn load_file(p: &Path) -> Result<Input> {
  let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
  let loaded = parse_facets(&text).with_context(|| format!("parsing {}", p.display()))?;
  let labels = (!loaded.is_identity()).then_some(loaded.labels);
  Ok(Input { complex: loaded.complex, labels })
}

pub fn cache_dir() -> Option<PathBuf> {
  std::env::var_os("FLAGSPHERE_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Census up to `max_n`, read from or written to the cache when one is set.
pub fn cached_census(max_n: usize, field: Field) -> Result<Vec<CensusEntry>> {
  let path = cache_dir().map(|d| d.join(format!("census-n{max_n}-{field}.ndjson")));
  if let Some(p) = path.as_ref().filter(|p| p.is_file()) {
    let file = fs::File::open(p).with_context(|| format!("opening {}", p.display()))?;
    return read_ndjson(BufReader::new(file)).with_context(|| format!("reading cached census {}", p.display()));
  }
  let entries = census(max_n, None, field, DEFAULT_CAP.max(max_n))?;
  if let Some(p) = path {
    if let Some(dir) = p.parent() {
      fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut buf = Vec::new();
    write_ndjson(&entries, &mut buf)?;
    let tmp = p.with_extension("ndjson.tmp");
    fs::write(&tmp, buf).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, &p)?;
  }
  Ok(entries)
}

/// Parses `census:n<=9`, `constructed:n<=14`, `expr:<text>`, `file:<path>`,
/// or a bare expression or path.
pub fn corpus(source: &str, field: Field) -> Result<Vec<CorpusItem>> {
  let bound = |rest: &str| -> Result<usize> {
    let t = rest.trim();
    let t = t.strip_prefix("n<=").or_else(|| t.strip_prefix("n=")).unwrap_or(t);
    t.trim().parse().with_context(|| format!("source `{source}`: expected a vertex bound such as n<=9"))
  };
  if let Some(rest) = source.strip_prefix("census:") {
    return Ok(corpus_from_census(&cached_census(bound(rest)?, field)?)?);
  }
  if let Some(rest) = source.strip_prefix("constructed:") {
    return Ok(constructed_corpus(bound(rest)?)?);
  }
  let input = if let Some(e) = source.strip_prefix("expr:") {
    from_expr(e)?
  } else if let Some(p) = source.strip_prefix("file:") {
    load_file(Path::new(p))?
  } else {
    resolve(Some(source), None, None)?
  };
  if !(input.complex.is_flag() && is_homology_sphere(&input.complex, field)) {
    bail!("source `{source}` is not a flag homology sphere over {field}");
  }
  Ok(vec![CorpusItem::new(source, input.complex)?])
}
