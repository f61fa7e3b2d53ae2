//! Facet-list text files.
//!
//! ```text
//! #n=5
//! 0 1
//! 1 2
//! ```
//!
//! The `#n=` header is optional. Each other non-empty line holds one facet
//! as whitespace-separated vertex labels; other `#` lines are comments.
//! Without a header, labels are densified in increasing order; with one,
//! labels must lie below `n` and unused vertices become isolated points.

use crate::complex::SimplicialComplex;
use crate::face::{Face, MAX_VERTICES};
use crate::{Error, Result};

/// A loaded complex with the original label of each dense vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedComplex {
  pub complex: SimplicialComplex,
  /// `labels[v]` is the file label of vertex `v`.
  pub labels: Vec<u64>,
}

impl LoadedComplex {
  pub fn is_identity(&self) -> bool {
    self.labels.iter().enumerate().all(|(i, &l)| l == i as u64)
  }
}

fn format_err(line: usize, msg: impl std::fmt::Display) -> Error {
  Error::Format(format!("line {line}: {msg}"))
}

pub fn parse_facets(text: &str) -> Result<LoadedComplex> {
  let mut declared: Option<usize> = None;
  let mut facets: Vec<Vec<u64>> = Vec::new();
  for (i, raw) in text.lines().enumerate() {
    let line = raw.trim();
    if let Some(rest) = line.strip_prefix('#') {
      if let Some(count) = rest.trim().strip_prefix("n=") {
        if i != 0 || declared.is_some() {
          return Err(format_err(i + 1, "the #n= header must be the first line"));
        }
        declared = Some(count.trim().parse().map_err(|e| format_err(i + 1, e))?);
      }
      continue;
    }
    if line.is_empty() {
      continue;
    }
    let facet = line.split_whitespace().map(|t| t.parse::<u64>().map_err(|e| format_err(i + 1, format!("`{t}`: {e}"))));
    facets.push(facet.collect::<Result<_>>()?);
  }
  let labels: Vec<u64> = match declared {
    Some(n) => {
      if let Some(&bad) = facets.iter().flatten().find(|&&v| v >= n as u64) {
        return Err(Error::Format(format!("label {bad} not below declared #n={n}")));
      }
      (0..n as u64).collect()
    }
    None => {
      let mut all: Vec<u64> = facets.iter().flatten().copied().collect();
      all.sort_unstable();
      all.dedup();
      all
    }
  };
  if labels.len() > MAX_VERTICES {
    return Err(Error::Format(format!("{} vertices exceed the limit of {MAX_VERTICES}", labels.len())));
  }
  let dense = |l: u64| labels.binary_search(&l).expect("label collected above");
  let faces: Vec<Face> = facets.iter().map(|f| f.iter().map(|&l| dense(l)).collect()).collect();
  Ok(LoadedComplex { complex: SimplicialComplex::from_facets(labels.len(), faces)?, labels })
}

/// Canonical text: header, then facets in lexicographic order.
pub fn format_facets(c: &SimplicialComplex) -> String {
  let mut facets: Vec<Vec<usize>> = c.facets().iter().filter(|f| !f.is_empty()).map(|f| f.to_vec()).collect();
  facets.sort();
  let mut out = format!("#n={}\n", c.n());
  for f in facets {
    let line: Vec<String> = f.iter().map(usize::to_string).collect();
    out.push_str(&line.join(" "));
    out.push('\n');
  }
  out
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn densifies_sparse_labels() {
    let l = parse_facets("10 20\n20 30\n30 10\n").unwrap();
    assert_eq!(l.labels, vec![10, 20, 30]);
    assert_eq!(l.complex, SimplicialComplex::cycle(3).unwrap());
    assert!(!l.is_identity());
  }

  #[test]
  fn header_adds_isolated_vertices() {
    let l = parse_facets("#n=4\n# a comment\n0 1\n").unwrap();
    assert!(l.is_identity());
    assert_eq!(l.complex.n(), 4);
    assert_eq!(l.complex.facets().len(), 3);
    assert!(parse_facets("#n=2\n0 5\n").is_err());
    assert!(parse_facets("0 x\n").is_err());
  }

  #[test]
  fn round_trip() {
    for c in [SimplicialComplex::octahedral(3).unwrap(), SimplicialComplex::empty(), SimplicialComplex::point()] {
      let text = format_facets(&c);
      assert_eq!(parse_facets(&text).unwrap().complex, c);
    }
    assert_eq!(format_facets(&SimplicialComplex::cycle(4).unwrap()), "#n=4\n0 1\n0 3\n1 2\n2 3\n");
  }
}
