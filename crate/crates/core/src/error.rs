use thiserror::Error;

use crate::face::Face;

/// Errors produced by complex construction, transformation and analysis.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
  #[error("vertex {vertex} is outside [0, {n})")]
  InvalidVertex { vertex: usize, n: usize },
  #[error("{0} is not a face of the complex")]
  NotAFace(Face),
  #[error("{0} is not an edge of the complex")]
  NotAnEdge(Face),
  #[error("invalid parameter: {0}")]
  InvalidParameter(String),
  #[error("vertex set is not an equator of the link: {0}")]
  JNotEquator(String),
  #[error("polynomial degree {degree} exceeds d = {d}")]
  DimensionMismatch { degree: usize, d: usize },
  #[error("h-polynomial is not palindromic for d = {d}")]
  NotPalindromic { d: usize },
  #[error("integer overflow in {0}")]
  Overflow(&'static str),
  #[error("deleting the equator left {0} components instead of 2")]
  ComponentCountNotTwo(usize),
  #[error("hypothesis violated: {0}")]
  HypothesisViolated(String),
  #[error("vertex count {n} exceeds the enumeration cap {cap}")]
  CapExceeded { n: usize, cap: usize },
  #[error("parse error at byte {offset}: {message}")]
  Parse { offset: usize, message: String },
  #[error("`{name}` expects {expected} argument(s), got {got}")]
  Arity { name: String, expected: String, got: usize },
  #[error("{0}")]
  Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
