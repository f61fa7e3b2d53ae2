//! A small expression language for building complexes.
//!
//! ```text
//! expr  := term ("*" term)*
//! term  := atom | "(" expr ")" | func "(" args ")"
//! atom  := S0 | C<k> | simplex<k> | oct<d> | empty | point
//! func  := susp | susp^m | subdivide | contract | link | split | oct | upsilon1 | upsilon2
//! ```
//!
//! `C5`, `C<5>`, `oct3`, `oct<3>` and `oct(3)` are all accepted; printing
//! uses `C5`, `simplex2` and `oct(3)`. Vertex arguments refer to the labels
//! of the constructors: joins shift the right factor past the left one,
//! suspension appends two vertices, `C<k>` is the cycle `0-1-...-(k-1)-0`
//! and `oct(d)` pairs `2i` with `2i+1`.

use std::fmt;

use crate::complex::SimplicialComplex;
use crate::face::{Face, VertexId};
use crate::structure::{construct_family, FamilyKind};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
  S0,
  Empty,
  Point,
  Cycle(usize),
  Simplex(usize),
  Oct(usize),
  Upsilon1 { m: usize, ell: usize },
  Upsilon2 { m: usize, ell: usize },
  Join(Vec<Expr>),
  Susp { times: usize, inner: Box<Expr> },
  Subdivide(Box<Expr>, VertexId, VertexId),
  Contract(Box<Expr>, VertexId, VertexId),
  Link(Box<Expr>, Vec<VertexId>),
  Split(Box<Expr>, VertexId, Vec<VertexId>),
}

impl Expr {
  pub fn eval(&self) -> Result<SimplicialComplex> {
    Ok(match self {
      Expr::S0 => SimplicialComplex::sphere0(),
      Expr::Empty => SimplicialComplex::empty(),
      Expr::Point => SimplicialComplex::point(),
      Expr::Cycle(k) => SimplicialComplex::cycle(*k)?,
      Expr::Simplex(k) => {
        if *k >= 64 {
          return Err(Error::InvalidParameter(format!("simplex{k} exceeds the vertex limit")));
        }
        SimplicialComplex::simplex(*k)
      }
      Expr::Oct(d) => SimplicialComplex::octahedral(*d)?,
      Expr::Upsilon1 { m, ell } => construct_family(FamilyKind::Upsilon1, *m, *ell)?,
      Expr::Upsilon2 { m, ell } => construct_family(FamilyKind::Upsilon2, *m, *ell)?,
      Expr::Join(terms) => {
        let mut acc = SimplicialComplex::empty();
        for t in terms {
          acc = acc.join(&t.eval()?)?;
        }
        acc
      }
      Expr::Susp { times, inner } => inner.eval()?.suspend_k(*times)?,
      Expr::Subdivide(e, u, v) => {
        let c = e.eval()?;
        c.edge_subdivision(edge(&c, *u, *v)?)?
      }
      Expr::Contract(e, u, v) => {
        let c = e.eval()?;
        c.contract_edge(edge(&c, *u, *v)?)?
      }
      Expr::Link(e, face) => {
        let c = e.eval()?;
        c.link(vertex_set(&c, face)?)?.complex
      }
      Expr::Split(e, v, set) => {
        let c = e.eval()?;
        c.vertex_split(*v, vertex_set(&c, set)?)?
      }
    })
  }
}

fn check_vertex(c: &SimplicialComplex, v: VertexId) -> Result<VertexId> {
  if v < c.n() {
    Ok(v)
  } else {
    Err(Error::InvalidVertex { vertex: v, n: c.n() })
  }
}

fn edge(c: &SimplicialComplex, u: VertexId, v: VertexId) -> Result<Face> {
  if u == v {
    return Err(Error::NotAnEdge(Face::singleton(u)));
  }
  Ok(Face::edge(check_vertex(c, u)?, check_vertex(c, v)?))
}

fn vertex_set(c: &SimplicialComplex, vs: &[VertexId]) -> Result<Face> {
  vs.iter().map(|&v| check_vertex(c, v)).collect::<Result<Vec<_>>>().map(|v| v.iter().collect())
}

fn write_set(f: &mut fmt::Formatter<'_>, vs: &[VertexId]) -> fmt::Result {
  let items: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
  write!(f, "{{{}}}", items.join(","))
}

impl fmt::Display for Expr {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Expr::S0 => write!(f, "S0"),
      Expr::Empty => write!(f, "empty"),
      Expr::Point => write!(f, "point"),
      Expr::Cycle(k) => write!(f, "C{k}"),
      Expr::Simplex(k) => write!(f, "simplex{k}"),
      Expr::Oct(d) => write!(f, "oct({d})"),
      Expr::Upsilon1 { m, ell } => write!(f, "upsilon1({m},{ell})"),
      Expr::Upsilon2 { m, ell } => write!(f, "upsilon2({m},{ell})"),
      Expr::Join(terms) => {
        for (i, t) in terms.iter().enumerate() {
          if i > 0 {
            write!(f, " * ")?;
          }
          match t {
            Expr::Join(_) => write!(f, "({t})")?,
            _ => write!(f, "{t}")?,
          }
        }
        Ok(())
      }
      Expr::Susp { times: 1, inner } => write!(f, "susp({inner})"),
      Expr::Susp { times, inner } => write!(f, "susp^{times}({inner})"),
      Expr::Subdivide(e, u, v) => write!(f, "subdivide({e},{u},{v})"),
      Expr::Contract(e, u, v) => write!(f, "contract({e},{u},{v})"),
      Expr::Link(e, face) => {
        write!(f, "link({e},")?;
        write_set(f, face)?;
        write!(f, ")")
      }
      Expr::Split(e, v, set) => {
        write!(f, "split({e},{v},")?;
        write_set(f, set)?;
        write!(f, ")")
      }
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
  Ident(String),
  Num(usize),
  Sym(char),
  End,
}

struct Parser<'a> {
  src: &'a str,
  toks: Vec<(usize, Tok)>,
  pos: usize,
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
  Error::Parse { offset, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
  let bytes = src.as_bytes();
  let mut out = Vec::new();
  let mut i = 0;
  while i < bytes.len() {
    let c = bytes[i] as char;
    let start = i;
    if c.is_ascii_whitespace() {
      i += 1;
    } else if c.is_ascii_alphabetic() || c == '_' {
      while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
        i += 1;
      }
      out.push((start, Tok::Ident(src[start..i].to_string())));
    } else if c.is_ascii_digit() {
      while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
      }
      let n = src[start..i].parse().map_err(|_| parse_err(start, "number too large"))?;
      out.push((start, Tok::Num(n)));
    } else if "()*,^{}<>".contains(c) {
      out.push((start, Tok::Sym(c)));
      i += 1;
    } else {
      let ch = src[start..].chars().next().unwrap();
      return Err(parse_err(start, format!("unexpected character `{ch}`")));
    }
  }
  out.push((src.len(), Tok::End));
  Ok(out)
}

/// Splits `C12` into (`C`, Some(12)); plain names have no suffix.
fn split_suffix(name: &str) -> (&str, Option<usize>) {
  let cut = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
  if cut == name.len() || cut == 0 {
    return (name, None);
  }
  (&name[..cut], name[cut..].parse().ok())
}

impl<'a> Parser<'a> {
  fn peek(&self) -> &Tok {
    &self.toks[self.pos].1
  }

  fn offset(&self) -> usize {
    self.toks[self.pos].0
  }

  fn bump(&mut self) -> Tok {
    let t = self.toks[self.pos].1.clone();
    if t != Tok::End {
      self.pos += 1;
    }
    t
  }

  fn eat(&mut self, c: char) -> bool {
    if *self.peek() == Tok::Sym(c) {
      self.pos += 1;
      true
    } else {
      false
    }
  }

  fn expect(&mut self, c: char) -> Result<()> {
    if self.eat(c) {
      Ok(())
    } else {
      Err(parse_err(self.offset(), format!("expected `{c}`, found {}", self.describe())))
    }
  }

  fn describe(&self) -> String {
    match self.peek() {
      Tok::End => "end of input".into(),
      _ => {
        let start = self.offset();
        let end = self.toks[self.pos + 1].0;
        format!("`{}`", self.src[start..end].trim())
      }
    }
  }

  fn number(&mut self) -> Result<usize> {
    match self.peek() {
      Tok::Num(n) => {
        let n = *n;
        self.pos += 1;
        Ok(n)
      }
      _ => Err(parse_err(self.offset(), format!("expected a number, found {}", self.describe()))),
    }
  }

  fn expr(&mut self) -> Result<Expr> {
    let mut terms = vec![self.term()?];
    while self.eat('*') {
      terms.push(self.term()?);
    }
    Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Join(terms) })
  }

  fn term(&mut self) -> Result<Expr> {
    let at = self.offset();
    match self.bump() {
      Tok::Sym('(') => {
        let e = self.expr()?;
        self.expect(')')?;
        Ok(e)
      }
      Tok::Ident(name) => self.named(at, &name),
      Tok::End => Err(parse_err(at, "unexpected end of input")),
      _ => Err(parse_err(at, format!("expected a term, found `{}`", &self.src[at..self.offset().max(at + 1)]))),
    }
  }

  /// Either `<k>` or a trailing numeric suffix.
  fn size(&mut self, at: usize, name: &str, suffix: Option<usize>) -> Result<usize> {
    if let Some(k) = suffix {
      return Ok(k);
    }
    if self.eat('<') {
      let k = self.number()?;
      self.expect('>')?;
      return Ok(k);
    }
    Err(parse_err(at, format!("`{name}` needs a size, as in {name}5 or {name}<5>")))
  }

  fn named(&mut self, at: usize, name: &str) -> Result<Expr> {
    let (base, suffix) = split_suffix(name);
    match (base, suffix) {
      ("S", Some(0)) => Ok(Expr::S0),
      ("empty", None) => Ok(Expr::Empty),
      ("point", None) => Ok(Expr::Point),
      ("C", _) => Ok(Expr::Cycle(self.size(at, "C", suffix)?)),
      ("simplex", _) => Ok(Expr::Simplex(self.size(at, "simplex", suffix)?)),
      ("oct", Some(d)) => Ok(Expr::Oct(d)),
      ("oct", None) if *self.peek() == Tok::Sym('<') => Ok(Expr::Oct(self.size(at, "oct", None)?)),
      ("oct", None) => {
        let args = self.args(at, name)?;
        let [d] = numbers(name, &args)?;
        Ok(Expr::Oct(d))
      }
      ("upsilon", Some(k @ (1 | 2))) => {
        let args = self.args(at, name)?;
        let [m, ell] = numbers(name, &args)?;
        Ok(if k == 1 { Expr::Upsilon1 { m, ell } } else { Expr::Upsilon2 { m, ell } })
      }
      ("susp", None) => {
        let times = if self.eat('^') { self.number()? } else { 1 };
        let mut args = self.args(at, name)?;
        if args.len() != 1 {
          return Err(arity(name, "1", args.len()));
        }
        Ok(Expr::Susp { times, inner: Box::new(args.pop().unwrap().into_expr(name)?) })
      }
      ("subdivide" | "contract", None) => {
        let args = self.args(at, name)?;
        if args.len() != 3 {
          return Err(arity(name, "3", args.len()));
        }
        let mut it = args.into_iter();
        let e = Box::new(it.next().unwrap().into_expr(name)?);
        let u = it.next().unwrap().into_number(name)?;
        let v = it.next().unwrap().into_number(name)?;
        Ok(if base == "subdivide" { Expr::Subdivide(e, u, v) } else { Expr::Contract(e, u, v) })
      }
      ("link", None) => {
        let args = self.args(at, name)?;
        if args.len() != 2 {
          return Err(arity(name, "2", args.len()));
        }
        let mut it = args.into_iter();
        let e = Box::new(it.next().unwrap().into_expr(name)?);
        Ok(Expr::Link(e, it.next().unwrap().into_set(name)?))
      }
      ("split", None) => {
        let args = self.args(at, name)?;
        if args.len() != 3 {
          return Err(arity(name, "3", args.len()));
        }
        let mut it = args.into_iter();
        let e = Box::new(it.next().unwrap().into_expr(name)?);
        let v = it.next().unwrap().into_number(name)?;
        Ok(Expr::Split(e, v, it.next().unwrap().into_set(name)?))
      }
      _ => Err(parse_err(at, format!("unknown name `{name}`"))),
    }
  }

  fn args(&mut self, at: usize, name: &str) -> Result<Vec<Arg>> {
    if !self.eat('(') {
      return Err(parse_err(self.offset().max(at), format!("`{name}` expects `(`, found {}", self.describe())));
    }
    let mut out = Vec::new();
    if self.eat(')') {
      return Ok(out);
    }
    loop {
      out.push(self.arg()?);
      if self.eat(')') {
        return Ok(out);
      }
      self.expect(',')?;
    }
  }

  fn arg(&mut self) -> Result<Arg> {
    match self.peek() {
      Tok::Num(_) => Ok(Arg::Num(self.number()?)),
      Tok::Sym('{') => {
        self.pos += 1;
        let mut set = Vec::new();
        if !self.eat('}') {
          loop {
            set.push(self.number()?);
            if self.eat('}') {
              break;
            }
            self.expect(',')?;
          }
        }
        Ok(Arg::Set(set))
      }
      _ => Ok(Arg::Expr(self.expr()?)),
    }
  }
}

enum Arg {
  Expr(Expr),
  Num(usize),
  Set(Vec<VertexId>),
}

fn arity(name: &str, expected: &str, got: usize) -> Error {
  Error::Arity { name: name.into(), expected: expected.into(), got }
}

fn kind_err(name: &str, want: &str) -> Error {
  Error::InvalidParameter(format!("`{name}`: expected {want} argument"))
}

impl Arg {
  fn into_expr(self, name: &str) -> Result<Expr> {
    match self {
      Arg::Expr(e) => Ok(e),
      _ => Err(kind_err(name, "an expression")),
    }
  }

  fn into_number(self, name: &str) -> Result<usize> {
    match self {
      Arg::Num(n) => Ok(n),
      _ => Err(kind_err(name, "a vertex")),
    }
  }

  fn into_set(self, name: &str) -> Result<Vec<VertexId>> {
    match self {
      Arg::Set(s) => Ok(s),
      _ => Err(kind_err(name, "a vertex set")),
    }
  }
}

fn numbers<const K: usize>(name: &str, args: &[Arg]) -> Result<[usize; K]> {
  if args.len() != K {
    return Err(arity(name, &K.to_string(), args.len()));
  }
  let mut out = [0; K];
  for (slot, a) in out.iter_mut().zip(args) {
    match a {
      Arg::Num(n) => *slot = *n,
      _ => return Err(kind_err(name, "a numeric")),
    }
  }
  Ok(out)
}

pub fn parse_expr(text: &str) -> Result<Expr> {
  let mut p = Parser { src: text, toks: lex(text)?, pos: 0 };
  let e = p.expr()?;
  if *p.peek() != Tok::End {
    return Err(parse_err(p.offset(), format!("unexpected {}", p.describe())));
  }
  Ok(e)
}

/// Parses and evaluates in one step.
pub fn eval_expr(text: &str) -> Result<SimplicialComplex> {
  parse_expr(text)?.eval()
}
