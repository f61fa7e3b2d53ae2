//! Flag homology spheres: simplicial complexes on bitset faces, f-, h- and
//! γ-vectors, homology over GF(2) and ℚ, structural analysis of flag
//! spheres and an isomorphism-free enumerator.

pub mod canon;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod face;
pub mod graph;
pub mod homology;
pub mod io;
pub mod iso;
pub mod poly;
pub mod structure;
pub mod vectors;
pub mod verify;

pub use complex::{Relabeled, SimplicialComplex};
pub use error::{Error, Result};
pub use face::{Face, VertexId, MAX_VERTICES};
pub use graph::Graph;
pub use homology::{Field, HomologyProfile};
pub use poly::{Coefficient, Polynomial};

/// Polynomial with machine-word coefficients; arithmetic reports overflow.
pub type IntPolynomial = Polynomial<i64>;
/// Polynomial with arbitrary-precision coefficients.
pub type BigPolynomial = Polynomial<num_bigint::BigInt>;
