//! Exact computations with affine Coxeter arrangements and alcoved polytopes.
//!
//! The crate covers root-system data, Weyl group enumeration, alcoves and
//! their central points, volume and lattice-point counts of alcoved
//! polytopes, the circular descent statistics `cdes`/`cmaj`, and the
//! quadratic Gröbner bases that induce the alcove triangulation in types
//! A and C. Type D4 passes the type gate but fails the vertex-lattice
//! check; see [`groebner::vertex_lattice_closed`].
//!
//! The linear algebra and polynomial layers are generic over the scalar
//! (`Matrix<T>`, `Poly<T>`); the aliases below fix the exact types the
//! geometry uses.

pub mod error;
pub mod geometry;
pub mod groebner;
pub mod matrix;
pub mod poly;
pub mod polytope;
pub mod rootsys;
pub mod statistics;
pub mod weyl;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::Poly;
pub use rootsys::{RootSystem, TypeLabel};
pub use weyl::{WeylElement, WeylGroup};

/// Exact rational scalar used for coweights.
pub type Rational = num_rational::Ratio<i64>;
/// Integer matrices: root actions, Cartan matrices.
pub type IntMatrix = Matrix<i64>;
/// Rational matrices.
pub type RatMatrix = Matrix<Rational>;
/// Polynomials in `q` with integer coefficients.
pub type IntPoly = Poly<i64>;
