//! Exact computer algebra for finite-dimensional Jordan superalgebras.
//!
//! The crate builds superalgebras from sparse structure-constant tables over
//! GF(p) (p an odd prime) or over the rationals, verifies the Jordan
//! superidentity through Grassmann envelopes, and computes spaces of
//! delta-derivations, delta-superderivations, centroids and supercentroids
//! by exact kernel computation.
//!
//! Modules:
//! - [`scalars`]: exact field arithmetic (GF(p) residues, arbitrary-precision
//!   rationals).
//! - [`linalg`]: dense echelon form, rank and kernel bases over a field, and
//!   fraction-free Bareiss elimination over univariate polynomials.
//! - [`poly`]: sparse multivariate polynomials with exact coefficients.
//! - [`superalg`]: structure-constant superalgebras, grading and
//!   supercommutativity checks, Grassmann algebras and envelopes, the Jordan
//!   superidentity checker, and the JSON interchange format.
//! - [`catalog`]: constructors for the named algebras (Kaplansky K3, Kac K9,
//!   truncated polynomial algebras B(m), vector-type algebras, V_{1/2}) plus
//!   direct sums and unital hulls.
//! - [`deltader`]: the solvers — delta-(super)derivation spaces, centroids,
//!   triviality classification, finite and parametric delta scans, the
//!   coupled-derivation system and closed-form fitting.

pub mod catalog;
pub mod deltader;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod scalars;
pub mod superalg;

pub use error::Error;
pub use linalg::{KernelBasis, Matrix, PolyMatrix};
pub use poly::SparsePoly;
pub use scalars::{Field, Scalar};
pub use superalg::{Element, HomMap, Parity, Superalgebra};
