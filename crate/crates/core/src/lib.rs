//! Exact generalized Heron polynomials for cyclic and semicyclic polygons.
//!
//! The crate is organised in layers:
//!
//! - [`poly`]: sparse multivariate polynomials over `Z[1/2]` with
//!   resultants, discriminants, exact division and serialization.
//! - [`symgen`]: elementary symmetric functions, Fibonacci polynomials and
//!   the identity relating side lengths to vertex quotients.
//! - [`heron`]: the elimination pipelines producing the area polynomials.
//! - [`geom`]: numeric polygon configurations, the area enumerator and the
//!   radius polynomials.
//! - [`harness`]: the verification suites and command implementations used
//!   by the `heronion` binary.

pub mod error;
pub mod geom;
pub mod harness;
pub mod heron;
pub mod poly;
pub mod symgen;

pub use error::{Error, Result};
pub use geom::Family;
pub use poly::{MultiPoly, UniView, VarTable};
