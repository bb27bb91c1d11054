//! Exact computations with skew-symmetrizable cluster patterns coming from
//! triangulations of unpunctured orbifolds, and with the mutation theory of
//! locally free representations of the associated gentle algebras.
//!
//! The representation-theoretic layers are generic over an exact [`Field`];
//! the aliases below fix the rationals as the working field.

pub mod error;
pub mod field;
pub mod gentle;
pub mod invariants;
pub mod io;
pub mod fixtures;
pub mod laurent;
pub mod matrix;
pub mod mutation;
pub mod orbifold;
pub mod rep;
pub mod seed;
pub mod strings;

pub use error::{Error, Result};
pub use field::{Field, Fp};
pub use laurent::{IntPoly, LaurentPoly};
pub use matrix::Matrix;

/// The working field.
pub type Q = num_rational::BigRational;
/// Matrices over the working field.
pub type QMatrix = Matrix<Q>;
/// Representations over the working field.
pub type QRep = rep::Rep<Q>;
/// Decorated representations over the working field.
pub type QDecoratedRep = rep::DecoratedRep<Q>;
