//! Exact linear and commutative algebra over zero-dimensional local rings.
//!
//! The library builds Artinian local algebras `A = K[x_1..x_n]/Q` from
//! polynomial relations (Groebner bases over Q or GF(p)), then answers
//! structural questions exactly: socles, colon ideals, annihilators,
//! Wiebe matrices, nice matrices, initial Fitting ideals, and chains of
//! complete-intersection ideals obtained from matrix factorizations.
//!
//! Everything is exact; there are no floating-point tolerances anywhere.

pub mod artin;
pub mod chains;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod nice;
pub mod poly;
pub mod scalar;

pub use error::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
