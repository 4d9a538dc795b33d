//! Exact computation in the ring of Legendrian characteristic classes.
//!
//! Layers, bottom up: [`algebra`] (rationals, polynomials, linear solving),
//! [`partitions`], [`symfun`] (Schur S- and Q-functions in root variables),
//! [`bundle`] (virtual bundles and the classical Schur pipeline) and
//! [`legendre`] (canonical classes, family bases, positivity and bounds).

pub mod algebra;
pub mod bundle;
pub mod error;
pub mod legendre;
pub mod partitions;
pub mod symfun;

pub use algebra::{Monomial, Poly, Rational, VarTable};
pub use error::{Error, Result};
pub use partitions::{Partition, StrictPartition};
