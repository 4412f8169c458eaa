//! Exact arithmetic for half-integral weight Borcherds products on lattices
//! `L = K ⊕ 2U`: even lattices and their discriminant forms, sparse Jacobi
//! form expansions, theta decomposition, the Borcherds congruence and
//! truncated product expansions.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fixtures;
pub mod format;
pub mod lattice;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use lattice::{validate_gram, DiscriminantGroup, DualVector, EvenLattice};
pub use rational::Rational;
pub use series::{FormClass, JacobiSeries, QSeries, Term, VectorValuedForm};
pub mod lift;
