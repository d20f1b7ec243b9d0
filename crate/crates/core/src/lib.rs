//! Exact lattice algebra for periods and Hodge-theoretic indices of Brauer
//! classes on hyperkähler-type lattices.
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod constructions;
pub mod error;
pub mod identities;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod mukai;
pub mod obstructions;
pub mod par;
pub mod report;
pub mod sample;
pub mod sym;

pub use error::{Error, Result};
pub use lattice::{standard_lattice, IntLattice, LatticeKind, Sublattice};
