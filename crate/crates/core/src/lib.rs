//! Exact computations around fourvolutions of even lattices and the
//! associated cyclic orbifold lattice vertex operator algebras.
//!
//! Conventions used throughout:
//! - lattices are Gram matrices; vectors are coordinate columns in the lattice basis;
//! - an isometry `U` acts by `x -> U x`, and `g.h` means "apply `h`, then `g`";
//! - dual vectors are rational coordinate vectors `G^{-1} y`.

pub mod bw16;
pub mod characters;
pub mod code;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod qform;
pub mod qseries;
pub mod report;
pub mod shape;
pub mod suite;
pub mod voa;

pub use error::{Error, Result};
