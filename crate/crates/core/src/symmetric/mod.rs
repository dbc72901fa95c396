//! Schur polynomials, dimensions, Littlewood-Richardson products and
//! symmetric-group characters. These serve as independent oracles for the
//! series pipeline.

mod characters;
mod lr;
mod schur;

pub use characters::{character_table, class_size, kronecker, z_factor, SymGroupCharacterTable};
pub use lr::{lr_coefficient, lr_product, SchurIndexedSum};
pub use schur::{gl_superdimension, schur_dim, schur_poly, schur_poly_bialternant, schur_poly_in, x_space};

use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetricError {
    #[error("symmetric group degree {0} outside 1..=12")]
    DegreeOutOfRange(u32),
    #[error("partitions of different orders: {0}")]
    OrderMismatch(String),
    #[error("{lambda} is not a covariant label for gl(1|{n}): second part exceeds {n}")]
    NotCovariant { lambda: Partition, n: u32 },
}
