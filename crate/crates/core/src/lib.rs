//! Exact generating-function machinery for the angular-momentum and energy
//! content of paraboson Fock representations of osp(1|2n) and covariant
//! representations of gl(1|n), for n = 3 and n = 6.
//!
//! Everything is exact integer or rational arithmetic. Series and generating
//! functions are generic over a [`Coefficient`] ring; the aliases below fix
//! the ring used by the pipeline.

pub mod partition;
pub mod scalar;
pub mod series;
pub mod symmetric;
pub mod characters;
pub mod branching;
pub mod report;
pub mod fixtures;
pub mod verify;

pub use partition::{FrobeniusForm, Partition, PartitionError, SkewShape};
pub use scalar::Coefficient;

/// Energies in units of ħω.
pub type Energy = num_rational::Ratio<i64>;

/// The coefficient ring used by the pipeline.
pub type Coef = i128;

pub type Series = series::MultiSeries<Coef>;
pub type Gf = series::RationalGF<Coef>;
pub type BigSeries = series::MultiSeries<num_bigint::BigInt>;
pub type BigGf = series::RationalGF<num_bigint::BigInt>;
