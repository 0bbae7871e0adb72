//! Finite permutation-group computations for embedding properties of
//! subgroups and p-supersolubility.
//!
//! Composition is left-to-right throughout: `x^(ab) = (x^a)^b`.

pub mod arith;
mod bits;
pub mod corpus;
pub mod error;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod perm;
pub mod props;
pub mod structure;

pub use arith::{is_prime, p_part, pi_number, PPower, PrimeSet};
pub use error::{Error, Result};
pub use group::{Group, Limits};
pub use lattice::{ChiefFactorPair, ConjClass, NormalLattice, Quotient};
pub use perm::Perm;
