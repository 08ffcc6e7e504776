//! Tate cohomology of character lattices of algebraic tori.
//!
//! A torus split by a Galois extension with group `G` is determined by its
//! character lattice, a ℤ-free ℤ[G]-module. This crate computes the Tate
//! cohomology of such lattices exactly and evaluates the arithmetic order
//! identities built on it: Shafarevich–Tate groups, Brauer quotients,
//! Picard orders, Herbrand quotients, local norm indices and Tamagawa
//! numbers.

pub mod abelian;
pub mod arith;
pub mod cli;
pub mod group;
pub mod lattice;
pub mod tate;

pub use abelian::{AbMorphism, FinAbGroup, IntMatrix};
pub use group::{FiniteGroup, Permutation, Subgroup};
pub use lattice::{GLattice, TorusSpec};
pub use tate::{CohomologyGroup, Degree, TateOptions};
