//! Exact computational Mackey machine for finite groups.
//!
//! The crate decomposes equivariant vector bundles over finite G-sets in
//! terms of irreducible representations of a normal subgroup and twisted
//! representations of stabilizer quotients: character tables are exact
//! (cyclotomic integers via Dixon's method), obstruction cocycles are
//! certified both by snapped intertwiner matrices and by exact Clifford
//! counting.

pub mod bundle;
pub mod catalog;
pub mod character;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod io;
pub mod mackey;
pub mod repmat;

pub use bundle::{
    induce_bundle, isotypic_part, verify_vector_decomposition, EquivariantBundle, GSet,
};
pub use character::{character_table, induce, inner_product, restrict, Character, CharacterTable};
pub use cyclotomic::{Cyclotomic, Rational};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom, Subgroup, Transversal};
pub use mackey::{
    alpha_regular_count, extends_test, irr_action, isotypic_part_tagged, mackey_decompose,
    obstruction_cocycle, DecompositionReport, IrrAction, ObstructionCocycle,
};
pub use repmat::{
    conjugate_rep, hom_space_a, intertwiner, irreducible_reps, Intertwiner, ToleranceConfig,
    UnitaryRep,
};
