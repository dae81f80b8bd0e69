//! Finite groups given by Cayley tables, their maximal subgroups and
//! covering numbers, and structural checks on Frattini quotients.

pub mod arith;
pub mod bits;
pub mod classify;
pub mod construct;
pub mod corpus;
pub mod cover;
pub mod decompose;
pub mod descriptor;
pub mod error;
pub mod ff;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod record;
pub mod recipe;
pub mod setcover;

pub use error::{Error, Result};
pub use group::{Group, GroupHomomorphism, StructuralPredicates, SubgroupSet, MAX_ORDER};
