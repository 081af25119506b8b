//! Exact computations in finite permutation groups: enumeration, structural
//! subgroups, family-sets such as solvabilizers and nilpotentizers, and
//! certified measure intervals on direct-product towers.

pub mod arith;
pub mod cache;
pub mod checks;
pub mod claims;
pub mod constructors;
pub mod elements;
pub mod error;
pub mod families;
pub mod field;
pub mod group;
pub mod perm;
pub mod profinite;
pub mod rational;
pub mod spec;
pub mod structure;
pub mod word;

pub use elements::ElementSet;
pub use error::{Error, Result};
pub use families::Family;
pub use group::{closure, FiniteGroup, Subgroup, DEFAULT_CAP};
pub use perm::Permutation;
pub use spec::{Built, GroupSpec};
pub use word::Word;
