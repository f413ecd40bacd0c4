//! Powers of conjugacy classes in small finite groups.
//!
//! Groups are enumerated in full from permutation generators or
//! presentations. Class powers are computed exactly in the class algebra and
//! compared with character-table criteria. The structural consequences of
//! each instance found are then checked directly on the group.

pub mod algebra;
pub mod arith;
pub mod catalogue;
pub mod chartable;
pub mod classes;
pub mod criteria;
pub mod error;
pub mod group;
pub mod group_file;
pub mod perm;
pub mod presentation;
pub mod subgroup;

pub use algebra::{ClassMultiset, StructureConstants, SupportShape};
pub use chartable::CharacterTable;
pub use classes::{ClassDecomposition, ConjugacyClass};
pub use error::{CriteriaError, GroupError, TableError};
pub use group::FiniteGroup;
pub use perm::Perm;
pub use subgroup::SubgroupInfo;
