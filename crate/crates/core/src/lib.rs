//! Permutation groups, stabilizer chains, and checks on pairs `(G, H)` where
//! `H` is solvable and `|G:H|` is a prime power.

pub mod catalog;
pub mod constructions;
pub mod error;
pub mod field;
pub mod grpfile;
pub mod limits;
pub mod numtheory;
pub mod perm;
pub mod permgroup;
pub mod series;
pub mod theorems;

pub use error::Error;
pub use limits::Limits;
pub use perm::Perm;
pub use permgroup::PermGroup;
