//! Finite-state automorphisms of the m-regular rooted tree.

mod machine;
mod perm;
mod portrait;

pub use machine::{Automorphism, Machine, State, Vertex, DEFAULT_STATE_CAP};
pub use perm::Perm;
pub use portrait::Portrait;
