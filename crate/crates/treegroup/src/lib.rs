//! Groups of automorphisms of regular rooted trees given by Mealy machines,
//! the Basilica operation `bp_s`, congruence quotients, obstruction series,
//! Hausdorff-dimension estimates and the L-presentation of the generalised
//! Basilica groups.
//!
//! Action convention: elements act on the left and in a product `g·h` the
//! factor `h` acts first, so `(gh)|_u = g|_{h(u)} h|_u`. A wreath tuple
//! `(g_0, …, g_{m-1})` lists sections by input letter.

pub mod basilica;
pub mod error;
pub mod exec;
pub mod groupfile;
pub mod groups;
pub mod hausdorff;
pub mod lpres;
pub mod tree_core;
pub mod zoo;

pub use error::{Error, Result};
pub use exec::Execution;
pub use groups::GroupSpec;
pub use tree_core::{Automorphism, Machine, Perm, Portrait, Vertex};
