//! The L-presentation of the generalised Basilica groups and the class-2
//! quotient γ₂/γ₃.

mod class2;
mod presentation;
mod word;

pub use class2::{collect, pair_count, pair_index, AbelianInvariants, Class2Element, Lattice};
pub use presentation::{verify_relators, zero_exponent_sums, LPresentation, RelatorCheck};
pub use word::FreeWord;
