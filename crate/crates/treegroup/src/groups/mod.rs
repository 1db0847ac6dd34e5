//! Group-level computations: level quotients, fractality, nuclei,
//! boundedness, stabilisers and supports.

mod bounded;
mod closure;
mod fractal;
mod layered;
mod nucleus;
mod quotient;
mod schreier_sims;
mod spec;
mod stab;
mod support;

pub use bounded::{activity_sequence, is_bounded};
pub use closure::{is_self_similar_closed, self_similar_closure};
pub use fractal::{
    is_fractal_at, is_spherically_transitive, is_strongly_fractal_at, is_very_strongly_fractal_at,
    level_stabilizer_generators, level_transversal, vertex_stabilizer_generators, DEFAULT_TRANSVERSAL_CAP,
};
pub use nucleus::{nucleus, nucleus_bp_candidate, Nucleus, DEFAULT_NUCLEUS_ROUNDS, DEFAULT_NUCLEUS_SIZE};
pub use quotient::{exact_log, leaf_permutation, LevelQuotient, QuotientOptions, DEFAULT_POINT_CAP};
pub use spec::{GroupSpec, Word};
pub use stab::{generalised_basilica_stabilizer, verify_stabilizer_generators, StabReport};
pub use support::support_witness;

/// Exact triviality of a word in the generators.
pub fn word_is_identity(g: &GroupSpec, word: &[(usize, i64)]) -> crate::Result<bool> {
    g.word_is_identity(word)
}
