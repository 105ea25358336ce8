//! Independent checking: seeded random colorings, exhaustive Ramsey
//! numbers for tiny parameters, and a trace validator that re-derives every
//! law of a run from the coloring alone.

mod random;
mod search;
mod validate;

pub use random::random_coloring;
pub use search::{brute_force_ramsey, check_witness, RamseyOutcome, RamseyQuery, WitnessCheck, DEFAULT_COLORING_BUDGET};
pub use validate::{
    er_unfloored_halving, inject_duplicate_graph, mutate_key_record, validate_run, Law, LawStatus, ValidationReport,
};
