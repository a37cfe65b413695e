//! Independent cross-checks and seeded instance generation.

pub mod generate;
pub mod words;

pub use generate::{
    gen_nonderogatory, gen_nonderogatory_instance, random_diagonal_unitary, random_unitary,
    random_unitary_from, rng_from_seed, GeneratedInstance,
};
pub use words::{specht_pearcy_test, specht_pearcy_test_with, trace_word, Letter, TraceVerdict, Word};
