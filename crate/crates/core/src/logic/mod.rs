//! Sentences, two-valued semantics, and the A1–A3 Hilbert system.

mod axiom;
mod deduction;
pub mod kalmar;
mod sentence;
mod truth;

use thiserror::Error;

pub use axiom::{is_axiom_instance, match_schema, Bindings, Schema};
pub use deduction::{check_deduction, CheckError, Deduction, Justification, Line};
pub use kalmar::{is_derivable, synthesize_proof, SynthError, MAX_PROOF_LEAVES};
pub use sentence::{AtomId, Sentence};
pub use truth::{
    eval, falsifying_valuation, is_satisfiable, is_tautology, semantic_equal, TruthTable,
    Valuation, MAX_ATOMS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("atom {atom} is outside a basic set of {n} atoms")]
    AtomOutOfRange { atom: u32, n: usize },
    #[error("{found} atoms exceed the enumeration limit of {limit}")]
    TooManyAtoms { found: usize, limit: usize },
    #[error("invalid character `{0}` in bitstring")]
    BadBitstring(char),
}
