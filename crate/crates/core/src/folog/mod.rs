//! First-order formulas built from atoms and quantifiers, sequent proofs,
//! and their interpretation as strategies.

mod proof;
mod syntax;

pub use proof::{
    check_proof, game_of_formula, interpret_proof, parse_proof, parse_proof_file, AxiomSet, Proof, ProofFile,
};
pub use syntax::{parse_fo_term, parse_formula, parse_sequent, Arities, FoTerm, Formula, Sequent};
