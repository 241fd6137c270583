//! Free strict monoidal categories, their models, and the canonical-form
//! calculi for multirelations, relations and game strategies.

pub mod error;
pub mod folog;
pub mod games;
pub mod gameword;
pub mod model;
pub mod monotone;
pub mod multirel;
pub mod parse;
pub mod rel;
pub mod signature;
pub mod term;
pub mod theories;
pub mod verify;

pub use error::{Error, Result};
pub use games::{Game, MoveRef, Polarity, Side, Strategy};
pub use gameword::{GLetter, GameWord};
pub use model::{eval, Model};
pub use multirel::{MrelWord, MultiRel};
pub use monotone::MonotoneMap;
pub use parse::parse_term;
pub use rel::Rel;
pub use signature::{Atom, EqTheory, GeneratorDecl, Relation, TypeWord};
pub use term::{compose, tensor, Slice, Term};
pub use theories::builtin_theory;
pub use verify::SuiteReport;
