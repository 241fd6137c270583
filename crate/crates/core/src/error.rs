use thiserror::Error;

use crate::signature::TypeWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("type error in `{context}`: {left} ≠ {right}")]
    Boundary {
        context: String,
        left: TypeWord,
        right: TypeWord,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown atomic type `{0}`")]
    UnknownAtom(char),

    #[error("unknown theory `{0}` (expected one of M, B, R, D, G)")]
    UnknownTheory(String),

    #[error("crossing unavailable: no generator moves {wire} past {past}")]
    CrossingUnavailable { wire: char, past: char },

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("coefficient overflow")]
    Overflow,

    #[error("ill-typed word at letter {index} (`{letter}`): {reason}")]
    WordTyping {
        index: usize,
        letter: String,
        reason: String,
    },

    #[error("model `{model}` cannot interpret `{what}`")]
    Unsupported { model: &'static str, what: String },

    #[error("invalid strategy: {0}")]
    Strategy(String),

    #[error("games do not match: {0}")]
    GameMismatch(String),

    #[error("bound exceeded: {0}")]
    Bound(String),

    #[error("proof error at {path}: rule {rule}: {reason}")]
    Proof {
        path: String,
        rule: &'static str,
        reason: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
