use thiserror::Error;

use crate::symbol::{format_word, Symbol, Word};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid symbol name {0:?}")]
    InvalidSymbol(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("symbol {symbol} is not in the alphabet of the {context}")]
    RejectedInput { symbol: Symbol, context: &'static str },

    #[error("regular expression syntax error at offset {offset}: {message}")]
    RegexSyntax { offset: usize, message: String },

    #[error("grammar syntax error: {0}")]
    GrammarSyntax(String),

    #[error("{op} expects {expected} operand(s)")]
    Arity { op: &'static str, expected: usize },

    #[error("nested substitution requires {symbol} to belong to its own image")]
    NotNested { symbol: Symbol },

    #[error("transducer has an ε-input cycle producing output (through state {state})")]
    UnboundedTransducer { state: usize },

    #[error("marker {0} missing from the transducer alphabet")]
    MissingMarker(Symbol),

    #[error("rule {} -> {} violates the monadic length condition", format_word(.lhs), .rhs.map(|s| s.to_string()).unwrap_or_else(|| "ε".into()))]
    NotMonadic { lhs: Word, rhs: Option<Symbol> },

    #[error("left-hand side language for {0} contains a symbol outside the system alphabet")]
    LhsAlphabet(Symbol),

    #[error("language is not {0}-shuffled")]
    NotShuffled(usize),

    #[error("factor alphabets overlap on {0}")]
    AlphabetOverlap(Symbol),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("stabiliser map has no entry for letter {0}")]
    MissingStabiliser(Symbol),

    #[error("stabiliser word {} for {letter} is not in the combing", format_word(.word))]
    StabiliserNotInCombing { letter: Symbol, word: Word },

    #[error("multiplication is not associative: ({a} {b}) {c} != {a} ({b} {c})")]
    NotAssociative { a: String, b: String, c: String },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("marker symbol {0} not allowed inside a combing word")]
    MarkerInWord(Symbol),
}
