//! Formal-language toolkit for word-hyperbolic structures on monoids and
//! semigroups: regular and context-free languages, rational transducers,
//! monadic rewriting, and constructions for free products.

pub mod cfg;
pub mod error;
pub mod fsa;
pub mod fst;
pub mod hyperbolic;
pub mod oracle;
pub mod rewriting;
pub mod symbol;

pub use error::{Error, Result};
pub use cfg::Grammar;
pub use fsa::{Nfa, RegexExpr};
pub use fst::Fst;
pub use hyperbolic::{Flags, HypStructure, Kind};
pub use symbol::{Symbol, Word};
