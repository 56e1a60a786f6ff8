pub mod automata;
pub mod bench;
pub mod effects;
pub mod error;
pub mod learner;
pub mod linalg;
pub mod oracle;
pub mod table;
pub mod word;

pub use effects::{Effect, EffectValue, EnumCaps, OutputAlgebra, Out};
pub use error::{Error, Result};
pub use word::{Alphabet, Symbol, Word};

// The book's code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/effects.md")]
    mod effects {}
    #[doc = include_str!("../../../book/src/automata.md")]
    mod automata {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
    #[doc = include_str!("../../../book/src/learning.md")]
    mod learning {}
    #[doc = include_str!("../../../book/src/teachers.md")]
    mod teachers {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
