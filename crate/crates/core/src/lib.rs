//! Probabilistic automata of general and Moore form, linear (weighted) automata,
//! random sequences and Markov chains, and cut-point languages.
//!
//! Every automaton is immutable after construction. Operations that need numeric
//! thresholds take a [`Tolerances`] value.

pub mod error;
pub mod general_pa;
pub mod io;
pub mod languages;
pub mod linalg;
pub mod linear;
pub mod moore_pa;
pub mod sequences;
pub mod words;

mod closure;

pub use error::{Error, Result};
pub use general_pa::{GeneralPA, ReactionTable};
pub use languages::Dfa;
pub use linalg::{Distribution, Matrix, StochasticMatrix, Tolerances};
pub use linear::{LinearAutomaton, RationalExpr, StringFunctionTable};
pub use moore_pa::MoorePA;
pub use sequences::{MarkovChain, PairedSequence, RandomSequence};
pub use words::{Alphabet, Word};
