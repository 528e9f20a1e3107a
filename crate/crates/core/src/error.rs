use thiserror::Error;

use crate::automorphisms::Relation;

/// Errors produced by the group computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("word contains the stable letter t")]
    HasStableLetter,

    #[error("element is not in the centralizer of x (total y-exponent is {y_exponent})")]
    NotInCentralizer { y_exponent: String },

    /// Recoverable: the input needs more room than the budget allows, which
    /// says nothing about whether the input is valid.
    #[error("bit budget of {max_bits} exceeded: an intermediate value needs {needed} bits")]
    BudgetExceeded { max_bits: u64, needed: u64 },

    #[error("bit budget must be at least {min}, got {got}")]
    InvalidBudget { min: u64, got: u64 },

    #[error("expected an element of t-length 0, found t-length {found}")]
    WrongTLength { found: usize },

    #[error("images do not define an endomorphism: relation {0} fails")]
    NotVerified(Relation),

    #[error("endomorphism is not an automorphism (x maps to the identity)")]
    NotAutomorphism,

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
