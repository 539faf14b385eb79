use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A document or term could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Two objects were combined that live over different arities.
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    /// Letters or tokens do not line up between two objects.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// An operation that presumes an essential automaton got a non-essential one.
    #[error("automaton is not essential")]
    NotEssential,

    /// Complementation requires a co-deterministic finite-tree automaton.
    #[error("finite-tree automaton is not co-deterministic")]
    NotCodeterministic,

    /// A run assignment does not witness acceptance of the given pattern.
    #[error("run assignment is not a valid witness for the pattern")]
    NotAWitness,

    /// A value violates a structural invariant.
    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    /// A construction would exceed the caller-supplied budget.
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
}

impl Error {
    pub fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            why: why.into(),
        }
    }
}

/// Resource limits for the constructions that can blow up: subset and
/// product automata on one axis, enumerated blocks and rule tables on the
/// other. All operations fail cleanly with [`Error::BudgetExceeded`]
/// instead of allocating past these bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of states any constructed automaton may have.
    pub max_states: usize,
    /// Maximum number of patterns enumerated or rule-table entries materialized.
    pub max_patterns: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 1 << 14,
            max_patterns: 1 << 21,
        }
    }
}

impl Budget {
    pub fn with_max_states(max_states: usize) -> Self {
        Budget {
            max_states,
            ..Budget::default()
        }
    }

    pub fn check_states(&self, what: &'static str, needed: u128) -> Result<(), Error> {
        if needed > self.max_states as u128 {
            return Err(Error::BudgetExceeded {
                what,
                needed,
                limit: self.max_states as u128,
            });
        }
        Ok(())
    }

    pub fn check_patterns(&self, what: &'static str, needed: u128) -> Result<(), Error> {
        if needed > self.max_patterns as u128 {
            return Err(Error::BudgetExceeded {
                what,
                needed,
                limit: self.max_patterns as u128,
            });
        }
        Ok(())
    }
}
