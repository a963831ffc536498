//! Shared error type for term observation, reduction and limit construction.

use crate::atoms::Atom;

/// Everything that can go wrong while observing or transforming terms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A free variable surfaced outside the declared support of an
    /// infinitary term.
    #[error("support violation: free variable `{atom}` outside declared support")]
    SupportViolation { atom: Atom },

    /// Concretion was asked for an atom that is not fresh for the abstraction.
    #[error("atom `{atom}` is not fresh for the abstraction")]
    NotFresh { atom: Atom },

    /// The operation is only defined for rational (cyclic) terms.
    #[error("operation requires a rational term")]
    NotRational,

    /// A class chain failed the compatibility condition at the given depth:
    /// truncating the depth `depth + 1` class did not give the depth `depth`
    /// class.
    #[error("incompatible chain: truncation mismatch at depth {depth}")]
    IncompatibleChain { depth: usize },

    /// The support of a class chain kept growing up to the probe depth, so
    /// the chain does not denote a finitely supported point of the limit.
    #[error("chain support still growing at probe depth {depth}")]
    UnboundedSupport { depth: usize },

    /// Source text could not be parsed. `pos` is a byte offset.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// The inner weak-head normalisation of a top step ran out of fuel.
    #[error("operator normalisation exhausted its fuel ({fuel} steps)")]
    FuelNeeded { fuel: u64 },

    /// A tree comparison could not reach a verdict because an unresolved
    /// (fuel-exhausted) node blocks it.
    #[error("inconclusive: unresolved node encountered (fuel {fuel})")]
    Inconclusive { fuel: u64 },

    /// A term did not conform to the binding signature.
    #[error("operation `{op}` used with {got} arguments, arity expects {expected}")]
    Arity {
        op: String,
        expected: usize,
        got: usize,
    },

    /// An operation name that the signature does not declare.
    #[error("unknown operation `{op}`")]
    UnknownOp { op: String },

    /// A binder list length does not match the declared binding arity.
    #[error("operation `{op}` argument {index} binds {got} names, arity expects {expected}")]
    BinderCount {
        op: String,
        index: usize,
        expected: usize,
        got: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
