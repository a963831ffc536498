//! Nominal syntax with binders and lazy infinitary terms.
//!
//! The crate builds up in layers:
//!
//! * [`atoms`]: names from a countably infinite universe and finitely
//!   supported permutations;
//! * [`nominal`]: the permutation-action/support contract, freshness,
//!   name-abstraction and concretion;
//! * [`signature`]: binding signatures, finite raw terms, alpha-equivalence
//!   and canonical forms, truncations, the truncation metric, and safe
//!   representatives;
//! * [`infinite`]: lazily unfolded infinitary terms (rational systems and
//!   producers), depth-bounded observation, and the representation of limit
//!   points by safe truncations;
//! * [`lambda`]: the lambda calculus with bottom and constants: parsing,
//!   printing, capture-avoiding substitution (corecursive on infinite
//!   terms), and the head / weak head / top reduction strategies;
//! * [`trees`]: Böhm, Lévy-Longo and Berarducci trees as lazy infinite
//!   terms, tree-set membership, and tree-induced bisimulations.

pub mod atoms;
pub mod error;
pub mod infinite;
pub mod lambda;
pub mod nominal;
pub mod signature;
pub mod trees;

pub use atoms::{fresh_atom, fresh_atoms, Atom, AtomSet, Perm};
pub use error::{Error, Result};
pub use infinite::{represent_limit, ClassChain, DistBound, InfTerm, Layer};
pub use nominal::{is_fresh, Abstraction, Nominal};
pub use signature::{
    alpha_eq, canonicalize, dist_alpha_raw, dist_raw, is_safe, make_safe, AlphaClass, Arg,
    BindingSignature, Dyadic, RawTerm, TruncTerm,
};
