//! Lazily unfolded infinitary terms.
//!
//! An [`InfTerm`] is a coalgebra state: observing it one layer at a time with
//! [`InfTerm::unfold_step`] is the only way to look inside. Terms are either
//! finite (an embedded raw term), rational (a finite cyclic equation system),
//! or producer-driven (an arbitrary deterministic unfolding). Every term
//! carries a declared finite support, a superset of the free variables of
//! every truncation; the declaration is checked lazily as layers surface.

mod limit;
mod rational;

pub use limit::{represent_limit, ClassChain};
pub use rational::{RationalBuilder, RationalSystem};

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::atoms::{Atom, AtomSet, Perm};
use crate::error::{Error, Result};
use crate::nominal::Nominal;
use crate::signature::{alpha_eq_trunc, Arg, Dyadic, RawTerm, TruncTerm};

/// One unfolding step: the root of a term with subterms of type `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Layer<R> {
    Var(Atom),
    Op(String, Vec<Arg<R>>),
}

/// A deterministic, replayable unfolding: the implementor is the seed state
/// and `unfold` is the step function. Re-running from the same state must
/// yield the same layer.
pub trait Unfold: Send + Sync {
    fn unfold(&self) -> Result<Layer<InfTerm>>;
}

enum Rep {
    Finite(Arc<RawTerm>),
    Rational(Arc<RationalSystem>, usize),
    Cons(Layer<InfTerm>),
    Producer(Arc<dyn Unfold>),
}

struct InfNode {
    support: AtomSet,
    rep: Rep,
    memo: OnceLock<Result<Layer<InfTerm>>>,
}

/// A lazily unfolded, possibly infinite term with a declared finite support.
#[derive(Clone)]
pub struct InfTerm(Arc<InfNode>);

/// The result of a depth-capped distance measurement: either the exact
/// distance (a difference was observed) or an upper bound (all compared
/// truncations agree).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DistBound {
    Exact(Dyadic),
    AtMost(Dyadic),
}

impl InfTerm {
    fn make(support: AtomSet, rep: Rep) -> InfTerm {
        InfTerm(Arc::new(InfNode {
            support,
            rep,
            memo: OnceLock::new(),
        }))
    }

    /// Embeds a finite raw term; the declared support is exactly its free
    /// variables.
    pub fn embed(t: RawTerm) -> InfTerm {
        InfTerm::make(t.fv(), Rep::Finite(Arc::new(t)))
    }

    /// A node of a rational equation system. The declared support is the
    /// exact free-variable set of the node, computed from the system.
    pub fn rational(system: Arc<RationalSystem>, root: usize) -> InfTerm {
        let support = system.fv(root).clone();
        InfTerm::make(support, Rep::Rational(system, root))
    }

    /// A term whose root layer is known and whose subterms are arbitrary.
    pub fn cons(layer: Layer<InfTerm>, support: AtomSet) -> InfTerm {
        InfTerm::make(support, Rep::Cons(layer))
    }

    /// A producer-driven term. `support` is the declared support; it is the
    /// caller's claim and is verified lazily at observation time.
    pub fn producer(p: Arc<dyn Unfold>, support: AtomSet) -> InfTerm {
        InfTerm::make(support, Rep::Producer(p))
    }

    pub fn support(&self) -> &AtomSet {
        &self.0.support
    }

    /// The embedded raw term, when this term is a finite embedding.
    pub fn as_finite(&self) -> Option<&RawTerm> {
        match &self.0.rep {
            Rep::Finite(t) => Some(t),
            _ => None,
        }
    }

    /// The equation system and root node, when this term is rational.
    pub fn as_rational(&self) -> Option<(&Arc<RationalSystem>, usize)> {
        match &self.0.rep {
            Rep::Rational(sys, i) => Some((sys, *i)),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(&self.0.rep, Rep::Rational(..) | Rep::Finite(_))
    }

    /// Observes the root layer. The result is memoized, so concurrent
    /// observers always see the same layer for the same state.
    pub fn unfold_step(&self) -> Result<Layer<InfTerm>> {
        self.0
            .memo
            .get_or_init(|| {
                let layer = match &self.0.rep {
                    Rep::Finite(t) => match t.as_ref() {
                        RawTerm::Var(a) => Layer::Var(*a),
                        RawTerm::Op(f, args) => Layer::Op(
                            f.clone(),
                            args.iter()
                                .map(|a| {
                                    Arg::new(a.binders.clone(), InfTerm::embed(a.term.clone()))
                                })
                                .collect(),
                        ),
                    },
                    Rep::Rational(sys, i) => match sys.layer(*i) {
                        Layer::Var(a) => Layer::Var(*a),
                        Layer::Op(f, args) => Layer::Op(
                            f.clone(),
                            args.iter()
                                .map(|a| {
                                    Arg::new(
                                        a.binders.clone(),
                                        InfTerm::rational(sys.clone(), a.term),
                                    )
                                })
                                .collect(),
                        ),
                    },
                    Rep::Cons(layer) => layer.clone(),
                    Rep::Producer(p) => match p.unfold() {
                        Ok(layer) => layer,
                        Err(e) => return Err(e),
                    },
                };
                if let Layer::Var(a) = &layer {
                    if !self.0.support.contains(a) {
                        return Err(Error::SupportViolation { atom: *a });
                    }
                }
                Ok(layer)
            })
            .clone()
    }

    /// Finite truncation at depth `n`, coherent across depths.
    pub fn truncate(&self, n: usize) -> Result<TruncTerm> {
        if n == 0 {
            return Ok(TruncTerm::Star);
        }
        // Shortcut for embedded finite terms.
        if let Rep::Finite(t) = &self.0.rep {
            return Ok(t.truncate(n));
        }
        match self.unfold_step()? {
            Layer::Var(a) => Ok(TruncTerm::Var(a)),
            Layer::Op(f, args) => {
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    out.push(Arg::new(a.binders, a.term.truncate(n - 1)?));
                }
                Ok(TruncTerm::Op(f, out))
            }
        }
    }

    /// Free variables of the depth-`n` truncation.
    pub fn fv_at(&self, n: usize) -> Result<AtomSet> {
        Ok(self.truncate(n)?.fv())
    }

    /// The exact free-variable set, available for finite and rational terms.
    /// Producers only admit the depth-bounded [`InfTerm::fv_at`].
    pub fn fv_exact(&self) -> Result<AtomSet> {
        match &self.0.rep {
            Rep::Finite(t) => Ok(t.fv()),
            Rep::Rational(sys, i) => Ok(sys.fv(*i).clone()),
            _ => Err(Error::NotRational),
        }
    }

    /// Depth-bounded alpha-equivalence: compares the depth-`n` truncations.
    pub fn alpha_eq_at(&self, other: &InfTerm, n: usize) -> Result<bool> {
        Ok(alpha_eq_trunc(&self.truncate(n)?, &other.truncate(n)?))
    }

    fn dist_by<F>(&self, other: &InfTerm, cap: usize, eq: F) -> Result<DistBound>
    where
        F: Fn(&TruncTerm, &TruncTerm) -> bool,
    {
        assert!(cap >= 1, "distance cap must be at least 1");
        for d in 1..=cap {
            if !eq(&self.truncate(d)?, &other.truncate(d)?) {
                return Ok(DistBound::Exact(Dyadic::pow2_neg((d - 1) as u32)));
            }
        }
        Ok(DistBound::AtMost(Dyadic::pow2_neg(cap as u32)))
    }

    /// Distance of the structural truncation metric, observed up to `cap`.
    pub fn dist(&self, other: &InfTerm, cap: usize) -> Result<DistBound> {
        self.dist_by(other, cap, |a, b| a == b)
    }

    /// The alpha-variant of [`InfTerm::dist`].
    pub fn dist_alpha(&self, other: &InfTerm, cap: usize) -> Result<DistBound> {
        self.dist_by(other, cap, alpha_eq_trunc)
    }

    /// The permutation action, satisfying
    /// `act(p, t).truncate(n) == t.truncate(n).act(p)` at every depth.
    pub fn act(&self, p: &Perm) -> InfTerm {
        if p.is_identity() {
            return self.clone();
        }
        match &self.0.rep {
            Rep::Finite(t) => InfTerm::embed(t.act(p)),
            Rep::Rational(sys, i) => InfTerm::rational(Arc::new(sys.act(p)), *i),
            _ => InfTerm::producer(
                Arc::new(Acted {
                    p: p.clone(),
                    inner: self.clone(),
                }),
                self.0.support.act(p),
            ),
        }
    }
}

impl fmt::Debug for InfTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.0.rep {
            Rep::Finite(t) => format!("finite {t:?}"),
            Rep::Rational(_, i) => format!("rational @{i}"),
            Rep::Cons(_) => "cons".to_string(),
            Rep::Producer(_) => "producer".to_string(),
        };
        write!(f, "InfTerm({kind}, supp {:?})", self.0.support)
    }
}

struct Acted {
    p: Perm,
    inner: InfTerm,
}

impl Unfold for Acted {
    fn unfold(&self) -> Result<Layer<InfTerm>> {
        Ok(match self.inner.unfold_step()? {
            Layer::Var(a) => Layer::Var(self.p.apply(a)),
            Layer::Op(f, args) => Layer::Op(
                f,
                args.into_iter()
                    .map(|a| {
                        Arg::new(
                            a.binders.iter().map(|b| self.p.apply(*b)).collect(),
                            a.term.act(&self.p),
                        )
                    })
                    .collect(),
            ),
        })
    }
}
