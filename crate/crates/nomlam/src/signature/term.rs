//! Finite raw terms over a binding signature and their truncations.

use crate::atoms::{Atom, AtomSet, Perm};
use crate::nominal::Nominal;

/// One argument of an operation: the names it binds and the subterm they
/// scope over.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arg<T> {
    pub binders: Vec<Atom>,
    pub term: T,
}

impl<T> Arg<T> {
    pub fn new(binders: Vec<Atom>, term: T) -> Arg<T> {
        Arg { binders, term }
    }

    pub fn plain(term: T) -> Arg<T> {
        Arg {
            binders: Vec::new(),
            term,
        }
    }
}

/// A finite raw term: a variable or an operation applied to binding
/// arguments. Raw terms are not quotiented by alpha-equivalence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RawTerm {
    Var(Atom),
    Op(String, Vec<Arg<RawTerm>>),
}

/// A finite truncation of a (possibly infinite) term: the raw-term grammar
/// extended with a `Star` leaf standing for everything below the cut.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TruncTerm {
    Star,
    Var(Atom),
    Op(String, Vec<Arg<TruncTerm>>),
}

impl RawTerm {
    pub fn var(a: Atom) -> RawTerm {
        RawTerm::Var(a)
    }

    /// Builds an operation node without consulting a signature. Callers are
    /// expected to keep the term conformant; use
    /// [`crate::signature::BindingSignature::check_raw`] at trust boundaries.
    pub fn op_unchecked(name: impl Into<String>, args: Vec<Arg<RawTerm>>) -> RawTerm {
        RawTerm::Op(name.into(), args)
    }

    pub fn fv(&self) -> AtomSet {
        match self {
            RawTerm::Var(a) => [*a].into_iter().collect(),
            RawTerm::Op(_, args) => {
                let mut s = AtomSet::new();
                for arg in args {
                    let mut sub = arg.term.fv();
                    for b in &arg.binders {
                        sub.remove(b);
                    }
                    s.extend(sub);
                }
                s
            }
        }
    }

    pub fn bv(&self) -> AtomSet {
        match self {
            RawTerm::Var(_) => AtomSet::new(),
            RawTerm::Op(_, args) => {
                let mut s = AtomSet::new();
                for arg in args {
                    s.extend(arg.binders.iter().copied());
                    s.extend(arg.term.bv());
                }
                s
            }
        }
    }

    /// All variables, bound or free. This is the support of the raw term.
    pub fn vars(&self) -> AtomSet {
        let mut s = self.fv();
        s.extend(self.bv());
        s
    }

    pub fn height(&self) -> usize {
        match self {
            RawTerm::Var(_) => 1,
            RawTerm::Op(_, args) => {
                1 + args.iter().map(|a| a.term.height()).max().unwrap_or(0)
            }
        }
    }

    /// Truncation at depth `n`: depth 0 is `*`, structure is kept above it.
    pub fn truncate(&self, n: usize) -> TruncTerm {
        if n == 0 {
            return TruncTerm::Star;
        }
        match self {
            RawTerm::Var(a) => TruncTerm::Var(*a),
            RawTerm::Op(f, args) => TruncTerm::Op(
                f.clone(),
                args.iter()
                    .map(|a| Arg::new(a.binders.clone(), a.term.truncate(n - 1)))
                    .collect(),
            ),
        }
    }

    pub fn to_trunc(&self) -> TruncTerm {
        match self {
            RawTerm::Var(a) => TruncTerm::Var(*a),
            RawTerm::Op(f, args) => TruncTerm::Op(
                f.clone(),
                args.iter()
                    .map(|a| Arg::new(a.binders.clone(), a.term.to_trunc()))
                    .collect(),
            ),
        }
    }
}

impl TruncTerm {
    pub fn var(a: Atom) -> TruncTerm {
        TruncTerm::Var(a)
    }

    pub fn op_unchecked(name: impl Into<String>, args: Vec<Arg<TruncTerm>>) -> TruncTerm {
        TruncTerm::Op(name.into(), args)
    }

    pub fn fv(&self) -> AtomSet {
        match self {
            TruncTerm::Star => AtomSet::new(),
            TruncTerm::Var(a) => [*a].into_iter().collect(),
            TruncTerm::Op(_, args) => {
                let mut s = AtomSet::new();
                for arg in args {
                    let mut sub = arg.term.fv();
                    for b in &arg.binders {
                        sub.remove(b);
                    }
                    s.extend(sub);
                }
                s
            }
        }
    }

    pub fn bv(&self) -> AtomSet {
        match self {
            TruncTerm::Star | TruncTerm::Var(_) => AtomSet::new(),
            TruncTerm::Op(_, args) => {
                let mut s = AtomSet::new();
                for arg in args {
                    s.extend(arg.binders.iter().copied());
                    s.extend(arg.term.bv());
                }
                s
            }
        }
    }

    pub fn vars(&self) -> AtomSet {
        let mut s = self.fv();
        s.extend(self.bv());
        s
    }

    pub fn height(&self) -> usize {
        match self {
            TruncTerm::Star => 0,
            TruncTerm::Var(_) => 1,
            TruncTerm::Op(_, args) => {
                1 + args.iter().map(|a| a.term.height()).max().unwrap_or(0)
            }
        }
    }

    pub fn truncate(&self, n: usize) -> TruncTerm {
        if n == 0 {
            return TruncTerm::Star;
        }
        match self {
            TruncTerm::Star => TruncTerm::Star,
            TruncTerm::Var(a) => TruncTerm::Var(*a),
            TruncTerm::Op(f, args) => TruncTerm::Op(
                f.clone(),
                args.iter()
                    .map(|a| Arg::new(a.binders.clone(), a.term.truncate(n - 1)))
                    .collect(),
            ),
        }
    }

    /// Succeeds when the truncation contains no `Star`, i.e. it already is a
    /// complete finite term.
    pub fn to_raw(&self) -> Option<RawTerm> {
        match self {
            TruncTerm::Star => None,
            TruncTerm::Var(a) => Some(RawTerm::Var(*a)),
            TruncTerm::Op(f, args) => {
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    out.push(Arg::new(a.binders.clone(), a.term.to_raw()?));
                }
                Some(RawTerm::Op(f.clone(), out))
            }
        }
    }

    pub fn contains_op(&self, name: &str) -> bool {
        match self {
            TruncTerm::Star | TruncTerm::Var(_) => false,
            TruncTerm::Op(f, args) => {
                f == name || args.iter().any(|a| a.term.contains_op(name))
            }
        }
    }
}

impl Nominal for RawTerm {
    /// The permutation is applied to every atom occurrence, bound and free.
    fn act(&self, p: &Perm) -> RawTerm {
        match self {
            RawTerm::Var(a) => RawTerm::Var(p.apply(*a)),
            RawTerm::Op(f, args) => RawTerm::Op(
                f.clone(),
                args.iter()
                    .map(|a| {
                        Arg::new(
                            a.binders.iter().map(|b| p.apply(*b)).collect(),
                            a.term.act(p),
                        )
                    })
                    .collect(),
            ),
        }
    }

    fn supp(&self) -> AtomSet {
        self.vars()
    }
}

impl Nominal for TruncTerm {
    fn act(&self, p: &Perm) -> TruncTerm {
        match self {
            TruncTerm::Star => TruncTerm::Star,
            TruncTerm::Var(a) => TruncTerm::Var(p.apply(*a)),
            TruncTerm::Op(f, args) => TruncTerm::Op(
                f.clone(),
                args.iter()
                    .map(|a| {
                        Arg::new(
                            a.binders.iter().map(|b| p.apply(*b)).collect(),
                            a.term.act(p),
                        )
                    })
                    .collect(),
            ),
        }
    }

    fn supp(&self) -> AtomSet {
        self.vars()
    }
}
