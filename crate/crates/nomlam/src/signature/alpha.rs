//! Alpha-equivalence and canonical representatives.

use std::collections::BTreeMap;
use std::fmt;

use crate::atoms::{fresh_atom, fresh_atoms, Atom, AtomSet, Perm};
use crate::nominal::Nominal;
use crate::signature::term::{Arg, RawTerm, TruncTerm};

/// Builds the permutation `(x1 z1)…(xn zn)` in left-to-right composition
/// order, so the rightmost transposition is applied first.
fn binder_swaps(xs: &[Atom], zs: &[Atom]) -> Perm {
    let mut p = Perm::identity();
    for (x, z) in xs.iter().zip(zs) {
        p = p.compose(&Perm::swap(*x, *z));
    }
    p
}

/// Decides the inductively defined alpha-equivalence: at every operation the
/// bound names on both sides are swapped to a common tuple of fresh names.
pub fn alpha_eq_trunc(t: &TruncTerm, s: &TruncTerm) -> bool {
    match (t, s) {
        (TruncTerm::Star, TruncTerm::Star) => true,
        (TruncTerm::Var(a), TruncTerm::Var(b)) => a == b,
        (TruncTerm::Op(f, fargs), TruncTerm::Op(g, gargs)) => {
            if f != g || fargs.len() != gargs.len() {
                return false;
            }
            fargs.iter().zip(gargs).all(|(l, r)| {
                if l.binders.len() != r.binders.len() {
                    return false;
                }
                if l.binders.is_empty() {
                    return alpha_eq_trunc(&l.term, &r.term);
                }
                let mut avoid = l.term.vars();
                avoid.extend(r.term.vars());
                avoid.extend(l.binders.iter().copied());
                avoid.extend(r.binders.iter().copied());
                let zs = fresh_atoms(l.binders.len(), &avoid);
                let lt = l.term.act(&binder_swaps(&l.binders, &zs));
                let rt = r.term.act(&binder_swaps(&r.binders, &zs));
                alpha_eq_trunc(&lt, &rt)
            })
        }
        _ => false,
    }
}

pub fn alpha_eq(t: &RawTerm, s: &RawTerm) -> bool {
    alpha_eq_trunc(&t.to_trunc(), &s.to_trunc())
}

/// The canonical representative of the alpha-class of a term: binders are
/// renamed depth-first left-to-right to the smallest atoms avoiding the free
/// variables of the whole term and the enclosing canonical binders. Two terms
/// are alpha-equivalent exactly when their canonical forms are identical.
pub fn canonicalize_trunc(t: &TruncTerm) -> TruncTerm {
    let free = t.fv();
    fn go(
        t: &TruncTerm,
        env: &BTreeMap<Atom, Atom>,
        in_scope: &AtomSet,
        free: &AtomSet,
    ) -> TruncTerm {
        match t {
            TruncTerm::Star => TruncTerm::Star,
            TruncTerm::Var(a) => TruncTerm::Var(env.get(a).copied().unwrap_or(*a)),
            TruncTerm::Op(f, args) => {
                let new_args = args
                    .iter()
                    .map(|arg| {
                        if arg.binders.is_empty() {
                            return Arg::plain(go(&arg.term, env, in_scope, free));
                        }
                        let mut avoid: AtomSet = free.clone();
                        avoid.extend(in_scope.iter().copied());
                        let mut env2 = env.clone();
                        let mut scope2 = in_scope.clone();
                        let mut fresh = Vec::with_capacity(arg.binders.len());
                        for b in &arg.binders {
                            let nb = fresh_atom(&avoid);
                            avoid.insert(nb);
                            scope2.insert(nb);
                            env2.insert(*b, nb);
                            fresh.push(nb);
                        }
                        Arg::new(fresh, go(&arg.term, &env2, &scope2, free))
                    })
                    .collect();
                TruncTerm::Op(f.clone(), new_args)
            }
        }
    }
    go(t, &BTreeMap::new(), &AtomSet::new(), &free)
}

/// The alpha-equivalence class of a finite or truncated term, represented by
/// its canonical term. Structural equality of classes is alpha-equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphaClass {
    canonical: TruncTerm,
}

impl AlphaClass {
    pub fn canonical(&self) -> &TruncTerm {
        &self.canonical
    }

    /// The canonical term without the `Star` leaves, when there are none.
    pub fn as_raw(&self) -> Option<RawTerm> {
        self.canonical.to_raw()
    }

    /// Support of the class: the free variables of any representative.
    pub fn supp(&self) -> AtomSet {
        self.canonical.fv()
    }

    /// Truncates the class at depth `n` (classes of truncations are classes).
    pub fn truncate(&self, n: usize) -> AlphaClass {
        canonicalize_trunc_class(&self.canonical.truncate(n))
    }
}

impl Nominal for AlphaClass {
    fn act(&self, p: &Perm) -> AlphaClass {
        canonicalize_trunc_class(&self.canonical.act(p))
    }
    fn supp(&self) -> AtomSet {
        AlphaClass::supp(self)
    }
}

impl fmt::Debug for AlphaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]", self.canonical)
    }
}

pub fn canonicalize(t: &RawTerm) -> AlphaClass {
    AlphaClass {
        canonical: canonicalize_trunc(&t.to_trunc()),
    }
}

pub fn canonicalize_trunc_class(t: &TruncTerm) -> AlphaClass {
    AlphaClass {
        canonical: canonicalize_trunc(t),
    }
}
