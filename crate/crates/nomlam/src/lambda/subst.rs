//! Capture-avoiding substitution, on finite terms by structural recursion
//! and on infinitary terms by parametric corecursion: the producer state is
//! the pending `(term, name, replacement)` triple.

use std::sync::Arc;

use crate::atoms::{fresh_atom, Atom, AtomSet, Perm};
use crate::error::Result;
use crate::infinite::{InfTerm, Layer, Unfold};
use crate::nominal::Nominal;
use crate::signature::{canonicalize_trunc_class, AlphaClass, Arg, RawTerm, TruncTerm};

/// `m[x := n]` on truncations. Binders clashing with `x` stop the descent;
/// binders clashing with the free variables of `n` are renamed on the fly to
/// deterministic fresh atoms.
pub fn subst_trunc(m: &TruncTerm, x: Atom, n: &TruncTerm) -> TruncTerm {
    let fvn = n.fv();
    go(m, x, n, &fvn)
}

fn go(m: &TruncTerm, x: Atom, n: &TruncTerm, fvn: &AtomSet) -> TruncTerm {
    match m {
        TruncTerm::Star => TruncTerm::Star,
        TruncTerm::Var(y) if *y == x => n.clone(),
        TruncTerm::Var(y) => TruncTerm::Var(*y),
        TruncTerm::Op(f, args) => TruncTerm::Op(
            f.clone(),
            args.iter()
                .map(|arg| {
                    if arg.binders.contains(&x) || !arg.term.fv().contains(&x) {
                        return arg.clone();
                    }
                    let mut term = arg.term.clone();
                    let mut binders = arg.binders.clone();
                    let mut avoid = term.vars();
                    avoid.extend(fvn.iter().copied());
                    avoid.insert(x);
                    avoid.extend(binders.iter().copied());
                    for b in binders.iter_mut() {
                        if fvn.contains(b) {
                            let z = fresh_atom(&avoid);
                            avoid.insert(z);
                            term = term.act(&Perm::swap(*b, z));
                            *b = z;
                        }
                    }
                    Arg::new(binders, go(&term, x, n, fvn))
                })
                .collect(),
        ),
    }
}

pub fn subst_raw(m: &RawTerm, x: Atom, n: &RawTerm) -> RawTerm {
    subst_trunc(&m.to_trunc(), x, &n.to_trunc())
        .to_raw()
        .expect("substituting star-free terms cannot introduce stars")
}

/// Substitution on alpha-classes: the five defining clauses hold on the
/// canonical representatives.
pub fn subst_class(m: &AlphaClass, x: Atom, n: &AlphaClass) -> AlphaClass {
    canonicalize_trunc_class(&subst_trunc(m.canonical(), x, n.canonical()))
}

/// Lazy substitution on infinitary terms. Both arguments carry finite
/// declared supports; the result's declared support is
/// `(supp(m) \ {x}) ∪ supp(n)`.
pub fn subst_inf(m: &InfTerm, x: Atom, n: &InfTerm) -> InfTerm {
    if !m.support().contains(&x) {
        return m.clone();
    }
    if let (Some(mf), Some(nf)) = (m.as_finite(), n.as_finite()) {
        return InfTerm::embed(subst_raw(mf, x, nf));
    }
    let mut support = m.support().clone();
    support.remove(&x);
    support.extend(n.support().iter().copied());
    InfTerm::producer(
        Arc::new(SubstInf {
            m: m.clone(),
            x,
            n: n.clone(),
        }),
        support,
    )
}

struct SubstInf {
    m: InfTerm,
    x: Atom,
    n: InfTerm,
}

impl Unfold for SubstInf {
    fn unfold(&self) -> Result<Layer<InfTerm>> {
        match self.m.unfold_step()? {
            // the pending triple resolves to the replacement: continue as `n`
            Layer::Var(y) if y == self.x => self.n.unfold_step(),
            Layer::Var(y) => Ok(Layer::Var(y)),
            Layer::Op(f, args) => Ok(Layer::Op(
                f,
                args.into_iter()
                    .map(|arg| {
                        if arg.binders.contains(&self.x) || !arg.term.support().contains(&self.x)
                        {
                            return arg;
                        }
                        let mut term = arg.term;
                        let mut binders = arg.binders;
                        let mut avoid = term.support().clone();
                        avoid.extend(self.n.support().iter().copied());
                        avoid.extend(self.m.support().iter().copied());
                        avoid.insert(self.x);
                        avoid.extend(binders.iter().copied());
                        for b in binders.iter_mut() {
                            if self.n.support().contains(b) {
                                let z = fresh_atom(&avoid);
                                avoid.insert(z);
                                term = term.act(&Perm::swap(*b, z));
                                *b = z;
                            }
                        }
                        Arg::new(binders, subst_inf(&term, self.x, &self.n))
                    })
                    .collect(),
            )),
        }
    }
}
