//! Representing points of the limit of truncation classes by concrete safe
//! truncations.
//!
//! A compatible chain of truncation classes (depth `n` class truncates to the
//! depth `n-1` class) denotes a point of the limit when the supports
//! stabilise. [`represent_limit`] reconstructs a concrete truncation for that
//! point: a safe representative whose bound names are chosen level by level
//! by the deterministic fresh rule, so deeper representations extend
//! shallower ones.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::infinite::InfTerm;
use crate::signature::{canonicalize_trunc_class, rename_binders_by_level, AlphaClass, RawTerm, TruncTerm};

/// A function from depths to alpha-classes of truncations, expected to be
/// compatible: truncating the depth `n+1` class at depth `n` gives the depth
/// `n` class.
#[derive(Clone)]
pub struct ClassChain {
    classes: Arc<dyn Fn(usize) -> Result<AlphaClass> + Send + Sync>,
}

impl ClassChain {
    pub fn new(f: impl Fn(usize) -> Result<AlphaClass> + Send + Sync + 'static) -> ClassChain {
        ClassChain {
            classes: Arc::new(f),
        }
    }

    /// The chain of truncation classes of an infinitary term.
    pub fn of_term(t: &InfTerm) -> ClassChain {
        let t = t.clone();
        ClassChain::new(move |n| Ok(canonicalize_trunc_class(&t.truncate(n)?)))
    }

    /// The chain of truncation classes of a finite term.
    pub fn of_raw(t: &RawTerm) -> ClassChain {
        let t = t.clone();
        ClassChain::new(move |n| Ok(canonicalize_trunc_class(&t.truncate(n))))
    }

    pub fn class_at(&self, n: usize) -> Result<AlphaClass> {
        (self.classes)(n)
    }
}

/// Reconstructs a depth-`depth` safe representative of the point the chain
/// denotes.
///
/// The output `u` satisfies: `canonicalize(u)` is `chain(depth)`, `u` is
/// safe, `fv(u)` is the support of the class, and the bound atoms follow the
/// deterministic level-wise fresh rule avoiding the support of the chain
/// segment. Representations at successive depths extend each other.
///
/// Errors: [`Error::IncompatibleChain`] when a truncation mismatch is found,
/// [`Error::UnboundedSupport`] when the class supports are still growing at
/// the probe depth (the chain does not denote a finitely supported point).
pub fn represent_limit(chain: &ClassChain, depth: usize) -> Result<TruncTerm> {
    let mut classes = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        classes.push(chain.class_at(n)?);
    }
    for n in 0..depth {
        if classes[n + 1].truncate(n) != classes[n] {
            return Err(Error::IncompatibleChain { depth: n });
        }
    }
    if depth >= 1 && classes[depth].supp() != classes[depth - 1].supp() {
        return Err(Error::UnboundedSupport { depth });
    }
    let rep = rename_binders_by_level(classes[depth].canonical(), &Default::default());
    debug_assert_eq!(&canonicalize_trunc_class(&rep), &classes[depth]);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::{Atom, AtomSet};
    use crate::lambda::{app, lam, var};
    use crate::signature::{is_safe_trunc, make_safe};

    fn a(i: u64) -> Atom {
        Atom::from_index(i)
    }

    #[test]
    fn constant_chain_of_closed_term() {
        // \x. x (\y. y x)  -- closed
        let t = lam(a(0), app(var(a(0)), lam(a(1), app(var(a(1)), var(a(0))))));
        let chain = ClassChain::of_raw(&t);
        let depth = 6;
        let rep = represent_limit(&chain, depth).unwrap();
        assert!(is_safe_trunc(&rep));
        assert_eq!(canonicalize_trunc_class(&rep), chain.class_at(depth).unwrap());
        // the finite case coincides with make_safe
        let safe = make_safe(&t, &AtomSet::new());
        assert_eq!(rep, safe.to_trunc());
        // successive depths extend each other
        for n in 0..depth {
            let shallow = represent_limit(&chain, n).unwrap();
            assert_eq!(rep.truncate(n), shallow);
        }
    }

    #[test]
    fn ogre_chain_has_distinct_safe_binders() {
        let chain = ClassChain::of_term(&crate::lambda::ogre());
        let rep = represent_limit(&chain, 4).unwrap();
        assert!(is_safe_trunc(&rep));
        // \a. \b. \c. \d. * with four distinct binders
        let mut binders = Vec::new();
        let mut cur = &rep;
        while let TruncTerm::Op(f, args) = cur {
            assert_eq!(f, "lam");
            binders.push(args[0].binders[0]);
            cur = &args[0].term;
        }
        assert_eq!(*cur, TruncTerm::Star);
        assert_eq!(binders.len(), 4);
        let distinct: AtomSet = binders.iter().copied().collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn incompatible_chain_is_detected() {
        let t = lam(a(0), var(a(0)));
        let s = lam(a(0), app(var(a(0)), var(a(0))));
        let (t, s) = (t.clone(), s.clone());
        let chain = ClassChain::new(move |n| {
            // depth 2 classes come from a different term than depth 3
            let src = if n <= 2 { &t } else { &s };
            Ok(canonicalize_trunc_class(&src.truncate(n)))
        });
        assert_eq!(
            represent_limit(&chain, 4),
            Err(Error::IncompatibleChain { depth: 2 })
        );
    }

    #[test]
    fn growing_support_is_rejected() {
        // truncations of the spine x100 (x101 (x102 ...)): each depth reveals
        // one more free variable, so the supports never stabilise
        fn spine(k: u64, n: usize) -> TruncTerm {
            if n == 0 {
                return TruncTerm::Star;
            }
            let head = if n == 1 {
                TruncTerm::Star
            } else {
                TruncTerm::Var(a(100 + k))
            };
            TruncTerm::Op(
                "app".into(),
                vec![
                    crate::signature::Arg::plain(head),
                    crate::signature::Arg::plain(spine(k + 1, n - 1)),
                ],
            )
        }
        let chain = ClassChain::new(|n| Ok(canonicalize_trunc_class(&spine(0, n))));
        assert_eq!(
            represent_limit(&chain, 6),
            Err(Error::UnboundedSupport { depth: 6 })
        );
    }
}
