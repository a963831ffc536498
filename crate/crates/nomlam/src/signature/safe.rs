//! Safe representatives: terms whose bound names are pairwise distinct and
//! disjoint from the free variables. Such a representative has the largest
//! possible support in its alpha-class, which is what makes the limit
//! construction in [`crate::infinite`] work.

use crate::atoms::{fresh_atom, Atom, AtomSet};
use crate::signature::term::{Arg, RawTerm, TruncTerm};

/// True when every binder occurrence in the term is distinct from every
/// other binder occurrence and from every free variable.
pub fn is_safe_trunc(t: &TruncTerm) -> bool {
    let free = t.fv();
    let mut seen = AtomSet::new();
    fn walk(t: &TruncTerm, free: &AtomSet, seen: &mut AtomSet) -> bool {
        match t {
            TruncTerm::Star | TruncTerm::Var(_) => true,
            TruncTerm::Op(_, args) => args.iter().all(|arg| {
                arg.binders
                    .iter()
                    .all(|b| !free.contains(b) && seen.insert(*b))
                    && walk(&arg.term, free, seen)
            }),
        }
    }
    walk(t, &free, &mut seen)
}

pub fn is_safe(t: &RawTerm) -> bool {
    is_safe_trunc(&t.to_trunc())
}

/// Bound variables relative to quotienting by alpha: the support of the raw
/// term minus the support of its class, `supp(t) \ fv(t)`.
pub fn bv_rel(t: &RawTerm) -> AtomSet {
    t.vars().difference(&t.fv()).copied().collect()
}

/// The binding structure of a term with the binder names abstracted away.
/// `Bound` leaves point at binder slots; slots are numbered in depth-first
/// discovery order and remember the tree level of the node that binds them.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub root: SkelNode,
    /// Level (node depth) of each binder slot, indexed by slot id.
    pub slot_levels: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum SkelNode {
    Star,
    Free(Atom),
    Bound(usize),
    Op(String, Vec<SkelArg>),
}

#[derive(Clone, Debug)]
pub struct SkelArg {
    pub slots: Vec<usize>,
    pub node: SkelNode,
}

impl Skeleton {
    pub fn of(t: &TruncTerm) -> Skeleton {
        let mut slot_levels = Vec::new();
        fn go(
            t: &TruncTerm,
            level: usize,
            scope: &im_scope::Scope,
            slot_levels: &mut Vec<usize>,
        ) -> SkelNode {
            match t {
                TruncTerm::Star => SkelNode::Star,
                TruncTerm::Var(a) => match scope.lookup(*a) {
                    Some(slot) => SkelNode::Bound(slot),
                    None => SkelNode::Free(*a),
                },
                TruncTerm::Op(f, args) => SkelNode::Op(
                    f.clone(),
                    args.iter()
                        .map(|arg| {
                            let mut slots = Vec::with_capacity(arg.binders.len());
                            let mut inner = scope.clone();
                            for b in &arg.binders {
                                let slot = slot_levels.len();
                                slot_levels.push(level);
                                inner = inner.bind(*b, slot);
                                slots.push(slot);
                            }
                            SkelArg {
                                slots,
                                node: go(&arg.term, level + 1, &inner, slot_levels),
                            }
                        })
                        .collect(),
                ),
            }
        }
        let root = go(t, 0, &im_scope::Scope::new(), &mut slot_levels);
        Skeleton { root, slot_levels }
    }

    /// Instantiates the skeleton with the given binder atoms per slot.
    /// Assignments with repeated atoms are instantiated naively; callers that
    /// need alpha-equivalence use capture-free assignments.
    pub fn instantiate(&self, assignment: &[Atom]) -> TruncTerm {
        fn go(n: &SkelNode, asn: &[Atom]) -> TruncTerm {
            match n {
                SkelNode::Star => TruncTerm::Star,
                SkelNode::Free(a) => TruncTerm::Var(*a),
                SkelNode::Bound(slot) => TruncTerm::Var(asn[*slot]),
                SkelNode::Op(f, args) => TruncTerm::Op(
                    f.clone(),
                    args.iter()
                        .map(|arg| {
                            Arg::new(
                                arg.slots.iter().map(|s| asn[*s]).collect(),
                                go(&arg.node, asn),
                            )
                        })
                        .collect(),
                ),
            }
        }
        go(&self.root, assignment)
    }

    /// Assigns fresh atoms to the binder slots level by level, left to right
    /// within each level, always taking the smallest atom outside
    /// `avoid` and everything assigned before. Because deeper levels only
    /// consume atoms after all shallower ones, the assignment for a deeper
    /// skeleton extends the one for any of its truncations.
    pub fn level_assignment(&self, avoid: &AtomSet) -> Vec<Atom> {
        let mut order: Vec<usize> = (0..self.slot_levels.len()).collect();
        order.sort_by_key(|&s| (self.slot_levels[s], s));
        let mut taken = avoid.clone();
        let mut asn = vec![Atom::from_index(0); self.slot_levels.len()];
        for slot in order {
            let a = fresh_atom(&taken);
            taken.insert(a);
            asn[slot] = a;
        }
        asn
    }
}

mod im_scope {
    //! A tiny persistent map from atoms to binder slots, so sibling scopes
    //! do not interfere.
    use super::Atom;
    use std::sync::Arc;

    #[derive(Clone)]
    pub struct Scope(Option<Arc<Frame>>);

    struct Frame {
        atom: Atom,
        slot: usize,
        rest: Scope,
    }

    impl Scope {
        pub fn new() -> Scope {
            Scope(None)
        }

        pub fn bind(&self, atom: Atom, slot: usize) -> Scope {
            Scope(Some(Arc::new(Frame {
                atom,
                slot,
                rest: self.clone(),
            })))
        }

        pub fn lookup(&self, atom: Atom) -> Option<usize> {
            let mut cur = self;
            while let Some(frame) = &cur.0 {
                if frame.atom == atom {
                    return Some(frame.slot);
                }
                cur = &frame.rest;
            }
            None
        }
    }
}

/// Renames all binders of `t` by the level-wise fresh scheme, avoiding
/// `avoid` on top of the term's free variables. The result is alpha-equal to
/// `t`, safe, and deterministic.
pub fn rename_binders_by_level(t: &TruncTerm, avoid: &AtomSet) -> TruncTerm {
    let skel = Skeleton::of(t);
    let mut base = t.fv();
    base.extend(avoid.iter().copied());
    let asn = skel.level_assignment(&base);
    skel.instantiate(&asn)
}

/// An alpha-equivalent safe representative whose bound atoms also avoid
/// `avoid`.
pub fn make_safe_trunc(t: &TruncTerm, avoid: &AtomSet) -> TruncTerm {
    rename_binders_by_level(t, avoid)
}

pub fn make_safe(t: &RawTerm, avoid: &AtomSet) -> RawTerm {
    make_safe_trunc(&t.to_trunc(), avoid)
        .to_raw()
        .expect("renaming binders cannot introduce stars")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{app, lam, var};
    use crate::signature::alpha::alpha_eq;

    fn a(i: u64) -> Atom {
        Atom::from_index(i)
    }

    #[test]
    fn safe_examples() {
        // x (\y. y) is safe
        let t = app(var(a(0)), lam(a(1), var(a(1))));
        assert!(is_safe(&t));
        // x (\x. x) is not
        let t = app(var(a(0)), lam(a(0), var(a(0))));
        assert!(!is_safe(&t));
        // two lambdas with the same binder are not safe
        let t = app(lam(a(1), var(a(1))), lam(a(1), var(a(1))));
        assert!(!is_safe(&t));
    }

    #[test]
    fn make_safe_produces_safe_alpha_equal_terms() {
        let t = lam(a(0), app(var(a(0)), lam(a(0), var(a(0)))));
        let s = make_safe(&t, &AtomSet::new());
        assert!(is_safe(&s));
        assert!(alpha_eq(&s, &t));
        // binders distinct and fresh
        let avoid: AtomSet = [a(0), a(1), a(2)].into_iter().collect();
        let s = make_safe(&t, &avoid);
        assert!(is_safe(&s));
        assert!(alpha_eq(&s, &t));
        assert!(s.bv().is_disjoint(&avoid));
    }

    #[test]
    fn bv_rel_is_support_minus_fv() {
        let t = app(var(a(0)), lam(a(1), var(a(1))));
        assert_eq!(bv_rel(&t), [a(1)].into_iter().collect());
    }

    #[test]
    fn level_renaming_commutes_with_truncation() {
        let t = lam(
            a(0),
            app(
                lam(a(1), app(var(a(1)), var(a(0)))),
                lam(a(2), lam(a(3), var(a(2)))),
            ),
        );
        let full = make_safe_trunc(&t.to_trunc(), &AtomSet::new());
        for n in 0..5 {
            let cut_then_rename = make_safe_trunc(&t.truncate(n), &AtomSet::new());
            // renaming is level-wise, so cutting after renaming agrees with
            // renaming the cut term as long as the free variables agree
            if t.truncate(n).fv() == t.fv() {
                assert_eq!(full.truncate(n), cut_then_rename);
            }
        }
    }
}
