//! The nominal-value contract: permutation action and least finite support,
//! plus freshness, name-abstraction and concretion.

use crate::atoms::{fresh_atom, Atom, AtomSet, Perm};
use crate::error::{Error, Result};

/// A value with a permutation action and a least finite support.
///
/// Implementations compute the support type-directedly (for syntax it is the
/// variable set); minimality is checked by property tests, not at runtime.
pub trait Nominal: Sized {
    fn act(&self, p: &Perm) -> Self;
    fn supp(&self) -> AtomSet;
}

/// `a # x`: the atom lies outside the support of the value.
pub fn is_fresh<X: Nominal>(a: Atom, x: &X) -> bool {
    !x.supp().contains(&a)
}

impl Nominal for Atom {
    fn act(&self, p: &Perm) -> Atom {
        p.apply(*self)
    }
    fn supp(&self) -> AtomSet {
        [*self].into_iter().collect()
    }
}

impl Nominal for AtomSet {
    fn act(&self, p: &Perm) -> AtomSet {
        self.iter().map(|a| p.apply(*a)).collect()
    }
    fn supp(&self) -> AtomSet {
        self.clone()
    }
}

impl<X: Nominal> Nominal for Vec<X> {
    fn act(&self, p: &Perm) -> Vec<X> {
        self.iter().map(|x| x.act(p)).collect()
    }
    fn supp(&self) -> AtomSet {
        let mut s = AtomSet::new();
        for x in self {
            s.extend(x.supp());
        }
        s
    }
}

impl<X: Nominal, Y: Nominal> Nominal for (X, Y) {
    fn act(&self, p: &Perm) -> (X, Y) {
        (self.0.act(p), self.1.act(p))
    }
    fn supp(&self) -> AtomSet {
        let mut s = self.0.supp();
        s.extend(self.1.supp());
        s
    }
}

/// A name-abstraction `<x>u`, stored in canonical form: the binder is renamed
/// to the smallest atom outside `supp(u) \ {x}`, so structural equality of the
/// stored parts decides alpha-equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Abstraction<X> {
    binder: Atom,
    body: X,
}

impl<X: Nominal> Abstraction<X> {
    /// Builds the canonical representative of `<a>x`.
    pub fn new(a: Atom, x: X) -> Abstraction<X> {
        let mut outside = x.supp();
        outside.remove(&a);
        let binder = fresh_atom(&outside);
        let body = if binder == a { x } else { x.act(&Perm::swap(a, binder)) };
        Abstraction { binder, body }
    }

    pub fn binder(&self) -> Atom {
        self.binder
    }

    pub fn body(&self) -> &X {
        &self.body
    }

    /// Concretion `<y>u @ z = (z y) . u`, defined when `z # <y>u`
    /// (`z` may equal the stored binder).
    pub fn concretion(&self, z: Atom) -> Result<X> {
        if z != self.binder && self.supp().contains(&z) {
            return Err(Error::NotFresh { atom: z });
        }
        Ok(self.body.act(&Perm::swap(z, self.binder)))
    }

    /// Reopens the abstraction at the smallest atom fresh for it together
    /// with everything in `avoid`.
    pub fn open_fresh(&self, avoid: &AtomSet) -> (Atom, X) {
        let mut bad = self.supp();
        bad.extend(avoid.iter().copied());
        let z = fresh_atom(&bad);
        (z, self.body.act(&Perm::swap(z, self.binder)))
    }
}

impl<X: Nominal> Nominal for Abstraction<X> {
    /// `p . <x>u = <p(x)>(p . u)`, restored to canonical form.
    fn act(&self, p: &Perm) -> Abstraction<X> {
        Abstraction::new(p.apply(self.binder), self.body.act(p))
    }

    /// `supp(<x>u) = supp(u) \ {x}`.
    fn supp(&self) -> AtomSet {
        let mut s = self.body.supp();
        s.remove(&self.binder);
        s
    }
}

/// The definitional alpha-equality of abstractions: some (equivalently any)
/// atom `z` fresh for all four components satisfies
/// `(x1 z) . u1 = (x2 z) . u2`. Canonical storage makes this the same as
/// structural equality; it is kept as an independent check.
pub fn abs_eq_fresh<X: Nominal + PartialEq>(l: &Abstraction<X>, r: &Abstraction<X>) -> bool {
    let mut avoid = l.body.supp();
    avoid.extend(r.body.supp());
    avoid.insert(l.binder);
    avoid.insert(r.binder);
    let z = fresh_atom(&avoid);
    l.body.act(&Perm::swap(l.binder, z)) == r.body.act(&Perm::swap(r.binder, z))
}
