//! Atoms (names) and finitely supported permutations.
//!
//! Atoms are interned naturals: the identity of an atom is its index, and an
//! optional display name is attached through a process-wide interner so that
//! parsing maps source identifiers to atoms stably within one session.
//! Total order on indices gives a deterministic choice of fresh atoms and
//! hence canonical forms everywhere else in the crate.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A name drawn from the countably infinite universe of atoms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u64);

/// A finite set of atoms.
pub type AtomSet = BTreeSet<Atom>;

struct Interner {
    by_name: HashMap<String, u64>,
    by_index: HashMap<u64, String>,
    next: u64,
}

fn interner() -> &'static Mutex<Interner> {
    static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        Mutex::new(Interner {
            by_name: HashMap::new(),
            by_index: HashMap::new(),
            next: 0,
        })
    })
}

impl Atom {
    /// The atom with the given index, with no display name attached.
    pub fn from_index(index: u64) -> Atom {
        Atom(index)
    }

    /// The atom a source identifier denotes. The first time a name is seen
    /// it is bound to the next unused index; later uses return the same atom.
    pub fn named(name: &str) -> Atom {
        let mut int = interner().lock().unwrap();
        if let Some(&i) = int.by_name.get(name) {
            return Atom(i);
        }
        let mut i = int.next;
        while int.by_index.contains_key(&i) {
            i += 1;
        }
        int.next = i + 1;
        int.by_name.insert(name.to_string(), i);
        int.by_index.insert(i, name.to_string());
        Atom(i)
    }

    pub fn index(self) -> u64 {
        self.0
    }

    /// Display name of the atom. Unnamed atoms are assigned a generated name
    /// on first display; the generated name is registered so that printing
    /// and re-parsing stay consistent within a session.
    pub fn name(self) -> String {
        let mut int = interner().lock().unwrap();
        if let Some(n) = int.by_index.get(&self.0) {
            return n.clone();
        }
        let mut candidate = format!("x{}", self.0);
        while int.by_name.contains_key(&candidate) {
            candidate.push('\'');
        }
        int.by_name.insert(candidate.clone(), self.0);
        int.by_index.insert(self.0, candidate.clone());
        candidate
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Atom({} `{}`)", self.0, self.name())
    }
}

/// The smallest-index atom outside `avoid`.
pub fn fresh_atom(avoid: &AtomSet) -> Atom {
    let mut i = 0u64;
    for a in avoid {
        if a.0 == i {
            i += 1;
        } else if a.0 > i {
            break;
        }
    }
    Atom(i)
}

/// The `n` smallest distinct atoms outside `avoid`, in increasing order.
pub fn fresh_atoms(n: usize, avoid: &AtomSet) -> Vec<Atom> {
    let mut out = Vec::with_capacity(n);
    let mut avoid = avoid.clone();
    for _ in 0..n {
        let a = fresh_atom(&avoid);
        avoid.insert(a);
        out.push(a);
    }
    out
}

/// A finite permutation of atoms, stored sparsely: atoms not in the map are
/// fixed, and the map restricted to its domain is a bijection onto itself.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Perm {
    moved: BTreeMap<Atom, Atom>,
}

impl Perm {
    pub fn identity() -> Perm {
        Perm::default()
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// The transposition exchanging `a` and `b` (identity when `a == b`).
    pub fn swap(a: Atom, b: Atom) -> Perm {
        let mut moved = BTreeMap::new();
        if a != b {
            moved.insert(a, b);
            moved.insert(b, a);
        }
        Perm { moved }
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.moved.get(&a).copied().unwrap_or(a)
    }

    /// Functional composition: `compose(p, q).apply(a) == p.apply(q.apply(a))`.
    pub fn compose(&self, q: &Perm) -> Perm {
        let mut moved = BTreeMap::new();
        let mut domain: AtomSet = self.moved.keys().copied().collect();
        domain.extend(q.moved.keys().copied());
        for a in domain {
            let b = self.apply(q.apply(a));
            if b != a {
                moved.insert(a, b);
            }
        }
        Perm { moved }
    }

    pub fn inverse(&self) -> Perm {
        let moved = self.moved.iter().map(|(&a, &b)| (b, a)).collect();
        Perm { moved }
    }

    /// The set of atoms the permutation does not fix.
    pub fn support(&self) -> AtomSet {
        self.moved.keys().copied().collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{{")?;
        for (i, (a, b)) in self.moved.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a} -> {b}")?;
        }
        write!(f, "}}")
    }
}
