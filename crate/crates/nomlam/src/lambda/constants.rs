//! Translating between free variables and constants. Constants have empty
//! support, so a term over the constant alphabet may mention unboundedly
//! many of them without growing its support: free variables of the original
//! term travel as constants.

use std::collections::BTreeMap;

use crate::atoms::{Atom, AtomSet};
use crate::lambda::{app, cst, lam, var, view, View};
use crate::signature::{make_safe, RawTerm};

/// A bijection between atoms and constant names, extended on demand.
/// Atom `a` maps to `prefix{index}` by default.
#[derive(Clone, Debug)]
pub struct ConstMap {
    prefix: String,
    overrides: BTreeMap<Atom, String>,
}

impl Default for ConstMap {
    fn default() -> ConstMap {
        ConstMap::with_prefix("c")
    }
}

impl ConstMap {
    pub fn with_prefix(prefix: &str) -> ConstMap {
        ConstMap {
            prefix: prefix.to_string(),
            overrides: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, a: Atom, name: impl Into<String>) {
        self.overrides.insert(a, name.into());
    }

    pub fn to_const(&self, a: Atom) -> String {
        self.overrides
            .get(&a)
            .cloned()
            .unwrap_or_else(|| format!("{}{}", self.prefix, a.index()))
    }

    pub fn to_atom(&self, name: &str) -> Option<Atom> {
        for (a, n) in &self.overrides {
            if n == name {
                return Some(*a);
            }
        }
        let idx = name.strip_prefix(&self.prefix)?.parse::<u64>().ok()?;
        let a = Atom::from_index(idx);
        if self.overrides.contains_key(&a) {
            return None;
        }
        Some(a)
    }
}

/// Replaces every free variable by its constant; binders and bound
/// occurrences are untouched.
pub fn tr_to_constants(t: &RawTerm, rho: &ConstMap) -> RawTerm {
    fn go(t: &RawTerm, rho: &ConstMap, bound: &AtomSet) -> RawTerm {
        match view(t) {
            View::Var(a) => {
                if bound.contains(&a) {
                    var(a)
                } else {
                    cst(&rho.to_const(a))
                }
            }
            View::App(f, x) => app(go(f, rho, bound), go(x, rho, bound)),
            View::Lam(y, b) => {
                let mut inner = bound.clone();
                inner.insert(y);
                lam(y, go(b, rho, &inner))
            }
            View::Bot | View::UBot | View::Const(_) => t.clone(),
        }
    }
    go(t, rho, &AtomSet::new())
}

/// The inverse translation: constants in the image of `rho` become free
/// variables again. The representative is freshened first so that no binder
/// clashes with a variable being re-introduced.
pub fn tr_from_constants(t: &RawTerm, rho: &ConstMap) -> RawTerm {
    // atoms that will appear free after translating back
    fn const_atoms(t: &RawTerm, rho: &ConstMap, out: &mut AtomSet) {
        match view(t) {
            View::Const(name) => {
                if let Some(a) = rho.to_atom(name) {
                    out.insert(a);
                }
            }
            View::App(f, x) => {
                const_atoms(f, rho, out);
                const_atoms(x, rho, out);
            }
            View::Lam(_, b) => const_atoms(b, rho, out),
            _ => {}
        }
    }
    let mut incoming = AtomSet::new();
    const_atoms(t, rho, &mut incoming);
    let safe = make_safe(t, &incoming);
    fn go(t: &RawTerm, rho: &ConstMap) -> RawTerm {
        match view(t) {
            View::Const(name) => match rho.to_atom(name) {
                Some(a) => var(a),
                None => t.clone(),
            },
            View::App(f, x) => app(go(f, rho), go(x, rho)),
            View::Lam(y, b) => lam(y, go(b, rho)),
            _ => t.clone(),
        }
    }
    go(&safe, rho)
}
