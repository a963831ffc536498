//! Binding signatures and the finite terms they generate: permutation
//! action, free/bound variables, alpha-equivalence, canonical forms,
//! truncation, the truncation metric, and safe representatives.

mod alpha;
mod metric;
mod safe;
mod term;

pub use alpha::{
    alpha_eq, alpha_eq_trunc, canonicalize, canonicalize_trunc, canonicalize_trunc_class,
    AlphaClass,
};
pub use metric::{dist_alpha_raw, dist_alpha_trunc, dist_raw, dist_trunc, Dyadic};
pub use safe::{bv_rel, is_safe, is_safe_trunc, make_safe, make_safe_trunc, rename_binders_by_level, Skeleton};
pub use term::{Arg, RawTerm, TruncTerm};

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A binding signature: every operation name carries a binding arity, the
/// list of how many names each argument binds. Operations with an empty
/// arity list are constants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BindingSignature {
    ops: BTreeMap<String, Vec<usize>>,
    /// When set, any operation named `#…` is accepted as a constant even if
    /// undeclared. Constants have empty support, so this gives an unbounded
    /// alphabet without touching the atom universe.
    open_hash_constants: bool,
}

impl BindingSignature {
    pub fn new() -> BindingSignature {
        BindingSignature::default()
    }

    pub fn with_open_constants(mut self) -> BindingSignature {
        self.open_hash_constants = true;
        self
    }

    /// Declares an operation. Names must be unique.
    pub fn declare(&mut self, name: impl Into<String>, arity: Vec<usize>) -> Result<()> {
        let name = name.into();
        if self.ops.contains_key(&name) {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("duplicate operation `{name}` in signature"),
            });
        }
        self.ops.insert(name, arity);
        Ok(())
    }

    pub fn arity(&self, name: &str) -> Option<Vec<usize>> {
        if let Some(ar) = self.ops.get(name) {
            return Some(ar.clone());
        }
        if self.open_hash_constants && name.starts_with('#') {
            return Some(Vec::new());
        }
        None
    }

    pub fn ops(&self) -> impl Iterator<Item = (&str, &[usize])> {
        self.ops.iter().map(|(n, a)| (n.as_str(), a.as_slice()))
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.ops
            .iter()
            .filter(|(_, a)| a.is_empty())
            .map(|(n, _)| n.as_str())
    }

    /// Checked construction of an operation node.
    pub fn op(&self, name: &str, args: Vec<Arg<RawTerm>>) -> Result<RawTerm> {
        let arity = self.arity(name).ok_or_else(|| Error::UnknownOp {
            op: name.to_string(),
        })?;
        if arity.len() != args.len() {
            return Err(Error::Arity {
                op: name.to_string(),
                expected: arity.len(),
                got: args.len(),
            });
        }
        for (i, (arg, n)) in args.iter().zip(&arity).enumerate() {
            if arg.binders.len() != *n {
                return Err(Error::BinderCount {
                    op: name.to_string(),
                    index: i,
                    expected: *n,
                    got: arg.binders.len(),
                });
            }
        }
        Ok(RawTerm::Op(name.to_string(), args))
    }

    /// Validates that a whole term conforms to the signature.
    pub fn check_raw(&self, t: &RawTerm) -> Result<()> {
        match t {
            RawTerm::Var(_) => Ok(()),
            RawTerm::Op(name, args) => {
                self.check_node(name, args.len(), args.iter().map(|a| a.binders.len()))?;
                for a in args {
                    self.check_raw(&a.term)?;
                }
                Ok(())
            }
        }
    }

    pub fn check_trunc(&self, t: &TruncTerm) -> Result<()> {
        match t {
            TruncTerm::Star | TruncTerm::Var(_) => Ok(()),
            TruncTerm::Op(name, args) => {
                self.check_node(name, args.len(), args.iter().map(|a| a.binders.len()))?;
                for a in args {
                    self.check_trunc(&a.term)?;
                }
                Ok(())
            }
        }
    }

    fn check_node(
        &self,
        name: &str,
        argc: usize,
        binder_lens: impl Iterator<Item = usize>,
    ) -> Result<()> {
        let arity = self.arity(name).ok_or_else(|| Error::UnknownOp {
            op: name.to_string(),
        })?;
        if arity.len() != argc {
            return Err(Error::Arity {
                op: name.to_string(),
                expected: arity.len(),
                got: argc,
            });
        }
        for (i, (got, expected)) in binder_lens.zip(&arity).enumerate() {
            if got != *expected {
                return Err(Error::BinderCount {
                    op: name.to_string(),
                    index: i,
                    expected: *expected,
                    got,
                });
            }
        }
        Ok(())
    }

    /// Parses the signature description format: one operation per line,
    /// `name: n1,n2,…,nk`, with `name:` alone declaring a constant.
    pub fn parse(text: &str) -> Result<BindingSignature> {
        let mut sig = BindingSignature::new();
        let mut pos = 0;
        for line in text.lines() {
            let trimmed = line.trim();
            if !trimmed.is_empty() {
                let (name, rest) = trimmed.split_once(':').ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("expected `name: arity` in signature line `{trimmed}`"),
                })?;
                let name = name.trim();
                if name.is_empty() {
                    return Err(Error::Parse {
                        pos,
                        msg: "empty operation name in signature".into(),
                    });
                }
                let mut arity = Vec::new();
                for part in rest.split(',') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    let n = part.parse::<usize>().map_err(|_| Error::Parse {
                        pos,
                        msg: format!("bad binder count `{part}` in signature"),
                    })?;
                    arity.push(n);
                }
                sig.declare(name, arity)?;
            }
            pos += line.len() + 1;
        }
        Ok(sig)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, arity) in &self.ops {
            out.push_str(name);
            out.push(':');
            let parts: Vec<String> = arity.iter().map(|n| n.to_string()).collect();
            if !parts.is_empty() {
                out.push(' ');
                out.push_str(&parts.join(","));
            }
            out.push('\n');
        }
        out
    }
}
