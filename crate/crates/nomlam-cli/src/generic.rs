//! Parser for terms over a user-supplied binding signature:
//! `op(x y. sub, sub2)` with binders before a dot, bare names for variables
//! and constants.

use nomlam::signature::{Arg, BindingSignature, RawTerm};
use nomlam::{Atom, Error};

pub fn parse_generic(src: &str, sig: &BindingSignature) -> Result<RawTerm, Error> {
    let mut p = P { src, at: 0, sig };
    p.ws();
    let t = p.term()?;
    p.ws();
    if p.at != src.len() {
        return Err(p.err("unexpected input after term"));
    }
    Ok(t)
}

struct P<'a> {
    src: &'a str,
    at: usize,
    sig: &'a BindingSignature,
}

impl<'a> P<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.at,
            msg: msg.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.src[self.at..].starts_with(|c: char| c.is_whitespace()) {
            self.at += self.src[self.at..].chars().next().unwrap().len_utf8();
        }
    }

    fn ident(&mut self) -> Option<String> {
        let rest = &self.src[self.at..];
        let mut len = 0;
        for c in rest.chars() {
            let ok = if len == 0 {
                c.is_alphabetic() || c == '#'
            } else {
                c.is_alphanumeric() || c == '_' || c == '\''
            };
            if !ok {
                break;
            }
            len += c.len_utf8();
        }
        if len == 0 {
            return None;
        }
        let s = rest[..len].to_string();
        self.at += len;
        Some(s)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.src[self.at..].starts_with(c) {
            self.at += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<RawTerm, Error> {
        self.ws();
        let Some(name) = self.ident() else {
            return Err(self.err("expected a name"));
        };
        self.ws();
        if self.eat('(') {
            let arity = self
                .sig
                .arity(&name)
                .ok_or_else(|| self.err(&format!("unknown operation `{name}`")))?;
            let mut args = Vec::new();
            self.ws();
            if !self.eat(')') {
                loop {
                    args.push(self.arg()?);
                    self.ws();
                    if self.eat(')') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(self.err("expected `,` or `)`"));
                    }
                }
            }
            if args.len() != arity.len() {
                return Err(Error::Arity {
                    op: name,
                    expected: arity.len(),
                    got: args.len(),
                });
            }
            for (i, (a, n)) in args.iter().zip(&arity).enumerate() {
                if a.binders.len() != *n {
                    return Err(Error::BinderCount {
                        op: name,
                        index: i,
                        expected: *n,
                        got: a.binders.len(),
                    });
                }
            }
            return Ok(RawTerm::Op(name, args));
        }
        // a bare name: a declared constant, or a variable
        if let Some(arity) = self.sig.arity(&name) {
            if arity.is_empty() {
                return Ok(RawTerm::Op(name, vec![]));
            }
            return Err(self.err(&format!("operation `{name}` needs arguments")));
        }
        if name.starts_with('#') {
            return Err(self.err(&format!("unknown constant `{name}`")));
        }
        Ok(RawTerm::Var(Atom::named(&name)))
    }

    /// One argument: an optional binder list terminated by `.`, then a term.
    fn arg(&mut self) -> Result<Arg<RawTerm>, Error> {
        self.ws();
        let save = self.at;
        let mut names = Vec::new();
        loop {
            self.ws();
            let Some(n) = self.ident() else { break };
            names.push(n);
            self.ws();
        }
        if !names.is_empty() && self.eat('.') {
            let binders = names.iter().map(|n| Atom::named(n)).collect();
            let t = self.term()?;
            return Ok(Arg::new(binders, t));
        }
        self.at = save;
        Ok(Arg::plain(self.term()?))
    }
}
