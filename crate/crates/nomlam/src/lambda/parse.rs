//! Parser for the lambda term grammar: identifiers as variables, `\x y. M`
//! or `λx y. M` for abstraction, juxtaposition for application, `_|_` or `⊥`
//! for bottom, `#name` for constants, and `let rec L = M and … in L` for
//! rational terms.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::atoms::Atom;
use crate::error::{Error, Result};
use crate::infinite::{InfTerm, Layer, RationalBuilder};
use crate::lambda::{app, bot, cst, lam, var, OP_APP, OP_BOT, OP_LAM};
use crate::signature::{Arg, RawTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lambda,
    Dot,
    LPar,
    RPar,
    Eq,
    Bot,
    Hash(String),
    Ident(String),
    Let,
    Rec,
    And,
    In,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '\\' | 'λ' => {
                it.next();
                out.push((pos, Tok::Lambda));
            }
            '.' => {
                it.next();
                out.push((pos, Tok::Dot));
            }
            '(' => {
                it.next();
                out.push((pos, Tok::LPar));
            }
            ')' => {
                it.next();
                out.push((pos, Tok::RPar));
            }
            '=' => {
                it.next();
                out.push((pos, Tok::Eq));
            }
            '⊥' => {
                it.next();
                out.push((pos, Tok::Bot));
            }
            '_' => {
                it.next();
                match (it.next(), it.next()) {
                    (Some((_, '|')), Some((_, '_'))) => out.push((pos, Tok::Bot)),
                    _ => return Err(err(pos, "expected `_|_`")),
                }
            }
            '#' => {
                it.next();
                let name = lex_ident(&mut it);
                if name.is_empty() {
                    return Err(err(pos, "expected a constant name after `#`"));
                }
                out.push((pos, Tok::Hash(name)));
            }
            c if c.is_alphabetic() => {
                let name = lex_ident(&mut it);
                let tok = match name.as_str() {
                    "let" => Tok::Let,
                    "rec" => Tok::Rec,
                    "and" => Tok::And,
                    "in" => Tok::In,
                    _ => Tok::Ident(name),
                };
                out.push((pos, tok));
            }
            _ => return Err(err(pos, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

fn lex_ident(it: &mut std::iter::Peekable<std::str::CharIndices>) -> String {
    let mut s = String::new();
    while let Some(&(_, c)) = it.peek() {
        if (c.is_alphanumeric() && c != 'λ') || c == '_' || c == '\'' {
            s.push(c);
            it.next();
        } else {
            break;
        }
    }
    s
}

/// The two shapes a source term can parse to.
#[derive(Debug, Clone)]
pub enum ParsedTerm {
    Finite(RawTerm),
    Infinite(InfTerm),
}

impl ParsedTerm {
    pub fn into_inf(self) -> InfTerm {
        match self {
            ParsedTerm::Finite(t) => InfTerm::embed(t),
            ParsedTerm::Infinite(t) => t,
        }
    }

    pub fn as_finite(&self) -> Option<&RawTerm> {
        match self {
            ParsedTerm::Finite(t) => Some(t),
            ParsedTerm::Infinite(_) => None,
        }
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    defs: &'a BTreeMap<String, RawTerm>,
    src_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|(p, _)| *p)
            .unwrap_or(self.src_len)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<()> {
        let pos = self.pos();
        match self.next() {
            Some(t) if &t == want => Ok(()),
            _ => Err(err(pos, format!("expected {what}"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(err(pos, format!("expected {what}"))),
        }
    }

    // --- finite terms ---

    fn term(&mut self, bound: &mut Vec<(String, Atom)>) -> Result<RawTerm> {
        if self.peek() == Some(&Tok::Lambda) {
            self.next();
            let mut names = Vec::new();
            while let Some(Tok::Ident(_)) = self.peek() {
                names.push(self.ident("binder")?);
            }
            if names.is_empty() {
                return Err(err(self.pos(), "expected at least one binder"));
            }
            self.expect(&Tok::Dot, "`.` after binders")?;
            for n in &names {
                let a = Atom::named(n);
                bound.push((n.clone(), a));
            }
            let body = self.term(bound)?;
            let mut t = body;
            for _ in 0..names.len() {
                let (_, a) = bound.pop().unwrap();
                t = lam(a, t);
            }
            return Ok(t);
        }
        let mut t = self.atom(bound)?;
        while self.starts_atom() {
            let a = self.atom(bound)?;
            t = app(t, a);
        }
        Ok(t)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_)) | Some(Tok::Bot) | Some(Tok::Hash(_)) | Some(Tok::LPar)
        )
    }

    fn atom(&mut self, bound: &mut Vec<(String, Atom)>) -> Result<RawTerm> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Ident(name)) => {
                if let Some((_, a)) = bound.iter().rev().find(|(n, _)| n == &name) {
                    return Ok(var(*a));
                }
                if let Some(t) = self.defs.get(&name) {
                    return Ok(t.clone());
                }
                Ok(var(Atom::named(&name)))
            }
            Some(Tok::Bot) => Ok(bot()),
            Some(Tok::Hash(name)) => Ok(cst(&name)),
            Some(Tok::LPar) => {
                let t = self.term(bound)?;
                self.expect(&Tok::RPar, "`)`")?;
                Ok(t)
            }
            _ => Err(err(pos, "expected a term")),
        }
    }

    // --- rational terms (`let rec … in L`) ---

    fn sterm(
        &mut self,
        bound: &mut Vec<(String, Atom)>,
        labels: &BTreeMap<String, usize>,
        b: &mut RationalBuilder,
    ) -> Result<usize> {
        if self.peek() == Some(&Tok::Lambda) {
            self.next();
            let mut names = Vec::new();
            while let Some(Tok::Ident(_)) = self.peek() {
                names.push(self.ident("binder")?);
            }
            if names.is_empty() {
                return Err(err(self.pos(), "expected at least one binder"));
            }
            self.expect(&Tok::Dot, "`.` after binders")?;
            for n in &names {
                bound.push((n.clone(), Atom::named(n)));
            }
            let body = self.sterm(bound, labels, b)?;
            let mut id = body;
            for _ in 0..names.len() {
                let (_, a) = bound.pop().unwrap();
                id = b.push(Layer::Op(OP_LAM.into(), vec![Arg::new(vec![a], id)]));
            }
            return Ok(id);
        }
        let mut id = self.satom(bound, labels, b)?;
        while self.starts_atom() {
            let a = self.satom(bound, labels, b)?;
            id = b.push(Layer::Op(
                OP_APP.into(),
                vec![Arg::plain(id), Arg::plain(a)],
            ));
        }
        Ok(id)
    }

    fn satom(
        &mut self,
        bound: &mut Vec<(String, Atom)>,
        labels: &BTreeMap<String, usize>,
        b: &mut RationalBuilder,
    ) -> Result<usize> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Ident(name)) => {
                if let Some((_, a)) = bound.iter().rev().find(|(n, _)| n == &name) {
                    return Ok(b.push(Layer::Var(*a)));
                }
                if let Some(&id) = labels.get(&name) {
                    return Ok(id);
                }
                if let Some(t) = self.defs.get(&name) {
                    return Ok(b.push_raw(t));
                }
                Ok(b.push(Layer::Var(Atom::named(&name))))
            }
            Some(Tok::Bot) => Ok(b.push(Layer::Op(OP_BOT.into(), vec![]))),
            Some(Tok::Hash(name)) => Ok(b.push(Layer::Op(format!("#{name}"), vec![]))),
            Some(Tok::LPar) => {
                let id = self.sterm(bound, labels, b)?;
                self.expect(&Tok::RPar, "`)`")?;
                Ok(id)
            }
            _ => Err(err(pos, "expected a term")),
        }
    }

    fn letrec(&mut self) -> Result<InfTerm> {
        self.expect(&Tok::Let, "`let`")?;
        self.expect(&Tok::Rec, "`rec`")?;
        // first pass over the definitions to learn the label names
        let mut defs: Vec<(String, usize, usize)> = Vec::new(); // name, tok range
        let mut labels: BTreeMap<String, usize> = BTreeMap::new();
        let mut b = RationalBuilder::new();
        loop {
            let pos = self.pos();
            let name = self.ident("a definition label")?;
            if labels.contains_key(&name) {
                return Err(err(pos, format!("duplicate label `{name}`")));
            }
            self.expect(&Tok::Eq, "`=` after label")?;
            let start = self.at;
            while !matches!(self.peek(), Some(Tok::And) | Some(Tok::In) | None) {
                self.at += 1;
            }
            let end = self.at;
            if start == end {
                return Err(err(pos, format!("empty definition for `{name}`")));
            }
            let id = b.reserve(Some(&name));
            labels.insert(name.clone(), id);
            defs.push((name, start, end));
            match self.peek() {
                Some(Tok::And) => {
                    self.next();
                }
                Some(Tok::In) => break,
                _ => return Err(err(self.pos(), "expected `and` or `in`")),
            }
        }
        self.expect(&Tok::In, "`in`")?;
        let root_pos = self.pos();
        let root_name = self.ident("the result label after `in`")?;
        let end_pos = self.pos();
        if self.peek().is_some() {
            return Err(err(end_pos, "unexpected input after `let rec … in label`"));
        }
        let Some(&root) = labels.get(&root_name) else {
            return Err(err(root_pos, format!("unknown label `{root_name}` after `in`")));
        };
        // second pass: parse each definition body into the system
        let after = self.at;
        let mut pending: Vec<(usize, usize, usize)> = Vec::new(); // label node, body node, pos
        for (name, start, end) in &defs {
            self.at = *start;
            let mut bound = Vec::new();
            let body = self.sterm(&mut bound, &labels, &mut b)?;
            if self.at != *end {
                return Err(err(
                    self.pos(),
                    format!("trailing input in definition of `{name}`"),
                ));
            }
            pending.push((labels[name], body, *start));
        }
        self.at = after;
        // copy each body's root layer into its reserved label node; bodies
        // that are bare label references resolve once their target is filled
        while !pending.is_empty() {
            let mut progress = false;
            let mut remaining = Vec::new();
            for (target, source, pos) in pending {
                if target == source {
                    return Err(err(pos, "definition is a bare reference to itself"));
                }
                match b.layer_of(source).cloned() {
                    Some(layer) => {
                        b.fill(target, layer);
                        progress = true;
                    }
                    None => remaining.push((target, source, pos)),
                }
            }
            pending = remaining;
            if !progress && !pending.is_empty() {
                return Err(err(pending[0].2, "definitions alias each other in a cycle"));
            }
        }
        let sys = b.build()?;
        Ok(InfTerm::rational(Arc::new(sys), root))
    }
}

/// Parses a source term, finite or rational.
pub fn parse(src: &str) -> Result<ParsedTerm> {
    parse_with_defs(src, &BTreeMap::new())
}

/// Parses with named definitions usable as identifiers in the term.
pub fn parse_with_defs(src: &str, defs: &BTreeMap<String, RawTerm>) -> Result<ParsedTerm> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        defs,
        src_len: src.len(),
    };
    if p.peek() == Some(&Tok::Let) {
        return Ok(ParsedTerm::Infinite(p.letrec()?));
    }
    let mut bound = Vec::new();
    let t = p.term(&mut bound)?;
    if p.peek().is_some() {
        return Err(err(p.pos(), "unexpected input after term"));
    }
    Ok(ParsedTerm::Finite(t))
}

/// Parses a finite term, rejecting `let rec`.
pub fn parse_term(src: &str) -> Result<RawTerm> {
    match parse(src)? {
        ParsedTerm::Finite(t) => Ok(t),
        ParsedTerm::Infinite(_) => Err(err(0, "expected a finite term, found `let rec`")),
    }
}

/// Parses a definitions file: newline-separated `name = term` entries.
/// Later definitions may use earlier ones.
pub fn parse_defs(src: &str) -> Result<BTreeMap<String, RawTerm>> {
    let mut defs = BTreeMap::new();
    let mut offset = 0;
    for line in src.lines() {
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with("--") {
            let Some((name, body)) = trimmed.split_once('=') else {
                return Err(err(offset, "expected `name = term` in definitions file"));
            };
            let name = name.trim().to_string();
            if name.is_empty() || !name.chars().next().unwrap().is_alphabetic() {
                return Err(err(offset, "bad definition name"));
            }
            let toks = lex(body)?;
            let mut p = Parser {
                toks,
                at: 0,
                defs: &defs,
                src_len: body.len(),
            };
            let mut bound = Vec::new();
            let t = p.term(&mut bound)?;
            if p.peek().is_some() {
                return Err(err(offset, "unexpected input after definition body"));
            }
            defs.insert(name, t);
        }
        offset += line.len() + 1;
    }
    Ok(defs)
}
