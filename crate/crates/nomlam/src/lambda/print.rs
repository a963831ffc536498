//! Pretty-printing back into the term grammar. Finite and truncated terms
//! print directly; rational terms print as `let rec` systems that re-parse
//! to observationally equal terms.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::infinite::{InfTerm, Layer, RationalSystem};
use crate::signature::{AlphaClass, RawTerm, TruncTerm};

#[derive(Clone, Copy, Debug, Default)]
pub struct PrintOpts {
    /// Emit `λ` and `⊥` instead of `\` and `_|_`.
    pub unicode: bool,
}

impl PrintOpts {
    pub fn unicode() -> PrintOpts {
        PrintOpts { unicode: true }
    }

    fn lambda(&self) -> &'static str {
        if self.unicode {
            "λ"
        } else {
            "\\"
        }
    }

    fn bot(&self) -> &'static str {
        if self.unicode {
            "⊥"
        } else {
            "_|_"
        }
    }

    fn ubot(&self) -> &'static str {
        if self.unicode {
            "⊥?"
        } else {
            "_|_?"
        }
    }
}

pub fn print_raw(t: &RawTerm, o: &PrintOpts) -> String {
    print_trunc(&t.to_trunc(), o)
}

pub fn print_class(c: &AlphaClass, o: &PrintOpts) -> String {
    print_trunc(c.canonical(), o)
}

pub fn print_trunc(t: &TruncTerm, o: &PrintOpts) -> String {
    let mut s = String::new();
    go(t, 0, o, &mut s);
    s
}

// precedence: 0 = anywhere, 1 = function position, 2 = argument position
fn go(t: &TruncTerm, prec: u8, o: &PrintOpts, out: &mut String) {
    match t {
        TruncTerm::Star => out.push('*'),
        TruncTerm::Var(a) => out.push_str(&a.name()),
        TruncTerm::Op(f, args) => match (f.as_str(), args.as_slice()) {
            ("lam", [arg]) if arg.binders.len() == 1 => {
                let parens = prec > 0;
                if parens {
                    out.push('(');
                }
                out.push_str(o.lambda());
                out.push_str(&arg.binders[0].name());
                // collapse nested abstractions into one binder list
                let mut body = &arg.term;
                while let TruncTerm::Op(g, inner) = body {
                    match (g.as_str(), inner.as_slice()) {
                        ("lam", [a2]) if a2.binders.len() == 1 => {
                            out.push(' ');
                            out.push_str(&a2.binders[0].name());
                            body = &a2.term;
                        }
                        _ => break,
                    }
                }
                out.push_str(". ");
                go(body, 0, o, out);
                if parens {
                    out.push(')');
                }
            }
            ("app", [l, r]) if l.binders.is_empty() && r.binders.is_empty() => {
                let parens = prec > 1;
                if parens {
                    out.push('(');
                }
                go(&l.term, 1, o, out);
                out.push(' ');
                go(&r.term, 2, o, out);
                if parens {
                    out.push(')');
                }
            }
            ("bot", []) => out.push_str(o.bot()),
            ("ubot", []) => out.push_str(o.ubot()),
            (c, []) if c.starts_with('#') => out.push_str(c),
            _ => {
                // generic signature operation: op(x y. t, t2)
                out.push_str(f);
                if !args.is_empty() {
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        for b in &a.binders {
                            out.push_str(&b.name());
                            out.push(' ');
                        }
                        if !a.binders.is_empty() {
                            out.pop();
                            out.push_str(". ");
                        }
                        go(&a.term, 0, o, out);
                    }
                    out.push(')');
                }
            }
        },
    }
}

/// Prints an infinitary term: finite embeddings print as their raw term,
/// rational terms as a `let rec` system. Producer-driven terms have no
/// faithful finite text; print a truncation instead.
pub fn print_inf(t: &InfTerm, o: &PrintOpts) -> Result<String> {
    if let Some(raw) = t.as_finite() {
        return Ok(print_raw(raw, o));
    }
    if let Some((sys, root)) = t.as_rational() {
        return Ok(print_rational(sys, root, o));
    }
    Err(Error::NotRational)
}

fn print_rational(sys: &RationalSystem, root: usize, o: &PrintOpts) -> String {
    // which reachable nodes need a name: the root, nodes referenced more
    // than once, and cycle targets
    let mut reach = Vec::new();
    let mut seen = vec![false; sys.len()];
    let mut indeg = vec![0usize; sys.len()];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(i) = stack.pop() {
        reach.push(i);
        if let Layer::Op(_, args) = sys.layer(i) {
            for a in args {
                indeg[a.term] += 1;
                if !seen[a.term] {
                    seen[a.term] = true;
                    stack.push(a.term);
                }
            }
        }
    }
    let mut needs_label = vec![false; sys.len()];
    needs_label[root] = true;
    for &i in &reach {
        if indeg[i] > 1 {
            needs_label[i] = true;
        }
    }
    mark_cycle_targets(sys, root, &mut needs_label);

    // choose names, preferring stored labels, avoiding variable names
    let mut taken: BTreeSet<String> = BTreeSet::new();
    for &i in &reach {
        match sys.layer(i) {
            Layer::Var(a) => {
                taken.insert(a.name());
            }
            Layer::Op(_, args) => {
                for arg in args {
                    for b in &arg.binders {
                        taken.insert(b.name());
                    }
                }
            }
        }
    }
    for kw in ["let", "rec", "and", "in"] {
        taken.insert(kw.to_string());
    }
    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    let mut counter = 0usize;
    for &i in &reach {
        if needs_label[i] {
            let name = match sys.label(i) {
                Some(l) if !taken.contains(l) => l.to_string(),
                _ => loop {
                    let cand = format!("t{counter}");
                    counter += 1;
                    if !taken.contains(&cand) {
                        break cand;
                    }
                },
            };
            taken.insert(name.clone());
            names.insert(i, name);
        }
    }

    fn render(
        sys: &RationalSystem,
        i: usize,
        prec: u8,
        names: &BTreeMap<usize, String>,
        def_of: usize,
        o: &PrintOpts,
        out: &mut String,
    ) {
        if i != def_of {
            if let Some(n) = names.get(&i) {
                out.push_str(n);
                return;
            }
        }
        match sys.layer(i) {
            Layer::Var(a) => out.push_str(&a.name()),
            Layer::Op(f, args) => match (f.as_str(), args.as_slice()) {
                ("lam", [arg]) if arg.binders.len() == 1 => {
                    let parens = prec > 0;
                    if parens {
                        out.push('(');
                    }
                    out.push_str(o.lambda());
                    out.push_str(&arg.binders[0].name());
                    out.push_str(". ");
                    render(sys, arg.term, 0, names, usize::MAX, o, out);
                    if parens {
                        out.push(')');
                    }
                }
                ("app", [l, r]) if l.binders.is_empty() && r.binders.is_empty() => {
                    let parens = prec > 1;
                    if parens {
                        out.push('(');
                    }
                    render(sys, l.term, 1, names, usize::MAX, o, out);
                    out.push(' ');
                    render(sys, r.term, 2, names, usize::MAX, o, out);
                    if parens {
                        out.push(')');
                    }
                }
                ("bot", []) => out.push_str(o.bot()),
                ("ubot", []) => out.push_str(o.ubot()),
                (c, []) if c.starts_with('#') => out.push_str(c),
                _ => {
                    out.push_str(f);
                    if !args.is_empty() {
                        out.push('(');
                        for (k, a) in args.iter().enumerate() {
                            if k > 0 {
                                out.push_str(", ");
                            }
                            for b in &a.binders {
                                out.push_str(&b.name());
                                out.push(' ');
                            }
                            if !a.binders.is_empty() {
                                out.pop();
                                out.push_str(". ");
                            }
                            render(sys, a.term, 0, names, usize::MAX, o, out);
                        }
                        out.push(')');
                    }
                }
            },
        }
    }

    let mut out = String::from("let rec ");
    let mut labelled: Vec<usize> = names.keys().copied().collect();
    labelled.sort_by_key(|i| (*i != root, *i)); // root's definition first
    for (k, i) in labelled.iter().enumerate() {
        if k > 0 {
            out.push_str(" and ");
        }
        out.push_str(&names[i]);
        out.push_str(" = ");
        render(sys, *i, 0, &names, *i, o, &mut out);
    }
    out.push_str(" in ");
    out.push_str(&names[&root]);
    out
}

fn mark_cycle_targets(sys: &RationalSystem, root: usize, needs_label: &mut [bool]) {
    // iterative DFS; an edge into a node still on the stack closes a cycle
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let mut color = vec![Color::White; sys.len()];
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    color[root] = Color::Grey;
    while let Some(&(i, next)) = stack.last() {
        let children: Vec<usize> = match sys.layer(i) {
            Layer::Var(_) => Vec::new(),
            Layer::Op(_, args) => args.iter().map(|a| a.term).collect(),
        };
        if next < children.len() {
            stack.last_mut().unwrap().1 += 1;
            let c = children[next];
            match color[c] {
                Color::Grey => needs_label[c] = true,
                Color::White => {
                    color[c] = Color::Grey;
                    stack.push((c, 0));
                }
                Color::Black => {}
            }
        } else {
            color[i] = Color::Black;
            stack.pop();
        }
    }
}
