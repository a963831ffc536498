//! Shared test support: a deterministic generator for random lambda terms,
//! and the independent oracles the implementation is checked against
//! (naive full-freshening substitution, the exhaustive swap-based
//! alpha-equivalence check, and the definitional maximal-support safety
//! brute force).

#![allow(dead_code)]

use nomlam::atoms::{fresh_atoms, Atom, Perm};
use nomlam::lambda::{app, bot, cst, lam, var, view, View};
use nomlam::nominal::Nominal;
use nomlam::signature::{alpha_eq, make_safe, Arg, RawTerm, Skeleton, TruncTerm};

/// A small deterministic xorshift generator, so test corpora are
/// reproducible without extra dependencies.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg(seed.max(1).wrapping_mul(0x9e3779b97f4a7c15))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n.max(1)
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.below(100) < percent
    }
}

#[derive(Clone)]
pub struct GenCfg {
    pub max_height: usize,
    pub atoms: Vec<Atom>,
    pub allow_bot: bool,
    pub allow_const: bool,
    /// Only reference variables bound in scope (generates closed terms).
    pub closed: bool,
}

impl GenCfg {
    pub fn small() -> GenCfg {
        GenCfg {
            max_height: 6,
            atoms: (0..5).map(Atom::from_index).collect(),
            allow_bot: false,
            allow_const: false,
            closed: false,
        }
    }
}

pub fn gen_term(rng: &mut Lcg, cfg: &GenCfg) -> RawTerm {
    fn go(rng: &mut Lcg, cfg: &GenCfg, height: usize, scope: &mut Vec<Atom>) -> RawTerm {
        let leaf = height <= 1 || rng.chance(25);
        if leaf {
            let mut choices: Vec<u8> = Vec::new();
            if !cfg.closed || !scope.is_empty() {
                choices.push(0); // variable
            }
            if cfg.allow_bot {
                choices.push(1);
            }
            if cfg.allow_const {
                choices.push(2);
            }
            if choices.is_empty() {
                // closed generation with nothing in scope: the identity
                let x = cfg.atoms[rng.below(cfg.atoms.len() as u64) as usize];
                return lam(x, var(x));
            }
            return match choices[rng.below(choices.len() as u64) as usize] {
                0 => {
                    let pool: &[Atom] = if cfg.closed { scope } else { &cfg.atoms };
                    var(pool[rng.below(pool.len() as u64) as usize])
                }
                1 => bot(),
                _ => cst(&format!("k{}", rng.below(3))),
            };
        }
        if rng.chance(45) {
            let x = cfg.atoms[rng.below(cfg.atoms.len() as u64) as usize];
            scope.push(x);
            let body = go(rng, cfg, height - 1, scope);
            scope.pop();
            lam(x, body)
        } else {
            let f = go(rng, cfg, height - 1, scope);
            let a = go(rng, cfg, height - 1, scope);
            app(f, a)
        }
    }
    let mut scope = Vec::new();
    go(rng, cfg, cfg.max_height, &mut scope)
}

pub fn gen_perm(rng: &mut Lcg, pool: &[Atom], swaps: usize) -> Perm {
    let mut p = Perm::identity();
    for _ in 0..swaps {
        let a = pool[rng.below(pool.len() as u64) as usize];
        let b = pool[rng.below(pool.len() as u64) as usize];
        p = p.compose(&Perm::swap(a, b));
    }
    p
}

/// Naive rename-then-substitute oracle: freshen every binder of `m` away
/// from `x`, the free variables of `n` and everything else in sight, then
/// replace free occurrences of `x` literally. Independent of the
/// implementation's on-the-fly renaming.
pub fn subst_naive(m: &RawTerm, x: Atom, n: &RawTerm) -> RawTerm {
    let mut avoid = n.vars();
    avoid.insert(x);
    avoid.extend(m.vars());
    let safe = make_safe(m, &avoid);
    fn replace(t: &RawTerm, x: Atom, n: &RawTerm) -> RawTerm {
        match view(t) {
            View::Var(a) if a == x => n.clone(),
            View::Var(_) | View::Bot | View::UBot | View::Const(_) => t.clone(),
            View::Lam(y, b) => lam(y, replace(b, x, n)),
            View::App(f, a) => app(replace(f, x, n), replace(a, x, n)),
        }
    }
    replace(&safe, x, n)
}

fn binder_perm(xs: &[Atom], zs: &[Atom]) -> Perm {
    let mut p = Perm::identity();
    for (x, z) in xs.iter().zip(zs) {
        p = p.compose(&Perm::swap(*x, *z));
    }
    p
}

/// The definitional alpha-equivalence decided with several distinct choices
/// of fresh name tuples at every binder, checking that all choices agree.
pub fn alpha_oracle(t: &RawTerm, s: &RawTerm) -> bool {
    fn go(t: &TruncTerm, s: &TruncTerm) -> bool {
        match (t, s) {
            (TruncTerm::Star, TruncTerm::Star) => true,
            (TruncTerm::Var(a), TruncTerm::Var(b)) => a == b,
            (TruncTerm::Op(f, fa), TruncTerm::Op(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return false;
                }
                fa.iter().zip(ga).all(|(l, r)| {
                    if l.binders.len() != r.binders.len() {
                        return false;
                    }
                    if l.binders.is_empty() {
                        return go(&l.term, &r.term);
                    }
                    let mut avoid = l.term.vars();
                    avoid.extend(r.term.vars());
                    avoid.extend(l.binders.iter().copied());
                    avoid.extend(r.binders.iter().copied());
                    // two disjoint fresh tuples; the definition promises the
                    // choice does not matter
                    let k = l.binders.len();
                    let both = fresh_atoms(2 * k, &avoid);
                    let first = go(
                        &l.term.act(&binder_perm(&l.binders, &both[..k])),
                        &r.term.act(&binder_perm(&r.binders, &both[..k])),
                    );
                    let second = go(
                        &l.term.act(&binder_perm(&l.binders, &both[k..])),
                        &r.term.act(&binder_perm(&r.binders, &both[k..])),
                    );
                    assert_eq!(first, second, "fresh choice changed the verdict");
                    first
                })
            }
            _ => false,
        }
    }
    go(&t.to_trunc(), &s.to_trunc())
}

/// The definitional safety check: enumerate alpha-variants of `t` over a
/// bounded atom pool by reassigning every binder slot, and ask whether `t`
/// realizes the maximal support among them.
pub fn is_safe_oracle(t: &RawTerm) -> bool {
    let tr = t.to_trunc();
    let skel = Skeleton::of(&tr);
    let slots = skel.slot_levels.len();
    if slots == 0 {
        return true;
    }
    let mut pool: Vec<Atom> = t.vars().into_iter().collect();
    let extra = fresh_atoms(slots + 1, &t.vars());
    pool.extend(extra);
    let mut max = t.vars().len();
    let mut asn = vec![0usize; slots];
    loop {
        let atoms: Vec<Atom> = asn.iter().map(|&i| pool[i]).collect();
        let candidate = skel.instantiate(&atoms);
        if nomlam::signature::alpha_eq_trunc(&candidate, &tr) {
            max = max.max(candidate.vars().len());
        }
        // next assignment in the pool^slots product
        let mut i = 0;
        loop {
            if i == slots {
                return t.vars().len() == max;
            }
            asn[i] += 1;
            if asn[i] < pool.len() {
                break;
            }
            asn[i] = 0;
            i += 1;
        }
    }
}

/// All pure lambda terms of the given height over the atom pool.
pub fn enumerate_terms(atoms: &[Atom], height: usize) -> Vec<RawTerm> {
    if height == 0 {
        return Vec::new();
    }
    let mut out: Vec<RawTerm> = atoms.iter().map(|a| var(*a)).collect();
    if height > 1 {
        let smaller = enumerate_terms(atoms, height - 1);
        for x in atoms {
            for b in &smaller {
                out.push(lam(*x, b.clone()));
            }
        }
        for f in &smaller {
            for a in &smaller {
                out.push(app(f.clone(), a.clone()));
            }
        }
    }
    out
}

/// A cheap structural key erasing atoms, for bucketing enumerated terms.
pub fn shape_key(t: &RawTerm) -> String {
    match view(t) {
        View::Var(_) => "v".into(),
        View::Bot => "b".into(),
        View::UBot => "u".into(),
        View::Const(_) => "c".into(),
        View::Lam(_, b) => format!("l{}", shape_key(b)),
        View::App(f, a) => format!("a({})({})", shape_key(f), shape_key(a)),
    }
}

/// Replaces one randomly chosen leaf of a closed term by a back-reference
/// to the root, yielding a closed rational term.
pub fn tie_knot(rng: &mut Lcg, t: &RawTerm) -> nomlam::InfTerm {
    use nomlam::infinite::RationalBuilder;
    use nomlam::Layer;

    fn count_leaves(t: &RawTerm) -> usize {
        match t {
            RawTerm::Var(_) => 1,
            RawTerm::Op(_, args) if args.is_empty() => 1,
            RawTerm::Op(_, args) => args.iter().map(|a| count_leaves(&a.term)).sum(),
        }
    }
    fn build(
        b: &mut RationalBuilder,
        t: &RawTerm,
        root: usize,
        target: &mut isize,
        out_id: Option<usize>,
    ) -> usize {
        let leafish = matches!(t, RawTerm::Var(_))
            || matches!(t, RawTerm::Op(_, args) if args.is_empty());
        if leafish {
            *target -= 1;
            if *target == -1 {
                return root;
            }
            let layer = match t {
                RawTerm::Var(a) => Layer::Var(*a),
                RawTerm::Op(f, _) => Layer::Op(f.clone(), vec![]),
            };
            return match out_id {
                Some(id) => {
                    b.fill(id, layer);
                    id
                }
                None => b.push(layer),
            };
        }
        match t {
            RawTerm::Op(f, args) => {
                let children: Vec<Arg<usize>> = args
                    .iter()
                    .map(|a| {
                        Arg::new(a.binders.clone(), build(b, &a.term, root, target, None))
                    })
                    .collect();
                let layer = Layer::Op(f.clone(), children);
                match out_id {
                    Some(id) => {
                        b.fill(id, layer);
                        id
                    }
                    None => b.push(layer),
                }
            }
            RawTerm::Var(_) => unreachable!(),
        }
    }

    let leaves = count_leaves(t);
    let mut target = rng.below(leaves as u64) as isize;
    let mut b = RationalBuilder::new();
    let root = b.reserve(Some("T"));
    // if the chosen leaf is the whole term, fall back to embedding
    if matches!(t, RawTerm::Var(_)) || matches!(t, RawTerm::Op(_, a) if a.is_empty()) {
        return nomlam::InfTerm::embed(t.clone());
    }
    build(&mut b, t, root, &mut target, Some(root));
    nomlam::InfTerm::rational(std::sync::Arc::new(b.build().unwrap()), root)
}

/// Asserts alpha-equality with a readable failure.
pub fn assert_alpha(l: &RawTerm, r: &RawTerm, what: &str) {
    assert!(
        alpha_eq(l, r),
        "{what}: terms differ up to alpha:\n  left:  {l:?}\n  right: {r:?}"
    );
}
