//! The lambda-calculus instance: the fixed binding signature with bottom and
//! constants, term constructors and views, parsing and printing, substitution
//! and the beta reduction strategies.

mod constants;
mod parse;
mod print;
mod reduce;
mod subst;

pub(crate) mod reduce_internal {
    pub(crate) use super::reduce::{analyze, Analysis};
}

pub use constants::{tr_from_constants, tr_to_constants, ConstMap};
pub use parse::{parse, parse_defs, parse_term, parse_with_defs, ParsedTerm};
pub use print::{print_class, print_inf, print_raw, print_trunc, PrintOpts};
pub use reduce::{
    beta_step, head_step, head_step_inf, is_hnf, is_tnf, is_whnf, is_zero_term, reduce,
    reduce_inf, top_step, top_step_inf, whead_step, whead_step_inf, InfOutcome,
    ReductionOutcome, Strategy, ZeroAnswer,
};
pub use subst::{subst_class, subst_inf, subst_raw, subst_trunc};

use std::sync::Arc;

use crate::atoms::{Atom, AtomSet};
use crate::error::Result;
use crate::infinite::{InfTerm, Layer, RationalBuilder, Unfold};
use crate::signature::{Arg, BindingSignature, RawTerm, TruncTerm};

pub const OP_LAM: &str = "lam";
pub const OP_APP: &str = "app";
pub const OP_BOT: &str = "bot";
/// Bottom of unknown status: a fuel-exhausted tree node that might still be
/// meaningful. Collapsed to [`OP_BOT`] only when the caller opts in.
pub const OP_UBOT: &str = "ubot";

/// The binding signature of the lambda calculus with bottom: `lam` binds one
/// name, `app` takes two plain arguments, `bot` and `ubot` are constants, and
/// any `#name` is a constant from the open alphabet.
pub fn signature() -> BindingSignature {
    let mut sig = BindingSignature::new();
    sig.declare(OP_LAM, vec![1]).unwrap();
    sig.declare(OP_APP, vec![0, 0]).unwrap();
    sig.declare(OP_BOT, vec![]).unwrap();
    sig.declare(OP_UBOT, vec![]).unwrap();
    sig.with_open_constants()
}

pub fn var(a: Atom) -> RawTerm {
    RawTerm::Var(a)
}

pub fn lam(x: Atom, body: RawTerm) -> RawTerm {
    RawTerm::Op(OP_LAM.into(), vec![Arg::new(vec![x], body)])
}

pub fn lams(xs: &[Atom], body: RawTerm) -> RawTerm {
    xs.iter().rev().fold(body, |b, x| lam(*x, b))
}

pub fn app(f: RawTerm, a: RawTerm) -> RawTerm {
    RawTerm::Op(OP_APP.into(), vec![Arg::plain(f), Arg::plain(a)])
}

pub fn apps(head: RawTerm, args: impl IntoIterator<Item = RawTerm>) -> RawTerm {
    args.into_iter().fold(head, app)
}

pub fn bot() -> RawTerm {
    RawTerm::Op(OP_BOT.into(), vec![])
}

pub fn ubot() -> RawTerm {
    RawTerm::Op(OP_UBOT.into(), vec![])
}

/// A constant `#name` from the open alphabet, with empty support.
pub fn cst(name: &str) -> RawTerm {
    RawTerm::Op(format!("#{name}"), vec![])
}

/// A structured view of a lambda-signature raw term.
///
/// Panics on terms that do not conform to [`signature`]; parse results and
/// the constructors above always do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View<'a> {
    Var(Atom),
    Bot,
    UBot,
    Const(&'a str),
    Lam(Atom, &'a RawTerm),
    App(&'a RawTerm, &'a RawTerm),
}

pub fn view(t: &RawTerm) -> View<'_> {
    match t {
        RawTerm::Var(a) => View::Var(*a),
        RawTerm::Op(f, args) => match (f.as_str(), args.as_slice()) {
            (OP_LAM, [arg]) if arg.binders.len() == 1 => View::Lam(arg.binders[0], &arg.term),
            (OP_APP, [l, r]) if l.binders.is_empty() && r.binders.is_empty() => {
                View::App(&l.term, &r.term)
            }
            (OP_BOT, []) => View::Bot,
            (OP_UBOT, []) => View::UBot,
            (c, []) if c.starts_with('#') => View::Const(&f[1..]),
            _ => panic!("not a lambda-signature term: {t:?}"),
        },
    }
}

/// The truncation analogue of [`View`], with a `Star` case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TView<'a> {
    Star,
    Var(Atom),
    Bot,
    UBot,
    Const(&'a str),
    Lam(Atom, &'a TruncTerm),
    App(&'a TruncTerm, &'a TruncTerm),
}

pub fn tview(t: &TruncTerm) -> TView<'_> {
    match t {
        TruncTerm::Star => TView::Star,
        TruncTerm::Var(a) => TView::Var(*a),
        TruncTerm::Op(f, args) => match (f.as_str(), args.as_slice()) {
            (OP_LAM, [arg]) if arg.binders.len() == 1 => TView::Lam(arg.binders[0], &arg.term),
            (OP_APP, [l, r]) if l.binders.is_empty() && r.binders.is_empty() => {
                TView::App(&l.term, &r.term)
            }
            (OP_BOT, []) => TView::Bot,
            (OP_UBOT, []) => TView::UBot,
            (c, []) if c.starts_with('#') => TView::Const(&f[1..]),
            _ => panic!("not a lambda-signature truncation: {t:?}"),
        },
    }
}

/// View of one unfolding layer of an infinitary lambda term.
#[derive(Debug, Clone)]
pub enum LView {
    Var(Atom),
    Bot,
    UBot,
    Const(String),
    Lam(Atom, InfTerm),
    App(InfTerm, InfTerm),
}

pub fn view_layer(layer: &Layer<InfTerm>) -> LView {
    match layer {
        Layer::Var(a) => LView::Var(*a),
        Layer::Op(f, args) => match (f.as_str(), args.as_slice()) {
            (OP_LAM, [arg]) if arg.binders.len() == 1 => {
                LView::Lam(arg.binders[0], arg.term.clone())
            }
            (OP_APP, [l, r]) if l.binders.is_empty() && r.binders.is_empty() => {
                LView::App(l.term.clone(), r.term.clone())
            }
            (OP_BOT, []) => LView::Bot,
            (OP_UBOT, []) => LView::UBot,
            (c, []) if c.starts_with('#') => LView::Const(c[1..].to_string()),
            _ => panic!("not a lambda-signature layer: {layer:?}"),
        },
    }
}

pub fn layer_lam<R>(x: Atom, body: R) -> Layer<R> {
    Layer::Op(OP_LAM.into(), vec![Arg::new(vec![x], body)])
}

pub fn layer_app<R>(f: R, a: R) -> Layer<R> {
    Layer::Op(OP_APP.into(), vec![Arg::plain(f), Arg::plain(a)])
}

pub fn layer_bot<R>() -> Layer<R> {
    Layer::Op(OP_BOT.into(), vec![])
}

pub fn layer_ubot<R>() -> Layer<R> {
    Layer::Op(OP_UBOT.into(), vec![])
}

/// The Y combinator `\f. (\x. f (x x)) (\x. f (x x))`.
pub fn y_combinator() -> RawTerm {
    let f = Atom::from_index(0);
    let x = Atom::from_index(1);
    let half = lam(x, app(var(f), app(var(x), var(x))));
    lam(f, app(half.clone(), half))
}

/// `fix m`, the Y combinator applied to `m`.
pub fn fix(m: RawTerm) -> RawTerm {
    app(y_combinator(), m)
}

/// `omega = \x. x x` and `Omega = omega omega`.
pub fn omega() -> RawTerm {
    let x = Atom::from_index(0);
    lam(x, app(var(x), var(x)))
}

pub fn big_omega() -> RawTerm {
    app(omega(), omega())
}

struct Ogre {
    level: u64,
}

impl Unfold for Ogre {
    fn unfold(&self) -> Result<Layer<InfTerm>> {
        let binder = Atom::from_index(self.level);
        let below = InfTerm::producer(
            Arc::new(Ogre {
                level: self.level + 1,
            }),
            AtomSet::new(),
        );
        Ok(layer_lam(binder, below))
    }
}

/// The all-binders term `\x1. \x2. \x3. …` with pairwise distinct binders.
pub fn ogre() -> InfTerm {
    InfTerm::producer(Arc::new(Ogre { level: 0 }), AtomSet::new())
}

/// The single-equation encoding `rec T = \x. T` of the same tree, reusing
/// one binder at every level.
pub fn ogre_rational() -> InfTerm {
    let mut b = RationalBuilder::new();
    let t = b.reserve(Some("T"));
    b.fill(
        t,
        Layer::Op(
            OP_LAM.into(),
            vec![Arg::new(vec![Atom::from_index(0)], t)],
        ),
    );
    InfTerm::rational(Arc::new(b.build().expect("closed one-equation system")), t)
}

/// `infbv = \x0. \x1. x0 x1 (\x2. x0 x1 x2 (\x3. …))`: finitely many free
/// variables (none) but infinitely many bound ones, all distinct and all
/// needed. State `k` produces the spine `x0 … x_{k-1} (\xk. …)`.
struct InfbvSpine {
    k: u64,
}

fn infbv_vars(k: u64) -> AtomSet {
    (0..k).map(Atom::from_index).collect()
}

impl Unfold for InfbvSpine {
    fn unfold(&self) -> Result<Layer<InfTerm>> {
        let k = self.k;
        let spine = apps(
            var(Atom::from_index(0)),
            (1..k).map(|i| var(Atom::from_index(i))),
        );
        let deeper = InfTerm::producer(Arc::new(InfbvSpine { k: k + 1 }), infbv_vars(k + 1));
        let abs = InfTerm::cons(layer_lam(Atom::from_index(k), deeper), infbv_vars(k));
        Ok(layer_app(InfTerm::embed(spine), abs))
    }
}

pub fn infbv() -> InfTerm {
    let x0 = Atom::from_index(0);
    let x1 = Atom::from_index(1);
    let body = InfTerm::producer(Arc::new(InfbvSpine { k: 2 }), infbv_vars(2));
    let inner = InfTerm::cons(layer_lam(x1, body), infbv_vars(1));
    InfTerm::cons(layer_lam(x0, inner), AtomSet::new())
}

/// `Pinfbv = fix (\f x y. x y (f (x y)))`, the finite term whose Böhm tree
/// is `infbv`.
pub fn pinfbv() -> RawTerm {
    let f = Atom::from_index(10);
    let x = Atom::from_index(11);
    let y = Atom::from_index(12);
    let body = app(
        app(var(x), var(y)),
        app(var(f), app(var(x), var(y))),
    );
    fix(lams(&[f, x, y], body))
}

struct AllConst {
    k: u64,
}

impl Unfold for AllConst {
    fn unfold(&self) -> Result<Layer<InfTerm>> {
        let head = InfTerm::embed(cst(&format!("c{}", self.k)));
        let tail = InfTerm::producer(Arc::new(AllConst { k: self.k + 1 }), AtomSet::new());
        Ok(layer_app(head, tail))
    }
}

/// `allconst = #c0 (#c1 (#c2 …))`: the constants stand in for the free
/// variables of `allfv`, so the term is closed and has empty support even
/// though it mentions infinitely many constants.
pub fn allconst() -> InfTerm {
    InfTerm::producer(Arc::new(AllConst { k: 0 }), AtomSet::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::alpha_eq_trunc;

    fn a(i: u64) -> Atom {
        Atom::from_index(i)
    }

    #[test]
    fn views_round_trip() {
        let t = lam(a(0), app(var(a(0)), bot()));
        match view(&t) {
            View::Lam(x, body) => {
                assert_eq!(x, a(0));
                match view(body) {
                    View::App(f, arg) => {
                        assert_eq!(view(f), View::Var(a(0)));
                        assert_eq!(view(arg), View::Bot);
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(view(&cst("k")), View::Const("k"));
    }

    #[test]
    fn signature_accepts_constructed_terms() {
        let sig = signature();
        let t = lam(a(0), app(var(a(0)), app(bot(), cst("c7"))));
        sig.check_raw(&t).unwrap();
    }

    #[test]
    fn ogre_truncations() {
        let t = ogre();
        // depth 3: \x1. \x2. \x3. *
        let expect = lams(&[a(0), a(1), a(2)], var(a(9))).truncate(3);
        assert!(alpha_eq_trunc(&t.truncate(3).unwrap(), &expect));
        // alpha-equal to the single-binder rational encoding at depth 20
        assert!(t.alpha_eq_at(&ogre_rational(), 20).unwrap());
        assert!(t.support().is_empty());
    }

    #[test]
    fn infbv_truncations() {
        let t = infbv();
        assert!(t.support().is_empty());
        // depth 2: \x0. \x1. *
        let expect = lams(&[a(0), a(1)], var(a(9))).truncate(2);
        assert!(alpha_eq_trunc(&t.truncate(2).unwrap(), &expect));
        // depth 5: \a.\b. (a b) (\c. * *)
        let d5 = t.truncate(5).unwrap();
        let expect5 = lams(
            &[a(0), a(1)],
            app(
                app(var(a(0)), var(a(1))),
                lam(a(2), app(var(a(3)), var(a(4)))),
            ),
        )
        .truncate(5);
        assert!(alpha_eq_trunc(&d5, &expect5));
        // ogre and infbv agree up to depth 2 and differ at 3
        let d = ogre().dist_alpha(&t, 8).unwrap();
        assert_eq!(
            d,
            crate::infinite::DistBound::Exact(crate::signature::Dyadic::pow2_neg(2))
        );
        assert!(ogre().alpha_eq_at(&t, 2).unwrap());
        assert!(!ogre().alpha_eq_at(&t, 3).unwrap());
    }

    #[test]
    fn inf_terms_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>(_: &T) {}
        let t = infbv();
        assert_send_sync(&t);
        let handle = {
            let t = t.clone();
            std::thread::spawn(move || t.truncate(4).unwrap())
        };
        let here = t.truncate(4).unwrap();
        assert_eq!(handle.join().unwrap(), here);
    }

    #[test]
    fn allconst_is_closed() {
        let t = allconst();
        assert!(t.support().is_empty());
        let tr = t.truncate(3).unwrap();
        assert!(tr.fv().is_empty());
        assert!(tr.contains_op("#c0"));
        assert!(tr.contains_op("#c1"));
    }
}
