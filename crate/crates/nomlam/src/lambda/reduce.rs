//! The beta reduction strategies: head, weak head and top reduction, their
//! normal forms, fuel-bounded iteration with cycle detection, and the zero
//! term test.

use std::collections::BTreeSet;

use crate::atoms::Atom;
use crate::error::{Error, Result};
use crate::infinite::InfTerm;
use crate::lambda::subst::{subst_inf, subst_raw};
use crate::lambda::{app, lam, view, view_layer, LView, View};
use crate::signature::{canonicalize, RawTerm, TruncTerm};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Head,
    WHead,
    Top,
}

/// Result of fuel-bounded reduction. `Diverges` is reported only when a
/// syntactically alpha-equal term recurs in the reduction trace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReductionOutcome {
    Reached(RawTerm),
    Diverges(RawTerm),
    FuelExhausted(RawTerm, u64),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZeroAnswer {
    Yes,
    No,
    Unknown,
}

fn strip_lams(t: &RawTerm) -> (Vec<Atom>, &RawTerm) {
    let mut xs = Vec::new();
    let mut cur = t;
    while let View::Lam(x, b) = view(cur) {
        xs.push(x);
        cur = b;
    }
    (xs, cur)
}

/// Splits an application spine: `peel_apps(h a1 … am) = (h, [a1, …, am])`.
fn peel_apps(t: &RawTerm) -> (&RawTerm, Vec<&RawTerm>) {
    let mut args = Vec::new();
    let mut cur = t;
    while let View::App(f, a) = view(cur) {
        args.push(a);
        cur = f;
    }
    args.reverse();
    (cur, args)
}

fn rebuild_apps(head: RawTerm, args: &[&RawTerm]) -> RawTerm {
    args.iter().fold(head, |h, a| app(h, (*a).clone()))
}

/// Head normal form: `\x1…xn. y M1 … Mm` with `y` a variable (constants act
/// as free variables).
pub fn is_hnf(t: &RawTerm) -> bool {
    let (_, core) = strip_lams(t);
    let (h, _) = peel_apps(core);
    matches!(view(h), View::Var(_) | View::Const(_))
}

/// Weak head normal form: a head normal form or an abstraction.
pub fn is_whnf(t: &RawTerm) -> bool {
    if matches!(view(t), View::Lam(..)) {
        return true;
    }
    let (h, _) = peel_apps(t);
    matches!(view(h), View::Var(_) | View::Const(_))
}

/// Contracts the redex at the head of the application spine, if any.
fn spine_contract(t: &RawTerm) -> Option<RawTerm> {
    let (h, args) = peel_apps(t);
    if args.is_empty() {
        return None;
    }
    match view(h) {
        View::Lam(y, body) => {
            let contracted = subst_raw(body, y, args[0]);
            Some(rebuild_apps(contracted, &args[1..]))
        }
        _ => None,
    }
}

/// One step of head reduction: contracts the head redex, descending under
/// abstractions. `None` exactly on head normal forms and head-stuck terms.
pub fn head_step(t: &RawTerm) -> Option<RawTerm> {
    match view(t) {
        View::Lam(x, b) => head_step(b).map(|b2| lam(x, b2)),
        _ => spine_contract(t),
    }
}

/// One step of weak head reduction: never descends under abstractions.
pub fn whead_step(t: &RawTerm) -> Option<RawTerm> {
    if matches!(view(t), View::Lam(..)) {
        return None;
    }
    spine_contract(t)
}

/// All one-step beta reducts of a term (context closure of beta).
pub fn beta_step(t: &RawTerm) -> Vec<RawTerm> {
    let mut out = Vec::new();
    if let View::App(f, a) = view(t) {
        if let View::Lam(y, b) = view(f) {
            out.push(subst_raw(b, y, a));
        }
    }
    match view(t) {
        View::Lam(x, b) => {
            out.extend(beta_step(b).into_iter().map(|b2| lam(x, b2)));
        }
        View::App(f, a) => {
            out.extend(beta_step(f).into_iter().map(|f2| app(f2, a.clone())));
            out.extend(beta_step(a).into_iter().map(|a2| app(f.clone(), a2)));
        }
        _ => {}
    }
    out
}

fn canon(t: &RawTerm) -> TruncTerm {
    canonicalize(t).canonical().clone()
}

/// Internal verdict of a fuel-bounded strategy run. `GrowCycle` is a proof
/// that the trace repeats an earlier term inside a growing context (an
/// application spine or a lambda prefix), which is as conclusive as an exact
/// cycle for the absence of a normal form.
#[derive(Clone, Debug)]
pub(crate) enum Analysis {
    Normal(RawTerm),
    ExactCycle,
    GrowCycle,
    OutOfFuel,
}

/// Does the new trace element contain an already seen term as a proper
/// prefix: under a nonempty lambda prefix (head strategy only) or as an
/// application-spine prefix with at least one trailing argument peeled off?
/// Either way the deterministic trace replays itself inside the grown
/// context and can never reach the strategy's normal form.
fn grows_over_seen(t: &RawTerm, strat: Strategy, seen: &BTreeSet<TruncTerm>) -> bool {
    if strat == Strategy::Head {
        let mut cur = t;
        while let View::Lam(_, b) = view(cur) {
            if seen.contains(&canon(b)) {
                return true;
            }
            cur = b;
        }
    }
    let mut cur = t;
    while let View::App(f, _) = view(cur) {
        if seen.contains(&canon(f)) {
            return true;
        }
        cur = f;
    }
    false
}

/// The inner fuel available to top reduction's operator normalisation.
fn inner_fuel_for(fuel: u64) -> u64 {
    fuel.saturating_mul(10)
}

enum TopStatus {
    Redex(RawTerm),
    Tnf,
    NeedFuel,
}

/// Status of a term under top reduction: `M Q` contracts when the operator
/// weak-head-reduces to an abstraction; it is in top normal form when the
/// operator conclusively cannot (it is a zero term or stuck).
fn top_status(t: &RawTerm, inner_fuel: u64) -> TopStatus {
    let View::App(f, a) = view(t) else {
        return TopStatus::Tnf;
    };
    match analyze(f, Strategy::WHead, inner_fuel) {
        Analysis::Normal(n) => match view(&n) {
            View::Lam(y, b) => TopStatus::Redex(subst_raw(b, y, a)),
            _ => {
                let (h, _) = peel_apps(&n);
                if matches!(view(h), View::UBot) {
                    // an unresolved node heads the operator: zero-ness unknown
                    TopStatus::NeedFuel
                } else {
                    TopStatus::Tnf
                }
            }
        },
        Analysis::ExactCycle | Analysis::GrowCycle => TopStatus::Tnf,
        Analysis::OutOfFuel => TopStatus::NeedFuel,
    }
}

/// One step of top reduction: weak-head-normalises the operator of an
/// application (within `inner_fuel`) and contracts. `None` exactly on top
/// normal forms; `FuelNeeded` when the operator search is inconclusive.
pub fn top_step(t: &RawTerm, inner_fuel: u64) -> Result<Option<RawTerm>> {
    match top_status(t, inner_fuel) {
        TopStatus::Redex(r) => Ok(Some(r)),
        TopStatus::Tnf => Ok(None),
        TopStatus::NeedFuel => Err(Error::FuelNeeded { fuel: inner_fuel }),
    }
}

pub(crate) fn analyze(t: &RawTerm, strat: Strategy, fuel: u64) -> Analysis {
    let inner_fuel = inner_fuel_for(fuel);
    let mut cur = t.clone();
    let mut seen = BTreeSet::new();
    seen.insert(canon(&cur));
    let mut steps = 0u64;
    loop {
        let next = match strat {
            Strategy::Head => head_step(&cur),
            Strategy::WHead => whead_step(&cur),
            Strategy::Top => match top_status(&cur, inner_fuel) {
                TopStatus::Redex(r) => Some(r),
                TopStatus::Tnf => None,
                TopStatus::NeedFuel => return Analysis::OutOfFuel,
            },
        };
        let Some(next) = next else {
            return Analysis::Normal(cur);
        };
        if steps >= fuel {
            return Analysis::OutOfFuel;
        }
        steps += 1;
        let c = canon(&next);
        if seen.contains(&c) {
            return Analysis::ExactCycle;
        }
        if strat != Strategy::Top && grows_over_seen(&next, strat, &seen) {
            return Analysis::GrowCycle;
        }
        seen.insert(c);
        cur = next;
    }
}

/// Iterates the chosen strategy for at most `fuel` steps. `Diverges` is
/// reported only when an alpha-equal term literally recurs in the trace;
/// growing traces run to fuel exhaustion.
pub fn reduce(t: &RawTerm, strat: Strategy, fuel: u64) -> ReductionOutcome {
    let inner_fuel = inner_fuel_for(fuel);
    let mut cur = t.clone();
    let mut seen = BTreeSet::new();
    seen.insert(canon(&cur));
    let mut steps = 0u64;
    loop {
        let next = match strat {
            Strategy::Head => head_step(&cur),
            Strategy::WHead => whead_step(&cur),
            Strategy::Top => match top_status(&cur, inner_fuel) {
                TopStatus::Redex(r) => Some(r),
                TopStatus::Tnf => None,
                TopStatus::NeedFuel => return ReductionOutcome::FuelExhausted(cur, steps),
            },
        };
        let Some(next) = next else {
            return ReductionOutcome::Reached(cur);
        };
        if steps >= fuel {
            return ReductionOutcome::FuelExhausted(cur, steps);
        }
        steps += 1;
        let c = canon(&next);
        if seen.contains(&c) {
            return ReductionOutcome::Diverges(next);
        }
        seen.insert(c);
        cur = next;
    }
}

/// Is the term a zero term, one that can never reduce to an abstraction?
/// `Yes` when weak head reduction gets conclusively stuck or cycles without
/// producing an abstraction, `No` when it reaches one, `Unknown` on fuel
/// exhaustion or when an unresolved bottom heads the result.
pub fn is_zero_term(t: &RawTerm, fuel: u64) -> ZeroAnswer {
    match analyze(t, Strategy::WHead, fuel) {
        Analysis::Normal(n) => {
            if matches!(view(&n), View::Lam(..)) {
                return ZeroAnswer::No;
            }
            let (h, _) = peel_apps(&n);
            if matches!(view(h), View::UBot) {
                ZeroAnswer::Unknown
            } else {
                ZeroAnswer::Yes
            }
        }
        Analysis::ExactCycle | Analysis::GrowCycle => ZeroAnswer::Yes,
        Analysis::OutOfFuel => ZeroAnswer::Unknown,
    }
}

/// Top normal form test: a weak head normal form, or an application whose
/// operator is a zero term.
pub fn is_tnf(t: &RawTerm, fuel: u64) -> ZeroAnswer {
    if is_whnf(t) {
        return ZeroAnswer::Yes;
    }
    match view(t) {
        View::App(f, _) => is_zero_term(f, fuel),
        _ => ZeroAnswer::No,
    }
}

// ---------------------------------------------------------------------------
// Reduction on infinitary terms. There is no cycle detection here: genuinely
// infinite terms only admit fuel-bounded observation, so outcomes are
// `Reached` or `FuelExhausted`, never `Diverges`.

#[derive(Clone, Debug)]
pub enum InfOutcome {
    Reached(InfTerm),
    FuelExhausted(InfTerm, u64),
}

/// One step of weak head reduction on an infinitary term. `budget` bounds
/// the number of unfoldings spent walking the application spine.
pub fn whead_step_inf(t: &InfTerm, budget: u64) -> Result<Option<InfTerm>> {
    let mut args: Vec<InfTerm> = Vec::new();
    let mut cur = t.clone();
    let mut budget = budget;
    loop {
        match view_layer(&cur.unfold_step()?) {
            LView::App(f, a) => {
                if budget == 0 {
                    return Err(Error::FuelNeeded { fuel: 0 });
                }
                budget -= 1;
                args.push(a);
                cur = f;
            }
            LView::Lam(y, body) => {
                let Some(innermost) = args.pop() else {
                    // the term itself is an abstraction: weak head normal
                    return Ok(None);
                };
                let mut r = subst_inf(&body, y, &innermost);
                for a in args.into_iter().rev() {
                    let mut support = r.support().clone();
                    support.extend(a.support().iter().copied());
                    r = InfTerm::cons(crate::lambda::layer_app(r, a), support);
                }
                return Ok(Some(r));
            }
            LView::Var(_) | LView::Bot | LView::UBot | LView::Const(_) => return Ok(None),
        }
    }
}

/// One step of head reduction on an infinitary term: descends under
/// abstractions, then contracts the spine redex.
pub fn head_step_inf(t: &InfTerm, budget: u64) -> Result<Option<InfTerm>> {
    match view_layer(&t.unfold_step()?) {
        LView::Lam(y, body) => {
            if budget == 0 {
                return Err(Error::FuelNeeded { fuel: 0 });
            }
            Ok(head_step_inf(&body, budget - 1)?.map(|b2| {
                InfTerm::cons(crate::lambda::layer_lam(y, b2), t.support().clone())
            }))
        }
        _ => whead_step_inf(t, budget),
    }
}

/// The head of the application spine, within an unfolding budget.
fn spine_head_inf(t: &InfTerm, budget: u64) -> Result<LView> {
    let mut cur = t.clone();
    let mut budget = budget;
    loop {
        let v = view_layer(&cur.unfold_step()?);
        match v {
            LView::App(f, _) => {
                if budget == 0 {
                    return Err(Error::FuelNeeded { fuel: 0 });
                }
                budget -= 1;
                cur = f;
            }
            other => return Ok(other),
        }
    }
}

/// One step of top reduction on an infinitary term.
pub fn top_step_inf(t: &InfTerm, budget: u64) -> Result<Option<InfTerm>> {
    let LView::App(f, a) = view_layer(&t.unfold_step()?) else {
        return Ok(None);
    };
    let mut op = f;
    let mut steps = 0u64;
    loop {
        if let LView::Lam(y, body) = view_layer(&op.unfold_step()?) {
            return Ok(Some(subst_inf(&body, y, &a)));
        }
        match whead_step_inf(&op, budget)? {
            Some(next) => {
                if steps >= budget {
                    return Err(Error::FuelNeeded { fuel: budget });
                }
                steps += 1;
                op = next;
            }
            None => {
                // operator stuck without being an abstraction
                return match spine_head_inf(&op, budget)? {
                    LView::UBot => Err(Error::FuelNeeded { fuel: budget }),
                    _ => Ok(None),
                };
            }
        }
    }
}

/// Fuel-bounded reduction of an infinitary term.
pub fn reduce_inf(t: &InfTerm, strat: Strategy, fuel: u64) -> Result<InfOutcome> {
    let mut cur = t.clone();
    let mut steps = 0u64;
    loop {
        let step = match strat {
            Strategy::Head => head_step_inf(&cur, fuel),
            Strategy::WHead => whead_step_inf(&cur, fuel),
            Strategy::Top => top_step_inf(&cur, fuel),
        };
        match step {
            Err(Error::FuelNeeded { .. }) => return Ok(InfOutcome::FuelExhausted(cur, steps)),
            Err(e) => return Err(e),
            Ok(None) => return Ok(InfOutcome::Reached(cur)),
            Ok(Some(next)) => {
                if steps >= fuel {
                    return Ok(InfOutcome::FuelExhausted(cur, steps));
                }
                steps += 1;
                cur = next;
            }
        }
    }
}
