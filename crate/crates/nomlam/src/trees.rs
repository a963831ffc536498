//! Corecursive computation of Böhm, Lévy-Longo and Berarducci trees, the
//! tree-set membership predicates, and the tree-induced bisimulation checks.
//!
//! Trees are produced lazily, one node per observation: each node runs the
//! strategy's fuel-bounded reduction on its input and emits one layer. A
//! conclusively meaningless node emits bottom; a node whose reduction only
//! ran out of fuel emits the distinct unresolved bottom `ubot`, which is
//! collapsed to bottom only when the caller opts in.

use std::sync::Arc;

use crate::atoms::fresh_atoms;
use crate::error::{Error, Result};
use crate::infinite::{InfTerm, Layer, Unfold};
use crate::lambda::reduce_internal::{analyze, Analysis};
use crate::lambda::{
    head_step_inf, layer_bot, layer_ubot, top_step_inf, view, view_layer, whead_step_inf, LView,
    Strategy, View, OP_UBOT,
};
use crate::nominal::Nominal;
use crate::signature::{alpha_eq_trunc, Arg, RawTerm, TruncTerm};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum TreeKind {
    Bohm,
    LevyLongo,
    Berarducci,
}

impl TreeKind {
    fn strategy(self) -> Strategy {
        match self {
            TreeKind::Bohm => Strategy::Head,
            TreeKind::LevyLongo => Strategy::WHead,
            TreeKind::Berarducci => Strategy::Top,
        }
    }
}

/// The Böhm tree: head reduction at every node, bottom on terms without a
/// head normal form.
pub fn bt(t: &InfTerm, fuel: u64) -> InfTerm {
    tree(TreeKind::Bohm, t.clone(), fuel)
}

/// The Lévy-Longo tree: weak head reduction, bottom on terms without a weak
/// head normal form.
pub fn llt(t: &InfTerm, fuel: u64) -> InfTerm {
    tree(TreeKind::LevyLongo, t.clone(), fuel)
}

/// The Berarducci tree: top reduction, with applications split when the
/// operator is a zero term.
pub fn bet(t: &InfTerm, fuel: u64) -> InfTerm {
    tree(TreeKind::Berarducci, t.clone(), fuel)
}

fn tree(kind: TreeKind, input: InfTerm, fuel: u64) -> InfTerm {
    let support = input.support().clone();
    InfTerm::producer(Arc::new(TreeNode { kind, input, fuel }), support)
}

struct TreeNode {
    kind: TreeKind,
    input: InfTerm,
    fuel: u64,
}

impl TreeNode {
    fn child(&self, t: InfTerm) -> InfTerm {
        tree(self.kind, t, self.fuel)
    }

    fn child_fin(&self, t: &RawTerm) -> InfTerm {
        self.child(InfTerm::embed(t.clone()))
    }

    /// Emits the root layer of a strategy-normal finite term, wrapping the
    /// subterms as tree nodes.
    fn emit_fin(&self, n: &RawTerm) -> Layer<InfTerm> {
        match view(n) {
            View::Var(a) => Layer::Var(a),
            View::Const(_) | View::Bot | View::UBot => match n {
                RawTerm::Op(f, _) => Layer::Op(f.clone(), vec![]),
                RawTerm::Var(_) => unreachable!(),
            },
            View::Lam(y, b) => Layer::Op(
                crate::lambda::OP_LAM.into(),
                vec![Arg::new(vec![y], self.child_fin(b))],
            ),
            View::App(f, a) => Layer::Op(
                crate::lambda::OP_APP.into(),
                vec![
                    Arg::plain(self.child_fin(f)),
                    Arg::plain(self.child_fin(a)),
                ],
            ),
        }
    }

    fn emit_inf(&self, layer: &Layer<InfTerm>) -> Layer<InfTerm> {
        match layer {
            Layer::Var(a) => Layer::Var(*a),
            Layer::Op(f, args) => Layer::Op(
                f.clone(),
                args.iter()
                    .map(|a| Arg::new(a.binders.clone(), self.child(a.term.clone())))
                    .collect(),
            ),
        }
    }

    fn unfold_fin(&self, raw: &RawTerm) -> Layer<InfTerm> {
        let strat = self.kind.strategy();
        match analyze(raw, strat, self.fuel) {
            Analysis::Normal(n) => {
                let stable = match self.kind {
                    TreeKind::Bohm => crate::lambda::is_hnf(&n),
                    TreeKind::LevyLongo => crate::lambda::is_whnf(&n),
                    // top reduction stops exactly on the shapes the
                    // Berarducci tree unfolds (or on stuck bottoms)
                    TreeKind::Berarducci => true,
                };
                if stable {
                    self.emit_fin(&n)
                } else {
                    // strategy-stuck without being normal: a bottom-headed
                    // spine; an unresolved head keeps the node unresolved
                    if stuck_head_is_ubot(&n) {
                        layer_ubot()
                    } else {
                        layer_bot()
                    }
                }
            }
            Analysis::ExactCycle | Analysis::GrowCycle => layer_bot(),
            Analysis::OutOfFuel => layer_ubot(),
        }
    }

    fn unfold_inf(&self) -> Result<Layer<InfTerm>> {
        let mut cur = self.input.clone();
        let mut steps = 0u64;
        loop {
            let step = match self.kind.strategy() {
                Strategy::Head => head_step_inf(&cur, self.fuel),
                Strategy::WHead => whead_step_inf(&cur, self.fuel),
                Strategy::Top => top_step_inf(&cur, self.fuel),
            };
            match step {
                Err(Error::FuelNeeded { .. }) => return Ok(layer_ubot()),
                Err(e) => return Err(e),
                Ok(Some(next)) => {
                    if steps >= self.fuel {
                        return Ok(layer_ubot());
                    }
                    steps += 1;
                    cur = next;
                }
                Ok(None) => {
                    let layer = cur.unfold_step()?;
                    let stable = match self.kind {
                        TreeKind::Bohm => inf_head_stable(&cur, self.fuel)?,
                        TreeKind::LevyLongo => inf_whead_stable(&cur, self.fuel)?,
                        TreeKind::Berarducci => InfStable::Stable,
                    };
                    return Ok(match stable {
                        InfStable::Stable => self.emit_inf(&layer),
                        InfStable::Bottom => layer_bot(),
                        InfStable::Unknown => layer_ubot(),
                    });
                }
            }
        }
    }
}

enum InfStable {
    Stable,
    Bottom,
    Unknown,
}

/// Classifies a head-stuck infinitary term: head normal (variable or
/// constant at the head of the spine, under any lambda prefix), bottom-stuck
/// or unresolved.
fn inf_head_stable(t: &InfTerm, budget: u64) -> Result<InfStable> {
    let mut cur = t.clone();
    let mut budget = budget;
    loop {
        match view_layer(&cur.unfold_step()?) {
            LView::Lam(_, b) => {
                if budget == 0 {
                    return Ok(InfStable::Unknown);
                }
                budget -= 1;
                cur = b;
            }
            LView::App(f, _) => {
                if budget == 0 {
                    return Ok(InfStable::Unknown);
                }
                budget -= 1;
                cur = f;
            }
            LView::Var(_) | LView::Const(_) => return Ok(InfStable::Stable),
            LView::Bot => return Ok(InfStable::Bottom),
            LView::UBot => return Ok(InfStable::Unknown),
        }
    }
}

fn inf_whead_stable(t: &InfTerm, budget: u64) -> Result<InfStable> {
    if let LView::Lam(..) = view_layer(&t.unfold_step()?) {
        return Ok(InfStable::Stable);
    }
    let mut cur = t.clone();
    let mut budget = budget;
    loop {
        match view_layer(&cur.unfold_step()?) {
            LView::App(f, _) => {
                if budget == 0 {
                    return Ok(InfStable::Unknown);
                }
                budget -= 1;
                cur = f;
            }
            LView::Var(_) | LView::Const(_) => return Ok(InfStable::Stable),
            LView::Bot => return Ok(InfStable::Bottom),
            LView::UBot => return Ok(InfStable::Unknown),
            LView::Lam(..) => return Ok(InfStable::Bottom),
        }
    }
}

fn stuck_head_is_ubot(n: &RawTerm) -> bool {
    let mut cur = n;
    loop {
        match view(cur) {
            View::Lam(_, b) => cur = b,
            View::App(f, _) => cur = f,
            View::UBot => return true,
            _ => return false,
        }
    }
}

impl Unfold for TreeNode {
    fn unfold(&self) -> Result<Layer<InfTerm>> {
        match self.input.as_finite() {
            Some(raw) => Ok(self.unfold_fin(raw)),
            None => self.unfold_inf(),
        }
    }
}

/// Collapses unresolved bottoms to bottom (the `--assume-bot` rendering).
pub fn assume_bot(t: &TruncTerm) -> TruncTerm {
    match t {
        TruncTerm::Star | TruncTerm::Var(_) => t.clone(),
        TruncTerm::Op(f, args) => {
            let f = if f == OP_UBOT { "bot".to_string() } else { f.clone() };
            TruncTerm::Op(
                f,
                args.iter()
                    .map(|a| Arg::new(a.binders.clone(), assume_bot(&a.term)))
                    .collect(),
            )
        }
    }
}

/// Does the truncation contain any unresolved node?
pub fn has_unknown(t: &TruncTerm) -> bool {
    t.contains_op(OP_UBOT)
}

fn spine_head(t: &TruncTerm) -> &TruncTerm {
    let mut cur = t;
    loop {
        match crate::lambda::tview(cur) {
            crate::lambda::TView::App(f, _) => cur = f,
            _ => return cur,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SetKind {
    Bt,
    Llt,
    Bet,
}

fn node_allowed(t: &TruncTerm, kind: SetKind) -> bool {
    use crate::lambda::TView;
    match crate::lambda::tview(t) {
        TView::Star | TView::Var(_) | TView::Bot | TView::UBot | TView::Const(_) => true,
        TView::Lam(_, body) => match kind {
            // a Böhm tree never hides bottom under an abstraction
            SetKind::Bt => !matches!(
                crate::lambda::tview(body),
                TView::Bot | TView::UBot
            ),
            SetKind::Llt | SetKind::Bet => true,
        },
        TView::App(..) => {
            let head = spine_head(t);
            match crate::lambda::tview(head) {
                TView::Var(_) | TView::Const(_) | TView::Star => true,
                // only the Berarducci shape allows bottom-headed spines
                TView::Bot | TView::UBot => kind == SetKind::Bet,
                TView::Lam(..) => false,
                TView::App(..) => unreachable!(),
            }
        }
    }
}

fn in_set(t: &InfTerm, depth: usize, kind: SetKind) -> Result<bool> {
    fn walk(t: &TruncTerm, kind: SetKind) -> bool {
        if !node_allowed(t, kind) {
            return false;
        }
        match t {
            TruncTerm::Op(_, args) => args.iter().all(|a| walk(&a.term, kind)),
            _ => true,
        }
    }
    Ok(walk(&t.truncate(depth)?, kind))
}

/// Depth-bounded membership in the set of Böhm trees: every node of the
/// truncation has one of the allowed shapes; `*` leaves pass vacuously.
pub fn in_bt_set(t: &InfTerm, depth: usize) -> Result<bool> {
    in_set(t, depth, SetKind::Bt)
}

pub fn in_llt_set(t: &InfTerm, depth: usize) -> Result<bool> {
    in_set(t, depth, SetKind::Llt)
}

pub fn in_bet_set(t: &InfTerm, depth: usize) -> Result<bool> {
    in_set(t, depth, SetKind::Bet)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tri {
    Eq,
    Neq,
    Blocked,
}

/// Alpha-compares two truncations, with unresolved bottoms three-valued:
/// matching unresolved positions are equal, a one-sided unresolved node
/// blocks the verdict unless a definite mismatch settles it elsewhere.
fn tri_alpha(t: &TruncTerm, s: &TruncTerm) -> Tri {
    let t_ubot = matches!(t, TruncTerm::Op(f, _) if f == OP_UBOT);
    let s_ubot = matches!(s, TruncTerm::Op(f, _) if f == OP_UBOT);
    match (t_ubot, s_ubot) {
        (true, true) => return Tri::Eq,
        (true, false) | (false, true) => return Tri::Blocked,
        _ => {}
    }
    match (t, s) {
        (TruncTerm::Star, TruncTerm::Star) => Tri::Eq,
        (TruncTerm::Var(a), TruncTerm::Var(b)) => {
            if a == b {
                Tri::Eq
            } else {
                Tri::Neq
            }
        }
        (TruncTerm::Op(f, fargs), TruncTerm::Op(g, gargs)) => {
            if f != g || fargs.len() != gargs.len() {
                return Tri::Neq;
            }
            let mut blocked = false;
            for (l, r) in fargs.iter().zip(gargs) {
                if l.binders.len() != r.binders.len() {
                    return Tri::Neq;
                }
                let verdict = if l.binders.is_empty() {
                    tri_alpha(&l.term, &r.term)
                } else {
                    let mut avoid = l.term.vars();
                    avoid.extend(r.term.vars());
                    avoid.extend(l.binders.iter().copied());
                    avoid.extend(r.binders.iter().copied());
                    let zs = fresh_atoms(l.binders.len(), &avoid);
                    let mut pl = crate::atoms::Perm::identity();
                    let mut pr = crate::atoms::Perm::identity();
                    for ((x, y), z) in l.binders.iter().zip(&r.binders).zip(&zs) {
                        pl = pl.compose(&crate::atoms::Perm::swap(*x, *z));
                        pr = pr.compose(&crate::atoms::Perm::swap(*y, *z));
                    }
                    tri_alpha(&l.term.act(&pl), &r.term.act(&pr))
                };
                match verdict {
                    Tri::Neq => return Tri::Neq,
                    Tri::Blocked => blocked = true,
                    Tri::Eq => {}
                }
            }
            if blocked {
                Tri::Blocked
            } else {
                Tri::Eq
            }
        }
        _ => Tri::Neq,
    }
}

fn bisim_at(
    m: &InfTerm,
    n: &InfTerm,
    depth: usize,
    fuel: u64,
    kind: TreeKind,
) -> Result<bool> {
    let a = tree(kind, m.clone(), fuel).truncate(depth)?;
    let b = tree(kind, n.clone(), fuel).truncate(depth)?;
    match tri_alpha(&a, &b) {
        Tri::Eq => Ok(true),
        Tri::Neq => Ok(false),
        Tri::Blocked => Err(Error::Inconclusive { fuel }),
    }
}

/// Head bisimulation up to `depth`: do the Böhm trees agree there?
pub fn bisim_hnf_at(m: &InfTerm, n: &InfTerm, depth: usize, fuel: u64) -> Result<bool> {
    bisim_at(m, n, depth, fuel, TreeKind::Bohm)
}

/// Weak head bisimulation up to `depth`: do the Lévy-Longo trees agree?
pub fn bisim_whnf_at(m: &InfTerm, n: &InfTerm, depth: usize, fuel: u64) -> Result<bool> {
    bisim_at(m, n, depth, fuel, TreeKind::LevyLongo)
}

/// Compares a computed tree against an expected encoding after collapsing
/// unresolved bottoms on the computed side.
pub fn tree_matches(tree: &InfTerm, expected: &InfTerm, depth: usize) -> Result<bool> {
    let got = assume_bot(&tree.truncate(depth)?);
    let want = expected.truncate(depth)?;
    Ok(alpha_eq_trunc(&got, &want))
}
