//! Command-line front end: parsing, canonical forms, truncation, distances,
//! substitution, reduction, and the three infinite-normal-form trees.

mod generic;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nomlam::infinite::{ClassChain, DistBound, InfTerm};
use nomlam::lambda::{
    self, parse_defs, parse_with_defs, print_class, print_inf, print_raw, print_trunc,
    reduce, reduce_inf, subst_inf, subst_raw, InfOutcome, ParsedTerm, PrintOpts,
    ReductionOutcome,
};
use nomlam::signature::{
    alpha_eq, canonicalize, canonicalize_trunc_class, dist_alpha_raw, dist_raw,
    BindingSignature, RawTerm, TruncTerm,
};
use nomlam::trees::{assume_bot, bet, bt, has_unknown, llt};
use nomlam::{represent_limit, Atom, Error};

#[derive(Parser)]
#[command(name = "nomlam", version, about = "Nominal syntax, infinitary terms, and Böhm-style trees")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Observation depth for truncations, trees and comparisons
    #[arg(long, default_value_t = 8)]
    depth: usize,
    /// Reduction fuel per node
    #[arg(long, default_value_t = 256)]
    fuel: u64,
    /// Render unresolved bottoms as plain bottom
    #[arg(long)]
    assume_bot: bool,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Emit λ and ⊥ instead of \ and _|_
    #[arg(long)]
    unicode: bool,
    /// Definitions file: newline-separated `name = term` entries
    #[arg(long)]
    defs: Option<PathBuf>,
    /// Binding signature file (generic terms for parse, canon, alpha-eq)
    #[arg(long)]
    sig: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Strat {
    #[default]
    Head,
    Whead,
    Top,
}

impl From<Strat> for lambda::Strategy {
    fn from(s: Strat) -> lambda::Strategy {
        match s {
            Strat::Head => lambda::Strategy::Head,
            Strat::Whead => lambda::Strategy::WHead,
            Strat::Top => lambda::Strategy::Top,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a term and print it back
    Parse {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Print the canonical representative of the term's alpha-class
    Canon {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Print the free variables
    Fv {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Print the truncation at the given depth
    Truncate {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Substitute: term, variable, replacement
    Subst {
        #[command(flatten)]
        common: Common,
        term: String,
        var: String,
        replacement: String,
    },
    /// Reduce under the chosen strategy
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t)]
        strategy: Strat,
        term: String,
    },
    /// Compute the Böhm tree
    Bt {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Compute the Lévy-Longo tree
    Llt {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Compute the Berarducci tree
    Bet {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Alpha-equivalence (exact on finite terms, depth-bounded otherwise)
    AlphaEq {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Truncation distance (structural by default)
    Dist {
        #[command(flatten)]
        common: Common,
        /// Compare truncations up to alpha
        #[arg(long)]
        alpha: bool,
        left: String,
        right: String,
    },
    /// Reconstruct a safe representative of the term's truncation-class chain
    LimitRep {
        #[command(flatten)]
        common: Common,
        term: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SupportViolation { .. } => 2,
        Error::Inconclusive { .. } | Error::FuelNeeded { .. } => 3,
        _ => 1,
    }
}

struct Ctx {
    opts: PrintOpts,
    common: Common,
    defs: BTreeMap<String, RawTerm>,
    sig: Option<BindingSignature>,
}

impl Ctx {
    fn load(common: &Common) -> Result<Ctx, Error> {
        let defs = match &common.defs {
            Some(path) => parse_defs(&read(path)?)?,
            None => BTreeMap::new(),
        };
        let sig = match &common.sig {
            Some(path) => Some(BindingSignature::parse(&read(path)?)?),
            None => None,
        };
        Ok(Ctx {
            opts: PrintOpts {
                unicode: common.unicode,
            },
            common: common.clone(),
            defs,
            sig,
        })
    }

    fn parse(&self, src: &str) -> Result<ParsedTerm, Error> {
        match &self.sig {
            Some(sig) => Ok(ParsedTerm::Finite(generic::parse_generic(src, sig)?)),
            None => {
                let t = parse_with_defs(src, &self.defs)?;
                if let ParsedTerm::Finite(f) = &t {
                    lambda::signature().check_raw(f)?;
                }
                Ok(t)
            }
        }
    }

    /// Reduction and the tree computations are lambda-specific.
    fn reject_sig(&self, cmd: &str) -> Result<(), Error> {
        if self.sig.is_some() {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("--sig terms are not supported by `{cmd}`"),
            });
        }
        Ok(())
    }

    fn render_trunc(&self, t: &TruncTerm, kind: &str) -> String {
        let unknown = has_unknown(t);
        let shown = if self.common.assume_bot {
            assume_bot(t)
        } else {
            t.clone()
        };
        if self.common.json {
            json_out(json!({
                "kind": kind,
                "term": term_json(&shown),
                "status": if unknown { "unknown" } else { "resolved" },
            }))
        } else {
            print_trunc(&shown, &self.opts)
        }
    }

    fn render_raw(&self, t: &RawTerm, kind: &str) -> String {
        self.render_trunc(&t.to_trunc(), kind)
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn json_out(v: Value) -> String {
    v.to_string()
}

fn term_json(t: &TruncTerm) -> Value {
    match t {
        TruncTerm::Star => json!({"star": true}),
        TruncTerm::Var(a) => json!({"var": a.name()}),
        TruncTerm::Op(f, args) => json!({
            "op": f,
            "args": args.iter().map(|a| json!({
                "binders": a.binders.iter().map(|b| b.name()).collect::<Vec<_>>(),
                "term": term_json(&a.term),
            })).collect::<Vec<_>>(),
        }),
    }
}

fn tree_cmd(
    common: &Common,
    term: &str,
    kind: &str,
    f: impl Fn(&InfTerm, u64) -> InfTerm,
) -> Result<String, Error> {
    let ctx = Ctx::load(common)?;
    ctx.reject_sig(kind)?;
    let input = ctx.parse(term)?.into_inf();
    let tree = f(&input, common.fuel);
    let tr = tree.truncate(common.depth)?;
    Ok(ctx.render_trunc(&tr, kind))
}

fn run(cmd: Cmd) -> Result<String, Error> {
    match cmd {
        Cmd::Parse { common, term } => {
            let ctx = Ctx::load(&common)?;
            match ctx.parse(&term)? {
                ParsedTerm::Finite(t) => {
                    if ctx.common.json {
                        Ok(ctx.render_raw(&t, "parse"))
                    } else {
                        Ok(print_raw(&t, &ctx.opts))
                    }
                }
                ParsedTerm::Infinite(t) => {
                    if ctx.common.json {
                        let tr = t.truncate(common.depth)?;
                        Ok(ctx.render_trunc(&tr, "parse"))
                    } else {
                        Ok(print_inf(&t, &ctx.opts)?)
                    }
                }
            }
        }
        Cmd::Canon { common, term } => {
            let ctx = Ctx::load(&common)?;
            let class = match ctx.parse(&term)? {
                ParsedTerm::Finite(t) => canonicalize(&t),
                ParsedTerm::Infinite(t) => {
                    canonicalize_trunc_class(&t.truncate(common.depth)?)
                }
            };
            if ctx.common.json {
                Ok(ctx.render_trunc(class.canonical(), "canon"))
            } else {
                Ok(print_class(&class, &ctx.opts))
            }
        }
        Cmd::Fv { common, term } => {
            let ctx = Ctx::load(&common)?;
            let fv = match ctx.parse(&term)? {
                ParsedTerm::Finite(t) => t.fv(),
                ParsedTerm::Infinite(t) => t.fv_exact()?,
            };
            let names: Vec<String> = fv.iter().map(|a| a.name()).collect();
            if ctx.common.json {
                Ok(json_out(json!({"kind": "fv", "atoms": names})))
            } else {
                Ok(format!("{{{}}}", names.join(", ")))
            }
        }
        Cmd::Truncate { common, term } => {
            let ctx = Ctx::load(&common)?;
            let tr = ctx.parse(&term)?.into_inf().truncate(common.depth)?;
            Ok(ctx.render_trunc(&tr, "truncate"))
        }
        Cmd::Subst {
            common,
            term,
            var,
            replacement,
        } => {
            let ctx = Ctx::load(&common)?;
            let m = ctx.parse(&term)?;
            let n = ctx.parse(&replacement)?;
            let x = Atom::named(var.trim());
            match (m, n) {
                (ParsedTerm::Finite(m), ParsedTerm::Finite(n)) => {
                    let r = subst_raw(&m, x, &n);
                    if ctx.common.json {
                        Ok(ctx.render_raw(&r, "subst"))
                    } else {
                        Ok(print_raw(&r, &ctx.opts))
                    }
                }
                (m, n) => {
                    let r = subst_inf(&m.into_inf(), x, &n.into_inf());
                    let tr = r.truncate(common.depth)?;
                    Ok(ctx.render_trunc(&tr, "subst"))
                }
            }
        }
        Cmd::Reduce {
            common,
            strategy,
            term,
        } => {
            let ctx = Ctx::load(&common)?;
            ctx.reject_sig("reduce")?;
            match ctx.parse(&term)? {
                ParsedTerm::Finite(t) => {
                    let outcome = reduce(&t, strategy.into(), common.fuel);
                    let (tag, t, steps) = match &outcome {
                        ReductionOutcome::Reached(t) => ("reached", t, None),
                        ReductionOutcome::Diverges(t) => ("diverges", t, None),
                        ReductionOutcome::FuelExhausted(t, n) => {
                            ("fuel-exhausted", t, Some(*n))
                        }
                    };
                    if ctx.common.json {
                        let mut v = json!({
                            "kind": "reduce",
                            "outcome": tag,
                            "term": term_json(&t.to_trunc()),
                            "status": "resolved",
                        });
                        if let Some(n) = steps {
                            v["steps"] = json!(n);
                        }
                        Ok(json_out(v))
                    } else {
                        Ok(format!("{tag}: {}", print_raw(t, &ctx.opts)))
                    }
                }
                ParsedTerm::Infinite(t) => {
                    let outcome = reduce_inf(&t, strategy.into(), common.fuel)?;
                    let (tag, t) = match &outcome {
                        InfOutcome::Reached(t) => ("reached", t),
                        InfOutcome::FuelExhausted(t, _) => ("fuel-exhausted", t),
                    };
                    let tr = t.truncate(common.depth)?;
                    if ctx.common.json {
                        Ok(json_out(json!({
                            "kind": "reduce",
                            "outcome": tag,
                            "term": term_json(&tr),
                            "status": "resolved",
                        })))
                    } else {
                        Ok(format!("{tag}: {}", print_trunc(&tr, &ctx.opts)))
                    }
                }
            }
        }
        Cmd::Bt { common, term } => tree_cmd(&common, &term, "bt", bt),
        Cmd::Llt { common, term } => tree_cmd(&common, &term, "llt", llt),
        Cmd::Bet { common, term } => tree_cmd(&common, &term, "bet", bet),
        Cmd::AlphaEq {
            common,
            left,
            right,
        } => {
            let ctx = Ctx::load(&common)?;
            let l = ctx.parse(&left)?;
            let r = ctx.parse(&right)?;
            let eq = match (l, r) {
                (ParsedTerm::Finite(l), ParsedTerm::Finite(r)) => alpha_eq(&l, &r),
                (l, r) => l.into_inf().alpha_eq_at(&r.into_inf(), common.depth)?,
            };
            if ctx.common.json {
                Ok(json_out(json!({"kind": "alpha-eq", "result": eq})))
            } else {
                Ok(eq.to_string())
            }
        }
        Cmd::Dist {
            common,
            alpha,
            left,
            right,
        } => {
            let ctx = Ctx::load(&common)?;
            let l = ctx.parse(&left)?;
            let r = ctx.parse(&right)?;
            let (exact, value) = match (l, r) {
                (ParsedTerm::Finite(l), ParsedTerm::Finite(r)) => {
                    let d = if alpha {
                        dist_alpha_raw(&l, &r)
                    } else {
                        dist_raw(&l, &r)
                    };
                    (true, d)
                }
                (l, r) => {
                    let (l, r) = (l.into_inf(), r.into_inf());
                    let d = if alpha {
                        l.dist_alpha(&r, common.depth)?
                    } else {
                        l.dist(&r, common.depth)?
                    };
                    match d {
                        DistBound::Exact(v) => (true, v),
                        DistBound::AtMost(v) => (false, v),
                    }
                }
            };
            if ctx.common.json {
                Ok(json_out(json!({
                    "kind": "dist",
                    "exact": exact,
                    "value": value.to_string(),
                })))
            } else if exact {
                Ok(value.to_string())
            } else {
                Ok(format!("at most {value}"))
            }
        }
        Cmd::LimitRep { common, term } => {
            let ctx = Ctx::load(&common)?;
            let t = ctx.parse(&term)?.into_inf();
            let chain = ClassChain::of_term(&t);
            let rep = represent_limit(&chain, common.depth)?;
            Ok(ctx.render_trunc(&rep, "limit-rep"))
        }
    }
}
