//! Root rules, the five reduction relations, and evaluation.
//!
//! The multiplicative and exponential rules act *at a distance*: they look
//! through a stack `L` of explicit substitutions.
//!
//! ```text
//! m   L<\x.t> u       ->  L<t[x <- u]>
//! e   t[x <- L<v>]    ->  L<t{x <- v}>
//! βv  (\x.t) v        ->  t{x <- v}          (pure terms)
//! βi  (\x.t) i        ->  t{x <- i}          (pure terms, i fire-inert)
//! ```
//!
//! Each strategy is a choice of root rules plus a closure under a family of
//! contexts. Instead of materializing contexts, [`redexes`] walks the term
//! and emits every position whose subterm is a root redex the strategy
//! permits.

mod eval;
mod explore;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{is_answer, is_fire_inert, is_rigid};
use crate::syntax::{free_vars, subst, Ident, Move, NamePool, Path, Term};

pub use eval::{evaluate, Outcome, RuleCounts};
pub use explore::{
    bfs_normalize, diamond_check, explore, length_invariance, DiamondReport, Exploration,
    LengthReport, Peak,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleTag {
    #[serde(rename = "m")]
    M,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "bv")]
    BetaV,
    #[serde(rename = "bi")]
    BetaI,
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleTag::M => "m",
            RuleTag::E => "e",
            RuleTag::BetaV => "βv",
            RuleTag::BetaI => "βi",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Weak βv, no explicit substitutions.
    Plotkin,
    /// Weak βv and βi, no explicit substitutions.
    Fire,
    /// m/e outside abstractions.
    Open,
    /// m/e anywhere.
    Vsc,
    /// Open steps closed under external and rigid contexts.
    External,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Plotkin,
        Strategy::Fire,
        Strategy::Open,
        Strategy::Vsc,
        Strategy::External,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Plotkin => "plotkin",
            Strategy::Fire => "fire",
            Strategy::Open => "open",
            Strategy::Vsc => "vsc",
            Strategy::External => "external",
        }
    }

    pub fn pure_only(self) -> bool {
        matches!(self, Strategy::Plotkin | Strategy::Fire)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown strategy `{s}` (expected plotkin|fire|open|vsc|external)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("strategy {0} only accepts terms without explicit substitutions")]
    NotPure(Strategy),
    #[error("no {rule} redex at path {path:?}")]
    NoRedex { path: Path, rule: RuleTag },
}

/// A located rewrite: firing `rule` at `path` in the source term yields
/// `reduct` (the whole term, not just the contractum).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub path: Path,
    pub rule: RuleTag,
    #[serde(rename = "term")]
    pub reduct: Term,
}

/// Splits an answer `L<v>` into its substitution layers (outermost first)
/// and the abstraction.
pub fn split_answer(t: &Term) -> Option<(Vec<(Ident, Term)>, &Term)> {
    let mut layers = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            Term::Lam(..) => return Some((layers, cur)),
            Term::Es(b, x, s) => {
                layers.push((x.clone(), (**s).clone()));
                cur = b;
            }
            _ => return None,
        }
    }
}

// Rebuild an ES stack around a new core. Binders of the stack that occur in
// `avoid` are renamed (inside the remaining stack and core) first; `core`
// receives the possibly-renamed abstraction at the bottom.
fn replug(
    stack: &Term,
    avoid: &BTreeSet<Ident>,
    pool: &mut NamePool,
    core: &mut dyn FnMut(&Term) -> Term,
) -> Term {
    match stack {
        Term::Es(b, y, s) => {
            if avoid.contains(y) {
                let y2 = pool.fresh(y);
                let b2 = subst(b, y, &Term::Var(y2.clone()));
                pool.avoid_all(&b2);
                Term::Es(Arc::new(replug(&b2, avoid, pool, core)), y2, s.clone())
            } else {
                Term::Es(Arc::new(replug(b, avoid, pool, core)), y.clone(), s.clone())
            }
        }
        _ => core(stack),
    }
}

/// `L<\x.b> u -> L<b[x <- u]>`.
pub fn root_m(t: &Term) -> Option<Term> {
    let Term::App(head, u) = t else { return None };
    if !is_answer(head) {
        return None;
    }
    let avoid = free_vars(u);
    let mut pool = NamePool::new(t.all_names());
    Some(replug(head, &avoid, &mut pool, &mut |lam| match lam {
        Term::Lam(x, b) => Term::Es(b.clone(), x.clone(), u.clone()),
        _ => unreachable!("answer core is an abstraction"),
    }))
}

/// `b[x <- L<v>] -> L<b{x <- v}>`.
pub fn root_e(t: &Term) -> Option<Term> {
    let Term::Es(b, x, s) = t else { return None };
    if !is_answer(s) {
        return None;
    }
    let mut avoid = free_vars(b);
    avoid.remove(x);
    let mut pool = NamePool::new(t.all_names());
    Some(replug(s, &avoid, &mut pool, &mut |v| subst(b, x, v)))
}

/// `(\x.b) v -> b{x <- v}` with `v` an abstraction.
pub fn root_beta_v(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) => match (&**f, &**a) {
            (Term::Lam(x, b), Term::Lam(..)) => Some(subst(b, x, a)),
            _ => None,
        },
        _ => None,
    }
}

/// `(\x.b) i -> b{x <- i}` with `i` inert in the fireball calculus.
pub fn root_beta_i(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) => match &**f {
            Term::Lam(x, b) if is_fire_inert(a) == Ok(true) => Some(subst(b, x, a)),
            _ => None,
        },
        _ => None,
    }
}

/// Fires `rule` at the root of `t`.
pub fn apply_root(t: &Term, rule: RuleTag) -> Option<Term> {
    match rule {
        RuleTag::M => root_m(t),
        RuleTag::E => root_e(t),
        RuleTag::BetaV => root_beta_v(t),
        RuleTag::BetaI => root_beta_i(t),
    }
}

/// Fires `rule` at `path`, regardless of strategy.
pub fn apply_at(t: &Term, path: &[Move], rule: RuleTag) -> Result<Term, RewriteError> {
    let no_redex = || RewriteError::NoRedex {
        path: path.to_vec(),
        rule,
    };
    let sub = t.at(path).ok_or_else(no_redex)?;
    let contractum = apply_root(sub, rule).ok_or_else(no_redex)?;
    t.replace_at(path, contractum).ok_or_else(no_redex)
}

fn root_rules(t: &Term, s: Strategy) -> Vec<RuleTag> {
    let mut out = Vec::new();
    match s {
        Strategy::Plotkin | Strategy::Fire => {
            if root_beta_v(t).is_some() {
                out.push(RuleTag::BetaV);
            } else if s == Strategy::Fire && root_beta_i(t).is_some() {
                out.push(RuleTag::BetaI);
            }
        }
        _ => match t {
            Term::App(f, _) if is_answer(f) => out.push(RuleTag::M),
            Term::Es(_, _, u) if is_answer(u) => out.push(RuleTag::E),
            _ => {}
        },
    }
    out
}

/// Redex positions permitted by `s`, as (path, rule), in path order.
pub fn redex_positions(t: &Term, s: Strategy) -> Result<Vec<(Path, RuleTag)>, RewriteError> {
    if s.pure_only() && !t.is_pure() {
        return Err(RewriteError::NotPure(s));
    }
    let mut found = BTreeMap::new();
    let mut path = Vec::new();
    match s {
        Strategy::Plotkin | Strategy::Fire => weak(t, s, &mut path, &mut found),
        Strategy::Open => open(t, &mut path, &mut found),
        Strategy::Vsc => everywhere(t, &mut path, &mut found),
        Strategy::External => {
            let mut seen = HashSet::new();
            external(t, Mode::External, &mut path, &mut found, &mut seen)
        }
    }
    Ok(found.into_iter().collect())
}

/// Every one-step reduct permitted by `s`, in leftmost-outermost order.
pub fn redexes(t: &Term, s: Strategy) -> Result<Vec<Step>, RewriteError> {
    Ok(redex_positions(t, s)?
        .into_iter()
        .map(|(path, rule)| {
            let reduct = apply_at(t, &path, rule).expect("position was just found");
            Step { path, rule, reduct }
        })
        .collect())
}

/// The leftmost-outermost step, or `None` on normal forms.
pub fn step(t: &Term, s: Strategy) -> Result<Option<Step>, RewriteError> {
    let Some((path, rule)) = redex_positions(t, s)?.into_iter().next() else {
        return Ok(None);
    };
    let reduct = apply_at(t, &path, rule)?;
    Ok(Some(Step { path, rule, reduct }))
}

pub fn is_normal(t: &Term, s: Strategy) -> Result<bool, RewriteError> {
    Ok(redex_positions(t, s)?.is_empty())
}

type Found = BTreeMap<Path, RuleTag>;

fn emit_root(t: &Term, s: Strategy, path: &Path, found: &mut Found) {
    for rule in root_rules(t, s) {
        found.entry(path.clone()).or_insert(rule);
    }
}

fn descend(path: &mut Path, mv: Move, f: impl FnOnce(&mut Path)) {
    path.push(mv);
    f(path);
    path.pop();
}

fn weak(t: &Term, s: Strategy, path: &mut Path, found: &mut Found) {
    emit_root(t, s, path, found);
    if let Term::App(f, a) = t {
        descend(path, Move::AppL, |p| weak(f, s, p, found));
        descend(path, Move::AppR, |p| weak(a, s, p, found));
    }
}

fn open(t: &Term, path: &mut Path, found: &mut Found) {
    emit_root(t, Strategy::Open, path, found);
    match t {
        Term::App(f, a) => {
            descend(path, Move::AppL, |p| open(f, p, found));
            descend(path, Move::AppR, |p| open(a, p, found));
        }
        Term::Es(b, _, u) => {
            descend(path, Move::EsBody, |p| open(b, p, found));
            descend(path, Move::EsSubject, |p| open(u, p, found));
        }
        _ => {}
    }
}

fn everywhere(t: &Term, path: &mut Path, found: &mut Found) {
    emit_root(t, Strategy::Vsc, path, found);
    match t {
        Term::Lam(_, b) => descend(path, Move::LamBody, |p| everywhere(b, p, found)),
        Term::App(f, a) => {
            descend(path, Move::AppL, |p| everywhere(f, p, found));
            descend(path, Move::AppR, |p| everywhere(a, p, found));
        }
        Term::Es(b, _, u) => {
            descend(path, Move::EsBody, |p| everywhere(b, p, found));
            descend(path, Move::EsSubject, |p| everywhere(u, p, found));
        }
        Term::Var(_) => {}
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Mode {
    External,
    Rigid,
}

//   X ::= <> | \x.X | t[x <- R] | X[x <- r] | R
//   R ::= r X | R t | R[x <- r] | r[x <- R]
// with open redexes plugged into the holes of X.
fn external(t: &Term, mode: Mode, path: &mut Path, found: &mut Found, seen: &mut HashSet<(Path, Mode)>) {
    if !seen.insert((path.clone(), mode)) {
        return;
    }
    match mode {
        Mode::External => {
            open(t, path, found);
            match t {
                Term::Lam(_, b) => {
                    descend(path, Move::LamBody, |p| external(b, Mode::External, p, found, seen))
                }
                Term::Es(b, _, u) => {
                    descend(path, Move::EsSubject, |p| external(u, Mode::Rigid, p, found, seen));
                    if is_rigid(u) {
                        descend(path, Move::EsBody, |p| external(b, Mode::External, p, found, seen));
                    }
                }
                _ => {}
            }
            external(t, Mode::Rigid, path, found, seen);
        }
        Mode::Rigid => match t {
            Term::App(f, a) => {
                if is_rigid(f) {
                    descend(path, Move::AppR, |p| external(a, Mode::External, p, found, seen));
                }
                descend(path, Move::AppL, |p| external(f, Mode::Rigid, p, found, seen));
            }
            Term::Es(b, _, u) => {
                if is_rigid(u) {
                    descend(path, Move::EsBody, |p| external(b, Mode::Rigid, p, found, seen));
                }
                if is_rigid(b) {
                    descend(path, Move::EsSubject, |p| external(u, Mode::Rigid, p, found, seen));
                }
            }
            _ => {}
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq, term};

    const DELTA: &str = r"(\x.x x)";

    fn t(src: &str) -> Term {
        term(
            &src.replace("OMEGA", &format!("({DELTA} {DELTA})"))
                .replace("DELTA", DELTA)
                .replace('I', r"(\i.i)"),
        )
    }

    fn same(a: &Term, b: &Term) {
        assert!(alpha_eq(a, b), "{a} is not α-equal to {b}");
    }

    #[test]
    fn multiplicative_root() {
        same(
            &root_m(&t("(DELTA[x <- y y]) DELTA")).unwrap(),
            &t("((x1 x1)[x1 <- DELTA])[x <- y y]"),
        );
        assert_eq!(root_m(&t("x u")), None);
        same(&root_m(&t(r"(\x.x) y")).unwrap(), &t("x[x <- y]"));
    }

    #[test]
    fn m_renames_stack_binders_free_in_argument() {
        let r = root_m(&t(r"((\x.y) [y <- z]) y")).unwrap();
        same(&r, &t(r"(y1[x <- y])[y1 <- z]"));
    }

    #[test]
    fn exponential_root() {
        same(&root_e(&t("(x x)[x <- DELTA]")).unwrap(), &t("DELTA DELTA"));
        assert_eq!(root_e(&t("t[x <- y y]")), None);
        same(
            &root_e(&t(r"(x w)[x <- (\a.a)[y <- s]]")).unwrap(),
            &t(r"((\a.a) w)[y <- s]"),
        );
        // a stack binder that is free in the body gets renamed
        same(
            &root_e(&t(r"(x y)[x <- (\a.a)[y <- s]]")).unwrap(),
            &t(r"((\a.a) y)[y1 <- s]"),
        );
    }

    #[test]
    fn open_contexts() {
        let steps = redexes(&t("(I I) (I I)"), Strategy::Open).unwrap();
        assert!(steps.len() >= 2);
        assert!(redexes(&t(r"\x.OMEGA"), Strategy::Open).unwrap().is_empty());
    }

    #[test]
    fn external_contexts() {
        assert!(!redexes(&t(r"\x.OMEGA"), Strategy::External).unwrap().is_empty());
        let steps = redexes(&t(r"(\x.(I I)) (\v.v)"), Strategy::External).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].path, Vec::<Move>::new());
        let s = step(&t(r"(\x.y) (\z.OMEGA)"), Strategy::External).unwrap().unwrap();
        assert_eq!((s.path.len(), s.rule), (0, RuleTag::M));
        // an argument of a rigid head is external
        let steps = redexes(&t(r"y (\z.I I)"), Strategy::External).unwrap();
        assert_eq!(steps[0].path, vec![Move::AppR, Move::LamBody]);
    }

    #[test]
    fn leftmost_outermost_first() {
        let s = step(&t(r"(\x.DELTA) (y y) DELTA"), Strategy::Open).unwrap().unwrap();
        assert_eq!((s.path.clone(), s.rule), (vec![Move::AppL], RuleTag::M));
        same(&s.reduct, &t("DELTA[x <- y y] DELTA"));
        assert_eq!(step(&t(r"\x.x"), Strategy::Vsc).unwrap(), None);
    }

    #[test]
    fn pure_strategies_reject_substitutions() {
        assert_eq!(
            redexes(&t("x[x <- y]"), Strategy::Plotkin),
            Err(RewriteError::NotPure(Strategy::Plotkin))
        );
    }

    #[test]
    fn beta_rules() {
        same(&root_beta_v(&t(r"(\x.x x) (\y.y)")).unwrap(), &t(r"(\y.y) (\y.y)"));
        assert_eq!(root_beta_v(&t(r"(\x.x) (y y)")), None);
        same(&root_beta_i(&t(r"(\x.I) (y (\z.OMEGA))")).unwrap(), &t("I"));
    }
}
