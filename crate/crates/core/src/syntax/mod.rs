//! Terms of the value substitution calculus: variables, abstractions,
//! applications and explicit substitutions.
//!
//! Terms are named (not nameless). α-equivalence is decided by
//! [`alpha_eq`], and every term has a canonical α-representative given by
//! [`canon`], which is what hashing-based bookkeeping (cycle detection,
//! breadth-first exploration) uses.

mod alpha;
mod enumerate;
mod names;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use alpha::{alpha_eq, canon, free_vars, freshen, subst};
pub use enumerate::{canonical_binder, enumerate_terms};
pub use names::NamePool;
pub use parse::{parse, ParseError};
pub use print::{print, print_full};

/// A variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(Arc<str>);

impl Ident {
    pub fn new(name: &str) -> Self {
        Ident(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Ident {
    fn from(s: &str) -> Self {
        Ident::new(s)
    }
}

impl Serialize for Ident {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Ident {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Ident::new(&s))
    }
}

/// A term. `Es(t, x, u)` is the explicit substitution `t[x <- u]`; it binds
/// `x` in `t` only.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Ident),
    Lam(Ident, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Es(Arc<Term>, Ident, Arc<Term>),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(Ident::new(x))
    }

    pub fn lam(x: &str, body: Term) -> Term {
        Term::Lam(Ident::new(x), Arc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn es(body: Term, x: &str, subject: Term) -> Term {
        Term::Es(Arc::new(body), Ident::new(x), Arc::new(subject))
    }

    /// Number of nodes; every constructor counts one.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Es(b, _, s) => 1 + b.size() + s.size(),
        }
    }

    /// No explicit substitution anywhere.
    pub fn is_pure(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Lam(_, b) => b.is_pure(),
            Term::App(f, a) => f.is_pure() && a.is_pure(),
            Term::Es(..) => false,
        }
    }

    /// Every name occurring in the term, bound or free.
    pub fn all_names(&self) -> BTreeSet<Ident> {
        fn go(t: &Term, acc: &mut BTreeSet<Ident>) {
            match t {
                Term::Var(x) => {
                    acc.insert(x.clone());
                }
                Term::Lam(x, b) => {
                    acc.insert(x.clone());
                    go(b, acc);
                }
                Term::App(f, a) => {
                    go(f, acc);
                    go(a, acc);
                }
                Term::Es(b, x, s) => {
                    acc.insert(x.clone());
                    go(b, acc);
                    go(s, acc);
                }
            }
        }
        let mut acc = BTreeSet::new();
        go(self, &mut acc);
        acc
    }

    /// The subterm at `path`, if the path stays inside the term.
    pub fn at(&self, path: &[Move]) -> Option<&Term> {
        let mut cur = self;
        for mv in path {
            cur = match (mv, cur) {
                (Move::AppL, Term::App(f, _)) => f,
                (Move::AppR, Term::App(_, a)) => a,
                (Move::LamBody, Term::Lam(_, b)) => b,
                (Move::EsBody, Term::Es(b, _, _)) => b,
                (Move::EsSubject, Term::Es(_, _, s)) => s,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Replace the subterm at `path` by `new`. Plugging may capture, exactly
    /// like context plugging.
    pub fn replace_at(&self, path: &[Move], new: Term) -> Option<Term> {
        let Some((mv, rest)) = path.split_first() else {
            return Some(new);
        };
        Some(match (mv, self) {
            (Move::AppL, Term::App(f, a)) => Term::App(Arc::new(f.replace_at(rest, new)?), a.clone()),
            (Move::AppR, Term::App(f, a)) => Term::App(f.clone(), Arc::new(a.replace_at(rest, new)?)),
            (Move::LamBody, Term::Lam(x, b)) => Term::Lam(x.clone(), Arc::new(b.replace_at(rest, new)?)),
            (Move::EsBody, Term::Es(b, x, s)) => {
                Term::Es(Arc::new(b.replace_at(rest, new)?), x.clone(), s.clone())
            }
            (Move::EsSubject, Term::Es(b, x, s)) => {
                Term::Es(b.clone(), x.clone(), Arc::new(s.replace_at(rest, new)?))
            }
            _ => return None,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", print(self))
    }
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print(self))
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// One step into a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    AppL,
    AppR,
    LamBody,
    EsBody,
    EsSubject,
}

/// A position in a term. The derived ordering is leftmost-outermost:
/// a prefix comes before its extensions, left before right.
pub type Path = Vec<Move>;

/// Shorthand used all over the tests and examples. Panics on syntax errors.
pub fn term(text: &str) -> Term {
    match parse(text) {
        Ok(t) => t,
        Err(e) => panic!("bad term literal {text:?}: {e}"),
    }
}
