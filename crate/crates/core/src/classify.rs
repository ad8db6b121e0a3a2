//! Grammar-defined term classes.
//!
//! ```text
//! inert           i   ::= x | i f | i[x <- i']
//! fireball        f   ::= v | i | f[x <- i]
//! strong inert    i_s ::= x | i_s f_s | i_s[x <- i_s']
//! strong value    v_s ::= \x.f_s
//! strong fireball f_s ::= i_s | v_s | f_s[x <- i_s]
//! rigid           r   ::= x | r t | r[x <- r']
//! answer              ::= L<\x.t>      L ::= <> | L[x <- t]
//! ```
//!
//! For pure terms there are also the fireball-calculus classes, where an
//! inert term is a variable applied to fireballs.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermClass {
    Value,
    TheoreticalValue,
    Inert,
    Fireball,
    StrongInert,
    StrongValue,
    StrongFireball,
    Rigid,
    Answer,
    FireInert,
    FireFireball,
}

impl TermClass {
    pub const ALL: [TermClass; 11] = [
        TermClass::Value,
        TermClass::TheoreticalValue,
        TermClass::Inert,
        TermClass::Fireball,
        TermClass::StrongInert,
        TermClass::StrongValue,
        TermClass::StrongFireball,
        TermClass::Rigid,
        TermClass::Answer,
        TermClass::FireInert,
        TermClass::FireFireball,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TermClass::Value => "value",
            TermClass::TheoreticalValue => "theoretical-value",
            TermClass::Inert => "inert",
            TermClass::Fireball => "fireball",
            TermClass::StrongInert => "strong-inert",
            TermClass::StrongValue => "strong-value",
            TermClass::StrongFireball => "strong-fireball",
            TermClass::Rigid => "rigid",
            TermClass::Answer => "answer",
            TermClass::FireInert => "fire-inert",
            TermClass::FireFireball => "fire-fireball",
        }
    }

    /// Membership. The fire classes are `None` on terms with explicit
    /// substitutions, where they are undefined.
    pub fn test(self, t: &Term) -> Option<bool> {
        Some(match self {
            TermClass::Value => is_value(t),
            TermClass::TheoreticalValue => is_theoretical_value(t),
            TermClass::Inert => is_inert(t),
            TermClass::Fireball => is_fireball(t),
            TermClass::StrongInert => is_strong_inert(t),
            TermClass::StrongValue => is_strong_value(t),
            TermClass::StrongFireball => is_strong_fireball(t),
            TermClass::Rigid => is_rigid(t),
            TermClass::Answer => is_answer(t),
            TermClass::FireInert => return is_fire_inert(t).ok(),
            TermClass::FireFireball => return is_fire_fireball(t).ok(),
        })
    }
}

impl fmt::Display for TermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fireball-calculus classes are only defined on terms without explicit substitutions")]
pub struct NotPure;

pub fn is_value(t: &Term) -> bool {
    matches!(t, Term::Lam(..))
}

pub fn is_theoretical_value(t: &Term) -> bool {
    matches!(t, Term::Var(_) | Term::Lam(..))
}

pub fn is_inert(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::App(f, a) => is_inert(f) && is_fireball(a),
        Term::Es(b, _, s) => is_inert(b) && is_inert(s),
        Term::Lam(..) => false,
    }
}

pub fn is_fireball(t: &Term) -> bool {
    match t {
        Term::Lam(..) => true,
        Term::Es(b, _, s) => is_fireball(b) && is_inert(s),
        _ => is_inert(t),
    }
}

pub fn is_strong_inert(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::App(f, a) => is_strong_inert(f) && is_strong_fireball(a),
        Term::Es(b, _, s) => is_strong_inert(b) && is_strong_inert(s),
        Term::Lam(..) => false,
    }
}

pub fn is_strong_value(t: &Term) -> bool {
    match t {
        Term::Lam(_, b) => is_strong_fireball(b),
        _ => false,
    }
}

pub fn is_strong_fireball(t: &Term) -> bool {
    match t {
        Term::Lam(..) => is_strong_value(t),
        Term::Es(b, _, s) => is_strong_fireball(b) && is_strong_inert(s),
        _ => is_strong_inert(t),
    }
}

pub fn is_rigid(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::App(f, _) => is_rigid(f),
        Term::Es(b, _, s) => is_rigid(b) && is_rigid(s),
        Term::Lam(..) => false,
    }
}

pub fn is_answer(t: &Term) -> bool {
    match t {
        Term::Lam(..) => true,
        Term::Es(b, _, _) => is_answer(b),
        _ => false,
    }
}

pub fn is_fire_inert(t: &Term) -> Result<bool, NotPure> {
    if !t.is_pure() {
        return Err(NotPure);
    }
    Ok(fire_inert(t))
}

pub fn is_fire_fireball(t: &Term) -> Result<bool, NotPure> {
    if !t.is_pure() {
        return Err(NotPure);
    }
    Ok(fire_fireball(t))
}

fn fire_inert(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::App(f, a) => fire_inert(f) && fire_fireball(a),
        _ => false,
    }
}

fn fire_fireball(t: &Term) -> bool {
    matches!(t, Term::Lam(..)) || fire_inert(t)
}

/// Every class with its verdict, in [`TermClass::ALL`] order.
pub fn classify(t: &Term) -> Vec<(TermClass, Option<bool>)> {
    TermClass::ALL.iter().map(|&c| (c, c.test(t))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term;

    const OMEGA: &str = r"(\x.x x) (\x.x x)";

    fn t(src: &str) -> Term {
        term(&src.replace("OMEGA", &format!("({OMEGA})")))
    }

    #[test]
    fn values() {
        assert!(is_value(&t(r"\x.OMEGA")));
        assert!(!is_value(&t("x")));
        assert!(is_theoretical_value(&t("x")));
        assert!(!is_value(&t("x y")) && !is_theoretical_value(&t("x y")));
    }

    #[test]
    fn inert_and_fireballs() {
        for src in ["y y", r"y (\x.x)", "x y", r"z (\x.x) (z z) (\y.t)"] {
            assert!(is_inert(&t(src)), "{src}");
        }
        assert!(!is_fireball(&t(OMEGA)));
        assert!(is_fireball(&t(r"(\x.x)[y <- z w]")));
        assert!(!is_fireball(&t(r"(\x.x)[y <- \z.z]")));
        assert!(is_inert(&t("x[x <- y z]")));
    }

    #[test]
    fn strong_classes() {
        assert!(is_strong_fireball(&t(r"\x.y x")));
        assert!(!is_strong_fireball(&t(r"\x.OMEGA")));
        assert!(is_strong_fireball(&t(r"(\z.z)[x <- y w]")));
        assert!(is_strong_value(&t(r"\x.\y.x")));
        assert!(!is_strong_inert(&t(r"y (\x.OMEGA)")));
    }

    #[test]
    fn rigid_and_answers() {
        assert!(is_rigid(&t("y OMEGA")));
        assert!(!is_inert(&t("y OMEGA")));
        assert!(is_rigid(&t("x")));
        assert!(!is_rigid(&t(r"\x.x")));
        assert!(is_answer(&t(r"\x.x")));
        assert!(is_answer(&t(r"(\x.x)[y <- z]")));
        assert!(!is_answer(&t(r"x[y <- \z.z]")));
    }

    #[test]
    fn fire_classes() {
        assert_eq!(is_fire_inert(&t(r"y (\z.OMEGA)")), Ok(true));
        assert_eq!(is_fire_fireball(&t(r"\x.t")), Ok(true));
        assert_eq!(is_fire_inert(&t(r"(\x.x) y")), Ok(false));
        assert_eq!(is_fire_fireball(&t(r"(\x.x) y")), Ok(false));
        assert_eq!(is_fire_inert(&t("x[x <- y]")), Err(NotPure));
    }
}
