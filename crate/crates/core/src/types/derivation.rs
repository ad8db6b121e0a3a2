use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ty::{is_left_ctx, is_right, LinearType, MultiType, TypeContext};
use crate::classify::is_theoretical_value;
use crate::syntax::{Ident, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "ax")]
    Ax,
    #[serde(rename = "app", alias = "@")]
    App,
    #[serde(rename = "lam", alias = "λ")]
    Lam,
    #[serde(rename = "es")]
    Es,
    #[serde(rename = "many")]
    Many,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Ax => "ax",
            Rule::App => "@",
            Rule::Lam => "λ",
            Rule::Es => "es",
            Rule::Many => "many",
        })
    }
}

/// Right-hand side of a judgment. In JSON a list is a multi type and
/// anything else a linear type.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rhs {
    Multi(MultiType),
    Linear(LinearType),
}

impl Rhs {
    pub fn multi(&self) -> Option<&MultiType> {
        match self {
            Rhs::Multi(m) => Some(m),
            Rhs::Linear(_) => None,
        }
    }

    pub fn linear(&self) -> Option<&LinearType> {
        match self {
            Rhs::Linear(a) => Some(a),
            Rhs::Multi(_) => None,
        }
    }
}

impl fmt::Display for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rhs::Multi(m) => write!(f, "{m}"),
            Rhs::Linear(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Debug for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Judgment {
    pub ctx: TypeContext,
    pub subject: Term,
    pub rhs: Rhs,
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.ctx.is_empty() {
            write!(f, "{} ", self.ctx)?;
        }
        write!(f, "⊢ {} : {}", self.subject, self.rhs)
    }
}

impl fmt::Debug for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A typing derivation. The checked constructors ([`Derivation::ax`],
/// [`Derivation::app`], ...) compute the conclusion from the premises and
/// validate the node; [`check_derivation`] re-validates a whole tree, e.g.
/// one read from JSON.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgment,
    #[serde(default)]
    pub premises: Vec<Derivation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid {rule} node at premise path {path:?}: {message}")]
pub struct CheckError {
    /// Premise indices from the root to the failing node.
    pub path: Vec<usize>,
    pub rule: Rule,
    pub message: String,
}

fn local_error(rule: Rule, message: impl Into<String>) -> CheckError {
    CheckError {
        path: Vec::new(),
        rule,
        message: message.into(),
    }
}

fn multi_of<'a>(d: &'a Derivation, what: &str) -> Result<&'a MultiType, String> {
    d.conclusion
        .rhs
        .multi()
        .ok_or_else(|| format!("{what} must conclude a multi type, found linear {}", d.conclusion.rhs))
}

// The conclusion a node must have, given its premises and the parts of the
// claimed conclusion the premises cannot determine.
fn expected(rule: Rule, subject: &Term, rhs: &Rhs, premises: &[Derivation]) -> Result<Judgment, String> {
    let arity = |n: usize| {
        if premises.len() == n {
            Ok(())
        } else {
            Err(format!("expected {n} premises, found {}", premises.len()))
        }
    };
    match rule {
        Rule::Ax => {
            arity(0)?;
            let Term::Var(x) = subject else {
                return Err(format!("subject {subject} is not a variable"));
            };
            let Rhs::Linear(a) = rhs else {
                return Err(format!("ax concludes a linear type, found multi type {rhs}"));
            };
            Ok(Judgment {
                ctx: TypeContext::single(x, MultiType::single(a.clone())),
                subject: subject.clone(),
                rhs: rhs.clone(),
            })
        }
        Rule::App => {
            arity(2)?;
            let (f, a) = (&premises[0], &premises[1]);
            let fm = multi_of(f, "left premise")?;
            let [LinearType::Arrow(m, n)] = fm.items() else {
                return Err(format!("left premise must have type [M ⊸ N], found {fm}"));
            };
            let am = multi_of(a, "right premise")?;
            if am != m {
                return Err(format!("argument has type {am} but the function expects {m}"));
            }
            Ok(Judgment {
                ctx: f.conclusion.ctx.sum(&a.conclusion.ctx),
                subject: Term::App(
                    Arc::new(f.conclusion.subject.clone()),
                    Arc::new(a.conclusion.subject.clone()),
                ),
                rhs: Rhs::Multi(n.clone()),
            })
        }
        Rule::Lam => {
            arity(1)?;
            let Term::Lam(x, _) = subject else {
                return Err(format!("subject {subject} is not an abstraction"));
            };
            let body = &premises[0];
            let n = multi_of(body, "premise")?;
            let (ctx, m) = body.conclusion.ctx.remove(x);
            Ok(Judgment {
                ctx,
                subject: Term::Lam(x.clone(), Arc::new(body.conclusion.subject.clone())),
                rhs: Rhs::Linear(LinearType::Arrow(m, n.clone())),
            })
        }
        Rule::Es => {
            arity(2)?;
            let Term::Es(_, x, _) = subject else {
                return Err(format!("subject {subject} is not an explicit substitution"));
            };
            let (body, arg) = (&premises[0], &premises[1]);
            let n = multi_of(body, "left premise")?;
            let (ctx, m) = body.conclusion.ctx.remove(x);
            let am = multi_of(arg, "right premise")?;
            if *am != m {
                return Err(format!("{x} is used at {m} in the body but the substituted term has type {am}"));
            }
            Ok(Judgment {
                ctx: ctx.sum(&arg.conclusion.ctx),
                subject: Term::Es(
                    Arc::new(body.conclusion.subject.clone()),
                    x.clone(),
                    Arc::new(arg.conclusion.subject.clone()),
                ),
                rhs: Rhs::Multi(n.clone()),
            })
        }
        Rule::Many => {
            if !is_theoretical_value(subject) {
                return Err(format!("{subject} is neither a variable nor an abstraction"));
            }
            let mut ctx = TypeContext::empty();
            let mut items = Vec::new();
            for (i, p) in premises.iter().enumerate() {
                if p.conclusion.subject != *subject {
                    return Err(format!("premise {i} types {} instead of {subject}", p.conclusion.subject));
                }
                let Some(a) = p.conclusion.rhs.linear() else {
                    return Err(format!("premise {i} concludes multi type {}", p.conclusion.rhs));
                };
                ctx = ctx.sum(&p.conclusion.ctx);
                items.push(a.clone());
            }
            Ok(Judgment {
                ctx,
                subject: subject.clone(),
                rhs: Rhs::Multi(MultiType::new(items)),
            })
        }
    }
}

fn check_local(d: &Derivation) -> Result<(), CheckError> {
    let c = &d.conclusion;
    let exp = expected(d.rule, &c.subject, &c.rhs, &d.premises).map_err(|m| local_error(d.rule, m))?;
    if exp.subject != c.subject {
        return Err(local_error(
            d.rule,
            format!("subject {} does not match premises, expected {}", c.subject, exp.subject),
        ));
    }
    if exp.rhs != c.rhs {
        return Err(local_error(d.rule, format!("type {} should be {}", c.rhs, exp.rhs)));
    }
    if exp.ctx != c.ctx {
        return Err(local_error(
            d.rule,
            format!("context {{{}}} is not the sum of the premises' {{{}}}", c.ctx, exp.ctx),
        ));
    }
    Ok(())
}

/// Validates every node; returns the conclusion.
pub fn check_derivation(d: &Derivation) -> Result<&Judgment, CheckError> {
    for (i, p) in d.premises.iter().enumerate() {
        check_derivation(p).map_err(|mut e| {
            e.path.insert(0, i);
            e
        })?;
    }
    check_local(d)?;
    Ok(&d.conclusion)
}

impl Derivation {
    fn build(rule: Rule, subject: Term, rhs: Rhs, premises: Vec<Derivation>) -> Result<Self, CheckError> {
        let conclusion = expected(rule, &subject, &rhs, &premises).map_err(|m| local_error(rule, m))?;
        Ok(Derivation {
            rule,
            conclusion,
            premises,
        })
    }

    /// `x:[A] ⊢ x : A`.
    pub fn ax(x: &Ident, a: LinearType) -> Self {
        Derivation::build(Rule::Ax, Term::Var(x.clone()), Rhs::Linear(a), Vec::new()).expect("ax is always valid")
    }

    pub fn app(fun: Derivation, arg: Derivation) -> Result<Self, CheckError> {
        let subject = Term::App(
            Arc::new(fun.conclusion.subject.clone()),
            Arc::new(arg.conclusion.subject.clone()),
        );
        Derivation::build(Rule::App, subject, Rhs::Multi(MultiType::empty()), vec![fun, arg])
    }

    pub fn lam(x: &Ident, body: Derivation) -> Result<Self, CheckError> {
        let subject = Term::Lam(x.clone(), Arc::new(body.conclusion.subject.clone()));
        Derivation::build(Rule::Lam, subject, Rhs::Linear(LinearType::Ground), vec![body])
    }

    pub fn es(body: Derivation, x: &Ident, arg: Derivation) -> Result<Self, CheckError> {
        let subject = Term::Es(
            Arc::new(body.conclusion.subject.clone()),
            x.clone(),
            Arc::new(arg.conclusion.subject.clone()),
        );
        Derivation::build(Rule::Es, subject, Rhs::Multi(MultiType::empty()), vec![body, arg])
    }

    pub fn many(subject: Term, premises: Vec<Derivation>) -> Result<Self, CheckError> {
        Derivation::build(Rule::Many, subject, Rhs::Multi(MultiType::empty()), premises)
    }

    /// `x:M ⊢ x : M`, a many over one ax per element of `M`.
    pub fn var(x: &Ident, m: &MultiType) -> Self {
        let axs = m.items().iter().map(|a| Derivation::ax(x, a.clone())).collect();
        Derivation::many(Term::Var(x.clone()), axs).expect("many over ax is valid")
    }

    pub fn subject(&self) -> &Term {
        &self.conclusion.subject
    }

    pub fn ctx(&self) -> &TypeContext {
        &self.conclusion.ctx
    }

    /// The multi type on the right, `None` for ax and λ nodes.
    pub fn multi(&self) -> Option<&MultiType> {
        self.conclusion.rhs.multi()
    }

    /// Indented tree, conclusion first.
    pub fn pretty(&self) -> String {
        fn go(d: &Derivation, depth: usize, out: &mut String) {
            out.push_str(&"  ".repeat(depth));
            out.push_str(&format!("{:<4} {}\n", d.rule.to_string(), d.conclusion));
            for p in &d.premises {
                go(p, depth + 1, out);
            }
        }
        let mut out = String::new();
        go(self, 0, &mut out);
        out
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// Number of rule occurrences other than many.
pub fn deriv_size(d: &Derivation) -> usize {
    let own = usize::from(d.rule != Rule::Many);
    own + d.premises.iter().map(deriv_size).sum::<usize>()
}

/// Left context and right multi type; looks only at the conclusion.
pub fn is_shrinking(d: &Derivation) -> bool {
    match &d.conclusion.rhs {
        Rhs::Multi(m) => is_left_ctx(&d.conclusion.ctx) && is_right(m),
        Rhs::Linear(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term;

    fn g() -> MultiType {
        MultiType::ground()
    }

    fn x() -> Ident {
        Ident::new("x")
    }

    #[test]
    fn ax_node() {
        let d = Derivation::ax(&x(), LinearType::Ground);
        assert_eq!(check_derivation(&d).unwrap().to_string(), "x:[G] ⊢ x : G");
        assert_eq!(deriv_size(&d), 1);
    }

    #[test]
    fn empty_many_on_abstraction() {
        let t = term(r"\x.(\y.y y) (\y.y y)");
        let d = Derivation::many(t, vec![]).unwrap();
        assert!(check_derivation(&d).is_ok());
        assert_eq!(deriv_size(&d), 0);
        assert!(!is_shrinking(&d));
        assert!(Derivation::many(term("x y"), vec![]).is_err());
    }

    #[test]
    fn identity_at_ground() {
        let body = Derivation::var(&x(), &g());
        let lam = Derivation::lam(&x(), body).unwrap();
        let d = Derivation::many(term(r"\x.x"), vec![lam]).unwrap();
        assert_eq!(d.conclusion.to_string(), "⊢ \\x.x : [[G] ⊸ [G]]");
        assert_eq!(deriv_size(&d), 2);
        assert!(is_shrinking(&d));
        assert!(is_shrinking(&Derivation::var(&x(), &g())));
    }

    #[test]
    fn app_requires_multi_arrow() {
        let f = Derivation::ax(&Ident::new("f"), LinearType::Ground);
        let a = Derivation::var(&x(), &MultiType::empty());
        let e = Derivation::app(f, a).unwrap_err();
        assert_eq!(e.rule, Rule::App);
        // a bare ground type under many is no better
        let f = Derivation::var(&Ident::new("f"), &g());
        let a = Derivation::var(&x(), &MultiType::empty());
        assert!(Derivation::app(f, a).is_err());
    }

    #[test]
    fn checker_reports_the_failing_node() {
        let body = Derivation::var(&x(), &g());
        let lam = Derivation::lam(&x(), body).unwrap();
        let mut d = Derivation::many(term(r"\x.x"), vec![lam]).unwrap();
        d.premises[0].premises[0].conclusion.ctx = TypeContext::empty();
        let e = check_derivation(&d).unwrap_err();
        assert_eq!((e.path.clone(), e.rule), (vec![0, 0], Rule::Many));
    }

    #[test]
    fn json_round_trip() {
        let body = Derivation::var(&x(), &g());
        let d = Derivation::many(term(r"\x.x"), vec![Derivation::lam(&x(), body).unwrap()]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: Derivation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(s.contains(r#""rhs":[{"l":["G"],"r":["G"]}]"#), "{s}");
    }
}
