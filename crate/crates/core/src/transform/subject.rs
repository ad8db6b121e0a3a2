use serde::Serialize;

use super::substitution::{anti_in, substitute_in};
use super::{retarget, shape, Result, TransformError};
use crate::rewrite::{apply_at, split_answer, RuleTag, Step};
use crate::syntax::{alpha_eq, free_vars, freshen, Move, Term};
use crate::types::{check_derivation, Derivation, Rule};

/// A step together with its source term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypedStep {
    pub before: Term,
    pub step: Step,
}

impl TypedStep {
    pub fn new(before: Term, step: Step) -> Self {
        TypedStep { before, step }
    }

    pub fn after(&self) -> &Term {
        &self.step.reduct
    }
}

/// Binder-distinct copies of both sides of a step, so that the root rules
/// fire without renaming.
fn fresh_sides(s: &TypedStep) -> Result<(Term, Term)> {
    if !matches!(s.step.rule, RuleTag::M | RuleTag::E) {
        return Err(TransformError::NotVscStep(format!(
            "{} is not a rule of the substitution calculus",
            s.step.rule
        )));
    }
    let after = apply_at(&s.before, &s.step.path, s.step.rule)?;
    if !alpha_eq(&after, s.after()) {
        return Err(TransformError::NotVscStep(format!(
            "firing {} at {:?} in {} does not give {}",
            s.step.rule,
            s.step.path,
            s.before,
            s.after()
        )));
    }
    let before = freshen(&s.before, &free_vars(&s.before));
    let after = apply_at(&before, &s.step.path, s.step.rule)?;
    Ok((before, after))
}

/// Rewrites `d` at `path`. `dst` is the term the result must type; it
/// agrees with `d`'s subject everywhere except below `path`.
fn transport(
    d: &Derivation,
    dst: &Term,
    path: &[Move],
    at: &mut dyn FnMut(&Derivation, &Term) -> Result<Derivation>,
) -> Result<Derivation> {
    let Some((mv, rest)) = path.split_first() else {
        return at(d, dst);
    };
    match (mv, dst) {
        (Move::AppL, Term::App(f, _)) if d.rule == Rule::App => {
            Ok(Derivation::app(transport(&d.premises[0], f, rest, at)?, d.premises[1].clone())?)
        }
        (Move::AppR, Term::App(_, a)) if d.rule == Rule::App => {
            Ok(Derivation::app(d.premises[0].clone(), transport(&d.premises[1], a, rest, at)?)?)
        }
        (Move::EsBody, Term::Es(b, x, _)) if d.rule == Rule::Es => Ok(Derivation::es(
            transport(&d.premises[0], b, rest, at)?,
            x,
            d.premises[1].clone(),
        )?),
        (Move::EsSubject, Term::Es(_, x, s)) if d.rule == Rule::Es => Ok(Derivation::es(
            d.premises[0].clone(),
            x,
            transport(&d.premises[1], s, rest, at)?,
        )?),
        (Move::LamBody, Term::Lam(x, b)) if d.rule == Rule::Many => {
            let mut lams = Vec::with_capacity(d.premises.len());
            for lam in &d.premises {
                lams.push(Derivation::lam(x, transport(&lam.premises[0], b, rest, at)?)?);
            }
            Ok(Derivation::many(dst.clone(), lams)?)
        }
        _ => Err(shape(d, &format!("a node to descend through with {mv:?}"))),
    }
}

/// Peels `k` substitution nodes off `d`, returning the layers (outermost
/// first) and the derivation underneath.
fn peel(d: &Derivation, k: usize) -> Result<(Vec<&Derivation>, &Derivation)> {
    let mut layers = Vec::with_capacity(k);
    let mut cur = d;
    for _ in 0..k {
        if cur.rule != Rule::Es {
            return Err(shape(cur, "a substitution layer of an answer"));
        }
        layers.push(cur);
        cur = &cur.premises[0];
    }
    Ok((layers, cur))
}

fn replug(layers: &[&Derivation], core: Derivation) -> Result<Derivation> {
    let mut acc = core;
    for layer in layers.iter().rev() {
        let Term::Es(_, y, _) = layer.subject() else { unreachable!() };
        acc = Derivation::es(acc, y, layer.premises[1].clone())?;
    }
    Ok(acc)
}

fn answer_depth(t: &Term) -> Result<usize> {
    split_answer(t)
        .map(|(layers, _)| layers.len())
        .ok_or_else(|| TransformError::NotVscStep(format!("{t} is not an answer")))
}

fn reduce_root(d: &Derivation, rule: RuleTag) -> Result<Derivation> {
    match (rule, d.subject()) {
        // @(L<many[λx.Ψ]>, Θ)  ~>  L<es(Ψ, x, Θ)>
        (RuleTag::M, Term::App(head, _)) => {
            if d.rule != Rule::App {
                return Err(shape(d, "an application node"));
            }
            let (layers, core) = peel(&d.premises[0], answer_depth(head)?)?;
            let [lam] = core.premises.as_slice() else {
                return Err(shape(core, "a many node with one premise"));
            };
            let Term::Lam(x, _) = lam.subject() else {
                return Err(shape(lam, "an abstraction"));
            };
            let es = Derivation::es(lam.premises[0].clone(), x, d.premises[1].clone())?;
            replug(&layers, es)
        }
        // es(Ψ, x, L<Θ>)  ~>  L<Ψ{x<-Θ}>
        (RuleTag::E, Term::Es(_, x, subject)) => {
            if d.rule != Rule::Es {
                return Err(shape(d, "a substitution node"));
            }
            let (layers, value) = peel(&d.premises[1], answer_depth(subject)?)?;
            let body = substitute_in(&d.premises[0], x, value)?;
            replug(&layers, body)
        }
        _ => Err(shape(d, &format!("a {rule} redex"))),
    }
}

fn expand_root(d: &Derivation, redex: &Term, rule: RuleTag) -> Result<Derivation> {
    match (rule, redex) {
        (RuleTag::M, Term::App(head, _)) => {
            let (layers, core) = peel(d, answer_depth(head)?)?;
            if core.rule != Rule::Es {
                return Err(shape(core, "a substitution node"));
            }
            let Term::Es(_, x, _) = core.subject() else { unreachable!() };
            let lam = Derivation::lam(x, core.premises[0].clone())?;
            let many = Derivation::many(lam.subject().clone(), vec![lam])?;
            Ok(Derivation::app(replug(&layers, many)?, core.premises[1].clone())?)
        }
        (RuleTag::E, Term::Es(b, x, subject)) => {
            let Some((_, v)) = split_answer(subject) else {
                return Err(TransformError::NotVscStep(format!("{subject} is not an answer")));
            };
            let (layers, core) = peel(d, answer_depth(subject)?)?;
            let (psi, theta) = anti_in(core, b, x, v)?;
            Ok(Derivation::es(psi, x, replug(&layers, theta)?)?)
        }
        _ => Err(TransformError::NotVscStep(format!("no {rule} redex at {redex}"))),
    }
}

/// Subject reduction along a located m/e step: a derivation for the source
/// becomes one for the reduct, strictly smaller for multiplicative steps
/// and, when the start is shrinking, strictly smaller for every step.
pub fn subject_reduce(d: &Derivation, s: &TypedStep) -> Result<Derivation> {
    check_derivation(d)?;
    if !alpha_eq(d.subject(), &s.before) {
        return Err(TransformError::SubjectMismatch {
            expected: s.before.clone(),
            found: d.subject().clone(),
        });
    }
    let (before, after) = fresh_sides(s)?;
    let rule = s.step.rule;
    let out = transport(&retarget(d, &before)?, &after, &s.step.path, &mut |d, _| reduce_root(d, rule))?;
    retarget(&out, s.after())
}

/// Subject expansion: a derivation for the reduct of a located m/e step
/// becomes one for its source.
pub fn subject_expand(d: &Derivation, s: &TypedStep) -> Result<Derivation> {
    check_derivation(d)?;
    if !alpha_eq(d.subject(), s.after()) {
        return Err(TransformError::SubjectMismatch {
            expected: s.after().clone(),
            found: d.subject().clone(),
        });
    }
    let (before, after) = fresh_sides(s)?;
    let rule = s.step.rule;
    let out = transport(&retarget(d, &after)?, &before, &s.step.path, &mut |d, redex| {
        expand_root(d, redex, rule)
    })?;
    retarget(&out, &s.before)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{redexes, Strategy};
    use crate::syntax::{term, Ident};
    use crate::types::{deriv_size, MultiType};

    fn g() -> MultiType {
        MultiType::ground()
    }

    // ⊢ (\x.x) y : [G] with y:[G]
    fn id_app() -> Derivation {
        let x = Ident::new("x");
        let lam = Derivation::lam(&x, Derivation::var(&x, &g())).unwrap();
        let many = Derivation::many(term(r"\x.x"), vec![lam]).unwrap();
        Derivation::app(many, Derivation::var(&Ident::new("y"), &g())).unwrap()
    }

    fn first_step(t: &Term) -> TypedStep {
        let st = redexes(t, Strategy::Vsc).unwrap().remove(0);
        TypedStep::new(t.clone(), st)
    }

    #[test]
    fn multiplicative_step_shrinks_by_one() {
        let d = id_app();
        let s = first_step(d.subject());
        let r = subject_reduce(&d, &s).unwrap();
        check_derivation(&r).unwrap();
        assert_eq!(r.subject(), &term("x[x <- y]"));
        assert_eq!(deriv_size(&r) + 1, deriv_size(&d));
        let back = subject_expand(&r, &s).unwrap();
        assert_eq!(back.conclusion, d.conclusion);
        assert_eq!(deriv_size(&back), deriv_size(&d));
    }

    #[test]
    fn rejects_foreign_steps() {
        let d = id_app();
        let s = TypedStep::new(
            d.subject().clone(),
            Step {
                path: vec![],
                rule: RuleTag::E,
                reduct: term("y"),
            },
        );
        assert!(matches!(subject_reduce(&d, &s), Err(TransformError::Rewrite(_))));
        let other = first_step(&term(r"(\z.z) z"));
        assert!(matches!(subject_reduce(&d, &other), Err(TransformError::SubjectMismatch { .. })));
    }
}
