//! Derivation transformers: value splitting and merging, the substitution
//! and anti-substitution, subject reduction and expansion along a
//! located step, typing of normal forms, and inference by evaluation.
//!
//! Internally every transformation runs on a copy of the term whose binders
//! are pairwise distinct and distinct from its free variables, so the
//! derivation-level substitutions never need to rename. [`retarget`] then
//! moves the resulting derivation onto the caller's exact term.

mod infer;
mod normal;
mod subject;
mod substitution;
mod values;

use thiserror::Error;

use crate::rewrite::RewriteError;
use crate::syntax::{alpha_eq, Ident, Term};
use crate::types::{CheckError, Derivation, Judgment, MultiType, Rule, TypeContext};

pub use infer::{infer, Inference, Mode};
pub use normal::{type_fireball_open, type_fireball_shrinking, type_inert_open, type_inert_shrinking};
pub use subject::{subject_expand, subject_reduce, TypedStep};
pub use substitution::{anti_substitute, substitute_derivation};
pub use values::{empty_value_derivation, merge_value_derivations, split_value_derivation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{0} is neither a variable nor an abstraction")]
    NotTheoreticalValue(Term),
    #[error("{0} is not an abstraction")]
    NotValue(Term),
    #[error("{0} is not an inert term")]
    NotInert(Term),
    #[error("{0} is not a fireball")]
    NotFireball(Term),
    #[error("{0} is not a strong inert term")]
    NotStrongInert(Term),
    #[error("{0} is not a strong fireball")]
    NotStrongFireball(Term),
    #[error("{0} is not a left multi type")]
    NotLeft(MultiType),
    #[error("{whole} is not the sum of {left} and {right}")]
    BadSplit {
        whole: MultiType,
        left: MultiType,
        right: MultiType,
    },
    #[error("derivation types {found}, expected a term α-equal to {expected}")]
    SubjectMismatch { expected: Term, found: Term },
    #[error("expected type {expected}, found {found}")]
    TypeMismatch { expected: MultiType, found: MultiType },
    #[error("unexpected derivation shape: {0}")]
    Shape(String),
    #[error("{0}")]
    NotVscStep(String),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

pub type Result<T> = std::result::Result<T, TransformError>;

fn shape(d: &Derivation, wanted: &str) -> TransformError {
    TransformError::Shape(format!("wanted {wanted}, found a {} node for {}", d.rule, d.conclusion))
}

fn multi(d: &Derivation) -> Result<&MultiType> {
    d.multi().ok_or_else(|| shape(d, "a multi-typed judgment"))
}

/// Moves `d` onto `target`, which must be α-equal to `d`'s subject:
/// subjects become the corresponding subterms of `target` and bound names
/// in inner contexts are renamed along.
pub fn retarget(d: &Derivation, target: &Term) -> Result<Derivation> {
    if !alpha_eq(d.subject(), target) {
        return Err(TransformError::SubjectMismatch {
            expected: target.clone(),
            found: d.subject().clone(),
        });
    }
    if d.subject() == target {
        return Ok(d.clone());
    }
    Ok(retarget_in(d, target, &mut Vec::new()))
}

fn retarget_in(d: &Derivation, t: &Term, env: &mut Vec<(Ident, Ident)>) -> Derivation {
    let mut ctx = TypeContext::empty();
    for (k, m) in d.ctx().iter() {
        let k2 = env
            .iter()
            .rev()
            .find(|(from, _)| from == k)
            .map(|(_, to)| to.clone())
            .unwrap_or_else(|| k.clone());
        ctx.set(&k2, m.clone());
    }
    let premises = match (d.rule, d.subject(), t) {
        (Rule::App, _, Term::App(f, a)) => vec![
            retarget_in(&d.premises[0], f, env),
            retarget_in(&d.premises[1], a, env),
        ],
        (Rule::Lam, Term::Lam(x, _), Term::Lam(y, b)) => {
            env.push((x.clone(), y.clone()));
            let p = retarget_in(&d.premises[0], b, env);
            env.pop();
            vec![p]
        }
        (Rule::Es, Term::Es(_, x, _), Term::Es(b, y, s)) => {
            env.push((x.clone(), y.clone()));
            let body = retarget_in(&d.premises[0], b, env);
            env.pop();
            vec![body, retarget_in(&d.premises[1], s, env)]
        }
        (Rule::Many, _, _) => d.premises.iter().map(|p| retarget_in(p, t, env)).collect(),
        _ => Vec::new(),
    };
    Derivation {
        rule: d.rule,
        conclusion: Judgment {
            ctx,
            subject: t.clone(),
            rhs: d.conclusion.rhs.clone(),
        },
        premises,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term;
    use crate::types::check_derivation;

    #[test]
    fn retarget_renames_inner_contexts() {
        let x = Ident::new("x");
        let body = Derivation::var(&x, &MultiType::ground());
        let lam = Derivation::lam(&x, body).unwrap();
        let d = Derivation::many(term(r"\x.x"), vec![lam]).unwrap();
        let r = retarget(&d, &term(r"\q.q")).unwrap();
        assert!(check_derivation(&r).is_ok());
        assert_eq!(r.premises[0].premises[0].conclusion.to_string(), "q:[G] ⊢ q : [G]");
        assert!(retarget(&d, &term(r"\q.x")).is_err());
    }
}
