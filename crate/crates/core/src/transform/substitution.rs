use std::collections::BTreeSet;

use super::values::split_many;
use super::{multi, retarget, shape, Result, TransformError};
use crate::classify::is_value;
use crate::syntax::{alpha_eq, free_vars, freshen, subst, Ident, Term};
use crate::types::{check_derivation, Derivation, MultiType, Rule};

fn clash_free(t: &Term, x: &Ident, v: &Term) -> Term {
    let mut avoid: BTreeSet<Ident> = free_vars(v);
    avoid.insert(x.clone());
    avoid.extend(v.all_names());
    freshen(t, &avoid)
}

/// From `Φ ▷ Γ, x:N ⊢ t : M` and `Ψ ▷ Δ ⊢ v : N` builds
/// `Θ ▷ Γ ⊎ Δ ⊢ t{x<-v} : M`, with `|Θ| = |Φ| + |Ψ| - |N|`: the axioms
/// for `x` are replaced by the pieces of Ψ.
pub fn substitute_derivation(phi: &Derivation, x: &Ident, psi: &Derivation) -> Result<Derivation> {
    check_derivation(phi)?;
    check_derivation(psi)?;
    let v = psi.subject();
    if !is_value(v) {
        return Err(TransformError::NotValue(v.clone()));
    }
    multi(phi)?;
    let n = phi.ctx().get(x);
    if multi(psi)? != &n {
        return Err(TransformError::TypeMismatch {
            expected: n,
            found: multi(psi)?.clone(),
        });
    }
    let t = phi.subject();
    let fresh = clash_free(t, x, v);
    let theta = substitute_in(&retarget(phi, &fresh)?, x, psi)?;
    retarget(&theta, &subst(t, x, v))
}

// Assumes the binders of Φ's subject are distinct from `x` and from the
// names of the value typed by Ψ, so substitution never renames.
pub(crate) fn substitute_in(phi: &Derivation, x: &Ident, psi: &Derivation) -> Result<Derivation> {
    let v = psi.subject();
    match phi.subject() {
        Term::Var(y) if y == x => Ok(psi.clone()),
        Term::Var(_) => Ok(phi.clone()),
        Term::App(..) => {
            if phi.rule != Rule::App {
                return Err(shape(phi, "an application node"));
            }
            let (f, a) = (&phi.premises[0], &phi.premises[1]);
            let parts = split_many(psi, &[f.ctx().get(x), a.ctx().get(x)])?;
            Ok(Derivation::app(
                substitute_in(f, x, &parts[0])?,
                substitute_in(a, x, &parts[1])?,
            )?)
        }
        Term::Es(_, y, _) => {
            if phi.rule != Rule::Es {
                return Err(shape(phi, "a substitution node"));
            }
            let (b, s) = (&phi.premises[0], &phi.premises[1]);
            let parts = split_many(psi, &[b.ctx().get(x), s.ctx().get(x)])?;
            Ok(Derivation::es(
                substitute_in(b, x, &parts[0])?,
                y,
                substitute_in(s, x, &parts[1])?,
            )?)
        }
        Term::Lam(y, _) => {
            if phi.rule != Rule::Many {
                return Err(shape(phi, "a many node"));
            }
            if phi.premises.is_empty() {
                return Ok(Derivation::many(subst(phi.subject(), x, v), Vec::new())?);
            }
            let needs: Vec<MultiType> = phi.premises.iter().map(|p| p.ctx().get(x)).collect();
            let parts = split_many(psi, &needs)?;
            let mut lams = Vec::with_capacity(parts.len());
            for (lam, part) in phi.premises.iter().zip(&parts) {
                lams.push(Derivation::lam(y, substitute_in(&lam.premises[0], x, part)?)?);
            }
            let subject = lams[0].subject().clone();
            Ok(Derivation::many(subject, lams)?)
        }
    }
}

/// From `Φ ▷ Γ ⊢ t{x<-v} : M` recovers `Ψ ▷ Γ', x:N ⊢ t : M` and
/// `Θ ▷ Δ ⊢ v : N` with `Γ = Γ' ⊎ Δ` and `|Ψ| + |Θ| = |Φ| + |N|`.
pub fn anti_substitute(phi: &Derivation, t: &Term, x: &Ident, v: &Term) -> Result<(Derivation, Derivation)> {
    check_derivation(phi)?;
    if !is_value(v) {
        return Err(TransformError::NotValue(v.clone()));
    }
    multi(phi)?;
    let target = subst(t, x, v);
    if !alpha_eq(phi.subject(), &target) {
        return Err(TransformError::SubjectMismatch {
            expected: target,
            found: phi.subject().clone(),
        });
    }
    let fresh = clash_free(t, x, v);
    let (psi, theta) = anti_in(&retarget(phi, &subst(&fresh, x, v))?, &fresh, x, v)?;
    Ok((retarget(&psi, t)?, theta))
}

// Same naming assumption as `substitute_in`; the subject of Φ is exactly
// `t{x<-v}` computed without renaming.
pub(crate) fn anti_in(phi: &Derivation, t: &Term, x: &Ident, v: &Term) -> Result<(Derivation, Derivation)> {
    let empty = || Derivation::many(v.clone(), Vec::new());
    match t {
        Term::Var(y) if y == x => {
            let m = multi(phi)?;
            Ok((Derivation::var(x, m), phi.clone()))
        }
        Term::Var(_) => Ok((phi.clone(), empty()?)),
        Term::App(f, a) => {
            if phi.rule != Rule::App {
                return Err(shape(phi, "an application node"));
            }
            let (pf, tf) = anti_in(&phi.premises[0], f, x, v)?;
            let (pa, ta) = anti_in(&phi.premises[1], a, x, v)?;
            Ok((Derivation::app(pf, pa)?, super::merge_value_derivations(&tf, &ta)?))
        }
        Term::Es(b, y, s) => {
            if phi.rule != Rule::Es {
                return Err(shape(phi, "a substitution node"));
            }
            let (pb, tb) = anti_in(&phi.premises[0], b, x, v)?;
            let (ps, ts) = anti_in(&phi.premises[1], s, x, v)?;
            Ok((Derivation::es(pb, y, ps)?, super::merge_value_derivations(&tb, &ts)?))
        }
        Term::Lam(y, b) => {
            if phi.rule != Rule::Many {
                return Err(shape(phi, "a many node"));
            }
            let mut lams = Vec::with_capacity(phi.premises.len());
            let mut theta = empty()?;
            for lam in &phi.premises {
                let (pb, tb) = anti_in(&lam.premises[0], b, x, v)?;
                lams.push(Derivation::lam(y, pb)?);
                theta = super::merge_value_derivations(&theta, &tb)?;
            }
            Ok((Derivation::many(t.clone(), lams)?, theta))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term;
    use crate::types::{deriv_size, LinearType};

    fn g() -> MultiType {
        MultiType::ground()
    }

    fn x() -> Ident {
        Ident::new("x")
    }

    // x:[[G]⊸[G], [G]⊸[G]] ⊢ x (x z) : [G] with z:[G]
    fn double_use() -> Derivation {
        let arr = LinearType::arrow(g(), g());
        let z = Derivation::var(&Ident::new("z"), &g());
        let inner = Derivation::app(Derivation::var(&x(), &MultiType::single(arr.clone())), z).unwrap();
        Derivation::app(Derivation::var(&x(), &MultiType::single(arr)), inner).unwrap()
    }

    fn identity_twice() -> Derivation {
        let arr = LinearType::arrow(g(), g());
        let a = Ident::new("a");
        let lam = || Derivation::lam(&a, Derivation::var(&a, &g())).unwrap();
        let d = Derivation::many(term(r"\a.a"), vec![lam(), lam()]).unwrap();
        assert_eq!(d.multi().unwrap(), &MultiType::new(vec![arr.clone(), arr]));
        d
    }

    #[test]
    fn substitution_size_accounting() {
        let phi = double_use();
        let psi = identity_twice();
        let theta = substitute_derivation(&phi, &x(), &psi).unwrap();
        check_derivation(&theta).unwrap();
        assert_eq!(theta.subject(), &term(r"(\a.a) ((\a.a) z)"));
        assert_eq!(deriv_size(&theta) + 2, deriv_size(&phi) + deriv_size(&psi));
        assert_eq!(theta.ctx().to_string(), "z:[G]");
    }

    #[test]
    fn anti_substitution_inverts() {
        let phi = double_use();
        let psi = identity_twice();
        let theta = substitute_derivation(&phi, &x(), &psi).unwrap();
        let (back, val) = anti_substitute(&theta, phi.subject(), &x(), psi.subject()).unwrap();
        assert_eq!(back.conclusion, phi.conclusion);
        assert_eq!(val.conclusion, psi.conclusion);
        assert_eq!(deriv_size(&back) + deriv_size(&val), deriv_size(&theta) + 2);
    }

    #[test]
    fn capture_is_avoided() {
        // t = \z.x z with v = \w.z: the binder z must not capture.
        let z = Ident::new("z");
        let body = Derivation::app(
            Derivation::var(&x(), &MultiType::single(LinearType::arrow(MultiType::empty(), g()))),
            Derivation::var(&z, &MultiType::empty()),
        )
        .unwrap();
        let phi = Derivation::many(term(r"\z.x z"), vec![Derivation::lam(&z, body).unwrap()]).unwrap();
        let w = Ident::new("w");
        let lam = Derivation::lam(&w, Derivation::var(&z, &g())).unwrap();
        let psi = Derivation::many(term(r"\w.z"), vec![lam]).unwrap();
        let theta = substitute_derivation(&phi, &x(), &psi).unwrap();
        check_derivation(&theta).unwrap();
        assert!(alpha_eq(theta.subject(), &term(r"\q.(\w.z) q")));
        assert_eq!(theta.ctx().to_string(), "z:[G]");
    }

    #[test]
    fn unused_variable() {
        let phi = Derivation::var(&Ident::new("y"), &g());
        let psi = Derivation::many(term(r"\a.a"), vec![]).unwrap();
        assert_eq!(substitute_derivation(&phi, &x(), &psi).unwrap(), phi);
        let bad = identity_twice();
        assert!(matches!(
            substitute_derivation(&phi, &x(), &bad),
            Err(TransformError::TypeMismatch { .. })
        ));
    }
}
