use super::{Result, TransformError};
use crate::classify::{is_fireball, is_inert, is_strong_fireball, is_strong_inert};
use crate::syntax::Term;
use crate::types::{is_left, Derivation, LinearType, MultiType};

/// `Γ ⊢ i : M` for any multi type `M`, the context covering only free
/// variables of `i`.
pub fn type_inert_open(i: &Term, m: &MultiType) -> Result<Derivation> {
    if !is_inert(i) {
        return Err(TransformError::NotInert(i.clone()));
    }
    inert_open(i, m)
}

fn inert_open(i: &Term, m: &MultiType) -> Result<Derivation> {
    Ok(match i {
        Term::Var(x) => Derivation::var(x, m),
        Term::App(head, f) => {
            let arg = fireball_open(f)?;
            let arrow = MultiType::single(LinearType::arrow(MultiType::empty(), m.clone()));
            Derivation::app(inert_open(head, &arrow)?, arg)?
        }
        Term::Es(body, x, s) => {
            let b = inert_open(body, m)?;
            let n = b.ctx().get(x);
            Derivation::es(b, x, inert_open(s, &n)?)?
        }
        Term::Lam(..) => return Err(TransformError::NotInert(i.clone())),
    })
}

/// `Γ ⊢ f : 0`.
pub fn type_fireball_open(f: &Term) -> Result<Derivation> {
    if !is_fireball(f) {
        return Err(TransformError::NotFireball(f.clone()));
    }
    fireball_open(f)
}

fn fireball_open(f: &Term) -> Result<Derivation> {
    if is_inert(f) {
        return inert_open(f, &MultiType::empty());
    }
    Ok(match f {
        Term::Lam(..) => Derivation::many(f.clone(), Vec::new())?,
        Term::Es(body, x, i) => {
            let b = fireball_open(body)?;
            let n = b.ctx().get(x);
            Derivation::es(b, x, inert_open(i, &n)?)?
        }
        _ => return Err(TransformError::NotFireball(f.clone())),
    })
}

/// Shrinking typing of a strong inert term at a left multi type.
pub fn type_inert_shrinking(i: &Term, m: &MultiType) -> Result<Derivation> {
    if !is_strong_inert(i) {
        return Err(TransformError::NotStrongInert(i.clone()));
    }
    if !is_left(m) {
        return Err(TransformError::NotLeft(m.clone()));
    }
    inert_shrinking(i, m)
}

fn inert_shrinking(i: &Term, m: &MultiType) -> Result<Derivation> {
    Ok(match i {
        Term::Var(x) => Derivation::var(x, m),
        Term::App(head, f) => {
            let arg = fireball_shrinking(f)?;
            let n = arg.multi().expect("fireballs get multi types").clone();
            let arrow = MultiType::single(LinearType::arrow(n, m.clone()));
            Derivation::app(inert_shrinking(head, &arrow)?, arg)?
        }
        Term::Es(body, x, s) => {
            let b = inert_shrinking(body, m)?;
            let n = b.ctx().get(x);
            Derivation::es(b, x, inert_shrinking(s, &n)?)?
        }
        Term::Lam(..) => return Err(TransformError::NotStrongInert(i.clone())),
    })
}

/// Shrinking typing of a strong fireball: a left context and a right,
/// hence non-empty, multi type.
pub fn type_fireball_shrinking(f: &Term) -> Result<Derivation> {
    if !is_strong_fireball(f) {
        return Err(TransformError::NotStrongFireball(f.clone()));
    }
    fireball_shrinking(f)
}

fn fireball_shrinking(f: &Term) -> Result<Derivation> {
    if is_strong_inert(f) {
        return inert_shrinking(f, &MultiType::ground());
    }
    Ok(match f {
        Term::Lam(x, body) => {
            let b = fireball_shrinking(body)?;
            Derivation::many(f.clone(), vec![Derivation::lam(x, b)?])?
        }
        Term::Es(body, x, i) => {
            let b = fireball_shrinking(body)?;
            let n = b.ctx().get(x);
            Derivation::es(b, x, inert_shrinking(i, &n)?)?
        }
        _ => return Err(TransformError::NotStrongFireball(f.clone())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term;
    use crate::types::{check_derivation, deriv_size, is_left_ctx, is_right, is_shrinking};

    #[test]
    fn open_typings_are_zero() {
        for s in [r"x (\y.y)", r"(x y)[y <- z w]", r"(\a.a a)[b <- c c]", "x"] {
            let d = type_fireball_open(&term(s)).unwrap();
            check_derivation(&d).unwrap();
            assert_eq!(d.multi(), Some(&MultiType::empty()), "{s}");
        }
        let d = type_inert_open(&term("x y"), &MultiType::ground()).unwrap();
        assert_eq!(d.ctx().to_string(), "x:[0 ⊸ [G]]");
        assert!(type_fireball_open(&term(r"(\x.x) y")).is_err());
    }

    #[test]
    fn shrinking_typings() {
        for s in [r"\x.x", r"\x.\y.x y", r"x (\y.y z)", r"\f.(f f)[g <- h h]"] {
            let d = type_fireball_shrinking(&term(s)).unwrap();
            check_derivation(&d).unwrap();
            assert!(is_shrinking(&d), "{s}");
            assert!(is_left_ctx(d.ctx()) && is_right(d.multi().unwrap()));
        }
        let d = type_fireball_shrinking(&term(r"\x.x")).unwrap();
        assert_eq!(deriv_size(&d), 2);
        assert!(type_fireball_shrinking(&term(r"\x.(\y.y) x")).is_err());
        let arrow = MultiType::single(LinearType::arrow(MultiType::empty(), MultiType::ground()));
        assert!(matches!(
            type_inert_shrinking(&term("x"), &arrow),
            Err(TransformError::NotLeft(_))
        ));
    }
}
