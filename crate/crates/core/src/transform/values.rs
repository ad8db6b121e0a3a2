use super::{multi, shape, Result, TransformError};
use crate::classify::is_theoretical_value;
use crate::syntax::Term;
use crate::types::{Derivation, MultiType, Rule};

/// `⊢ v : 0`, a many with no premises.
pub fn empty_value_derivation(v: &Term) -> Result<Derivation> {
    if !is_theoretical_value(v) {
        return Err(TransformError::NotTheoreticalValue(v.clone()));
    }
    Ok(Derivation::many(v.clone(), Vec::new())?)
}

fn many_node(d: &Derivation) -> Result<()> {
    if d.rule != Rule::Many {
        return Err(shape(d, "a many node typing a variable or abstraction"));
    }
    Ok(())
}

/// Splits the premises of a many node so that the halves type `m1` and
/// `m2`. Premises go to the first half in order until `m1` is exhausted.
pub fn split_value_derivation(d: &Derivation, m1: &MultiType, m2: &MultiType) -> Result<(Derivation, Derivation)> {
    many_node(d)?;
    let whole = multi(d)?;
    if &m1.sum(m2) != whole {
        return Err(TransformError::BadSplit {
            whole: whole.clone(),
            left: m1.clone(),
            right: m2.clone(),
        });
    }
    let mut wanted: Vec<_> = m1.items().to_vec();
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for p in &d.premises {
        let a = p.conclusion.rhs.linear().ok_or_else(|| shape(p, "a linear premise"))?;
        match wanted.iter().position(|b| b == a) {
            Some(i) => {
                wanted.remove(i);
                left.push(p.clone());
            }
            None => right.push(p.clone()),
        }
    }
    Ok((
        Derivation::many(d.subject().clone(), left)?,
        Derivation::many(d.subject().clone(), right)?,
    ))
}

/// Concatenates the premises of two many nodes for the same value.
pub fn merge_value_derivations(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    many_node(d1)?;
    many_node(d2)?;
    if d1.subject() != d2.subject() {
        return Err(TransformError::SubjectMismatch {
            expected: d1.subject().clone(),
            found: d2.subject().clone(),
        });
    }
    let premises = d1.premises.iter().chain(&d2.premises).cloned().collect();
    Ok(Derivation::many(d1.subject().clone(), premises)?)
}

/// Splits `d` into one piece per entry of `parts`, in order.
pub(crate) fn split_many(d: &Derivation, parts: &[MultiType]) -> Result<Vec<Derivation>> {
    let mut out = Vec::with_capacity(parts.len());
    let mut rest = d.clone();
    for (i, m) in parts.iter().enumerate() {
        if i + 1 == parts.len() {
            if multi(&rest)? != m {
                return Err(TransformError::TypeMismatch {
                    expected: m.clone(),
                    found: multi(&rest)?.clone(),
                });
            }
            out.push(rest.clone());
            break;
        }
        let remaining = multi(&rest)?.minus(m).ok_or_else(|| TransformError::BadSplit {
            whole: multi(&rest).cloned().unwrap_or_default(),
            left: m.clone(),
            right: MultiType::empty(),
        })?;
        let (a, b) = split_value_derivation(&rest, m, &remaining)?;
        out.push(a);
        rest = b;
    }
    if parts.is_empty() && !multi(d)?.is_empty() {
        return Err(TransformError::TypeMismatch {
            expected: MultiType::empty(),
            found: multi(d)?.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{term, Ident};
    use crate::types::{check_derivation, deriv_size, LinearType, TypeContext};

    fn id_at(a: MultiType) -> Derivation {
        let x = Ident::new("x");
        Derivation::lam(&x, Derivation::var(&x, &a)).unwrap()
    }

    fn two_uses() -> Derivation {
        let g = MultiType::ground();
        let gg = MultiType::new(vec![LinearType::Ground, LinearType::Ground]);
        Derivation::many(term(r"\x.x"), vec![id_at(g), id_at(gg)]).unwrap()
    }

    #[test]
    fn empty_derivations() {
        let d = empty_value_derivation(&term("x")).unwrap();
        assert_eq!(d.conclusion.to_string(), "⊢ x : 0");
        assert_eq!(deriv_size(&empty_value_derivation(&term(r"\x.x x")).unwrap()), 0);
        assert!(empty_value_derivation(&term("x y")).is_err());
    }

    #[test]
    fn split_and_merge() {
        let d = two_uses();
        let m = d.multi().unwrap().clone();
        let (a, b) = split_value_derivation(&d, &m, &MultiType::empty()).unwrap();
        assert_eq!(a, d);
        assert!(b.premises.is_empty());

        let first = MultiType::single(m.items()[0].clone());
        let second = MultiType::single(m.items()[1].clone());
        let (a, b) = split_value_derivation(&d, &first, &second).unwrap();
        for h in [&a, &b] {
            check_derivation(h).unwrap();
        }
        assert_eq!(deriv_size(&a) + deriv_size(&b), deriv_size(&d));
        assert_eq!(a.ctx().sum(b.ctx()), *d.ctx());
        let back = merge_value_derivations(&a, &b).unwrap();
        assert_eq!(back.conclusion, d.conclusion);
        assert_eq!(merge_value_derivations(&empty_value_derivation(&term(r"\x.x")).unwrap(), &d).unwrap(), d);
        assert!(split_value_derivation(&d, &first, &first).is_err());
    }

    #[test]
    fn zero_type_means_empty() {
        let d = empty_value_derivation(&term(r"\x.x")).unwrap();
        assert_eq!(*d.ctx(), TypeContext::empty());
        assert_eq!(deriv_size(&d), 0);
        assert!(merge_value_derivations(&d, &empty_value_derivation(&term(r"\y.y")).unwrap()).is_err());
    }
}
