use std::collections::BTreeSet;
use std::sync::Arc;

use super::enumerate::canonical_binder;
use super::{Ident, NamePool, Term};

pub fn free_vars(t: &Term) -> BTreeSet<Ident> {
    fn go(t: &Term, bound: &mut Vec<Ident>, acc: &mut BTreeSet<Ident>) {
        match t {
            Term::Var(x) => {
                if !bound.contains(x) {
                    acc.insert(x.clone());
                }
            }
            Term::Lam(x, b) => {
                bound.push(x.clone());
                go(b, bound, acc);
                bound.pop();
            }
            Term::App(f, a) => {
                go(f, bound, acc);
                go(a, bound, acc);
            }
            Term::Es(b, x, s) => {
                go(s, bound, acc);
                bound.push(x.clone());
                go(b, bound, acc);
                bound.pop();
            }
        }
    }
    let mut acc = BTreeSet::new();
    go(t, &mut Vec::new(), &mut acc);
    acc
}

pub(crate) fn occurs_free(x: &Ident, t: &Term) -> bool {
    match t {
        Term::Var(y) => x == y,
        Term::Lam(y, b) => y != x && occurs_free(x, b),
        Term::App(f, a) => occurs_free(x, f) || occurs_free(x, a),
        Term::Es(b, y, s) => occurs_free(x, s) || (y != x && occurs_free(x, b)),
    }
}

/// Capture-avoiding substitution `t{x <- u}`. Binders of `t` are renamed
/// only when they would capture a free variable of `u`.
pub fn subst(t: &Term, x: &Ident, u: &Term) -> Term {
    if !occurs_free(x, t) {
        return t.clone();
    }
    let fvu = free_vars(u);
    let mut pool = NamePool::new(t.all_names().into_iter().chain(u.all_names()));
    pool.avoid(x);
    subst_with(t, x, u, &fvu, &mut pool)
}

fn subst_with(t: &Term, x: &Ident, u: &Term, fvu: &BTreeSet<Ident>, pool: &mut NamePool) -> Term {
    match t {
        Term::Var(y) if y == x => u.clone(),
        Term::Var(_) => t.clone(),
        Term::Lam(y, b) => {
            let (y, b) = under_binder(y, b, x, u, fvu, pool);
            match (y, b) {
                (Some(y), Some(b)) => Term::Lam(y, Arc::new(b)),
                _ => t.clone(),
            }
        }
        Term::App(f, a) => Term::App(
            Arc::new(subst_with(f, x, u, fvu, pool)),
            Arc::new(subst_with(a, x, u, fvu, pool)),
        ),
        Term::Es(b, y, s) => {
            let s2 = Arc::new(subst_with(s, x, u, fvu, pool));
            match under_binder(y, b, x, u, fvu, pool) {
                (Some(y), Some(b)) => Term::Es(Arc::new(b), y, s2),
                _ => Term::Es(b.clone(), y.clone(), s2),
            }
        }
    }
}

// Substitution below a binder `y` scoping over `b`. Returns `(None, None)`
// when nothing changes under the binder.
fn under_binder(
    y: &Ident,
    b: &Term,
    x: &Ident,
    u: &Term,
    fvu: &BTreeSet<Ident>,
    pool: &mut NamePool,
) -> (Option<Ident>, Option<Term>) {
    if y == x || !occurs_free(x, b) {
        return (None, None);
    }
    if fvu.contains(y) {
        let y2 = pool.fresh(y);
        let renamed = subst_with(b, y, &Term::Var(y2.clone()), &BTreeSet::from([y2.clone()]), pool);
        (Some(y2), Some(subst_with(&renamed, x, u, fvu, pool)))
    } else {
        (Some(y.clone()), Some(subst_with(b, x, u, fvu, pool)))
    }
}

pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    fn lookup(stack: &[Ident], x: &Ident) -> Option<usize> {
        stack.iter().rev().position(|y| y == x)
    }
    fn go(t: &Term, u: &Term, lt: &mut Vec<Ident>, lu: &mut Vec<Ident>) -> bool {
        match (t, u) {
            (Term::Var(x), Term::Var(y)) => match (lookup(lt, x), lookup(lu, y)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            },
            (Term::Lam(x, b), Term::Lam(y, c)) => {
                lt.push(x.clone());
                lu.push(y.clone());
                let r = go(b, c, lt, lu);
                lt.pop();
                lu.pop();
                r
            }
            (Term::App(f, a), Term::App(g, b)) => go(f, g, lt, lu) && go(a, b, lt, lu),
            (Term::Es(b, x, s), Term::Es(c, y, r)) => {
                if !go(s, r, lt, lu) {
                    return false;
                }
                lt.push(x.clone());
                lu.push(y.clone());
                let res = go(b, c, lt, lu);
                lt.pop();
                lu.pop();
                res
            }
            _ => false,
        }
    }
    go(t, u, &mut Vec::new(), &mut Vec::new())
}

/// Canonical α-representative: binders renamed in preorder to the canonical
/// binder sequence, skipping names free in the term.
pub fn canon(t: &Term) -> Term {
    let free = free_vars(t);
    let mut next = 0usize;
    let mut fresh = || loop {
        let name = canonical_binder(next);
        next += 1;
        if !free.contains(&name) {
            return name;
        }
    };
    rename_binders(t, &mut Vec::new(), &mut fresh)
}

/// An α-variant of `t` whose binders are pairwise distinct and distinct
/// from `avoid` and from every name already in `t`.
pub fn freshen(t: &Term, avoid: &BTreeSet<Ident>) -> Term {
    let mut pool = NamePool::new(t.all_names().into_iter().chain(avoid.iter().cloned()));
    let mut hints: Vec<Ident> = Vec::new();
    collect_binders(t, &mut hints);
    let mut hints = hints.into_iter();
    let mut fresh = || {
        let hint = hints.next().expect("one hint per binder");
        pool.fresh(&hint)
    };
    rename_binders(t, &mut Vec::new(), &mut fresh)
}

fn collect_binders(t: &Term, acc: &mut Vec<Ident>) {
    match t {
        Term::Var(_) => {}
        Term::Lam(x, b) => {
            acc.push(x.clone());
            collect_binders(b, acc);
        }
        Term::App(f, a) => {
            collect_binders(f, acc);
            collect_binders(a, acc);
        }
        Term::Es(b, x, s) => {
            acc.push(x.clone());
            collect_binders(b, acc);
            collect_binders(s, acc);
        }
    }
}

// Preorder binder renaming: a node's binder first, then body, then (for ES)
// the subject. New names must be pairwise distinct and not free in `t`.
fn rename_binders(t: &Term, env: &mut Vec<(Ident, Ident)>, fresh: &mut dyn FnMut() -> Ident) -> Term {
    match t {
        Term::Var(x) => match env.iter().rev().find(|(from, _)| from == x) {
            Some((_, to)) => Term::Var(to.clone()),
            None => t.clone(),
        },
        Term::Lam(x, b) => {
            let y = fresh();
            env.push((x.clone(), y.clone()));
            let b2 = rename_binders(b, env, fresh);
            env.pop();
            Term::Lam(y, Arc::new(b2))
        }
        Term::App(f, a) => {
            let f2 = rename_binders(f, env, fresh);
            let a2 = rename_binders(a, env, fresh);
            Term::App(Arc::new(f2), Arc::new(a2))
        }
        Term::Es(b, x, s) => {
            let y = fresh();
            env.push((x.clone(), y.clone()));
            let b2 = rename_binders(b, env, fresh);
            env.pop();
            let s2 = rename_binders(s, env, fresh);
            Term::Es(Arc::new(b2), y, Arc::new(s2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term;

    fn names(xs: &[&str]) -> BTreeSet<Ident> {
        xs.iter().map(|x| Ident::new(x)).collect()
    }

    #[test]
    fn free_variables() {
        assert_eq!(free_vars(&term(r"\x.x y")), names(&["y"]));
        assert_eq!(free_vars(&term("(x y)[x <- z]")), names(&["y", "z"]));
        assert_eq!(free_vars(&term(r"(\x.x x) (\x.x x)")), names(&[]));
        // the ES binder does not scope over its own subject
        assert_eq!(free_vars(&term("x[x <- x]")), names(&["x"]));
    }

    #[test]
    fn substitution_renames_on_capture() {
        let t = term(r"\x.\y.z");
        let r = subst(&t, &Ident::new("z"), &term("x y"));
        assert!(alpha_eq(&r, &term(r"\a.\b.x y")));
        assert_eq!(r.to_string(), r"\x1.\y1.x y");
    }

    #[test]
    fn substitution_base_cases() {
        let v = term(r"\a.a");
        assert_eq!(subst(&term("x"), &Ident::new("x"), &v), v);
        assert_eq!(subst(&term("y"), &Ident::new("x"), &v), term("y"));
        // no renaming when nothing is captured
        assert_eq!(
            subst(&term(r"\y.x y"), &Ident::new("x"), &v),
            term(r"\y.(\a.a) y")
        );
        // shadowed occurrences are untouched
        assert_eq!(subst(&term(r"\x.x"), &Ident::new("x"), &v), term(r"\x.x"));
        assert_eq!(
            subst(&term("x[x <- x]"), &Ident::new("x"), &v),
            term(r"x[x <- \a.a]")
        );
    }

    #[test]
    fn alpha_equivalence_examples() {
        assert!(alpha_eq(&term(r"\x.x"), &term(r"\y.y")));
        assert!(!alpha_eq(&term(r"\x.\y.x"), &term(r"\x.\y.y")));
        assert!(alpha_eq(&term("x[x <- y]"), &term("z[z <- y]")));
        assert!(!alpha_eq(&term(r"\x.y"), &term(r"\y.y")));
    }

    #[test]
    fn es_binder_scope_in_alpha_eq() {
        // x is bound in the body only: x[x <- x] vs y[y <- x] are α-equal,
        // y[y <- y] has a different free variable.
        assert!(alpha_eq(&term("x[x <- x]"), &term("y[y <- x]")));
        assert!(!alpha_eq(&term("x[x <- x]"), &term("y[y <- y]")));
    }

    #[test]
    fn canon_matches_alpha_eq() {
        let a = term(r"(\p.\q.p q r)[r <- \s.s]");
        let b = term(r"(\u.\v.u v w)[w <- \k.k]");
        assert_eq!(canon(&a), canon(&b));
        assert_eq!(canon(&canon(&a)), canon(&a));
        assert_eq!(canon(&term(r"\x.a x")).to_string(), r"\b.a b");
    }

    #[test]
    fn freshen_gives_distinct_binders() {
        let t = term(r"(\x.x) (\x.x[y <- \x.x])");
        let f = freshen(&t, &names(&["x1"]));
        assert!(alpha_eq(&t, &f));
        let mut seen = Vec::new();
        collect_binders(&f, &mut seen);
        let set: BTreeSet<_> = seen.iter().cloned().collect();
        assert_eq!(set.len(), seen.len());
        assert!(!set.contains(&Ident::new("x1")));
        assert!(!set.contains(&Ident::new("x")));
    }
}
