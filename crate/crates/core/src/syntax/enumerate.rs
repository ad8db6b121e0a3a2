//! Exhaustive enumeration of terms up to α-equivalence.
//!
//! Binders are named by their preorder index in the canonical binder
//! sequence, so each generated term is the unique representative of its
//! α-class and no deduplication pass is needed.

use std::sync::Arc;

use super::{Ident, Term};

/// `a`, `b`, ..., `z`, `a1`, `b1`, ...
pub fn canonical_binder(k: usize) -> Ident {
    let letter = (b'a' + (k % 26) as u8) as char;
    match k / 26 {
        0 => Ident::new(&letter.to_string()),
        round => Ident::new(&format!("{letter}{round}")),
    }
}

/// All terms of size `1..=max_size` (node count) whose free variables are
/// drawn from `free_pool`, one per α-class, ordered by size and then by
/// generation order. With `pure_only` no explicit substitutions appear.
pub fn enumerate_terms(
    max_size: usize,
    free_pool: &[Ident],
    pure_only: bool,
) -> impl Iterator<Item = Term> {
    let gen = Generator {
        free: free_pool.to_vec(),
        pure_only,
    };
    (1..=max_size).flat_map(move |size| {
        gen.terms(size, &mut Vec::new(), 0)
            .into_iter()
            .map(|(t, _)| t)
    })
}

struct Generator {
    free: Vec<Ident>,
    pure_only: bool,
}

impl Generator {
    fn binder(&self, k: usize) -> Ident {
        // k-th canonical name that is not a free-pool name
        let mut seen = 0;
        let mut i = 0;
        loop {
            let name = canonical_binder(i);
            if !self.free.contains(&name) {
                if seen == k {
                    return name;
                }
                seen += 1;
            }
            i += 1;
        }
    }

    /// Terms of exactly `size` nodes together with the next unused binder
    /// index.
    fn terms(&self, size: usize, scope: &mut Vec<Ident>, k: usize) -> Vec<(Term, usize)> {
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        if size == 1 {
            for x in scope.iter().chain(self.free.iter()) {
                out.push((Term::Var(x.clone()), k));
            }
            return out;
        }

        let x = self.binder(k);
        scope.push(x.clone());
        for (body, k1) in self.terms(size - 1, scope, k + 1) {
            out.push((Term::Lam(x.clone(), Arc::new(body)), k1));
        }
        scope.pop();

        if size >= 3 {
            for left in 1..=size - 2 {
                let right = size - 1 - left;
                for (f, k1) in self.terms(left, scope, k) {
                    for (a, k2) in self.terms(right, scope, k1) {
                        out.push((Term::App(Arc::new(f.clone()), Arc::new(a)), k2));
                    }
                }
            }
            if !self.pure_only {
                for left in 1..=size - 2 {
                    let right = size - 1 - left;
                    scope.push(x.clone());
                    let bodies = self.terms(left, scope, k + 1);
                    scope.pop();
                    for (b, k1) in bodies {
                        for (s, k2) in self.terms(right, scope, k1) {
                            out.push((Term::Es(Arc::new(b.clone()), x.clone(), Arc::new(s)), k2));
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{canon, term};
    use std::collections::BTreeSet;

    fn printed(ts: impl Iterator<Item = Term>) -> BTreeSet<String> {
        ts.map(|t| t.to_string()).collect()
    }

    #[test]
    fn closed_size_one_is_empty() {
        assert_eq!(enumerate_terms(1, &[], false).count(), 0);
        assert_eq!(enumerate_terms(1, &[], true).count(), 0);
    }

    #[test]
    fn closed_pure_small_sizes() {
        let two: Vec<_> = enumerate_terms(2, &[], true).collect();
        assert_eq!(two, vec![term(r"\a.a")]);
        // node count: \a.a a has four nodes, so it first shows up at size 4
        assert_eq!(
            printed(enumerate_terms(3, &[], true)),
            printed([r"\a.a", r"\a.\b.a", r"\a.\b.b"].into_iter().map(term))
        );
        let four: BTreeSet<_> = enumerate_terms(4, &[], true)
            .filter(|t| t.size() == 4)
            .map(|t| t.to_string())
            .collect();
        assert!(four.contains(r"\a.a a"));
    }

    #[test]
    fn binders_skip_free_pool_names() {
        let pool = [Ident::new("a")];
        for t in enumerate_terms(4, &pool, false) {
            assert!(!t.to_string().contains(r"\a."), "{t}");
        }
    }

    #[test]
    fn generated_terms_are_canonical_and_distinct() {
        let terms: Vec<_> = enumerate_terms(6, &[Ident::new("y")], false).collect();
        let classes: BTreeSet<_> = terms.iter().map(canon).collect();
        assert_eq!(classes.len(), terms.len());
    }
}
