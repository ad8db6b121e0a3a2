use std::collections::BTreeSet;

use super::{Ident, Term};

/// Deterministic fresh-name supply. A fresh name is the base name (trailing
/// digits stripped) followed by the smallest numeric suffix not yet taken.
#[derive(Clone, Debug, Default)]
pub struct NamePool {
    taken: BTreeSet<Ident>,
}

impl NamePool {
    pub fn new<I: IntoIterator<Item = Ident>>(avoid: I) -> Self {
        NamePool {
            taken: avoid.into_iter().collect(),
        }
    }

    pub fn avoid(&mut self, name: &Ident) {
        self.taken.insert(name.clone());
    }

    /// Marks every name occurring in `t`, bound or free.
    pub fn avoid_all(&mut self, t: &Term) {
        self.taken.extend(t.all_names());
    }

    pub fn is_taken(&self, name: &Ident) -> bool {
        self.taken.contains(name)
    }

    pub fn fresh(&mut self, hint: &Ident) -> Ident {
        let base = hint.as_str().trim_end_matches(|c: char| c.is_ascii_digit());
        let base = if base.is_empty() { "x" } else { base };
        let mut k = 1usize;
        loop {
            let candidate = Ident::new(&format!("{base}{k}"));
            if !self.taken.contains(&candidate) {
                self.taken.insert(candidate.clone());
                return candidate;
            }
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_unused_suffix() {
        let mut pool = NamePool::new([Ident::new("x"), Ident::new("x1"), Ident::new("x3")]);
        assert_eq!(pool.fresh(&Ident::new("x")).as_str(), "x2");
        assert_eq!(pool.fresh(&Ident::new("x1")).as_str(), "x4");
        assert_eq!(pool.fresh(&Ident::new("y")).as_str(), "y1");
    }

    #[test]
    fn same_avoid_set_same_sequence() {
        let seed = [Ident::new("a"), Ident::new("b2")];
        let mut p = NamePool::new(seed.clone());
        let mut q = NamePool::new(seed);
        for hint in ["a", "b", "b", "c"] {
            assert_eq!(p.fresh(&Ident::new(hint)), q.fresh(&Ident::new(hint)));
        }
    }
}
