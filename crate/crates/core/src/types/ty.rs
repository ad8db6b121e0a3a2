use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::syntax::Ident;

/// `G` or `M ⊸ N`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinearType {
    Ground,
    Arrow(MultiType, MultiType),
}

/// A finite multiset of linear types, kept sorted so that equality is
/// multiset equality.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiType(Vec<LinearType>);

impl LinearType {
    pub fn arrow(left: MultiType, right: MultiType) -> Self {
        LinearType::Arrow(left, right)
    }
}

impl MultiType {
    /// The empty multiset `0`.
    pub fn empty() -> Self {
        MultiType(Vec::new())
    }

    pub fn new(mut items: Vec<LinearType>) -> Self {
        items.sort();
        MultiType(items)
    }

    pub fn single(a: LinearType) -> Self {
        MultiType(vec![a])
    }

    /// `[G]`.
    pub fn ground() -> Self {
        MultiType::single(LinearType::Ground)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn items(&self) -> &[LinearType] {
        &self.0
    }

    pub fn sum(&self, other: &MultiType) -> MultiType {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        MultiType::new(v)
    }

    /// `self = other ⊎ rest`, if `other` is a sub-multiset.
    pub fn minus(&self, other: &MultiType) -> Option<MultiType> {
        let mut rest = self.0.clone();
        for a in &other.0 {
            let i = rest.iter().position(|b| b == a)?;
            rest.remove(i);
        }
        Some(MultiType(rest))
    }
}

impl FromIterator<LinearType> for MultiType {
    fn from_iter<I: IntoIterator<Item = LinearType>>(iter: I) -> Self {
        MultiType::new(iter.into_iter().collect())
    }
}

impl fmt::Display for LinearType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearType::Ground => f.write_str("G"),
            LinearType::Arrow(m, n) => write!(f, "{m} ⊸ {n}"),
        }
    }
}

impl fmt::Display for MultiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        f.write_str("[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for LinearType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for MultiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LinearRepr {
    Ground(String),
    Arrow { l: MultiType, r: MultiType },
}

impl Serialize for LinearType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LinearType::Ground => LinearRepr::Ground("G".into()),
            LinearType::Arrow(l, r) => LinearRepr::Arrow {
                l: l.clone(),
                r: r.clone(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match LinearRepr::deserialize(d)? {
            LinearRepr::Ground(g) if g == "G" => Ok(LinearType::Ground),
            LinearRepr::Ground(other) => Err(serde::de::Error::custom(format!(
                "unknown ground type {other:?}, expected \"G\""
            ))),
            LinearRepr::Arrow { l, r } => Ok(LinearType::Arrow(l, r)),
        }
    }
}

impl Serialize for MultiType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(MultiType::new(Vec::deserialize(d)?))
    }
}

/// Finite map from variables to non-empty multi types; absent means `0`.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "BTreeMap<Ident, MultiType>", into = "BTreeMap<Ident, MultiType>")]
pub struct TypeContext(BTreeMap<Ident, MultiType>);

impl From<BTreeMap<Ident, MultiType>> for TypeContext {
    fn from(mut map: BTreeMap<Ident, MultiType>) -> Self {
        map.retain(|_, m| !m.is_empty());
        TypeContext(map)
    }
}

impl From<TypeContext> for BTreeMap<Ident, MultiType> {
    fn from(c: TypeContext) -> Self {
        c.0
    }
}

impl TypeContext {
    pub fn empty() -> Self {
        TypeContext::default()
    }

    pub fn single(x: &Ident, m: MultiType) -> Self {
        let mut c = TypeContext::empty();
        c.set(x, m);
        c
    }

    pub fn get(&self, x: &Ident) -> MultiType {
        self.0.get(x).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, x: &Ident, m: MultiType) {
        if m.is_empty() {
            self.0.remove(x);
        } else {
            self.0.insert(x.clone(), m);
        }
    }

    /// `self` without `x`, and the type `x` had.
    pub fn remove(&self, x: &Ident) -> (TypeContext, MultiType) {
        let mut c = self.clone();
        let m = c.0.remove(x).unwrap_or_default();
        (c, m)
    }

    pub fn sum(&self, other: &TypeContext) -> TypeContext {
        let mut c = self.clone();
        for (x, m) in &other.0 {
            let merged = c.get(x).sum(m);
            c.set(x, merged);
        }
        c
    }

    /// `self = other ⊎ rest`.
    pub fn minus(&self, other: &TypeContext) -> Option<TypeContext> {
        let mut c = self.clone();
        for (x, m) in &other.0 {
            let rest = c.get(x).minus(m)?;
            c.set(x, rest);
        }
        Some(c)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Ident> {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &MultiType)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TypeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, m)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TypeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

// Left/right polarity. Right multi types are non-empty; left ones may be 0.

pub fn is_right(m: &MultiType) -> bool {
    !m.is_empty() && m.items().iter().all(is_right_linear)
}

pub fn is_left(m: &MultiType) -> bool {
    m.items().iter().all(is_left_linear)
}

pub fn is_right_linear(a: &LinearType) -> bool {
    match a {
        LinearType::Ground => true,
        LinearType::Arrow(l, r) => is_left(l) && is_right(r),
    }
}

pub fn is_left_linear(a: &LinearType) -> bool {
    match a {
        LinearType::Ground => true,
        LinearType::Arrow(l, r) => is_right(l) && is_left(r),
    }
}

pub fn is_left_ctx(c: &TypeContext) -> bool {
    c.0.values().all(is_left)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> MultiType {
        MultiType::ground()
    }

    #[test]
    fn multiset_equality_ignores_order() {
        let a = LinearType::arrow(g(), g());
        let m1 = MultiType::new(vec![LinearType::Ground, a.clone()]);
        let m2 = MultiType::new(vec![a, LinearType::Ground]);
        assert_eq!(m1, m2);
        assert_eq!(m1.minus(&g()).unwrap().len(), 1);
        assert!(g().minus(&m1).is_none());
    }

    #[test]
    fn left_right_examples() {
        assert!(is_left(&g()) && is_right(&g()));
        assert!(is_left(&MultiType::empty()) && !is_right(&MultiType::empty()));
        let m = MultiType::single(LinearType::arrow(MultiType::empty(), g()));
        assert!(is_right(&m) && !is_left(&m));
    }

    #[test]
    fn contexts() {
        let x = Ident::new("x");
        let y = Ident::new("y");
        let mut c = TypeContext::single(&x, g());
        c.set(&y, MultiType::empty());
        assert!(is_left_ctx(&c));
        assert_eq!(c.domain().count(), 1);
        let d = c.sum(&TypeContext::single(&x, g()));
        assert_eq!(d.get(&x).len(), 2);
        assert_eq!(d.minus(&c), Some(c.clone()));
        assert_eq!(c.sum(&TypeContext::empty()), c);
    }

    #[test]
    fn json_shapes() {
        let a = LinearType::arrow(MultiType::empty(), g());
        let s = serde_json::to_string(&MultiType::single(a.clone())).unwrap();
        assert_eq!(s, r#"[{"l":[],"r":["G"]}]"#);
        let back: MultiType = serde_json::from_str(&s).unwrap();
        assert_eq!(back, MultiType::single(a));
        assert!(serde_json::from_str::<LinearType>(r#""H""#).is_err());
    }
}
