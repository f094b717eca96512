use super::{IndependentView, Matroid};
use crate::set::ElementSet;

/// Each original element `e` replaced by `copies[e]` mutually parallel
/// copies. A set is independent when it holds at most one copy of each
/// element and the originals it represents are independent.
#[derive(Debug)]
pub struct Replicated<'a> {
    inner: &'a dyn Matroid,
    origin: Vec<usize>,
    first_copy: Vec<usize>,
}

impl<'a> Replicated<'a> {
    pub fn new(inner: &'a dyn Matroid, copies: &[usize]) -> Self {
        let mut origin = Vec::new();
        let mut first_copy = Vec::with_capacity(copies.len());
        for (e, &c) in copies.iter().enumerate() {
            first_copy.push(origin.len());
            origin.extend(std::iter::repeat_n(e, c));
        }
        Self {
            inner,
            origin,
            first_copy,
        }
    }

    /// Original element of copy `c`.
    pub fn origin(&self, c: usize) -> usize {
        self.origin[c]
    }

    pub fn copies_of(&self, e: usize) -> std::ops::Range<usize> {
        let end = self.first_copy.get(e + 1).copied().unwrap_or(self.origin.len());
        self.first_copy[e]..end
    }

    /// Originals of a copy set, or `None` when two copies share an origin.
    pub fn project(&self, set: &ElementSet) -> Option<ElementSet> {
        let mut out = ElementSet::new();
        for c in set {
            if !out.insert(self.origin[c]) {
                return None;
            }
        }
        Some(out)
    }

    /// Support of a copy set (repeated origins collapse).
    pub fn support(&self, set: &ElementSet) -> ElementSet {
        set.iter().map(|c| self.origin[c]).collect()
    }
}

impl Matroid for Replicated<'_> {
    fn ground_size(&self) -> usize {
        self.origin.len()
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        self.project(set).is_some_and(|p| self.inner.is_independent(&p))
    }

    fn rank(&self, set: &ElementSet) -> usize {
        self.inner.rank(&self.support(set))
    }

    fn view<'b>(&'b self, independent: &ElementSet) -> Box<dyn IndependentView + 'b> {
        let projected = self.project(independent).expect("view over a dependent set");
        let holder = independent.iter().map(|c| (self.origin[c], c)).collect();
        Box::new(ReplicatedView {
            rep: self,
            base: independent.clone(),
            holder,
            inner: self.inner.view(&projected),
        })
    }
}

struct ReplicatedView<'b> {
    rep: &'b Replicated<'b>,
    base: ElementSet,
    /// origin -> the copy of it held by the base
    holder: std::collections::HashMap<usize, usize>,
    inner: Box<dyn IndependentView + 'b>,
}

impl IndependentView for ReplicatedView<'_> {
    fn can_add(&self, c: usize) -> bool {
        let e = self.rep.origin[c];
        !self.base.contains(c) && !self.holder.contains_key(&e) && self.inner.can_add(e)
    }

    fn circuit(&self, c: usize) -> Option<ElementSet> {
        if self.base.contains(c) {
            return None;
        }
        let e = self.rep.origin[c];
        if let Some(&sibling) = self.holder.get(&e) {
            return Some(ElementSet::from([c, sibling]));
        }
        let inner = self.inner.circuit(e)?;
        Some(inner.iter().map(|x| if x == e { c } else { self.holder[&x] }).collect())
    }
}
