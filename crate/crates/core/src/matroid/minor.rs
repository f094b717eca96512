use std::sync::Arc;

use super::{Matroid, MatroidError, MatroidExt};
use crate::set::ElementSet;

/// `(M / C) | S`, re-indexed so that view element `j` is the `j`-th smallest
/// member of `S`.
///
/// Rank follows `r'(X) = r(X ∪ C) - r(C)`. Contracting may create loops;
/// views are not subject to the loopless check applied to constructed
/// matroids.
#[derive(Debug, Clone)]
pub struct MinorView {
    base: Arc<dyn Matroid>,
    elements: Vec<usize>,
    contract_basis: ElementSet,
}

impl MinorView {
    pub fn new(base: Arc<dyn Matroid>, keep: &ElementSet, contracted: &ElementSet) -> Result<Self, MatroidError> {
        base.check(keep)?;
        base.check(contracted)?;
        let keep = keep.difference(contracted);
        let contract_basis = base.basis_of(contracted);
        Ok(Self {
            elements: keep.to_vec(),
            contract_basis,
            base,
        })
    }

    /// Base-matroid indices of the view's elements.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn to_base(&self, set: &ElementSet) -> ElementSet {
        set.iter().map(|j| self.elements[j]).collect()
    }

    /// Base elements outside the view are dropped.
    pub fn from_base(&self, set: &ElementSet) -> ElementSet {
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, &e)| set.contains(e))
            .map(|(j, _)| j)
            .collect()
    }
}

impl Matroid for MinorView {
    fn ground_size(&self) -> usize {
        self.elements.len()
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        let mapped = self.to_base(set);
        mapped.is_disjoint(&self.contract_basis) && self.base.is_independent(&mapped.union(&self.contract_basis))
    }

    fn rank(&self, set: &ElementSet) -> usize {
        self.base.rank(&self.to_base(set).union(&self.contract_basis)) - self.contract_basis.len()
    }
}
