//! Matroid oracles over a dense ground set `0..n`.
//!
//! Independence is the primitive every family must supply. Rank and the
//! per-independent-set [`IndependentView`] have oracle-only default
//! implementations; the concrete families override them with structural
//! shortcuts (union-find for forests, alternating paths for matchings).

mod explicit;
mod graphic;
mod minor;
mod replicated;
pub mod spec;
mod transversal;
mod uniform;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::set::ElementSet;
use spec::MatroidSpec;

pub use explicit::{validate_matroid, AxiomViolation, ExplicitMatroid};
pub use graphic::GraphicMatroid;
pub use minor::MinorView;
pub use replicated::Replicated;
pub use transversal::TransversalMatroid;
pub use uniform::UniformMatroid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("element {element} is outside the ground set of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("element {0} is a loop")]
    Loop(usize),
    #[error("set is not independent")]
    DependentBase,
    #[error("adding element {0} keeps the set independent; there is no circuit")]
    NoCircuit(usize),
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("vertex {vertex} of edge {edge} is out of range")]
    BadVertex { edge: usize, vertex: usize },
    #[error("uniform matroid rank {rank} exceeds ground size {size}")]
    RankTooLarge { rank: usize, size: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("{labels} labels given for a ground set of size {size}")]
    LabelCount { labels: usize, size: usize },
    #[error("matroid axioms violated: {0}")]
    Axiom(AxiomViolation),
    #[error("set is not a basis")]
    NotBasis,
}

/// Elements `0..n`, with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Self {
        Self { size, labels: None }
    }

    pub fn labeled(labels: Vec<String>) -> Result<Self, MatroidError> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn with_labels(self, labels: Option<Vec<String>>) -> Result<Self, MatroidError> {
        match labels {
            None => Ok(self),
            Some(l) if l.len() != self.size => Err(MatroidError::LabelCount {
                labels: l.len(),
                size: self.size,
            }),
            Some(l) => Self::labeled(l),
        }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, e: usize) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse().ok().filter(|&e| e < self.size),
        }
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.size)
    }
}

/// Independence oracle plus derived queries.
///
/// Implementations are immutable after construction and may be queried from
/// many threads at once.
pub trait Matroid: Send + Sync + fmt::Debug {
    fn ground_size(&self) -> usize;

    /// `set` must lie inside the ground set; use [`MatroidExt`] for checked
    /// access.
    fn is_independent(&self, set: &ElementSet) -> bool;

    /// Greedy growth of a maximal independent subset.
    fn rank(&self, set: &ElementSet) -> usize {
        let mut basis = ElementSet::new();
        for e in set {
            basis.insert(e);
            if !self.is_independent(&basis) {
                basis.remove(e);
            }
        }
        basis.len()
    }

    /// Extension queries relative to a fixed independent set.
    fn view<'a>(&'a self, independent: &ElementSet) -> Box<dyn IndependentView + 'a> {
        Box::new(OracleView {
            matroid: self,
            base: independent.clone(),
        })
    }

    /// A serializable description, for families that have one.
    fn describe(&self) -> Option<MatroidSpec> {
        None
    }
}

/// Queries against one independent set `I`.
pub trait IndependentView {
    /// Whether `I ∪ {e}` is independent, for `e ∉ I`. Members of `I` are
    /// reported as not addable.
    fn can_add(&self, e: usize) -> bool;

    /// The unique circuit of `I ∪ {e}`, or `None` when `e ∈ I` or the union
    /// is independent.
    fn circuit(&self, e: usize) -> Option<ElementSet>;

    /// Every `e` outside `I` (and inside `0..n`) with `I ∪ {e}` independent.
    fn addable(&self, n: usize) -> ElementSet {
        (0..n).filter(|&e| self.can_add(e)).collect()
    }
}

pub(crate) struct OracleView<'a, M: ?Sized> {
    pub(crate) matroid: &'a M,
    pub(crate) base: ElementSet,
}

impl<M: Matroid + ?Sized> IndependentView for OracleView<'_, M> {
    fn can_add(&self, e: usize) -> bool {
        !self.base.contains(e) && self.matroid.is_independent(&self.base.with(e))
    }

    fn circuit(&self, e: usize) -> Option<ElementSet> {
        if self.can_add(e) || self.base.contains(e) {
            return None;
        }
        let extended = self.base.with(e);
        let mut circuit = ElementSet::singleton(e);
        for y in &self.base {
            if self.matroid.is_independent(&extended.without(y)) {
                circuit.insert(y);
            }
        }
        Some(circuit)
    }
}

impl<M: Matroid + ?Sized> Matroid for Arc<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, set: &ElementSet) -> bool {
        (**self).is_independent(set)
    }
    fn rank(&self, set: &ElementSet) -> usize {
        (**self).rank(set)
    }
    fn view<'a>(&'a self, independent: &ElementSet) -> Box<dyn IndependentView + 'a> {
        (**self).view(independent)
    }
    fn describe(&self) -> Option<MatroidSpec> {
        (**self).describe()
    }
}

/// Range-checked wrappers around the raw oracle.
pub trait MatroidExt: Matroid {
    fn check(&self, set: &ElementSet) -> Result<(), MatroidError> {
        match set.max() {
            Some(e) if e >= self.ground_size() => Err(MatroidError::OutOfRange {
                element: e,
                size: self.ground_size(),
            }),
            _ => Ok(()),
        }
    }

    fn try_is_independent(&self, set: &ElementSet) -> Result<bool, MatroidError> {
        self.check(set)?;
        Ok(self.is_independent(set))
    }

    fn try_rank(&self, set: &ElementSet) -> Result<usize, MatroidError> {
        self.check(set)?;
        Ok(self.rank(set))
    }

    fn full_rank(&self) -> usize {
        self.rank(&ElementSet::full(self.ground_size()))
    }

    /// The unique circuit inside `I ∪ {x}`.
    fn fundamental_circuit(&self, independent: &ElementSet, x: usize) -> Result<ElementSet, MatroidError> {
        self.check(independent)?;
        self.check(&ElementSet::singleton(x))?;
        if !self.is_independent(independent) {
            return Err(MatroidError::DependentBase);
        }
        self.view(independent).circuit(x).ok_or(MatroidError::NoCircuit(x))
    }

    fn is_basis(&self, set: &ElementSet) -> bool {
        set.max().is_none_or(|e| e < self.ground_size()) && self.is_independent(set) && set.len() == self.full_rank()
    }

    /// Any basis of `set`, grown greedily in index order.
    fn basis_of(&self, set: &ElementSet) -> ElementSet {
        let mut basis = ElementSet::new();
        let view_free = |b: &ElementSet, e| self.is_independent(&b.with(e));
        for e in set {
            if view_free(&basis, e) {
                basis.insert(e);
            }
        }
        basis
    }

    /// First singleton that is dependent, if any.
    fn find_loop(&self) -> Option<usize> {
        (0..self.ground_size()).find(|&e| !self.is_independent(&ElementSet::singleton(e)))
    }
}

impl<M: Matroid + ?Sized> MatroidExt for M {}

/// Restriction of `m` to `keep`, re-indexed densely in ascending order.
pub fn restrict(m: Arc<dyn Matroid>, keep: &ElementSet) -> Result<MinorView, MatroidError> {
    MinorView::new(m, keep, &ElementSet::new())
}

/// Contraction of `m` by `contracted`, keeping every other element.
pub fn contract(m: Arc<dyn Matroid>, contracted: &ElementSet) -> Result<MinorView, MatroidError> {
    let keep = ElementSet::full(m.ground_size()).difference(contracted);
    MinorView::new(m, &keep, contracted)
}
