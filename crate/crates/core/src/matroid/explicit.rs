use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::spec::MatroidSpec;
use super::{Matroid, MatroidError};
use crate::set::ElementSet;

/// A matroid given by the complete family of its independent sets.
#[derive(Debug, Clone)]
pub struct ExplicitMatroid {
    size: usize,
    independent: HashSet<ElementSet>,
}

/// Which matroid axiom failed, with the offending sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// The empty set is not in the family.
    EmptyMissing,
    /// `set` is independent but its subset `subset` is not.
    DownwardClosure { set: ElementSet, subset: ElementSet },
    /// `smaller` cannot be augmented from `larger`.
    Augmentation { smaller: ElementSet, larger: ElementSet },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyMissing => write!(f, "the empty set is not independent"),
            Self::DownwardClosure { set, subset } => {
                write!(f, "{set:?} is independent but its subset {subset:?} is not")
            }
            Self::Augmentation { smaller, larger } => {
                write!(f, "{smaller:?} cannot be augmented from {larger:?}")
            }
        }
    }
}

/// Checks the independence axioms on an explicit family.
///
/// Sets are scanned in (size, lexicographic) order so the reported witness
/// is the first violation in that order. Downward closure is checked through
/// single-element deletions and augmentation through pairs whose sizes
/// differ by one, which is equivalent to the full axioms.
pub fn validate_matroid(family: &[ElementSet]) -> Result<(), AxiomViolation> {
    let members: HashSet<&ElementSet> = family.iter().collect();
    if !members.contains(&ElementSet::new()) {
        return Err(AxiomViolation::EmptyMissing);
    }
    let mut sorted: Vec<&ElementSet> = members.iter().copied().collect();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.lex_cmp(b)));

    for set in &sorted {
        let missing = set
            .iter()
            .map(|e| set.without(e))
            .filter(|sub| !members.contains(sub))
            .min_by(|a, b| a.lex_cmp(b));
        if let Some(subset) = missing {
            return Err(AxiomViolation::DownwardClosure {
                set: (*set).clone(),
                subset,
            });
        }
    }

    for smaller in &sorted {
        for larger in sorted.iter().filter(|l| l.len() == smaller.len() + 1) {
            let ok = larger
                .difference(smaller)
                .iter()
                .any(|e| members.contains(&smaller.with(e)));
            if !ok {
                return Err(AxiomViolation::Augmentation {
                    smaller: (*smaller).clone(),
                    larger: (*larger).clone(),
                });
            }
        }
    }
    Ok(())
}

impl ExplicitMatroid {
    /// Builds from the independent sets; the family must satisfy the axioms
    /// and contain every singleton.
    pub fn from_independent(size: usize, family: Vec<ElementSet>) -> Result<Self, MatroidError> {
        for s in &family {
            if let Some(e) = s.max().filter(|&e| e >= size) {
                return Err(MatroidError::OutOfRange { element: e, size });
            }
        }
        validate_matroid(&family).map_err(MatroidError::Axiom)?;
        let independent: HashSet<ElementSet> = family.into_iter().collect();
        if let Some(e) = (0..size).find(|&e| !independent.contains(&ElementSet::singleton(e))) {
            return Err(MatroidError::Loop(e));
        }
        Ok(Self { size, independent })
    }

    /// Builds from the bases; every subset of a basis becomes independent.
    pub fn from_bases(size: usize, bases: Vec<ElementSet>) -> Result<Self, MatroidError> {
        let mut family = HashSet::new();
        for b in &bases {
            let items = b.to_vec();
            if items.len() > 24 {
                return Err(MatroidError::RankTooLarge {
                    rank: items.len(),
                    size,
                });
            }
            for mask in 0u64..(1 << items.len()) {
                family.insert(
                    items
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect::<ElementSet>(),
                );
            }
        }
        if family.is_empty() {
            family.insert(ElementSet::new());
        }
        Self::from_independent(size, family.into_iter().collect())
    }

    /// Tabulates any matroid on at most 20 elements.
    pub fn tabulate(m: &dyn Matroid) -> Self {
        let n = m.ground_size();
        assert!(n <= 20, "tabulating {n} elements");
        let independent = (0u64..1 << n)
            .map(ElementSet::from_mask)
            .filter(|s| m.is_independent(s))
            .collect();
        Self { size: n, independent }
    }

    /// Independent sets in (size, lexicographic) order.
    pub fn independent_sets(&self) -> Vec<ElementSet> {
        let mut v: Vec<ElementSet> = self.independent.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.lex_cmp(b)));
        v
    }
}

impl Matroid for ExplicitMatroid {
    fn ground_size(&self) -> usize {
        self.size
    }

    fn describe(&self) -> Option<MatroidSpec> {
        Some(MatroidSpec::Explicit {
            n: self.size,
            independent: Some(self.independent_sets().iter().map(ElementSet::to_vec).collect()),
            bases: None,
        })
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        self.independent.contains(set)
    }
}
