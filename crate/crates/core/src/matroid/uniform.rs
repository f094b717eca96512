use super::spec::MatroidSpec;
use super::{IndependentView, Matroid, MatroidError};
use crate::set::ElementSet;

/// `U_{r,n}`: every set of at most `r` elements is independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMatroid {
    size: usize,
    rank: usize,
}

impl UniformMatroid {
    pub fn new(size: usize, rank: usize) -> Result<Self, MatroidError> {
        if rank > size {
            return Err(MatroidError::RankTooLarge { rank, size });
        }
        if rank == 0 && size > 0 {
            return Err(MatroidError::Loop(0));
        }
        Ok(Self { size, rank })
    }

    /// The free matroid on `size` elements.
    pub fn free(size: usize) -> Self {
        Self { size, rank: size }
    }

    pub fn rank_parameter(&self) -> usize {
        self.rank
    }
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.size
    }

    fn describe(&self) -> Option<MatroidSpec> {
        Some(MatroidSpec::Uniform {
            n: self.size,
            rank: self.rank,
        })
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        set.len() <= self.rank
    }

    fn rank(&self, set: &ElementSet) -> usize {
        set.len().min(self.rank)
    }

    fn view<'a>(&'a self, independent: &ElementSet) -> Box<dyn IndependentView + 'a> {
        Box::new(UniformView {
            base: independent.clone(),
            full: independent.len() >= self.rank,
        })
    }
}

struct UniformView {
    base: ElementSet,
    full: bool,
}

impl IndependentView for UniformView {
    fn can_add(&self, e: usize) -> bool {
        !self.full && !self.base.contains(e)
    }

    fn circuit(&self, e: usize) -> Option<ElementSet> {
        (self.full && !self.base.contains(e)).then(|| self.base.with(e))
    }
}
