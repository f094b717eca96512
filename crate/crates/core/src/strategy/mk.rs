use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::matroid::spec::{MatroidFile, MatroidSpec};
use crate::matroid::TransversalMatroid;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MkError {
    #[error("M_k needs k ≥ 3, got {0}")]
    TooSmall(usize),
}

/// The transversal matroid `M_k`.
///
/// Ground set `C ∪ D_1 ∪ … ∪ D_m` with `m = 3k(2k-1)`, `|C| = k(2k-1)` and
/// `|D_a| = k`. The set family is `D_1..D_m` followed by `2k-1` copies of
/// the whole ground set, so `C` alone has rank `2k-1` and each `D_a` adds
/// one more.
///
/// Elements are laid out as `c_{i,j}` (`i ≤ k`, `j ≤ 2k-1`) row by row, then
/// each `D_a` as a contiguous block `d_{1,a}..d_{k,a}`.
#[derive(Debug, Clone, Serialize)]
pub struct MkSpec {
    pub k: usize,
    #[serde(skip)]
    pub matroid: Arc<TransversalMatroid>,
    pub labels: Vec<String>,
    /// `V_i = {c_{i,j}} ∪ {d_{i,a}}`, an independent partition into `k` sets.
    pub partition: Vec<ElementSet>,
}

impl MkSpec {
    pub fn c_size(&self) -> usize {
        self.k * (2 * self.k - 1)
    }

    pub fn d_count(&self) -> usize {
        3 * self.c_size()
    }

    pub fn ground_size(&self) -> usize {
        self.c_size() + self.d_count() * self.k
    }

    /// `c_{i,j}`, one based.
    pub fn c(&self, i: usize, j: usize) -> usize {
        (i - 1) * (2 * self.k - 1) + (j - 1)
    }

    /// `d_{m,a}`, one based.
    pub fn d(&self, m: usize, a: usize) -> usize {
        self.c_size() + (a - 1) * self.k + (m - 1)
    }

    pub fn c_set(&self) -> ElementSet {
        (0..self.c_size()).collect()
    }

    /// `D_a`, one based.
    pub fn d_set(&self, a: usize) -> ElementSet {
        (1..=self.k).map(|m| self.d(m, a)).collect()
    }

    /// One-based index `a` of the `D_a` containing `e`, if any.
    pub fn d_index(&self, e: usize) -> Option<usize> {
        (e >= self.c_size() && e < self.ground_size()).then(|| (e - self.c_size()) / self.k + 1)
    }

    /// JSON description with labels and the canonical partition.
    pub fn file(&self) -> MatroidFile {
        MatroidFile {
            labels: Some(self.labels.clone()),
            partition: Some(self.partition.iter().map(ElementSet::to_vec).collect()),
            ..MatroidFile::new(MatroidSpec::Transversal {
                n: self.ground_size(),
                family: self.matroid.family().to_vec(),
            })
        }
    }
}

pub fn build_mk(k: usize) -> Result<MkSpec, MkError> {
    if k < 3 {
        return Err(MkError::TooSmall(k));
    }
    let width = 2 * k - 1;
    let c_size = k * width;
    let d_count = 3 * c_size;
    let n = c_size + d_count * k;
    let d = |m: usize, a: usize| c_size + (a - 1) * k + (m - 1);

    let mut family: Vec<Vec<usize>> = (1..=d_count).map(|a| (1..=k).map(|m| d(m, a)).collect()).collect();
    family.extend(std::iter::repeat_n((0..n).collect::<Vec<_>>(), width));
    let matroid = Arc::new(TransversalMatroid::new(n, family).expect("every element lies in a copy of E"));

    let mut labels = Vec::with_capacity(n);
    for i in 1..=k {
        for j in 1..=width {
            labels.push(format!("c{i}_{j}"));
        }
    }
    for a in 1..=d_count {
        for m in 1..=k {
            labels.push(format!("d{m}_{a}"));
        }
    }
    let partition = (1..=k)
        .map(|i| {
            let row = (1..=width).map(|j| (i - 1) * width + (j - 1));
            row.chain((1..=d_count).map(|a| d(i, a))).collect()
        })
        .collect();
    Ok(MkSpec {
        k,
        matroid,
        labels,
        partition,
    })
}
