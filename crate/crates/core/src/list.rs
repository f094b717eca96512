//! List coloring of matroids with per-element demands.
//!
//! Coloring `e` with `W(e)` colors from `L(e)` so that every color class is
//! independent is the same as a `W`-covering by sets `V_c`, one per color,
//! with `V_c ⊆ Q_c = {e : c ∈ L(e)}`. Everything here reduces to
//! [`crate::union::w_covering_restricted`].

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matroid::{GraphicMatroid, Matroid, MatroidError, MatroidExt, MinorView};
use crate::set::{ColorSet, ElementSet};
use crate::union::{self, ConditionReport, CoverOutcome, UnionError, ViolationCertificate, WeightFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Union(#[from] UnionError),
    #[error("{found} lists for a ground set of size {expected}")]
    Length { expected: usize, found: usize },
    #[error("{0:?} is not a subset of the given basis")]
    NotSubset(ElementSet),
    #[error("parts do not partition the basis")]
    InvalidPartition,
    #[error("no coloring exists; violated set {:?}", .0.set)]
    Infeasible(ViolationCertificate),
    #[error("result failed verification: {0}")]
    Verification(String),
}

/// Color lists `L(e)`; colors are arbitrary integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct ListAssignment {
    lists: Vec<Vec<u32>>,
}

impl From<Vec<Vec<u32>>> for ListAssignment {
    fn from(mut lists: Vec<Vec<u32>>) -> Self {
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Self { lists }
    }
}

impl From<ListAssignment> for Vec<Vec<u32>> {
    fn from(l: ListAssignment) -> Self {
        l.lists
    }
}

impl ListAssignment {
    /// `L(e) = {1, …, ℓ(e)}`.
    pub fn canonical(sizes: &SizeFunction) -> Self {
        Self {
            lists: sizes.0.iter().map(|&l| (1..=l as u32).collect()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, e: usize) -> &[u32] {
        &self.lists[e]
    }

    pub fn sizes(&self) -> SizeFunction {
        SizeFunction(self.lists.iter().map(Vec::len).collect())
    }

    /// Every color appearing in some list, ascending.
    pub fn palette(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.lists.iter().flatten().copied().collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    /// Per element, the palette positions of its colors.
    fn admissible(&self, palette: &[u32]) -> Vec<ColorSet> {
        self.lists
            .iter()
            .map(|l| {
                l.iter()
                    .map(|c| palette.binary_search(c).expect("color in palette"))
                    .collect()
            })
            .collect()
    }
}

/// List sizes `ℓ(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeFunction(pub Vec<usize>);

/// `W(e)` colors chosen for each element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WColoring {
    pub chosen: Vec<Vec<u32>>,
}

impl WColoring {
    pub fn classes(&self) -> BTreeMap<u32, ElementSet> {
        let mut out: BTreeMap<u32, ElementSet> = BTreeMap::new();
        for (e, colors) in self.chosen.iter().enumerate() {
            for &c in colors {
                out.entry(c).or_default().insert(e);
            }
        }
        out
    }

    /// Re-checks list membership, demand counts and each color class.
    pub fn verify(&self, m: &dyn Matroid, lists: &ListAssignment, weights: &WeightFunction) -> Result<(), ListError> {
        for (e, colors) in self.chosen.iter().enumerate() {
            if colors.len() != weights.0[e] {
                return Err(ListError::Verification(format!(
                    "element {e} has {} colors, demand {}",
                    colors.len(),
                    weights.0[e]
                )));
            }
            if let Some(c) = colors.iter().find(|c| !lists.list(e).contains(c)) {
                return Err(ListError::Verification(format!(
                    "element {e} got color {c} outside its list"
                )));
            }
        }
        for (c, class) in self.classes() {
            if !m.is_independent(&class) {
                return Err(ListError::Verification(format!(
                    "color {c} class {class:?} is dependent"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ListColorOutcome {
    Colored(WColoring),
    Infeasible(ViolationCertificate),
}

impl ListColorOutcome {
    pub fn coloring(self) -> Option<WColoring> {
        match self {
            Self::Colored(c) => Some(c),
            Self::Infeasible(_) => None,
        }
    }

    fn require(self) -> Result<WColoring, ListError> {
        match self {
            Self::Colored(c) => Ok(c),
            Self::Infeasible(cert) => Err(ListError::Infeasible(cert)),
        }
    }
}

/// Chooses `W(e)` colors from each `L(e)` with independent color classes,
/// or returns `A` with `Σ_c r(A ∩ Q_c) < Σ_{e∈A} W(e)`.
pub fn color_from_lists(
    m: &dyn Matroid,
    lists: &ListAssignment,
    weights: &WeightFunction,
) -> Result<ListColorOutcome, ListError> {
    let n = m.ground_size();
    for found in [lists.len(), weights.0.len()] {
        if found != n {
            return Err(ListError::Length { expected: n, found });
        }
    }
    let palette = lists.palette();
    let admissible = lists.admissible(&palette);
    let copies = vec![m; palette.len()];
    Ok(
        match union::w_covering_restricted(&copies, weights, Some(&admissible))? {
            CoverOutcome::Covered(cover) => {
                let mut chosen = vec![Vec::new(); n];
                for (j, set) in cover.sets.iter().enumerate() {
                    for e in set {
                        chosen[e].push(palette[j]);
                    }
                }
                let coloring = WColoring { chosen };
                debug_assert_eq!(coloring.verify(m, lists, weights), Ok(()));
                ListColorOutcome::Colored(coloring)
            }
            CoverOutcome::Infeasible(cert) => ListColorOutcome::Infeasible(cert),
        },
    )
}

/// Whether `M` is `W`-colorable from every list assignment of sizes `ℓ`,
/// decided constructively on the canonical lists `{1..ℓ(e)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition3 {
    pub holds: bool,
    pub coloring: Option<WColoring>,
    /// When violated: `A` with `Σ_i r({e∈A : ℓ(e) ≥ i}) < Σ_{e∈A} W(e)`.
    pub certificate: Option<ViolationCertificate>,
}

pub fn check_condition3(
    m: &dyn Matroid,
    sizes: &SizeFunction,
    weights: &WeightFunction,
) -> Result<Condition3, ListError> {
    let lists = ListAssignment::canonical(sizes);
    Ok(match color_from_lists(m, &lists, weights)? {
        ListColorOutcome::Colored(c) => Condition3 {
            holds: true,
            coloring: Some(c),
            certificate: None,
        },
        ListColorOutcome::Infeasible(cert) => Condition3 {
            holds: false,
            coloring: None,
            certificate: Some(cert),
        },
    })
}

/// `Σ_{i≥1} r({e∈A : ℓ(e) ≥ i})`.
pub fn graded_rank_sum(m: &dyn Matroid, sizes: &SizeFunction, set: &ElementSet) -> usize {
    let top = set.iter().map(|e| sizes.0[e]).max().unwrap_or(0);
    (1..=top)
        .map(|i| m.rank(&set.iter().filter(|&e| sizes.0[e] >= i).collect()))
        .sum()
}

/// Enumerates every `A ⊆ E` against the graded rank-sum inequality.
pub fn brute_force_condition3(
    m: &dyn Matroid,
    sizes: &SizeFunction,
    weights: &WeightFunction,
    cap: usize,
) -> Result<ConditionReport, ListError> {
    let n = m.ground_size();
    if n > cap || n > 30 {
        return Err(UnionError::CapExceeded { size: n, cap }.into());
    }
    let mut worst = (ElementSet::new(), 0i64);
    for mask in 1u64..1 << n {
        let s = ElementSet::from_mask(mask);
        let slack = graded_rank_sum(m, sizes, &s) as i64 - weights.total(&s) as i64;
        if slack < worst.1 {
            worst = (s, slack);
        }
    }
    Ok(ConditionReport {
        holds: worst.1 >= 0,
        worst: worst.0,
        slack: worst.1,
    })
}

/// `ℓ(uv) = max(deg u, deg v) + 1`.
pub fn graph_degree_lists(g: &GraphicMatroid) -> SizeFunction {
    let deg = g.degrees();
    SizeFunction(g.edges().iter().map(|&(u, v)| deg[u].max(deg[v]) + 1).collect())
}

fn require_basis(m: &dyn Matroid, set: &ElementSet) -> Result<(), ListError> {
    m.check(set)?;
    if m.is_basis(set) {
        Ok(())
    } else {
        Err(MatroidError::NotBasis.into())
    }
}

fn require_partition(parts: &[ElementSet], whole: &ElementSet) -> Result<(), ListError> {
    let mut seen = ElementSet::new();
    for p in parts {
        if !p.is_disjoint(&seen) {
            return Err(ListError::InvalidPartition);
        }
        seen.union_with(p);
    }
    if &seen == whole {
        Ok(())
    } else {
        Err(ListError::InvalidPartition)
    }
}

/// Contracts `a ∩ b` and restricts to `a ∪ b`.
fn disjoint_minor(m: &Arc<dyn Matroid>, a: &ElementSet, b: &ElementSet) -> Result<MinorView, ListError> {
    Ok(MinorView::new(m.clone(), &a.union(b), &a.intersection(b))?)
}

/// Given bases `B1, B2` and `A1 ⊆ B1`, finds `A2 ⊆ B2` such that both
/// `(B1 \ A1) ∪ A2` and `(B2 \ A2) ∪ A1` are bases.
///
/// Works in `M / (B1 ∩ B2)` restricted to the symmetric difference, with
/// lists `{1}` on `A1`, `{2}` on the rest of `B1` and `{1, 2}` on `B2`;
/// color 2 picks `A2`. Shared elements of `A1` are added back.
pub fn multiple_basis_exchange(
    m: &Arc<dyn Matroid>,
    b1: &ElementSet,
    b2: &ElementSet,
    a1: &ElementSet,
) -> Result<ElementSet, ListError> {
    require_basis(m.as_ref(), b1)?;
    require_basis(m.as_ref(), b2)?;
    if !a1.is_subset(b1) {
        return Err(ListError::NotSubset(a1.clone()));
    }
    let minor = disjoint_minor(m, b1, b2)?;
    let lists: Vec<Vec<u32>> = minor
        .elements()
        .iter()
        .map(|&e| match (b2.contains(e), a1.contains(e)) {
            (true, _) => vec![1, 2],
            (false, true) => vec![1],
            (false, false) => vec![2],
        })
        .collect();
    let lists = ListAssignment::from(lists);
    let coloring = color_from_lists(&minor, &lists, &WeightFunction::constant(minor.ground_size(), 1))?.require()?;
    let mut a2: ElementSet = minor
        .elements()
        .iter()
        .zip(&coloring.chosen)
        .filter(|(&e, c)| b2.contains(e) && c[0] == 2)
        .map(|(&e, _)| e)
        .collect();
    a2.union_with(&a1.intersection(b2));

    for (name, set) in [
        ("(B1 \\ A1) ∪ A2", b1.difference(a1).union(&a2)),
        ("(B2 \\ A2) ∪ A1", b2.difference(&a2).union(a1)),
    ] {
        if !m.is_basis(&set) {
            return Err(ListError::Verification(format!("{name} = {set:?} is not a basis")));
        }
    }
    Ok(a2)
}

/// Which side of the exchange the parts of `A` are swapped into.
#[derive(Clone, Copy)]
enum ExchangeSide {
    /// `(B \ B_i) ∪ A_i` are bases.
    IntoB,
    /// `(A \ A_i) ∪ B_i` are bases.
    IntoA,
}

fn partition_exchange(
    m: &Arc<dyn Matroid>,
    a: &ElementSet,
    b: &ElementSet,
    parts: &[ElementSet],
    side: ExchangeSide,
) -> Result<Vec<ElementSet>, ListError> {
    require_basis(m.as_ref(), a)?;
    require_basis(m.as_ref(), b)?;
    require_partition(parts, b)?;
    let k = parts.len();
    let shared = a.intersection(b);
    let minor = disjoint_minor(m, a, b)?;
    let part_of = |e: usize| parts.iter().position(|p| p.contains(e));

    let all: Vec<u32> = (1..=k as u32).collect();
    let (lists, weights): (Vec<Vec<u32>>, Vec<usize>) = minor
        .elements()
        .iter()
        .map(|&e| match (part_of(e), side) {
            (Some(i), ExchangeSide::IntoB) => (all.iter().copied().filter(|&c| c != i as u32 + 1).collect(), k - 1),
            (Some(i), ExchangeSide::IntoA) => (vec![i as u32 + 1], 1),
            (None, ExchangeSide::IntoB) => (all.clone(), 1),
            (None, ExchangeSide::IntoA) => (all.clone(), k.saturating_sub(1)),
        })
        .unzip();
    let lists = ListAssignment::from(lists);
    let coloring = color_from_lists(&minor, &lists, &WeightFunction(weights))?.require()?;

    let mut out = vec![ElementSet::new(); k];
    for (&e, colors) in minor.elements().iter().zip(&coloring.chosen) {
        if b.contains(e) {
            continue;
        }
        match side {
            ExchangeSide::IntoB => out[colors[0] as usize - 1].insert(e),
            ExchangeSide::IntoA => {
                let missing = (1..=k as u32).find(|c| !colors.contains(c)).expect("k - 1 of k colors");
                out[missing as usize - 1].insert(e)
            }
        };
    }
    for e in &shared {
        out[part_of(e).expect("shared element lies in a part")].insert(e);
    }

    require_partition(&out, a).map_err(|_| ListError::Verification("parts do not partition A".into()))?;
    for (i, (ai, bi)) in out.iter().zip(parts).enumerate() {
        let set = match side {
            ExchangeSide::IntoB => b.difference(bi).union(ai),
            ExchangeSide::IntoA => a.difference(ai).union(bi),
        };
        if !m.is_basis(&set) {
            return Err(ListError::Verification(format!(
                "exchange {i} gives {set:?}, not a basis"
            )));
        }
    }
    Ok(out)
}

/// For a partition `B_1..B_k` of basis `B`, a partition `A_1..A_k` of basis
/// `A` with every `(B \ B_i) ∪ A_i` a basis.
pub fn partition_exchange_to_bases_of_b(
    m: &Arc<dyn Matroid>,
    a: &ElementSet,
    b: &ElementSet,
    parts: &[ElementSet],
) -> Result<Vec<ElementSet>, ListError> {
    partition_exchange(m, a, b, parts, ExchangeSide::IntoB)
}

/// For a partition `B_1..B_k` of basis `B`, a partition `A_1..A_k` of basis
/// `A` with every `(A \ A_i) ∪ B_i` a basis.
pub fn partition_exchange_to_bases_of_a(
    m: &Arc<dyn Matroid>,
    a: &ElementSet,
    b: &ElementSet,
    parts: &[ElementSet],
) -> Result<Vec<ElementSet>, ListError> {
    partition_exchange(m, a, b, parts, ExchangeSide::IntoA)
}
