//! Matroid partition and union: coverings, chromatic numbers and the
//! rank-sum feasibility condition for weighted coverings.
//!
//! Every routine reduces to [`partition_engine`], the augmenting-path
//! matroid partition algorithm. Weighted demands are handled by replacing
//! each element with `W(e)` parallel copies; per-class admissibility
//! (used for list coloring) is a filter on which classes an element may
//! enter.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matroid::{IndependentView, Matroid, MatroidError, MatroidExt, Replicated};
use crate::set::{ColorSet, ElementSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnionError {
    #[error("matroid {index} has ground size {found}, expected {expected}")]
    GroundMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("{found} weights for a ground set of size {expected}")]
    WeightLength { expected: usize, found: usize },
    #[error("{found} allowed-class entries for a ground set of size {expected}")]
    AllowedLength { expected: usize, found: usize },
    #[error("ground set of size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("expected {expected} sets, found {found}")]
    ClassCount { expected: usize, found: usize },
    #[error("element {element} is covered {found} times, expected {expected}")]
    Multiplicity {
        element: usize,
        expected: usize,
        found: usize,
    },
    #[error("set {class} is not independent in its matroid")]
    Dependent { class: usize },
    #[error("element {element} is not allowed in set {class}")]
    NotAllowed { element: usize, class: usize },
}

/// Demand `W(e)` per element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightFunction(pub Vec<usize>);

impl WeightFunction {
    pub fn constant(n: usize, w: usize) -> Self {
        Self(vec![w; n])
    }

    pub fn total(&self, set: &ElementSet) -> usize {
        set.iter().map(|e| self.0[e]).sum()
    }
}

/// Sets `V_1..V_d`, repeats allowed; `V_i` belongs to the `i`-th matroid.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CoveringFamily {
    pub sets: Vec<ElementSet>,
}

impl CoveringFamily {
    pub fn new(sets: Vec<ElementSet>) -> Self {
        Self { sets }
    }

    pub fn multiplicity(&self, e: usize) -> usize {
        self.sets.iter().filter(|s| s.contains(e)).count()
    }

    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        (0..n).map(|e| self.multiplicity(e)).collect()
    }

    /// Concatenates `times` copies of the family.
    pub fn repeated(&self, times: usize) -> Self {
        let mut sets = Vec::with_capacity(self.sets.len() * times);
        for _ in 0..times {
            sets.extend(self.sets.iter().cloned());
        }
        Self { sets }
    }

    /// Checks multiplicities against `weights`, independence of every set in
    /// its matroid (by oracle), and admissibility when `allowed` is given.
    pub fn verify(
        &self,
        matroids: &[&dyn Matroid],
        weights: &WeightFunction,
        allowed: Option<&[ColorSet]>,
    ) -> Result<(), CoveringError> {
        if self.sets.len() != matroids.len() {
            return Err(CoveringError::ClassCount {
                expected: matroids.len(),
                found: self.sets.len(),
            });
        }
        for (e, &expected) in weights.0.iter().enumerate() {
            let found = self.multiplicity(e);
            if found != expected {
                return Err(CoveringError::Multiplicity {
                    element: e,
                    expected,
                    found,
                });
            }
        }
        for (class, (set, m)) in self.sets.iter().zip(matroids).enumerate() {
            if let Some(e) = set.iter().find(|&e| e >= weights.0.len()) {
                return Err(CoveringError::Multiplicity {
                    element: e,
                    expected: 0,
                    found: 1,
                });
            }
            if let Some(allowed) = allowed {
                if let Some(element) = set.iter().find(|&e| !allowed[e].contains(class)) {
                    return Err(CoveringError::NotAllowed { element, class });
                }
            }
            if !m.is_independent(set) {
                return Err(CoveringError::Dependent { class });
            }
        }
        Ok(())
    }
}

/// A set `A` with `Σ_i r_i(A ∩ Q_i) < Σ_{e∈A} W(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationCertificate {
    pub set: ElementSet,
    pub rank_sum: usize,
    pub demand: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CoverOutcome {
    Covered(CoveringFamily),
    Infeasible(ViolationCertificate),
}

impl CoverOutcome {
    pub fn covering(self) -> Option<CoveringFamily> {
        match self {
            Self::Covered(c) => Some(c),
            Self::Infeasible(_) => None,
        }
    }

    pub fn certificate(self) -> Option<ViolationCertificate> {
        match self {
            Self::Covered(_) => None,
            Self::Infeasible(c) => Some(c),
        }
    }

    pub fn is_covered(&self) -> bool {
        matches!(self, Self::Covered(_))
    }
}

const UNASSIGNED: usize = usize::MAX;

/// Partitions `0..n` into classes independent in the respective matroids,
/// with element `e` admissible in class `i` only when `allowed(e, i)`.
///
/// Elements are inserted in index order. Each insertion searches the
/// exchange digraph breadth-first (arc `e -> f` when `f` lies on the
/// circuit `e` closes in `f`'s class), scanning classes and circuit members
/// in ascending order. On failure the set of reached elements is returned;
/// it spans itself in every class, so its rank sum is one short of its size.
pub(crate) fn partition_engine(
    matroids: &[&dyn Matroid],
    n: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
) -> Result<Vec<ElementSet>, ElementSet> {
    let d = matroids.len();
    let mut classes = vec![ElementSet::new(); d];
    let mut owner = vec![UNASSIGNED; n];
    let mut views: Vec<Option<Box<dyn IndependentView + '_>>> = (0..d).map(|_| None).collect();

    for x in 0..n {
        let mut via = vec![(UNASSIGNED, UNASSIGNED); n];
        let mut reached = ElementSet::singleton(x);
        let mut queue = VecDeque::from([x]);
        let mut sink = None;

        'search: while let Some(e) = queue.pop_front() {
            for i in 0..d {
                if owner[e] == i || !allowed(e, i) {
                    continue;
                }
                let view = views[i].get_or_insert_with(|| matroids[i].view(&classes[i]));
                if view.can_add(e) {
                    sink = Some((e, i));
                    break 'search;
                }
                if let Some(circuit) = view.circuit(e) {
                    for f in &circuit {
                        if reached.insert(f) {
                            via[f] = (e, i);
                            queue.push_back(f);
                        }
                    }
                }
            }
        }

        let Some((mut cur, mut class)) = sink else {
            return Err(reached);
        };
        loop {
            let old = owner[cur];
            if old != UNASSIGNED {
                classes[old].remove(cur);
                views[old] = None;
            }
            classes[class].insert(cur);
            views[class] = None;
            owner[cur] = class;
            if cur == x {
                break;
            }
            (cur, class) = via[cur];
        }
    }
    Ok(classes)
}

fn check_ground(matroids: &[&dyn Matroid], n: usize) -> Result<(), UnionError> {
    for (index, m) in matroids.iter().enumerate() {
        if m.ground_size() != n {
            return Err(UnionError::GroundMismatch {
                index,
                expected: n,
                found: m.ground_size(),
            });
        }
    }
    Ok(())
}

fn certificate(
    matroids: &[&dyn Matroid],
    weights: &WeightFunction,
    allowed: Option<&[ColorSet]>,
    set: ElementSet,
) -> ViolationCertificate {
    let rank_sum = rank_sum(matroids, allowed, &set);
    let demand = weights.total(&set);
    debug_assert!(rank_sum < demand, "certificate {set:?} is not violated");
    ViolationCertificate { set, rank_sum, demand }
}

/// `Σ_i r_i(A ∩ Q_i)` where `Q_i` holds the elements admissible in class `i`.
pub fn rank_sum(matroids: &[&dyn Matroid], allowed: Option<&[ColorSet]>, set: &ElementSet) -> usize {
    matroids
        .iter()
        .enumerate()
        .map(|(i, m)| match allowed {
            None => m.rank(set),
            Some(allowed) => m.rank(&set.iter().filter(|&e| allowed[e].contains(i)).collect()),
        })
        .sum()
}

/// Partition of the common ground set into sets `V_i` independent in `M_i`,
/// or a set `A` with `Σ r_i(A) < |A|`.
pub fn matroid_partition(matroids: &[&dyn Matroid]) -> Result<CoverOutcome, UnionError> {
    let n = matroids.first().map_or(0, |m| m.ground_size());
    w_covering(matroids, &WeightFunction::constant(n, 1))
}

/// A covering containing each `e` exactly `W(e)` times, or a violated
/// rank-sum inequality.
pub fn w_covering(matroids: &[&dyn Matroid], weights: &WeightFunction) -> Result<CoverOutcome, UnionError> {
    w_covering_restricted(matroids, weights, None)
}

/// As [`w_covering`], with element `e` admissible only in the classes
/// listed in `allowed[e]`.
pub fn w_covering_restricted(
    matroids: &[&dyn Matroid],
    weights: &WeightFunction,
    allowed: Option<&[ColorSet]>,
) -> Result<CoverOutcome, UnionError> {
    let n = weights.0.len();
    check_ground(matroids, n)?;
    if let Some(a) = allowed {
        if a.len() != n {
            return Err(UnionError::AllowedLength {
                expected: n,
                found: a.len(),
            });
        }
    }

    let replicas: Vec<Replicated<'_>> = matroids.iter().map(|&m| Replicated::new(m, &weights.0)).collect();
    let replica_refs: Vec<&dyn Matroid> = replicas.iter().map(|r| r as &dyn Matroid).collect();
    let Some(first) = replicas.first() else {
        // no classes: feasible only when nothing is demanded
        return Ok(match (0..n).find(|&e| weights.0[e] > 0) {
            None => CoverOutcome::Covered(CoveringFamily::default()),
            Some(e) => CoverOutcome::Infeasible(certificate(matroids, weights, allowed, ElementSet::singleton(e))),
        });
    };
    let copies = first.ground_size();
    let admissible = |c: usize, i: usize| allowed.is_none_or(|a| a[first.origin(c)].contains(i));

    Ok(match partition_engine(&replica_refs, copies, &admissible) {
        Ok(classes) => {
            let sets = classes
                .iter()
                .map(|c| first.project(c).expect("parallel copies share a class"))
                .collect();
            CoverOutcome::Covered(CoveringFamily { sets })
        }
        Err(reached) => CoverOutcome::Infeasible(certificate(matroids, weights, allowed, first.support(&reached))),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chromatic {
    pub value: usize,
    pub partition: Vec<ElementSet>,
}

/// Least number of independent sets partitioning the ground set.
pub fn chromatic_number(m: &dyn Matroid) -> Result<Chromatic, MatroidError> {
    let n = m.ground_size();
    if let Some(e) = m.find_loop() {
        return Err(MatroidError::Loop(e));
    }
    if n == 0 {
        return Ok(Chromatic {
            value: 0,
            partition: Vec::new(),
        });
    }
    let r = m.full_rank().max(1);
    for d in n.div_ceil(r)..=n {
        let copies = vec![m; d];
        if let Ok(CoverOutcome::Covered(c)) = matroid_partition(&copies) {
            return Ok(Chromatic {
                value: d,
                partition: c.sets,
            });
        }
    }
    unreachable!("a loopless matroid is covered by n singletons")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionalChromatic {
    #[serde(serialize_with = "serialize_ratio")]
    pub value: Ratio<usize>,
    /// Multiplicity of the witness covering.
    pub a: usize,
    /// The witness: an `a`-covering by `b = a·value` independent sets.
    pub covering: CoveringFamily,
    /// A set attaining `max |A| / r(A)`, when one was identified.
    pub densest: Option<ElementSet>,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<usize>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// Ground-set size up to which [`fractional_chromatic`] enumerates subsets to
/// find a densest set when the covering search did not expose one.
pub const DENSEST_ENUMERATION_CAP: usize = 15;

/// Exact `χ_f(M) = min_a b_a / a` over `a ≤ r(E)`, where `b_a` is the least
/// number of independent sets forming an `a`-covering.
///
/// Failed covering attempts return sets `A` with `|A|/r(A) > b/a`; these
/// raise the lower bound and let the search skip hopeless `b`, and stop
/// early once the bounds meet.
pub fn fractional_chromatic(m: &dyn Matroid) -> Result<FractionalChromatic, MatroidError> {
    fractional_chromatic_with(m, DENSEST_ENUMERATION_CAP)
}

pub fn fractional_chromatic_with(m: &dyn Matroid, enumerate_up_to: usize) -> Result<FractionalChromatic, MatroidError> {
    if let Some(e) = m.find_loop() {
        return Err(MatroidError::Loop(e));
    }
    let n = m.ground_size();
    let full = ElementSet::full(n);
    let r = m.rank(&full);
    if n == 0 {
        return Ok(FractionalChromatic {
            value: Ratio::from_integer(0),
            a: 1,
            covering: CoveringFamily::default(),
            densest: Some(full),
        });
    }
    let mut lower = Ratio::new(n, r);
    let mut densest = full;
    let mut best: Option<(Ratio<usize>, usize, CoveringFamily)> = None;

    for a in 1..=r {
        loop {
            let b = (lower * a).ceil().to_integer();
            if best.as_ref().is_some_and(|(v, _, _)| Ratio::new(b, a) >= *v) {
                break;
            }
            let copies = vec![m; b];
            match w_covering(&copies, &WeightFunction::constant(n, a)).expect("common ground set") {
                CoverOutcome::Covered(c) => {
                    best = Some((Ratio::new(b, a), a, c));
                    break;
                }
                CoverOutcome::Infeasible(cert) => {
                    // b·r(A) < a·|A|, so A is denser than b / a ≥ lower
                    let density = Ratio::new(cert.set.len(), m.rank(&cert.set));
                    debug_assert!(density > lower);
                    lower = density;
                    densest = cert.set;
                }
            }
        }
        if best.as_ref().is_some_and(|(v, _, _)| *v == lower) {
            break;
        }
    }

    let (value, a, covering) = best.expect("a = 1 always yields a covering");
    let densest = if value == lower {
        Some(densest)
    } else if n <= enumerate_up_to {
        Some(densest_by_enumeration(m).0)
    } else {
        None
    };
    Ok(FractionalChromatic {
        value,
        a,
        covering,
        densest,
    })
}

/// `argmax_A |A| / r(A)` over nonempty `A`, by enumeration.
pub fn densest_by_enumeration(m: &dyn Matroid) -> (ElementSet, Ratio<usize>) {
    let n = m.ground_size();
    assert!(n <= 24, "enumerating 2^{n} subsets");
    let mut best = (ElementSet::new(), Ratio::from_integer(0));
    for mask in 1u64..1 << n {
        let s = ElementSet::from_mask(mask);
        let r = m.rank(&s);
        if r == 0 {
            continue;
        }
        let density = Ratio::new(s.len(), r);
        if density > best.1 {
            best = (s, density);
        }
    }
    best
}

/// Outcome of enumerating every `A ⊆ E` against the rank-sum condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    /// The set minimising `Σ r_i(A) - Σ W(A)` (first in mask order).
    pub worst: ElementSet,
    pub slack: i64,
}

pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Checks `Σ_i r_i(A ∩ Q_i) ≥ Σ_{e∈A} W(e)` for every `A` by enumeration.
pub fn brute_force_condition2(
    matroids: &[&dyn Matroid],
    weights: &WeightFunction,
    allowed: Option<&[ColorSet]>,
    cap: usize,
) -> Result<ConditionReport, UnionError> {
    let n = weights.0.len();
    if n > cap || n > 30 {
        return Err(UnionError::CapExceeded { size: n, cap });
    }
    check_ground(matroids, n)?;
    let mut worst = (ElementSet::new(), 0i64);
    for mask in 1u64..1 << n {
        let s = ElementSet::from_mask(mask);
        let slack = rank_sum(matroids, allowed, &s) as i64 - weights.total(&s) as i64;
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{GraphicMatroid, UniformMatroid};

    fn k4() -> GraphicMatroid {
        GraphicMatroid::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_splits_into_two_forests() {
        let k = k4();
        let out = matroid_partition(&[&k, &k]).unwrap();
        let c = out.covering().unwrap();
        c.verify(&[&k, &k], &WeightFunction::constant(6, 1), None).unwrap();
    }

    #[test]
    fn u23_alone_is_infeasible() {
        let u = UniformMatroid::new(3, 2).unwrap();
        let cert = matroid_partition(&[&u]).unwrap().certificate().unwrap();
        assert_eq!(cert.set, ElementSet::full(3));
        assert_eq!((cert.rank_sum, cert.demand), (2, 3));
    }

    #[test]
    fn free_matroids_always_succeed() {
        let f = UniformMatroid::free(5);
        assert!(matroid_partition(&[&f, &f, &f]).unwrap().is_covered());
    }

    #[test]
    fn w_covering_examples() {
        let u = UniformMatroid::new(3, 2).unwrap();
        let ms: [&dyn Matroid; 4] = [&u, &u, &u, &u];
        let w = WeightFunction::constant(3, 2);
        let c = w_covering(&ms, &w).unwrap().covering().unwrap();
        c.verify(&ms, &w, None).unwrap();

        let u13 = UniformMatroid::new(3, 1).unwrap();
        let cert = w_covering(&[&u13, &u13], &WeightFunction::constant(3, 1))
            .unwrap()
            .certificate()
            .unwrap();
        assert_eq!(cert.set, ElementSet::full(3));
        assert_eq!((cert.rank_sum, cert.demand), (2, 3));
    }

    #[test]
    fn demand_above_class_count_is_infeasible() {
        let u = UniformMatroid::free(2);
        let cert = w_covering(&[&u], &WeightFunction(vec![2, 0]))
            .unwrap()
            .certificate()
            .unwrap();
        assert_eq!(cert.set, ElementSet::from([0]));
    }

    #[test]
    fn ground_mismatch() {
        let a = UniformMatroid::free(2);
        let b = UniformMatroid::free(3);
        assert!(matches!(
            matroid_partition(&[&a, &b]),
            Err(UnionError::GroundMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&k4()).unwrap().value, 2);
        assert_eq!(chromatic_number(&UniformMatroid::new(3, 2).unwrap()).unwrap().value, 2);
        assert_eq!(chromatic_number(&UniformMatroid::free(0)).unwrap().value, 0);
    }

    #[test]
    fn fractional_examples() {
        let f = fractional_chromatic(&UniformMatroid::new(3, 2).unwrap()).unwrap();
        assert_eq!(f.value, Ratio::new(3, 2));
        assert_eq!(f.a, 2);
        assert_eq!(f.covering.sets.len(), 3);
        assert_eq!(f.densest, Some(ElementSet::full(3)));
        assert_eq!(
            fractional_chromatic(&UniformMatroid::free(4)).unwrap().value,
            Ratio::from_integer(1)
        );
        assert_eq!(fractional_chromatic(&k4()).unwrap().value, Ratio::from_integer(2));
    }

    #[test]
    fn brute_force_examples() {
        let u13 = UniformMatroid::new(3, 1).unwrap();
        let rep = brute_force_condition2(&[&u13, &u13], &WeightFunction::constant(3, 1), None, 20).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.worst, ElementSet::full(3));
        let big = UniformMatroid::free(21);
        assert!(matches!(
            brute_force_condition2(&[&big], &WeightFunction::constant(21, 1), None, 20),
            Err(UnionError::CapExceeded { .. })
        ));
    }
}
