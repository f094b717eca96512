use std::collections::VecDeque;

use super::spec::MatroidSpec;
use super::{IndependentView, Matroid, MatroidError};
use crate::set::ElementSet;

const FREE: usize = usize::MAX;

/// Partial transversals of a set family `A_1..A_m` over `0..n`.
///
/// A set is independent when its elements can be matched to distinct
/// family members containing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalMatroid {
    size: usize,
    family: Vec<Vec<usize>>,
    /// element -> slots (family members) containing it
    slots_of: Vec<Vec<usize>>,
}

/// Maximum matching of an independent set into slots.
struct Matching {
    slot_owner: Vec<usize>,
    elem_slot: Vec<usize>,
}

impl TransversalMatroid {
    pub fn new(size: usize, family: Vec<Vec<usize>>) -> Result<Self, MatroidError> {
        let mut slots_of = vec![Vec::new(); size];
        for (slot, members) in family.iter().enumerate() {
            for &e in members {
                if e >= size {
                    return Err(MatroidError::OutOfRange { element: e, size });
                }
                if slots_of[e].last() != Some(&slot) {
                    slots_of[e].push(slot);
                }
            }
        }
        if let Some(e) = slots_of.iter().position(Vec::is_empty) {
            return Err(MatroidError::Loop(e));
        }
        Ok(Self { size, family, slots_of })
    }

    pub fn family(&self) -> &[Vec<usize>] {
        &self.family
    }

    /// Greedy augmenting-path matching of `set`; returns the matching and
    /// the number of matched elements.
    fn match_set(&self, set: &ElementSet, stop_on_failure: bool) -> (Matching, usize) {
        let mut m = Matching {
            slot_owner: vec![FREE; self.family.len()],
            elem_slot: vec![FREE; self.size],
        };
        let mut matched = 0;
        for e in set {
            if self.augment(&mut m, e) {
                matched += 1;
            } else if stop_on_failure {
                break;
            }
        }
        (m, matched)
    }

    /// BFS for an alternating path from unmatched `start` to a free slot.
    fn augment(&self, m: &mut Matching, start: usize) -> bool {
        let mut slot_parent = vec![FREE; self.family.len()];
        let mut queue = VecDeque::from([start]);
        let mut visited_elem = ElementSet::singleton(start);
        while let Some(x) = queue.pop_front() {
            for &s in &self.slots_of[x] {
                if slot_parent[s] != FREE {
                    continue;
                }
                slot_parent[s] = x;
                let owner = m.slot_owner[s];
                if owner == FREE {
                    // flip the path back to start
                    let mut slot = s;
                    loop {
                        let e = slot_parent[slot];
                        let prev = m.elem_slot[e];
                        m.slot_owner[slot] = e;
                        m.elem_slot[e] = slot;
                        if e == start {
                            return true;
                        }
                        slot = prev;
                    }
                }
                if visited_elem.insert(owner) {
                    queue.push_back(owner);
                }
            }
        }
        false
    }
}

impl Matroid for TransversalMatroid {
    fn ground_size(&self) -> usize {
        self.size
    }

    fn describe(&self) -> Option<MatroidSpec> {
        Some(MatroidSpec::Transversal {
            n: self.size,
            family: self.family.clone(),
        })
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        let (_, matched) = self.match_set(set, true);
        matched == set.len()
    }

    fn rank(&self, set: &ElementSet) -> usize {
        self.match_set(set, false).1
    }

    fn view<'a>(&'a self, independent: &ElementSet) -> Box<dyn IndependentView + 'a> {
        let (matching, matched) = self.match_set(independent, true);
        debug_assert_eq!(matched, independent.len(), "view over a dependent set");
        Box::new(MatchingView {
            matroid: self,
            base: independent.clone(),
            matching,
        })
    }
}

struct MatchingView<'a> {
    matroid: &'a TransversalMatroid,
    base: ElementSet,
    matching: Matching,
}

impl MatchingView<'_> {
    /// Elements of the base reachable from `start` along alternating paths,
    /// and whether a free slot was reached.
    fn explore(&self, start: usize) -> (ElementSet, bool) {
        let mut seen_slot = vec![false; self.matroid.family.len()];
        let mut reached = ElementSet::singleton(start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &s in &self.matroid.slots_of[x] {
                if std::mem::replace(&mut seen_slot[s], true) {
                    continue;
                }
                let owner = self.matching.slot_owner[s];
                if owner == FREE {
                    return (reached, true);
                }
                if reached.insert(owner) {
                    queue.push_back(owner);
                }
            }
        }
        (reached, false)
    }
}

impl IndependentView for MatchingView<'_> {
    fn can_add(&self, e: usize) -> bool {
        !self.base.contains(e) && self.explore(e).1
    }

    fn circuit(&self, e: usize) -> Option<ElementSet> {
        if self.base.contains(e) {
            return None;
        }
        let (reached, free) = self.explore(e);
        (!free).then_some(reached)
    }

    fn addable(&self, n: usize) -> ElementSet {
        // A slot is good when it is free or its owner can move to a good
        // slot; an outside element is addable iff it touches a good slot.
        let slots = self.matroid.family.len();
        let mut good = vec![false; slots];
        let mut queue: VecDeque<usize> = (0..slots).filter(|&s| self.matching.slot_owner[s] == FREE).collect();
        for &s in &queue {
            good[s] = true;
        }
        let mut owner_done = ElementSet::new();
        while let Some(s) = queue.pop_front() {
            for &e in &self.matroid.family[s] {
                if !self.base.contains(e) || !owner_done.insert(e) {
                    continue;
                }
                let own = self.matching.elem_slot[e];
                if !good[own] {
                    good[own] = true;
                    queue.push_back(own);
                }
            }
        }
        (0..n.min(self.matroid.size))
            .filter(|&e| !self.base.contains(e) && self.matroid.slots_of[e].iter().any(|&s| good[s]))
            .collect()
    }
}
