use rand::RngCore;
use serde_json::json;

use super::StrategyError;
use crate::game::{GameConfig, GameState, Move, Player, Ply, Strategy};
use crate::matroid::Matroid;
use crate::set::ElementSet;
use crate::union::{w_covering_restricted, CoverOutcome, CoveringFamily, WeightFunction};

/// Alice's covering strategy.
///
/// Starts from sets `V_1..V_d` covering every element `2k` times with `V_i`
/// independent in `M_i`, and shrinks them so that after each of her moves
///
/// 1. `V_i ∩ U_i = ∅`,
/// 2. `U_i ∪ V_i` is independent in `M_i`,
/// 3. `w(e) + 2c(e) = 2k`, where `w(e)` counts the `V_i` holding `e` and
///    `c(e)` the colors `e` has.
///
/// Every element with `c(e) < k` then has `w(e) ≥ 2`, so some color stays
/// available to it until it is finished.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AliceCovering {
    sets: Vec<ElementSet>,
    colored: Vec<ElementSet>,
    counts: Vec<usize>,
    k: usize,
    /// Plies of the history already folded into memory.
    seen: usize,
    error: Option<String>,
}

impl AliceCovering {
    /// Checks that `covering` is a valid `2k`-covering for `cfg`.
    pub fn new(cfg: &GameConfig, covering: &CoveringFamily) -> Result<Self, StrategyError> {
        let k = cfg.multiplicity();
        let n = cfg.ground_size();
        let matroids: Vec<&dyn Matroid> = cfg.matroids().iter().map(|m| m.as_ref() as &dyn Matroid).collect();
        covering.verify(&matroids, &WeightFunction::constant(n, 2 * k), cfg.lists())?;
        Ok(Self {
            sets: covering.sets.clone(),
            colored: vec![ElementSet::new(); cfg.colors()],
            counts: vec![0; n],
            k,
            seen: 0,
            error: None,
        })
    }

    /// Uses an `a`-covering by `b ≤ d/2` sets twice, leaving the remaining
    /// colors empty. Covers both the `2χ` partition case (`a = 1`) and the
    /// fractional one.
    pub fn duplicated(cfg: &GameConfig, cover: &[ElementSet]) -> Result<Self, StrategyError> {
        if 2 * cover.len() > cfg.colors() {
            return Err(StrategyError::Unsupported(format!(
                "{} sets doubled need {} colors, the game has {}",
                cover.len(),
                2 * cover.len(),
                cfg.colors()
            )));
        }
        let mut sets = cover.to_vec();
        sets.extend_from_slice(cover);
        sets.resize(cfg.colors(), ElementSet::new());
        Self::new(cfg, &CoveringFamily::new(sets))
    }

    /// Finds a `2k`-covering respecting the game's matroids and lists.
    pub fn for_config(cfg: &GameConfig) -> Result<Self, StrategyError> {
        let matroids: Vec<&dyn Matroid> = cfg.matroids().iter().map(|m| m.as_ref() as &dyn Matroid).collect();
        let weights = WeightFunction::constant(cfg.ground_size(), 2 * cfg.multiplicity());
        match w_covering_restricted(&matroids, &weights, cfg.lists()).expect("config matroids share a ground set") {
            CoverOutcome::Covered(c) => Self::new(cfg, &c),
            CoverOutcome::Infeasible(cert) => Err(StrategyError::NoCovering(cert)),
        }
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn w(&self, e: usize) -> usize {
        self.sets.iter().filter(|s| s.contains(e)).count()
    }

    /// Removes `e` from `count` sets, `first` before the others.
    fn shrink(&mut self, e: usize, count: usize, first: Option<usize>) -> Result<(), String> {
        let mut left = count;
        if let Some(i) = first.filter(|&i| self.sets[i].contains(e)) {
            self.sets[i].remove(e);
            left -= 1;
        }
        for i in 0..self.sets.len() {
            if left == 0 {
                break;
            }
            if self.sets[i].remove(e) {
                left -= 1;
            }
        }
        if left == 0 {
            Ok(())
        } else {
            Err(format!("element {e} lies in fewer than {count} sets"))
        }
    }

    fn record(&mut self, mv: Move) {
        self.colored[mv.color].insert(mv.element);
        self.counts[mv.element] += 1;
    }

    /// Absorbs Bob's move `(x, j)`; returns Alice's answer when it is forced
    /// by the dependent case.
    fn absorb_bob(&mut self, cfg: &GameConfig, x: usize, j: usize) -> Result<Option<Move>, String> {
        let m = cfg.matroid(j);
        let span = self.colored[j].union(&self.sets[j]);
        let dependent = !self.sets[j].contains(x) && !m.is_independent(&span.with(x));
        self.record(Move::new(x, j));
        if !dependent {
            return self.shrink(x, 2, Some(j)).map(|_| None);
        }
        let circuit = m
            .view(&span)
            .circuit(x)
            .ok_or_else(|| format!("U_{j} ∪ V_{j} is not independent"))?;
        let y = circuit
            .intersection(&self.sets[j])
            .min()
            .ok_or_else(|| format!("circuit of {x} misses V_{j}"))?;
        self.sets[j].remove(y);
        let l = (0..self.sets.len())
            .find(|&l| l != j && self.sets[l].contains(y))
            .ok_or_else(|| format!("element {y} lies in no set besides V_{j}"))?;
        self.sets[l].remove(y);
        self.shrink(x, 2, None)?;
        Ok(Some(Move::new(y, l)))
    }

    fn proactive(&mut self) -> Result<Move, String> {
        let y = (0..self.counts.len())
            .find(|&e| self.counts[e] < self.k)
            .ok_or("every element is finished")?;
        let l = (0..self.sets.len())
            .find(|&l| self.sets[l].contains(y))
            .ok_or_else(|| format!("unfinished element {y} lies in no set"))?;
        self.sets[l].remove(y);
        self.shrink(y, 1, None)?;
        Ok(Move::new(y, l))
    }

    fn decide(&mut self, cfg: &GameConfig, history: &[Ply]) -> Result<Move, String> {
        let mut forced = None;
        for p in &history[self.seen.min(history.len())..] {
            match p.player {
                Player::Bob => forced = self.absorb_bob(cfg, p.e, p.color)?,
                Player::Alice => return Err(format!("unexpected foreign Alice move {}", p.mv())),
            }
        }
        let mv = match forced {
            Some(mv) => mv,
            None => self.proactive()?,
        };
        self.record(mv);
        self.seen = history.len() + 1;
        Ok(mv)
    }
}

impl Strategy for AliceCovering {
    fn name(&self) -> String {
        "alice-covering".into()
    }

    fn select(&mut self, cfg: &GameConfig, _: &GameState, history: &[Ply], _: &mut dyn RngCore) -> Option<Move> {
        if self.error.is_some() {
            return None;
        }
        match self.decide(cfg, history) {
            Ok(mv) => Some(mv),
            Err(e) => {
                self.error = Some(e);
                None
            }
        }
    }

    fn snapshot(&self) -> Option<serde_json::Value> {
        let n = self.counts.len();
        Some(json!({
            "sets": self.sets,
            "w": (0..n).map(|e| self.w(e)).collect::<Vec<_>>(),
            "c": self.counts,
        }))
    }

    fn check_invariants(&self, cfg: &GameConfig, state: &GameState) -> Result<(), String> {
        for (i, v) in self.sets.iter().enumerate() {
            let u = state.class(i);
            if !v.is_disjoint(u) {
                return Err(format!("(1) V_{i} meets U_{i} in {:?}", v.intersection(u)));
            }
            if !cfg.matroid(i).is_independent(&u.union(v)) {
                return Err(format!("(2) U_{i} ∪ V_{i} is dependent"));
            }
            if let Some(e) = v.iter().find(|&e| !cfg.is_allowed(e, i)) {
                return Err(format!("V_{i} holds {e}, whose list lacks {i}"));
            }
        }
        for e in 0..cfg.ground_size() {
            let c = state.acquired(e).len();
            if self.w(e) + 2 * c != 2 * self.k {
                return Err(format!("(3) w({e}) + 2c({e}) = {} + 2·{c} ≠ {}", self.w(e), 2 * self.k));
            }
        }
        Ok(())
    }

    fn flags(&self) -> Vec<String> {
        self.error.iter().map(|e| format!("alice-covering: {e}")).collect()
    }
}
