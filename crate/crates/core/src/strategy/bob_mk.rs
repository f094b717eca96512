use rand::RngCore;
use serde::Serialize;
use serde_json::json;

use super::mk::{build_mk, MkSpec};
use super::StrategyError;
use crate::game::{GameConfig, GameState, Move, Player, Ply, Strategy};
use crate::set::ElementSet;

/// Per-color bookkeeping of [`BobMk`], taken from the current position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BobMkCounters {
    /// The designated pair `(D_p, D_q)`, one based.
    pub pair: [usize; 2],
    /// Elements colored `i` inside the pair.
    pub d: usize,
    /// Elements of `C` colored `i`.
    pub c: usize,
    /// Pair sets touched by color `i`.
    pub eps: usize,
}

impl BobMkCounters {
    /// `d - (c + ε - 1)`; Bob keeps this nonnegative.
    pub fn slack(&self) -> i64 {
        self.d as i64 - (self.c as i64 + self.eps as i64 - 1)
    }
}

/// Bob's strategy on `M_k` with `h ≤ 2k-2` colors.
///
/// Color `i` (zero based) owns the triple `D_{i+1}, D_{i+1+h}, D_{i+1+2h}`
/// and designates two of them as its pair. Bob keeps `d_i ≥ c_i + ε_i - 1`.
/// Since the color class is independent, `c_i + d_i ≤ 2k - 1 + ε_i`, hence
/// `c_i ≤ k` and the `h` colors together reach at most `hk < |C|` elements
/// of `C`.
///
/// Reactions to Alice's last move, in order:
/// 1. she touched a triple set of a color Bob has not used yet: the pair
///    becomes the other two sets of the triple and Bob colors in the first;
/// 2. she colored inside the pair of color `i`: Bob colors another pair
///    element with `i`;
/// 3. she colored `C` with `j` and left `j`'s slack negative (or zero with
///    the pair untouched): Bob colors inside `j`'s pair;
/// 4. otherwise Bob builds up the lowest color with `d_i < k`.
///
/// Pair moves prefer sets the color already touches. When nothing above
/// applies Bob fills in D first and C last; a required reaction that is not
/// playable is flagged.
#[derive(Debug, Clone)]
pub struct BobMk {
    mk: MkSpec,
    h: usize,
    pairs: Vec<[usize; 2]>,
    used: Vec<bool>,
    counters: Vec<BobMkCounters>,
    flags: Vec<String>,
}

impl BobMk {
    pub fn new(k: usize, h: usize) -> Result<Self, StrategyError> {
        let mk = build_mk(k).map_err(|e| StrategyError::Unsupported(e.to_string()))?;
        Self::with_spec(mk, h)
    }

    pub fn with_spec(mk: MkSpec, h: usize) -> Result<Self, StrategyError> {
        if h == 0 || h > 2 * mk.k - 2 {
            return Err(StrategyError::Unsupported(format!(
                "bob-mk needs 1 ≤ h ≤ 2k-2 = {} colors, got {h}",
                2 * mk.k - 2
            )));
        }
        let pairs: Vec<[usize; 2]> = (1..=h).map(|a| [a, a + h]).collect();
        let counters = pairs
            .iter()
            .map(|&pair| BobMkCounters {
                pair,
                d: 0,
                c: 0,
                eps: 0,
            })
            .collect();
        Ok(Self {
            mk,
            h,
            pairs,
            used: vec![false; h],
            counters,
            flags: Vec::new(),
        })
    }

    /// Recognizes `M_k` by its ground-set size; the game must use one
    /// matroid for all colors, multiplicity 1 and no lists.
    pub fn for_config(cfg: &GameConfig) -> Result<Self, StrategyError> {
        let n = cfg.ground_size();
        let k = (3..)
            .take_while(|&k| k * (2 * k - 1) * (1 + 3 * k) <= n)
            .find(|&k| k * (2 * k - 1) * (1 + 3 * k) == n)
            .ok_or_else(|| StrategyError::Unsupported(format!("{n} elements is not the size of any M_k")))?;
        if cfg.multiplicity() != 1
            || cfg.lists().is_some()
            || (0..cfg.colors()).any(|i| cfg.matroid_id(i) != cfg.matroid_id(0))
        {
            return Err(StrategyError::Unsupported(
                "bob-mk plays the plain game: one matroid, multiplicity 1, no lists".into(),
            ));
        }
        Self::new(k, cfg.colors())
    }

    pub fn spec(&self) -> &MkSpec {
        &self.mk
    }

    pub fn pairs(&self) -> &[[usize; 2]] {
        &self.pairs
    }

    pub fn counters(&self, classes: &[ElementSet]) -> Vec<BobMkCounters> {
        let c_set = self.mk.c_set();
        (0..self.h)
            .map(|i| {
                let u = &classes[i];
                let pair = self.pairs[i];
                let inside: Vec<usize> = pair.iter().map(|&a| u.intersection(&self.mk.d_set(a)).len()).collect();
                BobMkCounters {
                    pair,
                    d: inside.iter().sum(),
                    c: u.intersection(&c_set).len(),
                    eps: inside.iter().filter(|&&x| x > 0).count(),
                }
            })
            .collect()
    }

    fn first_legal(&self, cfg: &GameConfig, state: &GameState, set: &ElementSet, color: usize) -> Option<Move> {
        set.iter()
            .map(|e| Move::new(e, color))
            .find(|&m| state.is_legal(cfg, m))
    }

    /// A move with `color` inside its pair, touched sets first.
    fn pair_move(&self, cfg: &GameConfig, state: &GameState, color: usize) -> Option<Move> {
        let u = state.class(color);
        let mut sets = self.pairs[color].map(|a| self.mk.d_set(a));
        if u.is_disjoint(&sets[0]) && !u.is_disjoint(&sets[1]) {
            sets.swap(0, 1);
        }
        sets.iter().find_map(|s| self.first_legal(cfg, state, s, color))
    }

    fn react(&mut self, cfg: &GameConfig, state: &GameState, alice: Move) -> Option<Move> {
        let Move { element: x, color: j } = alice;
        let ply = state.plies();
        if let Some(a) = self.mk.d_index(x).filter(|&a| a <= 3 * self.h) {
            let i = (a - 1) % self.h;
            if !self.used[i] {
                let triple = [i + 1, i + 1 + self.h, i + 1 + 2 * self.h];
                let rest: Vec<usize> = triple.into_iter().filter(|&t| t != a).collect();
                self.pairs[i] = [rest[0], rest[1]];
                let target = self.mk.d_set(rest[0]);
                let mv = self.first_legal(cfg, state, &target, i);
                if mv.is_none() {
                    self.flags.push(format!(
                        "ply {ply}: triple rule for color {i} has no move in D_{}",
                        rest[0]
                    ));
                }
                return mv;
            }
            if self.pairs[i].contains(&a) {
                let mv = self.pair_move(cfg, state, i);
                if mv.is_none() {
                    self.flags
                        .push(format!("ply {ply}: pairing rule for color {i} has no move"));
                }
                return mv;
            }
        }
        if x < self.mk.c_size() && j < self.h {
            let cnt = self.counters(state.classes())[j];
            if cnt.slack() < 0 || (cnt.slack() == 0 && cnt.eps == 0) {
                let mv = self.pair_move(cfg, state, j);
                if mv.is_none() {
                    self.flags
                        .push(format!("ply {ply}: restoring color {j} has no pair move"));
                }
                return mv;
            }
        }
        None
    }

    fn build_up(&self, cfg: &GameConfig, state: &GameState) -> Option<Move> {
        let counters = self.counters(state.classes());
        (0..self.h)
            .filter(|&i| counters[i].d < self.mk.k)
            .find_map(|i| self.pair_move(cfg, state, i))
    }

    fn filler(&self, cfg: &GameConfig, state: &GameState) -> Option<Move> {
        if let Some(mv) = (0..self.h).find_map(|i| self.pair_move(cfg, state, i)) {
            return Some(mv);
        }
        let legal = state.legal_moves(cfg);
        let in_d = |m: &&Move| self.mk.d_index(m.element).is_some();
        let touched = |m: &&Move| {
            let a = self.mk.d_index(m.element).expect("D element");
            !state.class(m.color).is_disjoint(&self.mk.d_set(a))
        };
        if let Some(&mv) = legal.iter().filter(in_d).find(touched) {
            return Some(mv);
        }
        if let Some(&mv) = legal.iter().find(in_d) {
            return Some(mv);
        }
        let counters = self.counters(state.classes());
        let slack = |c: usize| counters.get(c).map_or(i64::MAX, BobMkCounters::slack);
        legal
            .iter()
            .copied()
            .min_by_key(|m| (-slack(m.color), m.element, m.color))
    }
}

impl Strategy for BobMk {
    fn name(&self) -> String {
        "bob-mk".into()
    }

    fn select(&mut self, cfg: &GameConfig, state: &GameState, history: &[Ply], _: &mut dyn RngCore) -> Option<Move> {
        let alice = history.last().filter(|p| p.player == Player::Alice).map(Ply::mv);
        let mv = alice
            .and_then(|a| self.react(cfg, state, a))
            .or_else(|| self.build_up(cfg, state))
            .or_else(|| self.filler(cfg, state))?;
        if mv.color < self.h {
            self.used[mv.color] = true;
        }
        let mut classes = state.classes().to_vec();
        classes[mv.color].insert(mv.element);
        self.counters = self.counters(&classes);
        Some(mv)
    }

    fn snapshot(&self) -> Option<serde_json::Value> {
        Some(json!({
            "k": self.mk.k,
            "h": self.h,
            "counters": self.counters,
            "used": self.used,
        }))
    }

    fn check_invariants(&self, _: &GameConfig, state: &GameState) -> Result<(), String> {
        for (i, c) in self.counters(state.classes()).iter().enumerate() {
            if c.slack() < 0 {
                return Err(format!("color {i}: d = {} < c + ε - 1 = {} + {} - 1", c.d, c.c, c.eps));
            }
        }
        Ok(())
    }

    fn flags(&self) -> Vec<String> {
        self.flags.iter().map(|f| format!("bob-mk: {f}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::play;
    use crate::strategy::Greedy;
    use std::sync::Arc;

    fn game(first: Player) -> (GameConfig, BobMk) {
        let bob = BobMk::new(3, 4).unwrap();
        let cfg = GameConfig::new(bob.spec().matroid.clone(), 4)
            .unwrap()
            .with_first_player(first);
        (cfg, bob)
    }

    #[test]
    fn answers_c_move_inside_pair() {
        let (cfg, mut bob) = game(Player::Alice);
        let mk = bob.spec().clone();
        let mut state = GameState::new(&cfg);
        let alice = Move::new(mk.c(1, 1), 0);
        state.apply(&cfg, alice).unwrap();
        let mv = bob.select(&cfg, &state, &[Ply::new(Player::Alice, alice)], &mut rand::thread_rng());
        assert_eq!(mv, Some(Move::new(mk.d(1, 1), 0)));
        state.apply(&cfg, mv.unwrap()).unwrap();
        bob.check_invariants(&cfg, &state).unwrap();
        assert_eq!(bob.counters(state.classes())[0].slack(), 0);
    }

    #[test]
    fn triple_rule_moves_the_pair() {
        let (cfg, mut bob) = game(Player::Alice);
        let mk = bob.spec().clone();
        let mut state = GameState::new(&cfg);
        let alice = Move::new(mk.d(1, 1), 0);
        state.apply(&cfg, alice).unwrap();
        let mv = bob
            .select(&cfg, &state, &[Ply::new(Player::Alice, alice)], &mut rand::thread_rng())
            .unwrap();
        assert_eq!(bob.pairs()[0], [5, 9]);
        assert_eq!(mk.d_index(mv.element), Some(5));
        assert_eq!(mv.color, 0);
    }

    #[test]
    fn rejects_other_games() {
        let m: Arc<dyn crate::matroid::Matroid> = Arc::new(crate::matroid::UniformMatroid::new(3, 2).unwrap());
        assert!(BobMk::for_config(&GameConfig::new(m, 2).unwrap()).is_err());
        assert!(BobMk::new(3, 5).is_err());
    }

    #[test]
    fn beats_greedy() {
        for first in [Player::Alice, Player::Bob] {
            let (cfg, mut bob) = game(first);
            let t = play(&cfg, &mut Greedy, &mut bob, 0);
            assert_eq!(t.winner(), Player::Bob, "{:?}", t.flags);
            assert!(t.violations.is_empty(), "{:?}", t.violations);
        }
    }
}
