//! Exhaustive win/loss search for tiny games.
//!
//! Positions are the tuple of color classes as bitmasks; whose turn it is
//! follows from the number of plies. Colors whose matroid and list column
//! coincide are interchangeable, so sorting their classes gives a sound
//! canonical form.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::game::{GameConfig, GameState, Move, Player, Ply, Status, Strategy};
use crate::matroid::Matroid;
use crate::set::ElementSet;

pub const DEFAULT_MAX_ELEMENTS: usize = 9;
pub const DEFAULT_MAX_COLORS: usize = 4;
/// Independence tables have `2^n` entries.
const HARD_MAX_ELEMENTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{elements} elements and {colors} colors exceed the solver caps of {max_elements} and {max_colors}")]
    Cap {
        elements: usize,
        colors: usize,
        max_elements: usize,
        max_colors: usize,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub canonicalize: bool,
    pub max_elements: usize,
    pub max_colors: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            canonicalize: true,
            max_elements: DEFAULT_MAX_ELEMENTS,
            max_colors: DEFAULT_MAX_COLORS,
        }
    }
}

impl SolveOptions {
    fn admit(&self, cfg: &GameConfig) -> Result<(), SolverError> {
        let (n, d) = (cfg.ground_size(), cfg.colors());
        if n > self.max_elements.min(HARD_MAX_ELEMENTS) || d > self.max_colors {
            return Err(SolverError::Cap {
                elements: n,
                colors: d,
                max_elements: self.max_elements.min(HARD_MAX_ELEMENTS),
                max_colors: self.max_colors,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub winner: Player,
    /// Distinct positions evaluated.
    pub positions: usize,
    /// A move that keeps the win for the player to move, if that player wins.
    pub winning_move: Option<Move>,
}

#[derive(Debug, Clone)]
struct Solver {
    n: usize,
    k: usize,
    first: Player,
    /// `tables[c][mask]`: whether `mask` is independent in `M_c`.
    tables: Vec<Arc<Vec<bool>>>,
    allowed: Vec<u32>,
    /// Interchangeable colors, each group ascending.
    groups: Vec<Vec<usize>>,
    canonicalize: bool,
    memo: HashMap<Vec<u32>, bool>,
}

fn mask_of(set: &ElementSet) -> u32 {
    set.low_mask() as u32
}

impl Solver {
    fn new(cfg: &GameConfig, opts: SolveOptions) -> Result<Self, SolverError> {
        opts.admit(cfg)?;
        let n = cfg.ground_size();
        let d = cfg.colors();
        let mut by_id: HashMap<usize, Arc<Vec<bool>>> = HashMap::new();
        let tables = (0..d)
            .map(|c| {
                by_id
                    .entry(cfg.matroid_id(c))
                    .or_insert_with(|| {
                        let m = cfg.matroid(c);
                        Arc::new(
                            (0u64..1 << n)
                                .map(|mask| m.is_independent(&ElementSet::from_mask(mask)))
                                .collect(),
                        )
                    })
                    .clone()
            })
            .collect();
        let allowed: Vec<u32> = (0..d)
            .map(|c| (0..n).filter(|&e| cfg.is_allowed(e, c)).fold(0, |m, e| m | 1 << e))
            .collect();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for c in 0..d {
            match groups
                .iter_mut()
                .find(|g| cfg.matroid_id(g[0]) == cfg.matroid_id(c) && allowed[g[0]] == allowed[c])
            {
                Some(g) => g.push(c),
                None => groups.push(vec![c]),
            }
        }
        Ok(Self {
            n,
            k: cfg.multiplicity(),
            first: cfg.first_player(),
            tables,
            allowed,
            groups,
            canonicalize: opts.canonicalize,
            memo: HashMap::new(),
        })
    }

    fn key(&self, classes: &[u32]) -> Vec<u32> {
        let mut key = classes.to_vec();
        if self.canonicalize {
            for g in self.groups.iter().filter(|g| g.len() > 1) {
                let mut vals: Vec<u32> = g.iter().map(|&c| classes[c]).collect();
                vals.sort_unstable();
                for (&c, v) in g.iter().zip(vals) {
                    key[c] = v;
                }
            }
        }
        key
    }

    fn mover(&self, classes: &[u32]) -> Player {
        let plies: u32 = classes.iter().map(|m| m.count_ones()).sum();
        if plies.is_multiple_of(2) {
            self.first
        } else {
            self.first.other()
        }
    }

    fn moves(&self, classes: &[u32]) -> Vec<Move> {
        let mut out = Vec::new();
        for e in 0..self.n {
            let bit = 1u32 << e;
            let have = classes.iter().filter(|&&m| m & bit != 0).count();
            if have >= self.k {
                continue;
            }
            for (c, &m) in classes.iter().enumerate() {
                if self.allowed[c] & bit != 0 && m & bit == 0 && self.tables[c][(m | bit) as usize] {
                    out.push(Move::new(e, c));
                }
            }
        }
        out
    }

    fn complete(&self, classes: &[u32]) -> bool {
        (0..self.n).all(|e| classes.iter().filter(|&&m| m & 1 << e != 0).count() == self.k)
    }

    fn alice_wins(&mut self, classes: &mut Vec<u32>) -> bool {
        let key = self.key(classes);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let result = if self.complete(classes) {
            true
        } else {
            let moves = self.moves(classes);
            let alice = self.mover(classes) == Player::Alice;
            // stuck positions are Bob's, whoever is to move
            let mut result = !alice && !moves.is_empty();
            for mv in moves {
                classes[mv.color] |= 1 << mv.element;
                let child = self.alice_wins(classes);
                classes[mv.color] &= !(1 << mv.element);
                if child == alice {
                    result = alice;
                    break;
                }
            }
            result
        };
        self.memo.insert(key, result);
        result
    }

    /// The first move keeping the mover's win, if any.
    fn winning_move(&mut self, classes: &mut Vec<u32>) -> Option<Move> {
        let alice = self.mover(classes) == Player::Alice;
        for mv in self.moves(classes) {
            classes[mv.color] |= 1 << mv.element;
            let child = self.alice_wins(classes);
            classes[mv.color] &= !(1 << mv.element);
            if child == alice {
                return Some(mv);
            }
        }
        None
    }
}

pub fn solve_exact(cfg: &GameConfig) -> Result<Player, SolverError> {
    Ok(solve_with(cfg, SolveOptions::default())?.winner)
}

pub fn solve_with(cfg: &GameConfig, opts: SolveOptions) -> Result<Solution, SolverError> {
    let mut solver = Solver::new(cfg, opts)?;
    let mut classes = vec![0u32; cfg.colors()];
    let winner = if solver.alice_wins(&mut classes) {
        Player::Alice
    } else {
        Player::Bob
    };
    let winning_move = solver.winning_move(&mut classes);
    Ok(Solution {
        winner,
        positions: solver.memo.len(),
        winning_move,
    })
}

/// Least `d ≤ max_colors` for which Alice wins on `d` copies of `m`.
pub fn game_chromatic_number(
    m: Arc<dyn Matroid>,
    first: Player,
    max_colors: usize,
) -> Result<Option<usize>, SolverError> {
    for d in 1..=max_colors {
        let cfg = GameConfig::new(m.clone(), d).expect("d ≥ 1").with_first_player(first);
        let opts = SolveOptions {
            max_colors,
            ..SolveOptions::default()
        };
        if solve_with(&cfg, opts)?.winner == Player::Alice {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Optimal play from the solver; falls back to the first legal move in
/// lost positions.
#[derive(Debug, Clone)]
pub struct ExactStrategy {
    solver: Solver,
}

impl ExactStrategy {
    pub fn new(cfg: &GameConfig) -> Result<Self, SolverError> {
        Ok(Self {
            solver: Solver::new(cfg, SolveOptions::default())?,
        })
    }
}

impl Strategy for ExactStrategy {
    fn name(&self) -> String {
        "exact".into()
    }

    fn select(&mut self, cfg: &GameConfig, state: &GameState, _: &[Ply], _: &mut dyn RngCore) -> Option<Move> {
        let mut classes: Vec<u32> = state.classes().iter().map(mask_of).collect();
        self.solver
            .winning_move(&mut classes)
            .or_else(|| state.legal_moves(cfg).first().copied())
    }
}

/// Plays every Bob line against a deterministic Alice and returns a line
/// that Alice loses, forfeits, or ends with her invariants broken, if one
/// exists.
///
/// Positions are keyed by the color classes together with Alice's memory,
/// so strategies with history-dependent state are handled exactly.
pub fn find_refutation<S>(cfg: &GameConfig, alice: &S, opts: SolveOptions) -> Result<Option<Vec<Ply>>, SolverError>
where
    S: Strategy + Clone + Hash + Eq,
{
    opts.admit(cfg)?;
    let mut safe: HashSet<(Vec<ElementSet>, S)> = HashSet::new();
    let mut history = Vec::new();
    let found = refute(cfg, GameState::new(cfg), alice.clone(), &mut history, &mut safe);
    Ok(found.then_some(history))
}

/// On success `history` holds the losing line.
fn refute<S>(
    cfg: &GameConfig,
    state: GameState,
    alice: S,
    history: &mut Vec<Ply>,
    safe: &mut HashSet<(Vec<ElementSet>, S)>,
) -> bool
where
    S: Strategy + Clone + Hash + Eq,
{
    match state.status(cfg) {
        Status::AliceWin => return false,
        Status::BobWin => return true,
        Status::Ongoing => {}
    }
    let key = (state.classes().to_vec(), alice);
    if safe.contains(&key) {
        return false;
    }
    let (_, alice) = &key;
    match state.mover() {
        Player::Alice => {
            let mut next_alice = alice.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let Some(mv) = next_alice.select(cfg, &state, history, &mut rng) else {
                return true;
            };
            let mut next = state.clone();
            if next.apply(cfg, mv).is_err() {
                history.push(Ply::new(Player::Alice, mv));
                return true;
            }
            history.push(Ply::new(Player::Alice, mv));
            if next_alice.check_invariants(cfg, &next).is_err() {
                return true;
            }
            if refute(cfg, next, next_alice, history, safe) {
                return true;
            }
            history.pop();
        }
        Player::Bob => {
            for mv in state.legal_moves(cfg) {
                let mut next = state.clone();
                next.apply(cfg, mv).expect("legal move applies");
                history.push(Ply::new(Player::Bob, mv));
                if refute(cfg, next, alice.clone(), history, safe) {
                    return true;
                }
                history.pop();
            }
        }
    }
    safe.insert(key);
    false
}
