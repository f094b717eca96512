//! Players for the coloring game.
//!
//! [`AliceCovering`] wins whenever a `2k`-covering exists; [`BobMk`] plays
//! the lower-bound construction on `M_k`. Baselines and the exact solver
//! round out the set for tournaments and cross-checks.

mod alice;
mod bob_mk;
mod mk;
mod solver;

use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::game::{GameConfig, GameState, Move, Ply, Strategy};
use crate::union::{CoveringError, ViolationCertificate};

pub use alice::AliceCovering;
pub use bob_mk::{BobMk, BobMkCounters};
pub use mk::{build_mk, MkError, MkSpec};
pub use solver::{
    find_refutation, game_chromatic_number, solve_exact, solve_with, ExactStrategy, Solution, SolveOptions,
    SolverError, DEFAULT_MAX_COLORS, DEFAULT_MAX_ELEMENTS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("unknown strategy {0:?}")]
    Unknown(String),
    #[error("no 2k-covering exists; violated set {:?}", .0.set)]
    NoCovering(ViolationCertificate),
    #[error("invalid covering: {0}")]
    Covering(#[from] CoveringError),
    #[error("strategy does not fit this game: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Names accepted by [`by_name`].
pub const STRATEGY_NAMES: &[&str] = &[
    "alice-covering",
    "bob-mk",
    "greedy",
    "random",
    "random:<seed>",
    "spiteful",
    "exact",
];

/// Builds a strategy from its command-line name for the game `cfg`.
pub fn by_name(name: &str, cfg: &GameConfig) -> Result<Box<dyn Strategy>, StrategyError> {
    Ok(match name {
        "alice-covering" => Box::new(AliceCovering::for_config(cfg)?),
        "bob-mk" => Box::new(BobMk::for_config(cfg)?),
        "greedy" => Box::new(Greedy),
        "spiteful" => Box::new(Spiteful),
        "random" => Box::new(RandomStrategy::shared()),
        "exact" => Box::new(ExactStrategy::new(cfg)?),
        other => match other.strip_prefix("random:").map(str::parse::<u64>) {
            Some(Ok(seed)) => Box::new(RandomStrategy::seeded(seed)),
            _ => return Err(StrategyError::Unknown(other.to_string())),
        },
    })
}

/// First legal move in (element, color) order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Greedy;

impl Strategy for Greedy {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn select(&mut self, cfg: &GameConfig, state: &GameState, _: &[Ply], _: &mut dyn RngCore) -> Option<Move> {
        state.legal_moves(cfg).first().copied()
    }
}

/// Uniform over legal moves. Seeded instances carry their own generator;
/// [`RandomStrategy::shared`] draws from the engine's.
#[derive(Debug, Clone)]
pub struct RandomStrategy {
    own: Option<(u64, ChaCha8Rng)>,
}

impl RandomStrategy {
    pub fn seeded(seed: u64) -> Self {
        Self {
            own: Some((seed, ChaCha8Rng::seed_from_u64(seed))),
        }
    }

    pub fn shared() -> Self {
        Self { own: None }
    }
}

impl Strategy for RandomStrategy {
    fn name(&self) -> String {
        match &self.own {
            Some((seed, _)) => format!("random:{seed}"),
            None => "random".into(),
        }
    }

    fn select(&mut self, cfg: &GameConfig, state: &GameState, _: &[Ply], rng: &mut dyn RngCore) -> Option<Move> {
        let moves = state.legal_moves(cfg);
        match &mut self.own {
            Some((_, own)) => moves.choose(own).copied(),
            None => moves.choose(rng).copied(),
        }
    }
}

/// Minimizes the opponent's number of legal replies; ties go to the
/// lowest move.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Spiteful;

impl Strategy for Spiteful {
    fn name(&self) -> String {
        "spiteful".into()
    }

    fn select(&mut self, cfg: &GameConfig, state: &GameState, _: &[Ply], _: &mut dyn RngCore) -> Option<Move> {
        state.legal_moves(cfg).into_iter().min_by_key(|&mv| {
            let mut next = state.clone();
            next.apply(cfg, mv).expect("legal move applies");
            next.legal_moves(cfg).len()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play, Player};
    use crate::matroid::{Matroid, UniformMatroid};
    use std::sync::Arc;

    fn u23(d: usize) -> GameConfig {
        let m: Arc<dyn Matroid> = Arc::new(UniformMatroid::new(3, 2).unwrap());
        GameConfig::new(m, d).unwrap()
    }

    #[test]
    fn names_resolve() {
        let cfg = u23(4);
        for name in ["alice-covering", "greedy", "random", "random:7", "spiteful", "exact"] {
            assert_eq!(by_name(name, &cfg).unwrap().name(), name);
        }
        assert!(matches!(by_name("random:x", &cfg), Err(StrategyError::Unknown(_))));
        assert!(matches!(by_name("bob-mk", &cfg), Err(StrategyError::Unsupported(_))));
    }

    #[test]
    fn baselines_are_reproducible_and_legal() {
        let cfg = u23(2);
        for seed in 0..20 {
            let a = play(
                &cfg,
                &mut RandomStrategy::seeded(seed),
                &mut RandomStrategy::shared(),
                seed,
            );
            let b = play(
                &cfg,
                &mut RandomStrategy::seeded(seed),
                &mut RandomStrategy::shared(),
                seed,
            );
            assert_eq!(a, b);
            assert!(a.moves.len() <= 3);
            assert!(a.outcome.forfeit.is_none());
            a.replay().unwrap();
        }
        let g1 = play(&cfg, &mut Greedy, &mut Spiteful, 0);
        let g2 = play(&cfg, &mut Greedy, &mut Spiteful, 99);
        assert_eq!(g1.moves, g2.moves);
    }

    #[test]
    fn spiteful_blocks_u12() {
        // on U_{1,2} with one color the first move already strands the other element
        let m: Arc<dyn Matroid> = Arc::new(UniformMatroid::new(2, 1).unwrap());
        let cfg = GameConfig::new(m, 1).unwrap();
        let t = play(&cfg, &mut Greedy, &mut Spiteful, 0);
        assert_eq!(t.winner(), Player::Bob);
    }
}
