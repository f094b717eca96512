use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{GameConfig, GameSpec, GameState, Move, Player, Status};

/// A player's decision procedure. Any memory lives inside the implementor;
/// the engine only calls [`Strategy::select`] on the mover's turn.
pub trait Strategy: Send {
    fn name(&self) -> String;

    /// Picks a move for `state.mover()`. `history` holds every ply so far,
    /// including the opponent's latest. Returning `None` forfeits.
    fn select(&mut self, cfg: &GameConfig, state: &GameState, history: &[Ply], rng: &mut dyn RngCore) -> Option<Move>;

    /// Internal bookkeeping for display and debugging.
    fn snapshot(&self) -> Option<serde_json::Value> {
        None
    }

    /// Checked by the engine right after this strategy's own moves.
    fn check_invariants(&self, _cfg: &GameConfig, _state: &GameState) -> Result<(), String> {
        Ok(())
    }

    /// Notes about departures from the strategy's intended plan.
    fn flags(&self) -> Vec<String> {
        Vec::new()
    }
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn select(&mut self, cfg: &GameConfig, state: &GameState, history: &[Ply], rng: &mut dyn RngCore) -> Option<Move> {
        (**self).select(cfg, state, history, rng)
    }
    fn snapshot(&self) -> Option<serde_json::Value> {
        (**self).snapshot()
    }
    fn check_invariants(&self, cfg: &GameConfig, state: &GameState) -> Result<(), String> {
        (**self).check_invariants(cfg, state)
    }
    fn flags(&self) -> Vec<String> {
        (**self).flags()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ply {
    pub player: Player,
    pub e: usize,
    pub color: usize,
}

impl Ply {
    pub fn new(player: Player, mv: Move) -> Self {
        Self {
            player,
            e: mv.element,
            color: mv.color,
        }
    }

    pub fn mv(&self) -> Move {
        Move::new(self.e, self.color)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndReason {
    /// Every element holds all its colors.
    Complete,
    /// No legal move remains.
    Stuck,
    /// A strategy produced an illegal move or none at all.
    Forfeit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Forfeit {
    pub player: Player,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempted: Option<Move>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub winner: Player,
    pub reason: EndReason,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forfeit: Option<Forfeit>,
}

impl Outcome {
    pub fn from_status(status: Status) -> Option<Self> {
        let winner = status.winner()?;
        Some(Self {
            winner,
            reason: if winner == Player::Alice {
                EndReason::Complete
            } else {
                EndReason::Stuck
            },
            forfeit: None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    /// Number of plies played when the snapshot was taken.
    pub ply: usize,
    pub player: Player,
    pub data: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub ply: usize,
    pub player: Player,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<GameSpec>,
    #[serde(default)]
    pub alice: String,
    #[serde(default)]
    pub bob: String,
    #[serde(default)]
    pub seed: u64,
    pub moves: Vec<Ply>,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub snapshots: Vec<Snapshot>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl Transcript {
    pub fn winner(&self) -> Player {
        self.outcome.winner
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PlayOptions {
    /// Call each strategy's invariant check after its own moves.
    pub check_invariants: bool,
    /// Record the mover's snapshot after every ply.
    pub snapshots: bool,
}

impl Default for PlayOptions {
    fn default() -> Self {
        Self {
            check_invariants: true,
            snapshots: false,
        }
    }
}

pub fn play(cfg: &GameConfig, alice: &mut dyn Strategy, bob: &mut dyn Strategy, seed: u64) -> Transcript {
    play_with(cfg, alice, bob, seed, PlayOptions::default())
}

/// Runs one game to completion. Deterministic given `seed` and
/// deterministic strategies.
pub fn play_with(
    cfg: &GameConfig,
    alice: &mut dyn Strategy,
    bob: &mut dyn Strategy,
    seed: u64,
    opts: PlayOptions,
) -> Transcript {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = GameState::new(cfg);
    let mut moves = Vec::new();
    let mut snapshots = Vec::new();
    let mut violations = Vec::new();

    let outcome = loop {
        if let Some(outcome) = Outcome::from_status(state.status(cfg)) {
            break outcome;
        }
        let player = state.mover();
        let strategy: &mut dyn Strategy = match player {
            Player::Alice => &mut *alice,
            Player::Bob => &mut *bob,
        };
        let choice = strategy.select(cfg, &state, &moves, &mut rng);
        let applied = match choice {
            Some(mv) => state.apply(cfg, mv).map_err(|e| e.reason().to_string()),
            None => Err("no_move".to_string()),
        };
        if let Err(reason) = applied {
            break Outcome {
                winner: player.other(),
                reason: EndReason::Forfeit,
                forfeit: Some(Forfeit {
                    player,
                    attempted: choice,
                    reason,
                }),
            };
        }
        moves.push(Ply::new(player, choice.expect("applied move exists")));
        if opts.check_invariants {
            if let Err(message) = strategy.check_invariants(cfg, &state) {
                violations.push(Violation {
                    ply: moves.len(),
                    player,
                    message,
                });
            }
        }
        if opts.snapshots {
            if let Some(data) = strategy.snapshot() {
                snapshots.push(Snapshot {
                    ply: moves.len(),
                    player,
                    data,
                });
            }
        }
    };

    let mut flags = alice.flags();
    flags.extend(bob.flags());
    Transcript {
        config: GameSpec::from_config(cfg),
        alice: alice.name(),
        bob: bob.name(),
        seed,
        moves,
        outcome,
        snapshots,
        violations,
        flags,
    }
}
