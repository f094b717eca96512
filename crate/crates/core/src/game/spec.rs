//! JSON game descriptions and transcript replay.
//!
//! ```json
//! {"v":1,"matroid":{"type":"uniform","n":3,"rank":2},"colors":4,
//!  "multiplicity":1,"firstPlayer":"bob","lists":[[0,1],[1,2],[0,3]]}
//! ```
//!
//! `matroids` (one file per color) may replace `matroid` plus `colors`.
//! Colors and elements are zero based.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::play::{EndReason, Outcome, Transcript};
use super::{GameConfig, GameError, GameState, MoveError, Player};
use crate::matroid::spec::{MatroidFile, FORMAT_VERSION};
use crate::matroid::Matroid;
use crate::set::ColorSet;

fn default_version() -> u32 {
    FORMAT_VERSION
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameSpec {
    #[serde(default = "default_version")]
    pub v: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matroid: Option<MatroidFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matroids: Option<Vec<MatroidFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<usize>,
    #[serde(default = "one")]
    pub multiplicity: usize,
    #[serde(default)]
    pub first_player: Player,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<Vec<Vec<usize>>>,
}

impl GameSpec {
    pub fn new(matroid: MatroidFile, colors: usize) -> Self {
        Self {
            v: FORMAT_VERSION,
            matroid: Some(matroid),
            matroids: None,
            colors: Some(colors),
            multiplicity: 1,
            first_player: Player::Bob,
            lists: None,
        }
    }

    pub fn build(&self) -> Result<GameConfig, GameError> {
        if self.v != FORMAT_VERSION {
            return Err(GameError::Invalid(format!("unsupported format version {}", self.v)));
        }
        let cfg = match (&self.matroid, &self.matroids) {
            (Some(file), None) => {
                let colors = self
                    .colors
                    .ok_or_else(|| GameError::Invalid("`colors` is required with `matroid`".into()))?;
                GameConfig::new(file.load()?.matroid, colors)?
            }
            (None, Some(files)) => {
                if self.colors.is_some_and(|c| c != files.len()) {
                    return Err(GameError::Invalid(
                        "`colors` disagrees with the length of `matroids`".into(),
                    ));
                }
                let mut built: Vec<Arc<dyn Matroid>> = Vec::with_capacity(files.len());
                for (i, f) in files.iter().enumerate() {
                    built.push(match files[..i].iter().position(|g| g == f) {
                        Some(j) => built[j].clone(),
                        None => f.load()?.matroid,
                    });
                }
                GameConfig::per_color(built)?
            }
            _ => return Err(GameError::Invalid("give exactly one of `matroid` or `matroids`".into())),
        };
        let mut cfg = cfg
            .with_multiplicity(self.multiplicity)?
            .with_first_player(self.first_player);
        if let Some(lists) = &self.lists {
            cfg = cfg.with_lists(lists.iter().map(|l| ColorSet::from(l.as_slice())).collect())?;
        }
        Ok(cfg)
    }

    /// `None` when some matroid has no serializable description.
    pub fn from_config(cfg: &GameConfig) -> Option<Self> {
        let file = |c: usize| cfg.matroid(c).describe().map(MatroidFile::new);
        let shared = (0..cfg.colors()).all(|c| cfg.matroid_id(c) == cfg.matroid_id(0));
        let (matroid, matroids, colors) = if shared {
            (Some(file(0)?), None, Some(cfg.colors()))
        } else {
            (
                None,
                Some((0..cfg.colors()).map(file).collect::<Option<Vec<_>>>()?),
                None,
            )
        };
        Some(Self {
            v: FORMAT_VERSION,
            matroid,
            matroids,
            colors,
            multiplicity: cfg.multiplicity(),
            first_player: cfg.first_player(),
            lists: cfg.lists().map(|ls| ls.iter().map(ColorSet::to_vec).collect()),
        })
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("transcript carries no game description")]
    NoConfig,
    #[error(transparent)]
    Config(#[from] GameError),
    #[error("ply {ply}: {error}")]
    Move { ply: usize, error: MoveError },
    #[error("ply {ply} was recorded for {recorded}, but it was {expected}'s turn")]
    Turn {
        ply: usize,
        recorded: Player,
        expected: Player,
    },
    #[error("recorded outcome {recorded:?} differs from replayed {replayed:?}")]
    Outcome {
        recorded: Box<Outcome>,
        replayed: Box<Outcome>,
    },
}

impl Transcript {
    /// Replays against the embedded game description.
    pub fn replay(&self) -> Result<GameState, ReplayError> {
        let cfg = self.config.as_ref().ok_or(ReplayError::NoConfig)?.build()?;
        self.replay_on(&cfg)
    }

    /// Replays every ply and checks the recorded outcome.
    pub fn replay_on(&self, cfg: &GameConfig) -> Result<GameState, ReplayError> {
        let mut state = GameState::new(cfg);
        for (ply, p) in self.moves.iter().enumerate() {
            if p.player != state.mover() {
                return Err(ReplayError::Turn {
                    ply,
                    recorded: p.player,
                    expected: state.mover(),
                });
            }
            state
                .apply(cfg, p.mv())
                .map_err(|error| ReplayError::Move { ply, error })?;
        }
        let status = state.status(cfg);
        let consistent = match self.outcome.reason {
            EndReason::Forfeit => {
                let f = self.outcome.forfeit.as_ref();
                status.winner().is_none()
                    && f.is_some_and(|f| f.player == state.mover() && f.player.other() == self.outcome.winner)
                    && f.and_then(|f| f.attempted).is_none_or(|m| !state.is_legal(cfg, m))
            }
            _ => Outcome::from_status(status).as_ref() == Some(&self.outcome),
        };
        if consistent {
            Ok(state)
        } else {
            Err(ReplayError::Outcome {
                recorded: Box::new(self.outcome.clone()),
                replayed: Box::new(Outcome::from_status(status).unwrap_or_else(|| Outcome {
                    winner: state.mover().other(),
                    reason: EndReason::Forfeit,
                    forfeit: None,
                })),
            })
        }
    }
}
