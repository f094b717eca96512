//! The matroid coloring game on `M_1..M_d`.
//!
//! Colors are `0..d`; color `i` lives in matroid `M_i`. Each element must
//! end up with `k` distinct colors (`k = 1` is the ordinary game, larger `k`
//! the fractional one), optionally drawn from a per-element list. Alice wins
//! once every element holds `k` colors; Bob wins as soon as the partial
//! coloring cannot be extended.

mod play;
mod spec;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matroid::{Matroid, MatroidError};
use crate::set::{ColorSet, ElementSet};

pub use play::{play, play_with, EndReason, Forfeit, Outcome, PlayOptions, Ply, Snapshot, Strategy, Transcript};
pub use spec::{GameSpec, ReplayError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Alice,
    #[default]
    Bob,
}

impl Player {
    pub fn other(self) -> Self {
        match self {
            Self::Alice => Self::Bob,
            Self::Bob => Self::Alice,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Alice => "alice",
            Self::Bob => "bob",
        })
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "alice" => Ok(Self::Alice),
            "bob" => Ok(Self::Bob),
            other => Err(format!("unknown player {other:?}; expected alice or bob")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub element: usize,
    pub color: usize,
}

impl Move {
    pub fn new(element: usize, color: usize) -> Self {
        Self { element, color }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.element, self.color)
    }
}

/// Why a move was rejected. [`MoveError::reason`] gives a stable code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("element {element} or color {color} out of range")]
    Range { element: usize, color: usize },
    #[error("color {color} is not in the list of element {element}")]
    List { element: usize, color: usize },
    #[error("element {element} already has color {color}")]
    Repeat { element: usize, color: usize },
    #[error("element {element} already has all its colors")]
    Capacity { element: usize },
    #[error("adding element {element} makes color class {color} dependent")]
    Dependence { element: usize, color: usize },
    #[error("the game is over")]
    Finished,
}

impl MoveError {
    pub fn reason(&self) -> &'static str {
        match self {
            Self::Range { .. } => "range",
            Self::List { .. } => "list",
            Self::Repeat { .. } => "repeat",
            Self::Capacity { .. } => "capacity",
            Self::Dependence { .. } => "dependence",
            Self::Finished => "finished",
        }
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("a game needs at least one color")]
    NoColors,
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("matroid for color {color} has {found} elements, expected {expected}")]
    GroundMismatch {
        color: usize,
        expected: usize,
        found: usize,
    },
    #[error("{found} lists for {expected} elements")]
    ListLength { expected: usize, found: usize },
    #[error("list of element {element} names color {color}, but there are only {colors}")]
    ListColor {
        element: usize,
        color: usize,
        colors: usize,
    },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Spec(#[from] crate::matroid::spec::SpecError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Ongoing,
    AliceWin,
    BobWin,
}

impl Status {
    pub fn winner(self) -> Option<Player> {
        match self {
            Self::Ongoing => None,
            Self::AliceWin => Some(Player::Alice),
            Self::BobWin => Some(Player::Bob),
        }
    }
}

/// Rules of one game. Immutable once built; cheap to clone.
#[derive(Debug, Clone)]
pub struct GameConfig {
    matroids: Vec<Arc<dyn Matroid>>,
    /// Colors with equal ids use the same matroid.
    matroid_ids: Vec<usize>,
    allowed: Option<Vec<ColorSet>>,
    multiplicity: usize,
    first_player: Player,
}

impl GameConfig {
    /// `d` colors, all on `m`; multiplicity 1, Bob first.
    pub fn new(m: Arc<dyn Matroid>, colors: usize) -> Result<Self, GameError> {
        if colors == 0 {
            return Err(GameError::NoColors);
        }
        Ok(Self {
            matroids: vec![m; colors],
            matroid_ids: vec![0; colors],
            allowed: None,
            multiplicity: 1,
            first_player: Player::Bob,
        })
    }

    /// One matroid per color. Colors sharing an `Arc` share an id.
    pub fn per_color(matroids: Vec<Arc<dyn Matroid>>) -> Result<Self, GameError> {
        let first = matroids.first().ok_or(GameError::NoColors)?;
        let n = first.ground_size();
        let mut ids = Vec::with_capacity(matroids.len());
        for (i, m) in matroids.iter().enumerate() {
            if m.ground_size() != n {
                return Err(GameError::GroundMismatch {
                    color: i,
                    expected: n,
                    found: m.ground_size(),
                });
            }
            let id = matroids[..i]
                .iter()
                .position(|o| Arc::ptr_eq(o, m))
                .map_or(i, |j| ids[j]);
            ids.push(id);
        }
        Ok(Self {
            matroids,
            matroid_ids: ids,
            allowed: None,
            multiplicity: 1,
            first_player: Player::Bob,
        })
    }

    pub fn with_multiplicity(mut self, k: usize) -> Result<Self, GameError> {
        if k == 0 {
            return Err(GameError::ZeroMultiplicity);
        }
        self.multiplicity = k;
        Ok(self)
    }

    /// Restricts element `e` to the colors in `lists[e]`.
    pub fn with_lists(mut self, lists: Vec<ColorSet>) -> Result<Self, GameError> {
        let n = self.ground_size();
        if lists.len() != n {
            return Err(GameError::ListLength {
                expected: n,
                found: lists.len(),
            });
        }
        for (e, l) in lists.iter().enumerate() {
            if let Some(c) = l.max().filter(|&c| c >= self.colors()) {
                return Err(GameError::ListColor {
                    element: e,
                    color: c,
                    colors: self.colors(),
                });
            }
        }
        self.allowed = Some(lists);
        Ok(self)
    }

    pub fn with_first_player(mut self, p: Player) -> Self {
        self.first_player = p;
        self
    }

    pub fn colors(&self) -> usize {
        self.matroids.len()
    }

    pub fn ground_size(&self) -> usize {
        self.matroids[0].ground_size()
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn first_player(&self) -> Player {
        self.first_player
    }

    pub fn matroid(&self, color: usize) -> &dyn Matroid {
        self.matroids[color].as_ref()
    }

    pub fn matroids(&self) -> &[Arc<dyn Matroid>] {
        &self.matroids
    }

    pub fn matroid_id(&self, color: usize) -> usize {
        self.matroid_ids[color]
    }

    pub fn lists(&self) -> Option<&[ColorSet]> {
        self.allowed.as_deref()
    }

    pub fn is_allowed(&self, e: usize, color: usize) -> bool {
        self.allowed.as_ref().is_none_or(|a| a[e].contains(color))
    }
}

/// Colored sets `U_i`, acquired colors per element, and whose turn it is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameState {
    classes: Vec<ElementSet>,
    acquired: Vec<ColorSet>,
    mover: Player,
    /// `addable[i]`: elements `e ∉ U_i` with `U_i + e` independent in `M_i`.
    #[serde(skip)]
    addable: Vec<ElementSet>,
}

impl GameState {
    pub fn new(cfg: &GameConfig) -> Self {
        let n = cfg.ground_size();
        let addable = (0..cfg.colors())
            .map(|i| cfg.matroid(i).view(&ElementSet::new()).addable(n))
            .collect();
        Self {
            classes: vec![ElementSet::new(); cfg.colors()],
            acquired: vec![ColorSet::new(); n],
            mover: cfg.first_player(),
            addable,
        }
    }

    /// Replays `moves` from the initial position.
    pub fn from_moves(cfg: &GameConfig, moves: &[Move]) -> Result<Self, (usize, MoveError)> {
        let mut s = Self::new(cfg);
        for (i, &m) in moves.iter().enumerate() {
            s.apply(cfg, m).map_err(|e| (i, e))?;
        }
        Ok(s)
    }

    pub fn classes(&self) -> &[ElementSet] {
        &self.classes
    }

    pub fn class(&self, color: usize) -> &ElementSet {
        &self.classes[color]
    }

    pub fn acquired(&self, e: usize) -> &ColorSet {
        &self.acquired[e]
    }

    pub fn mover(&self) -> Player {
        self.mover
    }

    pub fn plies(&self) -> usize {
        self.acquired.iter().map(ColorSet::len).sum()
    }

    pub fn check(&self, cfg: &GameConfig, mv: Move) -> Result<(), MoveError> {
        let Move { element: e, color: c } = mv;
        if e >= self.acquired.len() || c >= self.classes.len() {
            return Err(MoveError::Range { element: e, color: c });
        }
        if !cfg.is_allowed(e, c) {
            return Err(MoveError::List { element: e, color: c });
        }
        if self.acquired[e].contains(c) {
            return Err(MoveError::Repeat { element: e, color: c });
        }
        if self.acquired[e].len() >= cfg.multiplicity() {
            return Err(MoveError::Capacity { element: e });
        }
        if !self.addable[c].contains(e) {
            return Err(MoveError::Dependence { element: e, color: c });
        }
        Ok(())
    }

    pub fn is_legal(&self, cfg: &GameConfig, mv: Move) -> bool {
        self.check(cfg, mv).is_ok()
    }

    /// Applies a legal move and passes the turn; illegal moves leave the
    /// state untouched.
    pub fn apply(&mut self, cfg: &GameConfig, mv: Move) -> Result<(), MoveError> {
        self.check(cfg, mv)?;
        let Move { element: e, color: c } = mv;
        self.classes[c].insert(e);
        self.acquired[e].insert(c);
        self.addable[c] = cfg.matroid(c).view(&self.classes[c]).addable(cfg.ground_size());
        self.mover = self.mover.other();
        Ok(())
    }

    /// Legal moves in element-major, color-minor order.
    pub fn legal_moves(&self, cfg: &GameConfig) -> Vec<Move> {
        let mut out = Vec::new();
        for e in 0..self.acquired.len() {
            if self.acquired[e].len() >= cfg.multiplicity() {
                continue;
            }
            for c in 0..self.classes.len() {
                if cfg.is_allowed(e, c) && !self.acquired[e].contains(c) && self.addable[c].contains(e) {
                    out.push(Move::new(e, c));
                }
            }
        }
        out
    }

    pub fn has_legal_move(&self, cfg: &GameConfig) -> bool {
        (0..self.acquired.len()).any(|e| {
            self.acquired[e].len() < cfg.multiplicity()
                && (0..self.classes.len())
                    .any(|c| cfg.is_allowed(e, c) && !self.acquired[e].contains(c) && self.addable[c].contains(e))
        })
    }

    pub fn status(&self, cfg: &GameConfig) -> Status {
        if self.acquired.iter().all(|a| a.len() == cfg.multiplicity()) {
            Status::AliceWin
        } else if self.has_legal_move(cfg) {
            Status::Ongoing
        } else {
            Status::BobWin
        }
    }

    /// Elements still short of `k` colors.
    pub fn unfinished(&self, cfg: &GameConfig) -> ElementSet {
        (0..self.acquired.len())
            .filter(|&e| self.acquired[e].len() < cfg.multiplicity())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::UniformMatroid;

    fn u(n: usize, r: usize) -> Arc<dyn Matroid> {
        Arc::new(UniformMatroid::new(n, r).unwrap())
    }

    #[test]
    fn fresh_game_all_moves() {
        let cfg = GameConfig::new(u(3, 2), 1).unwrap();
        let s = GameState::new(&cfg);
        assert_eq!(s.legal_moves(&cfg), (0..3).map(|e| Move::new(e, 0)).collect::<Vec<_>>());
        assert_eq!(s.status(&cfg), Status::Ongoing);
        assert_eq!(s.mover(), Player::Bob);
    }

    #[test]
    fn u23_third_element_forced_to_second_color() {
        let cfg = GameConfig::new(u(3, 2), 2).unwrap();
        let s = GameState::from_moves(&cfg, &[Move::new(0, 0), Move::new(1, 0)]).unwrap();
        assert_eq!(s.legal_moves(&cfg), vec![Move::new(2, 1)]);
        assert_eq!(s.mover(), Player::Bob);
    }

    #[test]
    fn statuses() {
        let cfg = GameConfig::new(u(2, 1), 1).unwrap();
        let mut s = GameState::new(&cfg);
        s.apply(&cfg, Move::new(0, 0)).unwrap();
        assert_eq!(s.status(&cfg), Status::BobWin);

        let cfg = GameConfig::new(u(2, 1), 2).unwrap();
        let s = GameState::from_moves(&cfg, &[Move::new(0, 0), Move::new(1, 1)]).unwrap();
        assert_eq!(s.status(&cfg), Status::AliceWin);
        assert!(s.legal_moves(&cfg).is_empty());
    }

    #[test]
    fn rejection_reasons() {
        let cfg = GameConfig::new(u(3, 1), 2)
            .unwrap()
            .with_lists(vec![
                ColorSet::from([0]),
                ColorSet::from([0, 1]),
                ColorSet::from([0, 1]),
            ])
            .unwrap();
        let mut s = GameState::new(&cfg);
        s.apply(&cfg, Move::new(1, 0)).unwrap();
        let before = s.clone();
        let reason = |s: &GameState, e, c| s.check(&cfg, Move::new(e, c)).unwrap_err().reason();
        assert_eq!(reason(&s, 0, 1), "list");
        assert_eq!(reason(&s, 1, 0), "repeat");
        assert_eq!(reason(&s, 1, 1), "capacity");
        assert_eq!(reason(&s, 2, 0), "dependence");
        assert_eq!(reason(&s, 3, 0), "range");
        assert!(s.apply(&cfg, Move::new(2, 0)).is_err());
        assert_eq!(s, before);
    }

    #[test]
    fn config_validation() {
        assert!(matches!(GameConfig::new(u(2, 1), 0), Err(GameError::NoColors)));
        assert!(matches!(
            GameConfig::new(u(2, 1), 1).unwrap().with_multiplicity(0),
            Err(GameError::ZeroMultiplicity)
        ));
        assert!(matches!(
            GameConfig::new(u(2, 1), 1)
                .unwrap()
                .with_lists(vec![ColorSet::from([1]), ColorSet::new()]),
            Err(GameError::ListColor { .. })
        ));
        assert!(matches!(
            GameConfig::per_color(vec![u(2, 1), u(3, 1)]),
            Err(GameError::GroundMismatch { .. })
        ));
        let shared = u(2, 1);
        let cfg = GameConfig::per_color(vec![shared.clone(), u(2, 1), shared]).unwrap();
        assert_eq!((0..3).map(|i| cfg.matroid_id(i)).collect::<Vec<_>>(), vec![0, 1, 0]);
    }

    #[test]
    fn fractional_capacity() {
        let cfg = GameConfig::new(u(3, 2), 3).unwrap().with_multiplicity(2).unwrap();
        let s = GameState::from_moves(&cfg, &[Move::new(0, 0), Move::new(0, 1)]).unwrap();
        assert!(s.legal_moves(&cfg).iter().all(|m| m.element != 0));
    }
}
