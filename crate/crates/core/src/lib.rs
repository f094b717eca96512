//! Matroid coloring games.
//!
//! - [`matroid`]: independence oracles for uniform, graphic, transversal and
//!   explicit matroids, minors, and JSON/graph ingestion.
//! - [`union`]: matroid partition, `W`-coverings with violation
//!   certificates, chromatic and fractional chromatic numbers.
//! - [`list`]: coloring from lists and the basis-exchange reductions built
//!   on it.
//! - [`game`]: the coloring game state machine, transcripts and replay.
//! - [`strategy`]: the covering strategy for Alice, the `M_k` strategy for
//!   Bob, baselines and an exhaustive solver.

pub mod game;
pub mod graphs;
pub mod list;
pub mod matroid;
pub mod set;
pub mod strategy;
pub mod union;

pub use game::{GameConfig, GameSpec, GameState, Move, MoveError, Player, Status, Strategy, Transcript};
pub use matroid::{Matroid, MatroidError, MatroidExt};
pub use set::{ColorSet, ElementSet};
