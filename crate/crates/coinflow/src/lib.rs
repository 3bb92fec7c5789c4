//! Deciding, solving, and certifying coin-moving puzzles on the square grid.
//!
//! Coins occupy distinct cells of the unbounded square grid. A *move* slides
//! one coin to a free cell that has at least two occupied orthogonal
//! neighbors besides the moving coin. In the relaxed pick/drop game, coins
//! may also be picked up (freely) and dropped (onto cells with two occupied
//! neighbors); both games reach exactly the same boards from hand-empty
//! states, and this crate converts between the two.
//!
//! The library provides:
//! - the board model and move engine ([`grid`], [`engine`]);
//! - the span invariant and its structure theory ([`span`]);
//! - exhaustive bounded search as ground truth ([`oracle`]);
//! - canonical configurations and shape subroutines ([`canonical`]);
//! - constructive solvers and the dispatching [`solver::solve`];
//! - machine-checkable infeasibility certificates ([`infeasibility`]);
//! - the poking game used to settle near-minimum puzzles ([`poking`]);
//! - puzzle file parsing and rendering ([`puzzle`], [`render`]).

mod bitboard;
mod error;
mod isometry;
mod search;
mod words;

pub mod canonical;
pub mod engine;
pub mod grid;
pub mod infeasibility;
pub mod oracle;
pub mod poking;
pub mod puzzle;
pub mod render;
pub mod solver;
pub mod span;

pub use engine::{Action, ActionSequence, GameState};
pub use error::Error;
pub use grid::{dist, enclosing_rectangle, normalize_translation, pos, Configuration, Position, Rectangle};
pub use span::{span, span_components, SpanDecomposition};
