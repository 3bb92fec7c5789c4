//! Game states, actions, legality checking, replay, and the rewrite from
//! pick/drop play to pure-move play.

use crate::error::Error;
use crate::grid::{pos, Configuration, Position};
use crate::oracle::{self, SearchLimits};
use crate::span::adjacent_set;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A board plus the number of coins currently held in hand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    pub board: Configuration,
    pub hand: u32,
}

impl GameState {
    pub fn new(board: Configuration, hand: u32) -> GameState {
        GameState { board, hand }
    }

    /// A board with nothing in hand.
    pub fn grounded(board: Configuration) -> GameState {
        GameState { board, hand: 0 }
    }
}

/// One atomic step of play. Moves slide a coin to a cell with two occupied
/// neighbors besides the mover; pick-ups are unrestricted; drops need two
/// occupied neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    Move { from: Position, to: Position },
    PickUp { at: Position },
    Drop { at: Position },
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Move { from, to } => write!(f, "mv {} {} {} {}", from.x, from.y, to.x, to.y),
            Action::PickUp { at } => write!(f, "up {} {}", at.x, at.y),
            Action::Drop { at } => write!(f, "dn {} {}", at.x, at.y),
        }
    }
}

/// An ordered list of actions.
pub type ActionSequence = Vec<Action>;

/// Serializes actions one per line in the `mv`/`up`/`dn` text format.
pub fn format_actions(seq: &[Action]) -> String {
    let mut out = String::new();
    for action in seq {
        out.push_str(&action.to_string());
        out.push('\n');
    }
    out
}

/// Parses the one-action-per-line text format. Blank lines and `#` comment
/// lines are skipped. Errors carry 1-based line and column numbers.
pub fn parse_actions(text: &str) -> Result<ActionSequence, Error> {
    let mut seq = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut words = raw.split_whitespace();
        let op = words.next().unwrap();
        let col_of = |word: &str| raw.find(word).map(|i| i + 1).unwrap_or(1);
        let parse_num = |w: Option<&str>, after: &str| -> Result<i32, Error> {
            let w = w.ok_or_else(|| Error::Parse {
                line,
                column: raw.trim_end().len() + 1,
                message: format!("expected a coordinate after `{after}`"),
            })?;
            w.parse().map_err(|_| Error::Parse {
                line,
                column: col_of(w),
                message: format!("`{w}` is not an integer"),
            })
        };
        let action = match op {
            "mv" => {
                let x1 = parse_num(words.next(), "mv")?;
                let y1 = parse_num(words.next(), "mv")?;
                let x2 = parse_num(words.next(), "mv")?;
                let y2 = parse_num(words.next(), "mv")?;
                Action::Move {
                    from: pos(x1, y1),
                    to: pos(x2, y2),
                }
            }
            "up" => {
                let x = parse_num(words.next(), "up")?;
                let y = parse_num(words.next(), "up")?;
                Action::PickUp { at: pos(x, y) }
            }
            "dn" => {
                let x = parse_num(words.next(), "dn")?;
                let y = parse_num(words.next(), "dn")?;
                Action::Drop { at: pos(x, y) }
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column: col_of(other),
                    message: format!("unknown action `{other}`"),
                })
            }
        };
        if let Some(junk) = words.next() {
            return Err(Error::Parse {
                line,
                column: col_of(junk),
                message: format!("unexpected trailing `{junk}`"),
            });
        }
        seq.push(action);
    }
    Ok(seq)
}

/// Whether `p` may receive a coin: `p` must have at least two occupied
/// neighbors not counting `mover` (the coin about to slide there, excluded
/// because it cannot support its own destination).
pub fn is_legal_destination(c: &Configuration, mover: Option<Position>, p: Position) -> bool {
    let support = p
        .neighbors()
        .iter()
        .filter(|q| c.contains(**q) && Some(**q) != mover)
        .count();
    support >= 2
}

/// Every legal move `(from, to)` on the board, sorted. Destinations always
/// lie inside the span of the board, since two occupied neighbors put a cell
/// in the span by definition.
pub fn legal_moves(c: &Configuration) -> Vec<(Position, Position)> {
    let mut out = Vec::new();
    for to in adjacent_set(c) {
        for from in c.iter() {
            if is_legal_destination(c, Some(from), to) {
                out.push((from, to));
            }
        }
    }
    out.sort();
    out
}

/// If `b` is exactly one legal move away from `a`, returns that move.
/// The boards must have equal size and differ in exactly one cell each way,
/// with the vacated coin allowed to slide to the new cell.
pub(crate) fn single_move_between(
    a: &Configuration,
    b: &Configuration,
) -> Option<(Position, Position)> {
    if a.len() != b.len() {
        return None;
    }
    let gone: Vec<Position> = a.difference(b).iter().collect();
    let new: Vec<Position> = b.difference(a).iter().collect();
    if gone.len() != 1 || new.len() != 1 {
        return None;
    }
    let (from, to) = (gone[0], new[0]);
    is_legal_destination(a, Some(from), to).then_some((from, to))
}

/// Applies one action, returning the successor state or the reason it is
/// illegal. The input state is untouched on error.
pub fn apply(state: &GameState, action: Action) -> Result<GameState, Error> {
    let mut next = state.clone();
    match action {
        Action::Move { from, to } => {
            if !next.board.contains(from) {
                return Err(Error::NotOccupied);
            }
            if from == to || next.board.contains(to) {
                return Err(Error::IllegalMove);
            }
            if !is_legal_destination(&next.board, Some(from), to) {
                return Err(Error::IllegalMove);
            }
            next.board.remove(from);
            next.board.insert(to);
        }
        Action::PickUp { at } => {
            if !next.board.contains(at) {
                return Err(Error::NotOccupied);
            }
            next.board.remove(at);
            next.hand += 1;
        }
        Action::Drop { at } => {
            if next.hand == 0 {
                return Err(Error::EmptyHand);
            }
            if next.board.contains(at) {
                return Err(Error::IllegalMove);
            }
            if !is_legal_destination(&next.board, None, at) {
                return Err(Error::DropViolates2Adjacency);
            }
            next.board.insert(at);
            next.hand -= 1;
        }
    }
    Ok(next)
}

/// Replays a whole sequence from `initial`. Errors from individual actions
/// are wrapped with their index; if `expected_final` is given, the replay
/// must land exactly on it.
pub fn validate_sequence(
    initial: &GameState,
    seq: &[Action],
    expected_final: Option<&GameState>,
) -> Result<GameState, Error> {
    let mut state = initial.clone();
    for (i, &action) in seq.iter().enumerate() {
        state = apply(&state, action).map_err(|e| e.at_index(i))?;
    }
    if let Some(expected) = expected_final {
        if &state != expected {
            return Err(Error::FinalMismatch);
        }
    }
    Ok(state)
}

/// Rewrites a balanced pick/drop sequence into pure moves with the same
/// start and end boards. Each drop is matched with the most recent
/// unmatched pick-up and becomes a single move; a drop onto a cell whose
/// coin is still pending cancels that pick-up outright. Deferring pick-ups
/// only ever adds coins to the board, so support counts never drop below
/// what the original play saw — the rewrite stays legal unless a move's
/// destination is blocked by a deferred coin, in which case a bounded
/// breadth-first search supplies a pure-move route instead (`exhausted` if
/// it runs out of budget).
pub fn moves_only(initial: &Configuration, seq: &[Action]) -> Result<ActionSequence, Error> {
    let start = GameState::grounded(initial.clone());
    let end = validate_sequence(&start, seq, None)?;
    if end.hand != 0 {
        return Err(Error::UnbalancedHand);
    }

    let mut pending: Vec<Position> = Vec::new();
    let mut out: Vec<Action> = Vec::new();
    let mut blocked = false;
    for &action in seq {
        match action {
            Action::PickUp { at } => pending.push(at),
            Action::Drop { at } => {
                if let Some(i) = pending.iter().rposition(|&p| p == at) {
                    // The coin never left in the rewritten play.
                    pending.remove(i);
                } else {
                    let from = pending.pop().ok_or(Error::UnbalancedHand)?;
                    out.push(Action::Move { from, to: at });
                }
            }
            Action::Move { from, to } => {
                if pending.contains(&to) {
                    blocked = true;
                    break;
                }
                out.push(Action::Move { from, to });
            }
        }
    }

    if !blocked {
        validate_sequence(
            &GameState::grounded(initial.clone()),
            &out,
            Some(&GameState::grounded(end.board.clone())),
        )?;
        return Ok(out);
    }

    // Fallback: search for any pure-move route between the two boards.
    match oracle::shortest_solution(initial, &end.board, &SearchLimits::default())? {
        Some(path) => Ok(path),
        None => Err(Error::Exhausted),
    }
}

/// Convenience: state after applying `seq` to a grounded board.
pub fn replay_board(initial: &Configuration, seq: &[Action]) -> Result<Configuration, Error> {
    Ok(validate_sequence(&GameState::grounded(initial.clone()), seq, None)?.board)
}

/// The action-by-action inverse: reversed order, moves turned around,
/// pick-ups and drops exchanged. The result is only legal when every step
/// of `seq` can be undone in place, which the flip and leapfrog builders
/// arrange; trims cannot be inverted this way.
pub(crate) fn invert_actions(seq: &[Action]) -> ActionSequence {
    seq.iter()
        .rev()
        .map(|&a| match a {
            Action::Move { from, to } => Action::Move { from: to, to: from },
            Action::PickUp { at } => Action::Drop { at },
            Action::Drop { at } => Action::PickUp { at },
        })
        .collect()
}

// Internal helper for subroutine construction: applies and panics on error,
// which tests convert into failures immediately.
pub(crate) fn apply_all(state: &mut GameState, seq: &[Action]) -> Result<(), Error> {
    for (i, &a) in seq.iter().enumerate() {
        *state = apply(state, a).map_err(|e| e.at_index(i))?;
    }
    Ok(())
}

/// Checks that the span of the final board of every prefix never grows:
/// spans only shrink or stay equal along legal play. Used in tests.
#[cfg(test)]
pub(crate) fn span_never_grows(initial: &Configuration, seq: &[Action]) -> bool {
    let mut state = GameState::grounded(initial.clone());
    let mut prev_span = crate::span::span(&state.board);
    for &a in seq {
        state = match apply(&state, a) {
            Ok(s) => s,
            Err(_) => return false,
        };
        let cur = crate::span::span(&state.board);
        if !cur.is_subset(&prev_span) {
            return false;
        }
        prev_span = cur;
    }
    true
}
