//! Best-first planning between two exact game states. Used to realize the
//! canonicalization contract and the sweep builder, where reachability is
//! known on mathematical grounds and only a witness sequence is needed.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::engine::{apply, legal_moves, Action, ActionSequence, GameState};
use crate::error::Error;
use crate::span::{adjacent_set, span};

/// Searches for an action sequence taking `start` to exactly `goal` (board
/// and hand). Drops are confined to the span closure, so the search never
/// leaves the start state's span. Exploration is weighted best-first on
/// path length plus twice an admissible distance estimate; the weighting
/// trades optimality for speed, which is fine because callers only need
/// existence.
///
/// Errors with `search_budget_exceeded` after `max_nodes` expansions, or
/// `not_reachable` when the whole (finite) space is exhausted first.
pub(crate) fn plan_to_state(
    start: &GameState,
    goal: &GameState,
    max_nodes: usize,
) -> Result<ActionSequence, Error> {
    if start.board.len() as u64 + u64::from(start.hand)
        != goal.board.len() as u64 + u64::from(goal.hand)
    {
        return Err(Error::PreconditionViolated);
    }
    if start == goal {
        return Ok(Vec::new());
    }

    let goal_span = span(&goal.board);
    let mut open: BinaryHeap<(Reverse<u64>, u32, u32)> = BinaryHeap::new();
    let mut info: HashMap<GameState, (u32, Option<(u32, Action)>)> = HashMap::new();
    let mut by_id: Vec<GameState> = Vec::new();

    info.insert(start.clone(), (0, None));
    by_id.push(start.clone());
    open.push((Reverse(u64::from(2 * estimate(start, goal))), 0, 0));

    let mut expanded = 0usize;
    while let Some((_, entry_g, id)) = open.pop() {
        let state = by_id[id as usize].clone();
        let g = info[&state].0;
        if entry_g > g {
            continue; // superseded by a shorter path found later
        }
        if &state == goal {
            return Ok(reconstruct(&info, &by_id, state));
        }
        expanded += 1;
        if expanded > max_nodes {
            return Err(Error::SearchBudgetExceeded);
        }
        // Spans never grow along play, so a state whose span no longer
        // covers the goal's span can never reach the goal.
        let reach = span(&state.board);
        if !goal_span.is_subset(&reach) {
            continue;
        }
        for action in successors(&state) {
            let next = apply(&state, action).expect("generated actions are legal");
            let tentative = g + 1;
            match info.get(&next) {
                Some(&(best, _)) if best <= tentative => continue,
                _ => {}
            }
            info.insert(next.clone(), (tentative, Some((id, action))));
            let f = u64::from(tentative) + u64::from(2 * estimate(&next, goal));
            by_id.push(next);
            // Ties on f break toward deeper states, which reach exact goals
            // sooner on the long plateaus these puzzles produce.
            open.push((Reverse(f), tentative, (by_id.len() - 1) as u32));
        }
    }
    Err(Error::NotReachable)
}

/// A lower bound on the number of actions still needed: every action
/// removes at most one coin that should not stay where it is, fills at
/// most one cell that still needs a coin, and only pick-ups and drops
/// shift the hand, by one each.
fn estimate(state: &GameState, goal: &GameState) -> u32 {
    let missing = goal.board.difference(&state.board).len() as u32;
    let surplus = state.board.difference(&goal.board).len() as u32;
    missing
        .max(surplus)
        .max(state.hand.abs_diff(goal.hand))
}

fn successors(state: &GameState) -> Vec<Action> {
    let mut out = Vec::new();
    for (from, to) in legal_moves(&state.board) {
        out.push(Action::Move { from, to });
    }
    for coin in state.board.iter() {
        out.push(Action::PickUp { at: coin });
    }
    if state.hand > 0 {
        for cell in adjacent_set(&state.board) {
            out.push(Action::Drop { at: cell });
        }
    }
    out
}

fn reconstruct(
    info: &HashMap<GameState, (u32, Option<(u32, Action)>)>,
    by_id: &[GameState],
    mut state: GameState,
) -> ActionSequence {
    let mut actions = Vec::new();
    while let Some((prev, action)) = info[&state].1 {
        actions.push(action);
        state = by_id[prev as usize].clone();
    }
    actions.reverse();
    actions
}
