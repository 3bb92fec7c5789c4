//! Exhaustive ground truth: bounded breadth-first enumeration of everything
//! reachable by legal moves (and, separately, by pokes). Solvers are checked
//! against this on small instances.

use crate::bitboard::SpanBox;
use crate::engine::{legal_moves, Action, ActionSequence};
use crate::error::Error;
use crate::grid::{enclosing_rectangle, Configuration};
use crate::poking;
use crate::span::span;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// Caps on a breadth-first enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Stop after discovering this many distinct states.
    pub max_states: usize,
    /// Optionally stop expanding beyond this depth.
    pub max_depth: Option<usize>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_states: 5_000_000,
            max_depth: None,
        }
    }
}

impl SearchLimits {
    pub fn with_max_states(max_states: usize) -> SearchLimits {
        SearchLimits {
            max_states,
            ..SearchLimits::default()
        }
    }
}

/// The result of an enumeration: the states discovered, and whether they are
/// provably all of them.
#[derive(Debug, Clone)]
pub struct ReachSet {
    pub states: BTreeSet<Configuration>,
    pub complete: bool,
}

impl ReachSet {
    pub fn contains(&self, c: &Configuration) -> bool {
        self.states.contains(c)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Everything reachable from `a` by legal moves, within the limits. Every
/// reachable board stays inside the span of `a` (moves never grow the span),
/// so when that span fits a 128-cell box the search runs on packed words.
pub fn reachable_set(a: &Configuration, limits: &SearchLimits) -> ReachSet {
    if a.is_empty() {
        return ReachSet {
            states: BTreeSet::from([a.clone()]),
            complete: true,
        };
    }
    let bbox = enclosing_rectangle(&span(a)).expect("nonempty span");
    if let Some(sb) = SpanBox::new(bbox) {
        let start = sb.pack(a).expect("coins lie inside their span");
        let (packed, complete) = reachable_bits(&sb, start, limits);
        ReachSet {
            states: packed.into_iter().map(|bits| sb.unpack(bits)).collect(),
            complete,
        }
    } else {
        reachable_configs(a, limits)
    }
}

fn reachable_bits(sb: &SpanBox, start: u128, limits: &SearchLimits) -> (HashSet<u128>, bool) {
    let mut visited: HashSet<u128> = HashSet::from([start]);
    let mut queue: VecDeque<(u128, usize)> = VecDeque::from([(start, 0)]);
    let mut complete = true;
    while let Some((state, depth)) = queue.pop_front() {
        let at_horizon = limits.max_depth.is_some_and(|d| depth >= d);
        for (from, to) in sb.legal_moves(state) {
            let next = state & !(1u128 << from) | (1u128 << to);
            if visited.contains(&next) {
                continue;
            }
            if at_horizon {
                complete = false;
                continue;
            }
            if visited.len() >= limits.max_states {
                complete = false;
                continue;
            }
            visited.insert(next);
            queue.push_back((next, depth + 1));
        }
    }
    (visited, complete)
}

fn reachable_configs(a: &Configuration, limits: &SearchLimits) -> ReachSet {
    let mut visited: HashSet<Configuration> = HashSet::from([a.clone()]);
    let mut queue: VecDeque<(Configuration, usize)> = VecDeque::from([(a.clone(), 0)]);
    let mut complete = true;
    while let Some((state, depth)) = queue.pop_front() {
        let at_horizon = limits.max_depth.is_some_and(|d| depth >= d);
        for (from, to) in legal_moves(&state) {
            let mut next = state.clone();
            next.remove(from);
            next.insert(to);
            if visited.contains(&next) {
                continue;
            }
            if at_horizon || visited.len() >= limits.max_states {
                complete = false;
                continue;
            }
            visited.insert(next.clone());
            queue.push_back((next, depth + 1));
        }
    }
    ReachSet {
        states: visited.into_iter().collect(),
        complete,
    }
}

/// Shortest pure-move solution from `a` to `b`:
/// - `Ok(Some(seq))` — found one (possibly empty);
/// - `Ok(None)` — provably unreachable (conservation or span containment
///   rules it out, or the full reachable set excludes `b`);
/// - `Err(exhausted)` — limits hit before either answer.
pub fn shortest_solution(
    a: &Configuration,
    b: &Configuration,
    limits: &SearchLimits,
) -> Result<Option<ActionSequence>, Error> {
    if a == b {
        return Ok(Some(vec![]));
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    let span_a = span(a);
    if !b.is_subset(&span_a) || !span(b).is_subset(&span_a) {
        return Ok(None);
    }
    if a.is_empty() {
        return Ok(None);
    }
    let bbox = enclosing_rectangle(&span_a).expect("nonempty span");
    let Some(sb) = SpanBox::new(bbox) else {
        return shortest_solution_configs(a, b, limits);
    };
    let start = sb.pack(a).expect("coins lie inside their span");
    let goal = sb.pack(b).expect("target checked inside the span box");

    let mut parents: HashMap<u128, (u128, u32, u32)> = HashMap::new();
    let mut visited: HashSet<u128> = HashSet::from([start]);
    let mut queue: VecDeque<(u128, usize)> = VecDeque::from([(start, 0)]);
    let mut truncated = false;
    while let Some((state, depth)) = queue.pop_front() {
        let at_horizon = limits.max_depth.is_some_and(|d| depth >= d);
        for (from, to) in sb.legal_moves(state) {
            let next = state & !(1u128 << from) | (1u128 << to);
            if visited.contains(&next) {
                continue;
            }
            if at_horizon || visited.len() >= limits.max_states {
                truncated = true;
                continue;
            }
            visited.insert(next);
            parents.insert(next, (state, from, to));
            if next == goal {
                let mut seq = Vec::new();
                let mut cur = next;
                while cur != start {
                    let (prev, from, to) = parents[&cur];
                    seq.push(Action::Move {
                        from: sb.position(from),
                        to: sb.position(to),
                    });
                    cur = prev;
                }
                seq.reverse();
                return Ok(Some(seq));
            }
            queue.push_back((next, depth + 1));
        }
    }
    if truncated {
        Err(Error::Exhausted)
    } else {
        Ok(None)
    }
}

fn shortest_solution_configs(
    a: &Configuration,
    b: &Configuration,
    limits: &SearchLimits,
) -> Result<Option<ActionSequence>, Error> {
    let mut parents: HashMap<Configuration, (Configuration, Action)> = HashMap::new();
    let mut visited: HashSet<Configuration> = HashSet::from([a.clone()]);
    let mut queue: VecDeque<(Configuration, usize)> = VecDeque::from([(a.clone(), 0)]);
    let mut truncated = false;
    while let Some((state, depth)) = queue.pop_front() {
        let at_horizon = limits.max_depth.is_some_and(|d| depth >= d);
        for (from, to) in legal_moves(&state) {
            let mut next = state.clone();
            next.remove(from);
            next.insert(to);
            if visited.contains(&next) {
                continue;
            }
            if at_horizon || visited.len() >= limits.max_states {
                truncated = true;
                continue;
            }
            visited.insert(next.clone());
            parents.insert(next.clone(), (state.clone(), Action::Move { from, to }));
            if &next == b {
                let mut seq = Vec::new();
                let mut cur = next;
                while &cur != a {
                    let (prev, action) = parents[&cur].clone();
                    seq.push(action);
                    cur = prev;
                }
                seq.reverse();
                return Ok(Some(seq));
            }
            queue.push_back((next, depth + 1));
        }
    }
    if truncated {
        Err(Error::Exhausted)
    } else {
        Ok(None)
    }
}

/// Everything reachable from a minimum configuration with exactly one
/// adjacent pair under pokes (slides of a pair member to a neighboring free
/// cell that keeps a contact).
pub fn reachable_poking(m: &Configuration, limits: &SearchLimits) -> Result<ReachSet, Error> {
    poking::check_poking_invariant(m)?;
    let mut visited: HashSet<Configuration> = HashSet::from([m.clone()]);
    let mut queue: VecDeque<(Configuration, usize)> = VecDeque::from([(m.clone(), 0)]);
    let mut complete = true;
    while let Some((state, depth)) = queue.pop_front() {
        let at_horizon = limits.max_depth.is_some_and(|d| depth >= d);
        for (from, to) in poking::legal_pokes_in(&state) {
            let mut next = state.clone();
            next.remove(from);
            next.insert(to);
            if visited.contains(&next) {
                continue;
            }
            if at_horizon || visited.len() >= limits.max_states {
                complete = false;
                continue;
            }
            debug_assert!(poking::check_poking_invariant(&next).is_ok());
            visited.insert(next.clone());
            queue.push_back((next, depth + 1));
        }
    }
    Ok(ReachSet {
        states: visited.into_iter().collect(),
        complete,
    })
}

/// Shortest poke path from `m` to `target`, if reachable within limits.
/// Same contract as `shortest_solution`, over pokes.
pub fn shortest_poking_path(
    m: &Configuration,
    target: &Configuration,
    limits: &SearchLimits,
) -> Result<Option<Vec<(crate::grid::Position, crate::grid::Position)>>, Error> {
    poking::check_poking_invariant(m)?;
    if m == target {
        return Ok(Some(vec![]));
    }
    let mut parents: HashMap<Configuration, (Configuration, (crate::grid::Position, crate::grid::Position))> =
        HashMap::new();
    let mut visited: HashSet<Configuration> = HashSet::from([m.clone()]);
    let mut queue: VecDeque<(Configuration, usize)> = VecDeque::from([(m.clone(), 0)]);
    let mut truncated = false;
    while let Some((state, depth)) = queue.pop_front() {
        let at_horizon = limits.max_depth.is_some_and(|d| depth >= d);
        for (from, to) in poking::legal_pokes_in(&state) {
            let mut next = state.clone();
            next.remove(from);
            next.insert(to);
            if visited.contains(&next) {
                continue;
            }
            if at_horizon || visited.len() >= limits.max_states {
                truncated = true;
                continue;
            }
            visited.insert(next.clone());
            parents.insert(next.clone(), (state.clone(), (from, to)));
            if &next == target {
                let mut pokes = Vec::new();
                let mut cur = next;
                while &cur != m {
                    let (prev, poke) = parents[&cur].clone();
                    pokes.push(poke);
                    cur = prev;
                }
                pokes.reverse();
                return Ok(Some(pokes));
            }
            queue.push_back((next, depth + 1));
        }
    }
    if truncated {
        Err(Error::Exhausted)
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::replay_board;

    #[test]
    fn isolated_coins_reach_nothing() {
        // Pairwise taxicab distance 3: no free cell has two occupied
        // neighbours, so no coin can ever be placed anywhere.
        let a = Configuration::from_coords(&[(0, 0), (3, 0), (0, 3)]);
        let r = reachable_set(&a, &SearchLimits::default());
        assert!(r.complete);
        assert_eq!(r.len(), 1);
        assert!(r.contains(&a));
    }

    #[test]
    fn diagonal_triple_enumeration_is_complete() {
        let a = Configuration::from_coords(&[(0, 0), (1, 1), (3, 0)]);
        let r = reachable_set(&a, &SearchLimits::default());
        assert!(r.complete);
        // Every state has three coins inside the 4x2 span.
        for s in &r.states {
            assert_eq!(s.len(), 3);
            assert!(span(s).is_subset(&span(&a)));
        }
        assert!(r.len() > 1);
    }

    #[test]
    fn state_cap_marks_incomplete() {
        let a = Configuration::from_coords(&[(0, 0), (1, 1), (3, 0)]);
        let r = reachable_set(&a, &SearchLimits::with_max_states(2));
        assert!(!r.complete);
        assert!(r.len() <= 2);
    }

    #[test]
    fn depth_limit_marks_incomplete_when_states_remain() {
        // Column of three plus an outpost: depth 1 reaches two states whose
        // own successors include configurations not seen yet.
        let a = Configuration::from_coords(&[(0, 0), (0, 1), (0, 2), (2, 0)]);
        let shallow = reachable_set(
            &a,
            &SearchLimits {
                max_states: 1_000_000,
                max_depth: Some(1),
            },
        );
        assert!(!shallow.complete);
        let full = reachable_set(&a, &SearchLimits::default());
        assert!(shallow.len() < full.len());
    }

    #[test]
    fn shortest_solution_finds_single_moves() {
        let a = Configuration::from_coords(&[(0, 0), (1, 1), (3, 0)]);
        // One move: (3,0) onto (1,0), which (0,0) and (1,1) support.
        let b = Configuration::from_coords(&[(0, 0), (1, 0), (1, 1)]);
        let seq = shortest_solution(&a, &b, &SearchLimits::default())
            .unwrap()
            .unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(replay_board(&a, &seq).unwrap(), b);
        assert_eq!(
            shortest_solution(&a, &a, &SearchLimits::default()).unwrap(),
            Some(vec![])
        );
    }

    #[test]
    fn shortest_solution_rejects_impossible_targets() {
        let a = Configuration::from_coords(&[(0, 0), (1, 1), (3, 0)]);
        // Wrong cardinality.
        let b = Configuration::from_coords(&[(0, 0), (1, 1)]);
        assert_eq!(shortest_solution(&a, &b, &SearchLimits::default()).unwrap(), None);
        // Outside the span.
        let c = Configuration::from_coords(&[(0, 0), (1, 1), (9, 9)]);
        assert_eq!(shortest_solution(&a, &c, &SearchLimits::default()).unwrap(), None);
        // Inside the span but unreachable: from x = {0,2,4} on a row the only
        // moves collapse to {0,1,2} or {2,3,4}, never {0,1,4}.
        let iso = Configuration::from_coords(&[(0, 0), (2, 0), (4, 0)]);
        let target = Configuration::from_coords(&[(0, 0), (1, 0), (4, 0)]);
        assert_eq!(
            shortest_solution(&iso, &target, &SearchLimits::default()).unwrap(),
            None
        );
        // Same span, same size, but absent from the full reachable set.
        let absent = Configuration::from_coords(&[(0, 0), (1, 1), (2, 1)]);
        assert_eq!(
            shortest_solution(&a, &absent, &SearchLimits::default()).unwrap(),
            None
        );
    }

    #[test]
    fn shortest_solution_reports_exhaustion() {
        let a = Configuration::from_coords(&[(0, 0), (1, 1), (3, 0)]);
        let b = Configuration::from_coords(&[(1, 0), (2, 1), (0, 1)]);
        let err = shortest_solution(&a, &b, &SearchLimits::with_max_states(2));
        assert_eq!(err.unwrap_err().to_string(), "exhausted");
    }

    #[test]
    fn minimum_length_paths_come_out_of_the_bfs() {
        // Any found path must replay and no shorter path may exist: check by
        // comparing against depth-limited searches.
        let a = Configuration::from_coords(&[(0, 0), (1, 1), (3, 0)]);
        let r = reachable_set(&a, &SearchLimits::default());
        for target in r.states.iter().take(12) {
            let seq = shortest_solution(&a, target, &SearchLimits::default())
                .unwrap()
                .unwrap();
            assert_eq!(&replay_board(&a, &seq).unwrap(), target);
            if !seq.is_empty() {
                let shallower = SearchLimits {
                    max_states: 1_000_000,
                    max_depth: Some(seq.len() - 1),
                };
                let res = shortest_solution(&a, target, &shallower);
                assert!(!matches!(res, Ok(Some(_))), "found a shorter path");
            }
        }
    }

    #[test]
    fn poking_requires_the_invariant() {
        // Minimum but fully isolated: no pair to poke.
        let iso = Configuration::from_coords(&[(0, 0), (1, 1), (3, 0)]);
        assert_eq!(
            reachable_poking(&iso, &SearchLimits::default())
                .unwrap_err()
                .to_string(),
            "precondition_violated"
        );
        // Not minimum.
        let dense: Configuration = crate::grid::Rectangle::new(0, 0, 2, 2).cells().collect();
        assert!(reachable_poking(&dense, &SearchLimits::default()).is_err());
    }

    #[test]
    fn poking_closure_of_a_short_chain() {
        // 3x2 span, pair plus outrider: the four same-endpoint chains.
        let m = Configuration::from_coords(&[(0, 1), (0, 0), (2, 0)]);
        let r = reachable_poking(&m, &SearchLimits::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.len(), 4);
        for s in &r.states {
            assert!(crate::span::is_minimum(s));
            assert_eq!(s.adjacent_pairs().len(), 1);
            assert_eq!(span(s), span(&m));
        }
    }
}
