//! Canonical configurations and the subroutine library that reaches them:
//! flips, leapfrogs, trims, and full canonicalization.
//!
//! Every span component of a board can be retracted onto a canonical
//! corner-hugging 'L' while freed coins accumulate in hand, and the
//! retraction can be played backward. The subroutines here realize those
//! facts as explicit, replayable action sequences: `flip_l` mirrors an 'L'
//! onto the opposite corner of its span, `leapfrog` walks an odd 'L''s
//! adjacent pair along the shape one slide at a time, `trim_l` shortens an
//! 'L' from one side while banking the removed coins, and `canonicalize`
//! retracts an arbitrary board onto its canonical form.

use crate::engine::{invert_actions, validate_sequence, Action, ActionSequence, GameState};
use crate::error::Error;
use crate::grid::{dist, enclosing_rectangle, pos, Configuration, Position, Rectangle};
use crate::isometry::Isometry;
use crate::poking::{chain_poking_solve, Poke};
use crate::search::plan_to_state;
use crate::span::{coins_by_component, find_redundant_coins, span_components};
use crate::words::{
    canonical_l_word, is_l_word, l_pair_slot_word, l_slot_count, pair_index, shift_pair,
    word_extent, word_poke_action, word_positions, Letter, Side,
};

/// Node budget for each best-first planning call inside `canonicalize` and
/// the solvers built on it.
pub(crate) const PLAN_NODE_BUDGET: usize = 2_000_000;

/// A sequence of distinct coins with consecutive taxicab distances 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    coins: Vec<Position>,
}

impl Chain {
    pub fn new(coins: Vec<Position>) -> Result<Chain, Error> {
        if coins.is_empty() {
            return Err(Error::NotAChain);
        }
        let distinct: std::collections::BTreeSet<Position> = coins.iter().copied().collect();
        if distinct.len() != coins.len() {
            return Err(Error::NotAChain);
        }
        if coins.windows(2).any(|w| !matches!(dist(w[0], w[1]), 1 | 2)) {
            return Err(Error::NotAChain);
        }
        Ok(Chain { coins })
    }

    pub fn coins(&self) -> &[Position] {
        &self.coins
    }
}

/// The corner of its span that an 'L' hugs: its coins lie on the two sides
/// meeting there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    BottomLeft,
    BottomRight,
    TopLeft,
    TopRight,
}

impl Corner {
    /// All corners, in the order `identify_l` tries them; degenerate shapes
    /// that hug several corners report the first match.
    pub const ALL: [Corner; 4] = [
        Corner::BottomLeft,
        Corner::BottomRight,
        Corner::TopLeft,
        Corner::TopRight,
    ];
}

/// A side of an 'L''s span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrimSide {
    Left,
    Right,
    Top,
    Bottom,
}

/// An 'L': a minimum configuration hugging two consecutive sides of its
/// span rectangle. Odd spans carry exactly one adjacent pair whose slot
/// `pair_index` counts from the top-left end of the corner-normalized
/// reading; even spans have none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LShape {
    pub span: Rectangle,
    pub corner: Corner,
    pub pair_index: Option<usize>,
}

impl LShape {
    /// The chain word in the corner-normalized frame, or `None` when the
    /// fields are inconsistent (pair index on an even span, missing or out
    /// of range on an odd one).
    fn word(&self) -> Option<Vec<Letter>> {
        match (self.span.is_odd(), self.pair_index) {
            (true, Some(slot)) => l_pair_slot_word(self.span.m, self.span.n, slot),
            (false, None) => Some(canonical_l_word(self.span.m, self.span.n)),
            _ => None,
        }
    }

    /// The involution mapping the hugged corner onto the bottom-left one;
    /// it fixes the span rectangle as a whole.
    fn normalizer(&self) -> Isometry {
        corner_normalizer(self.corner, &self.span)
    }

    fn normalized_positions(&self) -> Option<Vec<Position>> {
        let w = self.word()?;
        Some(word_positions(pos(self.span.x0, self.span.y1()), &w))
    }

    /// The coins of this 'L', or `None` when the fields are inconsistent.
    pub fn coins(&self) -> Option<Configuration> {
        let g = self.normalizer();
        Some(self.normalized_positions()?.into_iter().map(|p| g.apply(p)).collect())
    }

    /// The coins in chain order, from the image of the normalized reading's
    /// top-left end.
    pub fn chain(&self) -> Option<Chain> {
        let g = self.normalizer();
        let ps = self.normalized_positions()?;
        Chain::new(ps.into_iter().map(|p| g.apply(p)).collect()).ok()
    }
}

fn corner_normalizer(corner: Corner, r: &Rectangle) -> Isometry {
    match corner {
        Corner::BottomLeft => Isometry::identity(),
        Corner::BottomRight => Isometry::mirror_x_within(r),
        Corner::TopLeft => Isometry::mirror_y_within(r),
        Corner::TopRight => Isometry::half_turn_within(r),
    }
}

/// The canonical 'L' spanning `r`: it hugs the left column and bottom row,
/// and on odd spans its adjacent pair sits at the top-left end (even
/// height) or bottom-right end (even width).
pub fn canonical_l(r: &Rectangle) -> Configuration {
    let w = canonical_l_word(r.m, r.n);
    word_positions(pos(r.x0, r.y1()), &w).into_iter().collect()
}

/// The canonical form of a configuration: each span component replaced by
/// the canonical 'L' of its rectangle.
pub fn canonical_config(c: &Configuration) -> Configuration {
    if c.is_empty() {
        return Configuration::new();
    }
    let decomposition = span_components(c).expect("nonempty configuration");
    let mut out = Configuration::new();
    for r in &decomposition.rectangles {
        out = out.union(&canonical_l(r));
    }
    out
}

/// Recognizes a configuration as an 'L', reporting its span, hugged corner,
/// and pair slot. Shapes that hug several corners (single coins, straight
/// lines) report the first matching corner in `Corner::ALL` order.
pub fn identify_l(c: &Configuration) -> Option<LShape> {
    Corner::ALL
        .iter()
        .find_map(|&corner| identify_l_at(c, corner))
}

/// [`identify_l`] pinned to one corner: recognizes the configuration as an
/// 'L' hugging exactly that corner, or `None`. Degenerate shapes hug every
/// corner, so the caller can pick whichever corner a later trim needs.
pub(crate) fn identify_l_at(c: &Configuration, corner: Corner) -> Option<LShape> {
    let r = enclosing_rectangle(c).ok()?;
    if c.len() as u32 != r.min_cardinality() {
        return None;
    }
    let g = corner_normalizer(corner, &r);
    let cc = g.apply_config(c);
    let mut ps: Vec<Position> = cc.iter().collect();
    ps.sort_by_key(|p| (p.x, std::cmp::Reverse(p.y)));
    if ps[0] != pos(r.x0, r.y1()) {
        return None;
    }
    let letters: Option<Vec<Letter>> = ps
        .windows(2)
        .map(|w| Letter::from_delta((w[1].x - w[0].x, w[1].y - w[0].y)))
        .collect();
    let w = letters?;
    if word_extent(&w) != (r.m, r.n) || !is_l_word(&w) {
        return None;
    }
    Some(LShape {
        span: r,
        corner,
        pair_index: pair_index(&w),
    })
}

/// The pair slot the canonical 'L' of an odd rectangle occupies, `None` for
/// even rectangles (whose 'L' has no adjacent pair).
pub(crate) fn canonical_slot(r: &Rectangle) -> Option<usize> {
    pair_index(&canonical_l_word(r.m, r.n))
}

/// A forward action sequence with a backward sequence restoring the
/// starting state. Trims are the exception: spans never grow along play,
/// so a trimmed span is gone for good and the backward sequence is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubroutineTrace {
    pub name: &'static str,
    pub forward: ActionSequence,
    pub backward: ActionSequence,
}

/// Realizes a poke sequence using one coin of hand: drop a coin on the
/// first poke's destination, then repeatedly move the previously displaced
/// coin onto the next destination, and finally pick the last displaced coin
/// up. Legal because a poke's destination touches the poked coin, which is
/// still on the board when its successor cell gets filled.
pub(crate) fn hand_cascade(pokes: &[Poke]) -> ActionSequence {
    let mut out = Vec::new();
    let mut spare: Option<Position> = None;
    for &(from, to) in pokes {
        match spare {
            None => out.push(Action::Drop { at: to }),
            Some(s) if s != to => out.push(Action::Move { from: s, to }),
            _ => {}
        }
        spare = Some(from);
    }
    if let Some(s) = spare {
        out.push(Action::PickUp { at: s });
    }
    out
}

/// One adjacent-letter rewrite of an even 'L' word, as board actions
/// relative to the coin where the two letters start: drop two supports,
/// slide the middle coin, pick the supports back up.
struct Rewrite {
    mover: (i32, i32),
    dest: (i32, i32),
    supports: [(i32, i32); 2],
}

/// Turns a down-step into a diagonal step: `D·x → G·y`.
const STEP_DOWN_TO_DIAG: Rewrite = Rewrite {
    mover: (0, -2),
    dest: (1, -1),
    supports: [(0, -1), (1, -2)],
};

/// Turns a diagonal step into a right-step: `G·x → R·y`.
const STEP_DIAG_TO_RIGHT: Rewrite = Rewrite {
    mover: (1, -1),
    dest: (2, 0),
    supports: [(1, 0), (2, -1)],
};

fn transposition(c0: Position, rw: &Rewrite) -> [Action; 5] {
    let at = |d: (i32, i32)| c0.offset(d.0, d.1);
    [
        Action::Drop { at: at(rw.supports[0]) },
        Action::Drop { at: at(rw.supports[1]) },
        Action::Move { from: at(rw.mover), to: at(rw.dest) },
        Action::PickUp { at: at(rw.supports[0]) },
        Action::PickUp { at: at(rw.supports[1]) },
    ]
}

/// Rewrites the canonical even 'L' word into its half-turn image by
/// bubbling letters into `R < G < D` order; every adjacent inversion is
/// removed with one or two five-action transpositions.
fn even_flip_actions(r: &Rectangle) -> ActionSequence {
    fn rank(l: Letter) -> u32 {
        match l {
            Letter::RightTwo => 0,
            Letter::DiagDownRight => 1,
            Letter::DownTwo => 2,
            _ => unreachable!("even 'L' words contain long letters only"),
        }
    }
    let start = pos(r.x0, r.y1());
    let mut w = canonical_l_word(r.m, r.n);
    let mut out = Vec::new();
    while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| rank(w[i]) > rank(w[i + 1])) {
        let c0 = word_positions(start, &w)[i];
        match (w[i], w[i + 1]) {
            (Letter::DownTwo, Letter::RightTwo) => {
                out.extend(transposition(c0, &STEP_DOWN_TO_DIAG));
                out.extend(transposition(c0, &STEP_DIAG_TO_RIGHT));
                w[i] = Letter::RightTwo;
                w[i + 1] = Letter::DownTwo;
            }
            (Letter::DownTwo, Letter::DiagDownRight) => {
                out.extend(transposition(c0, &STEP_DOWN_TO_DIAG));
                w[i] = Letter::DiagDownRight;
                w[i + 1] = Letter::DownTwo;
            }
            (Letter::DiagDownRight, Letter::RightTwo) => {
                out.extend(transposition(c0, &STEP_DIAG_TO_RIGHT));
                w[i] = Letter::RightTwo;
                w[i + 1] = Letter::DiagDownRight;
            }
            _ => unreachable!("pair is an inversion"),
        }
    }
    out
}

/// Mirrors an 'L' onto the opposite corner of its span — the half-turn
/// image, which hugs the other two sides. Odd 'L's use one hand coin, even
/// 'L's two; the hand is restored at the end, and the backward sequence
/// undoes the flip. Degenerate one-wide 'L's already hug every corner, so
/// their trace is empty.
pub fn flip_l(state: &GameState, l: &LShape) -> Result<SubroutineTrace, Error> {
    let r = l.span;
    let odd = r.is_odd();
    let name = if odd { "flip_odd" } else { "flip_even" };
    if state.hand < if odd { 1 } else { 2 } {
        return Err(Error::InsufficientHand);
    }
    let coins = l.coins().ok_or(Error::PreconditionViolated)?;
    if !coins.is_subset(&state.board) {
        return Err(Error::PreconditionViolated);
    }
    if r.m == 1 || r.n == 1 {
        return Ok(SubroutineTrace {
            name,
            forward: Vec::new(),
            backward: Vec::new(),
        });
    }
    let g = l.normalizer();
    let local = if odd {
        let from = g.apply_config(&coins);
        let to = Isometry::half_turn_within(&r).apply_config(&from);
        let pokes = chain_poking_solve(&from, &to)?;
        hand_cascade(&pokes)
    } else {
        even_flip_actions(&r)
    };
    let forward = g.inverse().apply_actions(&local);
    let flipped = Isometry::half_turn_within(&r).apply_config(&coins);
    let expected = GameState::new(state.board.difference(&coins).union(&flipped), state.hand);
    validate_sequence(state, &forward, Some(&expected)).map_err(|_| Error::PreconditionViolated)?;
    let backward = invert_actions(&forward);
    Ok(SubroutineTrace {
        name,
        forward,
        backward,
    })
}

/// Walks the adjacent pair of an odd 'L' to `target_slot` (slot 0 sits at
/// the top-left end of the corner-normalized reading), one slide at a time,
/// using one hand coin. The intermediate states visit every slot between
/// source and target exactly once.
pub fn leapfrog(
    state: &GameState,
    l: &LShape,
    target_slot: usize,
) -> Result<SubroutineTrace, Error> {
    if l.span.is_even() {
        return Err(Error::NotOdd);
    }
    if state.hand < 1 {
        return Err(Error::InsufficientHand);
    }
    let coins = l.coins().ok_or(Error::PreconditionViolated)?;
    if !coins.is_subset(&state.board) {
        return Err(Error::PreconditionViolated);
    }
    if target_slot >= l_slot_count(l.span.m, l.span.n) {
        return Err(Error::PreconditionViolated);
    }
    let mut slot = l.pair_index.expect("odd 'L's carry a pair slot");
    let g = l.normalizer();
    let start = pos(l.span.x0, l.span.y1());
    let mut w = l.word().expect("consistent shape");
    let mut pokes = Vec::new();
    while slot != target_slot {
        let side = if target_slot < slot { Side::Left } else { Side::Right };
        let (wp, next) = shift_pair(&w, side).ok_or(Error::PreconditionViolated)?;
        pokes.push(word_poke_action(start, &w, wp).expect("legal by construction"));
        w = next;
        slot = pair_index(&w).expect("odd 'L' words keep one short letter");
    }
    let forward = g.inverse().apply_actions(&hand_cascade(&pokes));
    let target = LShape {
        pair_index: Some(target_slot),
        ..*l
    };
    let landed = target.coins().expect("valid slot");
    let expected = GameState::new(state.board.difference(&coins).union(&landed), state.hand);
    validate_sequence(state, &forward, Some(&expected)).map_err(|_| Error::PreconditionViolated)?;
    let backward = invert_actions(&forward);
    Ok(SubroutineTrace {
        name: "leapfrog",
        forward,
        backward,
    })
}

/// Shortens an 'L' by `amount` columns or rows taken off `side`, which must
/// be one of the two sides the 'L' does not hug; freed coins join the hand,
/// which never shrinks. The backward sequence is empty: spans never grow
/// along play, so no sequence of actions can rebuild a trimmed span.
pub fn trim_l(
    state: &GameState,
    l: &LShape,
    side: TrimSide,
    amount: u32,
) -> Result<SubroutineTrace, Error> {
    if state.hand < 2 {
        return Err(Error::InsufficientHand);
    }
    let coins = l.coins().ok_or(Error::PreconditionViolated)?;
    if !coins.is_subset(&state.board) {
        return Err(Error::PreconditionViolated);
    }
    let allowed: [TrimSide; 2] = match l.corner {
        Corner::BottomLeft => [TrimSide::Right, TrimSide::Top],
        Corner::BottomRight => [TrimSide::Left, TrimSide::Top],
        Corner::TopLeft => [TrimSide::Right, TrimSide::Bottom],
        Corner::TopRight => [TrimSide::Left, TrimSide::Bottom],
    };
    if !allowed.contains(&side) {
        return Err(Error::GeometryPrecondition);
    }
    let vertical = matches!(side, TrimSide::Top | TrimSide::Bottom);
    let along = if vertical { l.span.n } else { l.span.m };
    if amount >= along {
        return Err(Error::AmountTooLarge);
    }
    if amount == 0 {
        return Ok(SubroutineTrace {
            name: "trim",
            forward: Vec::new(),
            backward: Vec::new(),
        });
    }
    // Normalize to a bottom-left 'L' trimmed on its right edge.
    let g = l.normalizer();
    let h = if vertical {
        g.then(&Isometry::transpose_at(&l.span))
    } else {
        g
    };
    let frame_rect = h.apply_rect(&l.span);
    let frame_l = identify_l(&h.apply_config(&coins)).expect("isometric image of an 'L'");
    debug_assert_eq!(frame_l.corner, Corner::BottomLeft);
    debug_assert_eq!(frame_l.span, frame_rect);
    let mut m = frame_rect.m;
    let n = frame_rect.n;
    let mut w = frame_l.word().expect("consistent shape");
    let mut acts = Vec::new();
    for _ in 0..amount {
        trim_one(&mut acts, &mut w, &mut m, n, frame_rect.x0, frame_rect.y0);
    }
    let forward = h.inverse().apply_actions(&acts);
    let final_local: Configuration =
        word_positions(pos(frame_rect.x0, frame_rect.y0 + n as i32 - 1), &w)
            .into_iter()
            .collect();
    let final_coins = h.inverse().apply_config(&final_local);
    let freed = (coins.len() - final_coins.len()) as u32;
    let expected = GameState::new(
        state.board.difference(&coins).union(&final_coins),
        state.hand + freed,
    );
    validate_sequence(state, &forward, Some(&expected)).map_err(|_| Error::PreconditionViolated)?;
    Ok(SubroutineTrace {
        name: "trim",
        forward,
        backward: Vec::new(),
    })
}

/// Removes the rightmost column of a bottom-left 'L' in the frame where it
/// hugs the bottom-left corner of the `m`-wide, `n`-tall rectangle at
/// `(x0, y0)`. `w` tracks the evolving word and `m` the evolving width.
fn trim_one(acts: &mut ActionSequence, w: &mut Vec<Letter>, m: &mut u32, n: u32, x0: i32, y0: i32) {
    debug_assert!(*m >= 2);
    let top = pos(x0, y0 + n as i32 - 1);
    if (*m + n) % 2 == 1 {
        // Odd 'L': walk the pair to the last slot so the word ends with a
        // short right-step, then pick that end coin up.
        let last = l_slot_count(*m, n) - 1;
        let mut slot = pair_index(w).expect("odd 'L' word");
        let mut pokes = Vec::new();
        while slot < last {
            let (wp, next) = shift_pair(w, Side::Right).expect("slot below the last");
            pokes.push(word_poke_action(top, w, wp).expect("legal by construction"));
            *w = next;
            slot = pair_index(w).expect("one short letter");
        }
        acts.extend(hand_cascade(&pokes));
        acts.push(Action::PickUp {
            at: pos(x0 + *m as i32 - 1, y0),
        });
        *w = canonical_l_word(*m - 1, n);
        *m -= 1;
    } else if *m >= 3 {
        // Even 'L': fill the cell between the last two row coins, then free
        // the end coin, leaving an odd 'L' with its pair at the last slot.
        acts.push(Action::Drop {
            at: pos(x0 + *m as i32 - 2, y0),
        });
        acts.push(Action::PickUp {
            at: pos(x0 + *m as i32 - 1, y0),
        });
        *w = l_pair_slot_word(*m - 1, n, l_slot_count(*m - 1, n) - 1).expect("last slot");
        *m -= 1;
    } else {
        // A 2×n even 'L' (n even) collapses onto its column: weave drops
        // down the odd gaps while picking the old column coins up.
        debug_assert!(n % 2 == 0);
        acts.push(Action::Drop {
            at: pos(x0, y0 + n as i32 - 2),
        });
        let mut y = n as i32 - 4;
        while y >= 0 {
            acts.push(Action::Drop { at: pos(x0, y0 + y) });
            acts.push(Action::PickUp {
                at: pos(x0, y0 + y + 1),
            });
            y -= 2;
        }
        acts.push(Action::PickUp { at: pos(x0 + 1, y0) });
        *w = canonical_l_word(1, n);
        *m = 1;
    }
}

/// Retracts a board onto its canonical configuration: every span component
/// becomes the canonical 'L' of its rectangle and every freed coin joins
/// the hand. The backward sequence rebuilds the original board exactly.
/// Component plans are found by bounded best-first search, which errs with
/// `search_budget_exceeded` on components too large to plan through.
pub fn canonicalize(state: &GameState) -> Result<SubroutineTrace, Error> {
    if state.hand < 2 {
        return Err(Error::InsufficientHand);
    }
    let name = "canonicalize";
    if state.board.is_empty() {
        return Ok(SubroutineTrace {
            name,
            forward: Vec::new(),
            backward: Vec::new(),
        });
    }
    let decomposition = span_components(&state.board).expect("nonempty board");
    let groups = coins_by_component(&state.board, &decomposition);
    let mut forward = Vec::new();
    let mut backward_segments: Vec<ActionSequence> = Vec::new();
    let mut hand = state.hand;
    for r in &decomposition.rectangles {
        let coins = groups[r].clone();
        let target = canonical_l(r);
        let goal_hand = hand + (coins.len() - target.len()) as u32;
        // Bank coins whose removal keeps the span; the planner then only
        // has to rearrange a minimal core.
        let mut core = coins.clone();
        let mut removed: Vec<(Configuration, Position)> = Vec::new();
        while let Some(extra) = find_redundant_coins(&core, 1) {
            removed.push((core.clone(), extra[0]));
            forward.push(Action::PickUp { at: extra[0] });
            core.remove(extra[0]);
            hand += 1;
        }
        let from = GameState::new(core, hand);
        let to = GameState::new(target, goal_hand);
        forward.extend(plan_to_state(&from, &to, PLAN_NODE_BUDGET)?);
        let mut back = plan_to_state(&to, &from, PLAN_NODE_BUDGET)?;
        // Re-seat the banked coins in reverse order; each re-seating is a
        // one-coin planning problem (a plain drop, or a short scaffolded
        // detour when the coin's cell lacks support on its own).
        for (with_coin, coin) in removed.iter().rev() {
            let before = GameState::new(with_coin.without(*coin), hand);
            hand -= 1;
            let after = GameState::new(with_coin.clone(), hand);
            back.extend(plan_to_state(&before, &after, PLAN_NODE_BUDGET)?);
        }
        backward_segments.push(back);
        hand = goal_hand;
    }
    backward_segments.reverse();
    let backward = backward_segments.concat();
    let expected = GameState::new(canonical_config(&state.board), hand);
    validate_sequence(state, &forward, Some(&expected))?;
    validate_sequence(&expected, &backward, Some(state))?;
    Ok(SubroutineTrace {
        name,
        forward,
        backward,
    })
}
