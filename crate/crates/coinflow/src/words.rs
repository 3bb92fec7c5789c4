//! Step letters for staircase chains and the symbolic pair-sliding engine.
//!
//! A chain is read from its top-left coin toward the bottom-right; each
//! letter is the offset to the next coin. Long letters (`D`, `R`, `G`)
//! advance by taxicab distance two, the short letters (`d`, `r`) by one and
//! mark the chain's single adjacent pair. Sliding a pair member rewrites two
//! adjacent letters. This module implements those rewrites symbolically and
//! a normalization procedure driving any word to the form that hugs the
//! left and bottom sides of its bounding rectangle with the pair on top.

use crate::grid::{pos, Position};
use std::fmt;

/// A single step between consecutive chain coins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Letter {
    /// `D`: two cells down.
    DownTwo,
    /// `R`: two cells right.
    RightTwo,
    /// `G`: one right, one down.
    DiagDownRight,
    /// `d`: one cell down — the adjacent pair.
    DownOne,
    /// `r`: one cell right — the adjacent pair.
    RightOne,
}

use Letter::*;

impl Letter {
    pub(crate) fn delta(self) -> (i32, i32) {
        match self {
            DownTwo => (0, -2),
            RightTwo => (2, 0),
            DiagDownRight => (1, -1),
            DownOne => (0, -1),
            RightOne => (1, 0),
        }
    }

    /// Short letters join two adjacent coins.
    pub(crate) fn is_short(self) -> bool {
        matches!(self, DownOne | RightOne)
    }

    pub(crate) fn from_delta(d: (i32, i32)) -> Option<Letter> {
        Some(match d {
            (0, -2) => DownTwo,
            (2, 0) => RightTwo,
            (1, -1) => DiagDownRight,
            (0, -1) => DownOne,
            (1, 0) => RightOne,
            _ => return None,
        })
    }

    fn ch(self) -> char {
        match self {
            DownTwo => 'D',
            RightTwo => 'R',
            DiagDownRight => 'G',
            DownOne => 'd',
            RightOne => 'r',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ch())
    }
}

#[allow(dead_code)]
pub(crate) fn word_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.ch()).collect()
}

/// Coin positions of the chain starting at `start` (the top-left coin).
pub(crate) fn word_positions(start: Position, w: &[Letter]) -> Vec<Position> {
    let mut p = start;
    let mut out = vec![p];
    for &l in w {
        let (dx, dy) = l.delta();
        p = pos(p.x + dx, p.y + dy);
        out.push(p);
    }
    out
}

/// Width and height of the chain's bounding rectangle.
pub(crate) fn word_extent(w: &[Letter]) -> (u32, u32) {
    let m = 1 + w.iter().map(|l| l.delta().0).sum::<i32>();
    let n = 1 + w.iter().map(|l| -l.delta().1).sum::<i32>();
    (m as u32, n as u32)
}

/// Index of the unique short letter, if there is exactly one.
pub(crate) fn pair_index(w: &[Letter]) -> Option<usize> {
    let mut shorts = w.iter().enumerate().filter(|(_, l)| l.is_short());
    match (shorts.next(), shorts.next()) {
        (Some((i, _)), None) => Some(i),
        _ => None,
    }
}

/// Which member of the adjacent pair slides, and toward which side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    /// The upper-left pair member slides next to the previous coin.
    Left,
    /// The lower-right pair member slides next to the following coin.
    Right,
}

/// A symbolic poke: the side that slides and the short letter `e` (`d` or
/// `r`) giving the new contact direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct WordPoke {
    pub side: Side,
    pub e: Letter,
}

fn is_unit(d: (i32, i32)) -> bool {
    d.0.abs() + d.1.abs() == 1
}

/// Rewrites the two letters around the pair. A left poke turns `(s, t)`
/// into `(e, s + t − e)`, a right poke turns `(t, s)` into `(t + s − e, e)`;
/// legal exactly when `s − e` is a unit vector, which makes the slid coin
/// land adjacent to both its chain neighbor and its own old cell's
/// neighbor. Returns the new word, or `None` when illegal.
pub(crate) fn apply_word_poke(w: &[Letter], p: WordPoke) -> Option<Vec<Letter>> {
    let ip = pair_index(w)?;
    if !p.e.is_short() {
        return None;
    }
    let (ex, ey) = p.e.delta();
    let mut out = w.to_vec();
    match p.side {
        Side::Left => {
            if ip == 0 {
                return None;
            }
            let (sx, sy) = w[ip - 1].delta();
            let (tx, ty) = w[ip].delta();
            if !is_unit((sx - ex, sy - ey)) {
                return None;
            }
            out[ip - 1] = p.e;
            out[ip] = Letter::from_delta((sx + tx - ex, sy + ty - ey))?;
        }
        Side::Right => {
            if ip + 1 >= w.len() {
                return None;
            }
            let (tx, ty) = w[ip].delta();
            let (sx, sy) = w[ip + 1].delta();
            if !is_unit((sx - ex, sy - ey)) {
                return None;
            }
            out[ip] = Letter::from_delta((tx + sx - ex, ty + sy - ey))?;
            out[ip + 1] = p.e;
        }
    }
    Some(out)
}

/// All pokes legal on `w`.
pub(crate) fn legal_word_pokes(w: &[Letter]) -> Vec<WordPoke> {
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        for e in [DownOne, RightOne] {
            let p = WordPoke { side, e };
            if apply_word_poke(w, p).is_some() {
                out.push(p);
            }
        }
    }
    out
}

/// The slid coin's source and destination cells for a poke on the chain
/// starting at `start`. `None` when the poke is illegal.
pub(crate) fn word_poke_action(
    start: Position,
    w: &[Letter],
    p: WordPoke,
) -> Option<(Position, Position)> {
    let ip = pair_index(w)?;
    apply_word_poke(w, p)?;
    let ps = word_positions(start, w);
    let (ex, ey) = p.e.delta();
    Some(match p.side {
        Side::Left => (ps[ip], pos(ps[ip - 1].x + ex, ps[ip - 1].y + ey)),
        Side::Right => (ps[ip + 1], pos(ps[ip + 2].x - ex, ps[ip + 2].y - ey)),
    })
}

/// The pair-on-top word hugging the left and bottom sides: down the left
/// column, around the corner, then along the bottom row. Defined for the
/// rectangles whose minimum configurations carry an adjacent pair (m + n
/// odd).
pub(crate) fn poking_normal_form(m: u32, n: u32) -> Vec<Letter> {
    assert!(m >= 1 && n >= 1 && (m + n) % 2 == 1);
    let mut w = Vec::new();
    if n == 1 {
        w.push(RightOne);
        w.extend(std::iter::repeat(RightTwo).take((m as usize - 2) / 2));
    } else if n % 2 == 0 {
        w.push(DownOne);
        w.extend(std::iter::repeat(DownTwo).take((n as usize - 2) / 2));
        w.extend(std::iter::repeat(RightTwo).take((m as usize - 1) / 2));
    } else {
        w.push(DownOne);
        w.extend(std::iter::repeat(DownTwo).take((n as usize - 3) / 2));
        w.push(DiagDownRight);
        w.extend(std::iter::repeat(RightTwo).take((m as usize - 2) / 2));
    }
    debug_assert_eq!(word_extent(&w), (m, n));
    w
}

fn do_poke(w: &mut Vec<Letter>, p: WordPoke, out: &mut Vec<WordPoke>) {
    *w = apply_word_poke(w, p).expect("internal rewrite must be legal");
    out.push(p);
}

fn lp(w: &mut Vec<Letter>, e: Letter, out: &mut Vec<WordPoke>) {
    do_poke(w, WordPoke { side: Side::Left, e }, out);
}

fn rp(w: &mut Vec<Letter>, e: Letter, out: &mut Vec<WordPoke>) {
    do_poke(w, WordPoke { side: Side::Right, e }, out);
}

/// Left-pokes until the pair's letter index reaches `target`. Always
/// possible: a left poke is legal for every long predecessor letter.
fn walk_pair_left(w: &mut Vec<Letter>, target: usize, out: &mut Vec<WordPoke>) {
    loop {
        let ip = pair_index(w).unwrap();
        if ip <= target {
            debug_assert_eq!(ip, target);
            return;
        }
        let e = if w[ip - 1] == RightTwo { RightOne } else { DownOne };
        lp(w, e, out);
    }
}

/// Drives `w` to `poking_normal_form` of its extent, recording every poke.
/// The poke count is quadratic in the word length.
pub(crate) fn normalize_word(w: &[Letter]) -> (Vec<Letter>, Vec<WordPoke>) {
    let mut cur = w.to_vec();
    let mut pokes = Vec::new();
    assert!(
        pair_index(&cur).is_some(),
        "normalization needs a word with exactly one pair"
    );
    norm_rec(&mut cur, 0, &mut pokes);
    let (m, n) = word_extent(w);
    debug_assert_eq!(cur, poking_normal_form(m, n));
    (cur, pokes)
}

/// Normalizes the suffix `w[start..]`, which contains the pair: bring the
/// pair to the suffix head, push it one slot right, normalize the tail on
/// its own, then merge the leading letter back in.
fn norm_rec(w: &mut Vec<Letter>, start: usize, out: &mut Vec<WordPoke>) {
    if w.len() - start <= 1 {
        return;
    }
    walk_pair_left(w, start, out);
    let e = if w[start + 1] == RightTwo { RightOne } else { DownOne };
    rp(w, e, out);
    norm_rec(w, start + 1, out);
    fixup(w, start, out);
}

/// Whether `w[start..]` is `short · D^a · G? · R^b`.
fn suffix_is_normal(w: &[Letter], start: usize) -> bool {
    if !w[start].is_short() {
        return false;
    }
    let ranks = w[start + 1..].iter().map(|l| match l {
        DownTwo => 0,
        DiagDownRight => 1,
        RightTwo => 2,
        _ => 3,
    });
    let mut prev = 0;
    let mut diagonals = 0;
    for r in ranks {
        if r == 3 || r < prev {
            return false;
        }
        if r == 1 {
            diagonals += 1;
        }
        prev = r;
    }
    diagonals <= 1
}

/// Three pokes that move the pair's down-step right past one `D`, carrying
/// the diagonal letter with it: `… d G D …` becomes `… D d G …`.
fn carry_diagonal_right(w: &mut Vec<Letter>, out: &mut Vec<WordPoke>) {
    rp(w, RightOne, out);
    rp(w, DownOne, out);
    lp(w, DownOne, out);
}

/// Merges the long letter at `start` into the normalized tail
/// `w[start+1..] = short · D^a · G? · R^b`, restoring the normal form of
/// the whole suffix.
fn fixup(w: &mut Vec<Letter>, start: usize, out: &mut Vec<WordPoke>) {
    loop {
        let x = w[start];
        if x.is_short() {
            debug_assert!(suffix_is_normal(w, start));
            return;
        }
        let t = w[start + 1];
        debug_assert!(t.is_short());
        let d_run = w[start + 2..].iter().take_while(|&&l| l == DownTwo).count();
        let has_diag = w[start + 2..].contains(&DiagDownRight);
        match (x, t, has_diag) {
            (DownTwo, _, _) => {
                // (D,d) → (d,D); (D,r) → (d,G), and a tail led by r is a
                // bare row, so either result is already sorted.
                lp(w, DownOne, out);
                return;
            }
            (DiagDownRight, RightOne, _) => {
                // (G,r) → (d,R) over a row tail.
                lp(w, DownOne, out);
                return;
            }
            (DiagDownRight, DownOne, false) => {
                // G d D^a R^b → d D^a G R^b.
                lp(w, DownOne, out);
                for _ in 0..d_run {
                    carry_diagonal_right(w, out);
                }
                walk_pair_left(w, start, out);
                return;
            }
            (DiagDownRight, DownOne, true) => {
                // G d D^a G R^b → d D^{a+1} R^{b+1}: the meeting diagonal
                // steps cancel into one D and one R.
                lp(w, DownOne, out);
                for _ in 0..d_run {
                    carry_diagonal_right(w, out);
                }
                rp(w, RightOne, out);
                rp(w, RightOne, out);
                lp(w, DownOne, out);
                walk_pair_left(w, start, out);
                return;
            }
            (RightTwo, RightOne, _) => {
                // (R,r) → (r,R) over a row tail.
                lp(w, RightOne, out);
                return;
            }
            (RightTwo, DownOne, false) if d_run == 0 => {
                // R d R^b → d R^{b+1}.
                lp(w, RightOne, out);
                rp(w, RightOne, out);
                lp(w, DownOne, out);
                return;
            }
            (RightTwo, DownOne, false) => {
                // R d D^a R^b → G d D^{a−1} G R^b, then the case above the
                // diagonal-cancellation one finishes.
                lp(w, RightOne, out);
                rp(w, RightOne, out);
                rp(w, DownOne, out);
                lp(w, DownOne, out);
                for _ in 0..d_run - 1 {
                    carry_diagonal_right(w, out);
                }
                walk_pair_left(w, start + 1, out);
            }
            (RightTwo, DownOne, true) if d_run == 0 => {
                // R d G R^b → d G R^{b+1}.
                lp(w, RightOne, out);
                rp(w, RightOne, out);
                rp(w, RightOne, out);
                lp(w, DownOne, out);
                lp(w, DownOne, out);
                return;
            }
            (RightTwo, DownOne, true) => {
                // R d D^a G R^b → G d D^a R^{b+1}, then the plain carry
                // case finishes.
                lp(w, RightOne, out);
                rp(w, RightOne, out);
                rp(w, DownOne, out);
                lp(w, DownOne, out);
                for _ in 0..d_run - 1 {
                    carry_diagonal_right(w, out);
                }
                rp(w, RightOne, out);
                rp(w, RightOne, out);
                lp(w, DownOne, out);
                walk_pair_left(w, start + 1, out);
            }
            _ => unreachable!("short letters cannot lead the unmerged head"),
        }
    }
}

/// The canonical corner-hugging word: down the left side, then along the
/// bottom. When the rectangle carries a pair (m + n odd), the pair sits at
/// the top of the column for even heights and at the right end of the
/// bottom row for even widths.
pub(crate) fn canonical_l_word(m: u32, n: u32) -> Vec<Letter> {
    assert!(m >= 1 && n >= 1);
    let rep = std::iter::repeat::<Letter>;
    let mut w = Vec::new();
    if m == 1 {
        if n % 2 == 0 {
            w.push(DownOne);
            w.extend(rep(DownTwo).take((n as usize - 2) / 2));
        } else {
            w.extend(rep(DownTwo).take((n as usize - 1) / 2));
        }
    } else if n == 1 {
        if m % 2 == 0 {
            w.extend(rep(RightTwo).take((m as usize - 2) / 2));
            w.push(RightOne);
        } else {
            w.extend(rep(RightTwo).take((m as usize - 1) / 2));
        }
    } else if m % 2 == 1 && n % 2 == 1 {
        w.extend(rep(DownTwo).take((n as usize - 1) / 2));
        w.extend(rep(RightTwo).take((m as usize - 1) / 2));
    } else if m % 2 == 0 && n % 2 == 0 {
        w.extend(rep(DownTwo).take((n as usize - 2) / 2));
        w.push(DiagDownRight);
        w.extend(rep(RightTwo).take((m as usize - 2) / 2));
    } else if n % 2 == 0 {
        w.push(DownOne);
        w.extend(rep(DownTwo).take((n as usize - 2) / 2));
        w.extend(rep(RightTwo).take((m as usize - 1) / 2));
    } else {
        w.extend(rep(DownTwo).take((n as usize - 1) / 2));
        w.extend(rep(RightTwo).take((m as usize - 2) / 2));
        w.push(RightOne);
    }
    debug_assert_eq!(word_extent(&w), (m, n));
    w
}

/// How many slots the pair can occupy along a corner-hugging word of an
/// m × n rectangle with m + n odd: one per letter.
pub(crate) fn l_slot_count(m: u32, n: u32) -> usize {
    debug_assert_eq!((m + n) % 2, 1);
    ((m + n - 1) / 2) as usize
}

/// The corner-hugging word whose pair letter has index `slot` (0 = nearest
/// the top-left endpoint). `None` when `slot` is out of range.
pub(crate) fn l_pair_slot_word(m: u32, n: u32, slot: usize) -> Option<Vec<Letter>> {
    assert!(m >= 1 && n >= 1 && (m + n) % 2 == 1);
    if slot >= l_slot_count(m, n) {
        return None;
    }
    let rep = std::iter::repeat::<Letter>;
    let mut w = Vec::new();
    if n % 2 == 0 {
        // Odd width: the column holds n/2 slots, the bottom row the rest.
        let a = (n as usize - 2) / 2;
        let b = (m as usize - 1) / 2;
        if slot <= a {
            w.extend(rep(DownTwo).take(slot));
            w.push(DownOne);
            w.extend(rep(DownTwo).take(a - slot));
            w.extend(rep(RightTwo).take(b));
        } else {
            let j = slot - a - 1;
            w.extend(rep(DownTwo).take(a));
            w.push(DiagDownRight);
            w.extend(rep(RightTwo).take(j));
            w.push(RightOne);
            w.extend(rep(RightTwo).take(b - 1 - j));
        }
    } else if n == 1 {
        let j = slot;
        w.extend(rep(RightTwo).take(j));
        w.push(RightOne);
        w.extend(rep(RightTwo).take((m as usize - 2) / 2 - j));
    } else {
        // Even width, odd height ≥ 3.
        let a = (n as usize - 3) / 2;
        let c = (m as usize - 2) / 2;
        if slot <= a {
            w.extend(rep(DownTwo).take(slot));
            w.push(DownOne);
            w.extend(rep(DownTwo).take(a - slot));
            w.push(DiagDownRight);
            w.extend(rep(RightTwo).take(c));
        } else {
            let j = slot - a - 1;
            w.extend(rep(DownTwo).take((n as usize - 1) / 2));
            w.extend(rep(RightTwo).take(j));
            w.push(RightOne);
            w.extend(rep(RightTwo).take(c - j));
        }
    }
    debug_assert_eq!(word_extent(&w), (m, n));
    debug_assert_eq!(pair_index(&w), Some(slot));
    Some(w)
}

/// Whether the chain hugs the left and bottom sides of its bounding
/// rectangle when read from the top-left coin.
pub(crate) fn is_l_word(w: &[Letter]) -> bool {
    let (_, n) = word_extent(w);
    word_positions(pos(0, n as i32 - 1), w)
        .iter()
        .all(|p| p.x == 0 || p.y == 0)
}

/// Slides the pair one slot along a corner-hugging word, staying within the
/// corner-hugging family. Around the corner two rewrites are legal but only
/// one keeps the hug.
pub(crate) fn shift_pair(w: &[Letter], side: Side) -> Option<(WordPoke, Vec<Letter>)> {
    debug_assert!(is_l_word(w));
    let mut found = None;
    for e in [DownOne, RightOne] {
        let p = WordPoke { side, e };
        if let Some(nw) = apply_word_poke(w, p) {
            if is_l_word(&nw) {
                debug_assert!(found.is_none(), "the hug-keeping slide must be unique");
                found = Some((p, nw));
            }
        }
    }
    found
}
