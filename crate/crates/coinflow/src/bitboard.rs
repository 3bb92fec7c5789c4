//! Packed board representation for bounded searches: boards whose span fits
//! in a rectangle of at most 128 cells become single `u128` words, with
//! neighbor counting done by shifts.

use crate::grid::{pos, Configuration, Position, Rectangle};

/// A fixed rectangle of at most 128 cells acting as the coordinate frame for
/// packed boards. Bit `i` covers the cell at `(x0 + i % m, y0 + i / m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct SpanBox {
    pub rect: Rectangle,
    /// Mask of all in-box bits.
    all: u128,
    /// Mask of bits in the leftmost column.
    first_col: u128,
    /// Mask of bits in the rightmost column.
    last_col: u128,
}

impl SpanBox {
    /// Returns `None` when the rectangle exceeds 128 cells.
    pub fn new(rect: Rectangle) -> Option<SpanBox> {
        if rect.area() > 128 {
            return None;
        }
        let m = rect.m as u32;
        let cells = (rect.m * rect.n) as u32;
        let all = if cells == 128 { u128::MAX } else { (1u128 << cells) - 1 };
        let mut first_col = 0u128;
        let mut last_col = 0u128;
        for row in 0..rect.n {
            first_col |= 1u128 << (row * m);
            last_col |= 1u128 << (row * m + m - 1);
        }
        Some(SpanBox {
            rect,
            all,
            first_col,
            last_col,
        })
    }

    pub fn index(&self, p: Position) -> Option<u32> {
        if !self.rect.contains(p) {
            return None;
        }
        let dx = (p.x - self.rect.x0) as u32;
        let dy = (p.y - self.rect.y0) as u32;
        Some(dy * self.rect.m + dx)
    }

    pub fn position(&self, index: u32) -> Position {
        let dx = index % self.rect.m;
        let dy = index / self.rect.m;
        pos(self.rect.x0 + dx as i32, self.rect.y0 + dy as i32)
    }

    /// Packs a configuration; `None` if any coin falls outside the box.
    pub fn pack(&self, c: &Configuration) -> Option<u128> {
        let mut bits = 0u128;
        for coin in c.iter() {
            bits |= 1u128 << self.index(coin)?;
        }
        Some(bits)
    }

    pub fn unpack(&self, mut bits: u128) -> Configuration {
        let mut out = Configuration::new();
        while bits != 0 {
            let i = bits.trailing_zeros();
            out.insert(self.position(i));
            bits &= bits - 1;
        }
        out
    }

    pub fn all_mask(&self) -> u128 {
        self.all
    }

    /// Cells whose left neighbor (x − 1) is occupied.
    fn from_left(&self, b: u128) -> u128 {
        (b << 1) & !self.first_col & self.all
    }

    /// Cells whose right neighbor is occupied.
    fn from_right(&self, b: u128) -> u128 {
        (b >> 1) & !self.last_col
    }

    /// Cells whose lower neighbor (y − 1) is occupied.
    fn from_below(&self, b: u128) -> u128 {
        (b << self.rect.m) & self.all
    }

    /// Cells whose upper neighbor is occupied.
    fn from_above(&self, b: u128) -> u128 {
        b >> self.rect.m
    }

    /// Mask of cells with at least two occupied neighbors inside the box.
    pub fn ge2_neighbors(&self, b: u128) -> u128 {
        let l = self.from_left(b);
        let r = self.from_right(b);
        let u = self.from_above(b);
        let d = self.from_below(b);
        let horiz_both = l & r;
        let horiz_one = l ^ r;
        let vert_both = u & d;
        let vert_one = u ^ d;
        horiz_both | vert_both | (horiz_one & vert_one)
    }

    /// Mask of cells with at least three occupied neighbors inside the box.
    pub fn ge3_neighbors(&self, b: u128) -> u128 {
        let l = self.from_left(b);
        let r = self.from_right(b);
        let u = self.from_above(b);
        let d = self.from_below(b);
        ((l & r) & (u | d)) | ((u & d) & (l | r))
    }

    /// Fixed point of adding every free cell with two occupied neighbors.
    /// Correct as a span only when the true span fits inside the box, which
    /// holds whenever the box contains the enclosing rectangle of the span.
    pub fn span_closure(&self, mut b: u128) -> u128 {
        loop {
            let add = self.ge2_neighbors(b) & !b;
            if add == 0 {
                return b;
            }
            b |= add;
        }
    }

    /// All legal moves `(from, to)` on the packed board, in bit order of the
    /// destination then the source. A destination with three or more
    /// occupied neighbors accepts any other coin as the mover; one with
    /// exactly two accepts any coin except those two supports.
    pub fn legal_moves(&self, b: u128) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let dests = self.ge2_neighbors(b) & !b;
        let ge3 = self.ge3_neighbors(b);
        let mut d = dests;
        while d != 0 {
            let to = d.trailing_zeros();
            d &= d - 1;
            let movers = if ge3 & (1u128 << to) != 0 {
                b
            } else {
                // Exactly two supports: exclude both.
                let p = self.position(to);
                let mut support = 0u128;
                for q in p.neighbors() {
                    if let Some(i) = self.index(q) {
                        support |= (1u128 << i) & b;
                    }
                }
                b & !support
            };
            let mut mv = movers;
            while mv != 0 {
                let from = mv.trailing_zeros();
                mv &= mv - 1;
                out.push((from, to));
            }
        }
        out
    }
}
