//! Positions, rectangles and coin configurations on the square grid.

use crate::error::Error;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// A cell of the unbounded square grid. Ordered by `(y, x)` is *not* what we
/// want for reading order; the derived order is `(x, y)`, which is all the
/// deterministic iteration the library needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub x: i32,
    pub y: i32,
}

/// Shorthand constructor used pervasively in tests and internals.
pub const fn pos(x: i32, y: i32) -> Position {
    Position { x, y }
}

impl Position {
    /// The four orthogonal neighbors (right, left, up, down).
    pub fn neighbors(self) -> [Position; 4] {
        [
            pos(self.x + 1, self.y),
            pos(self.x - 1, self.y),
            pos(self.x, self.y + 1),
            pos(self.x, self.y - 1),
        ]
    }

    pub fn offset(self, dx: i32, dy: i32) -> Position {
        pos(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

// Positions serialize as two-element arrays `[x, y]` so configurations read
// naturally in JSON puzzle files.
impl Serialize for Position {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PosVisitor;
        impl<'de> Visitor<'de> for PosVisitor {
            type Value = Position;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a two-element array [x, y]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Position, A::Error> {
                let x = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(0, &self))?;
                let y = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(1, &self))?;
                if seq.next_element::<i32>()?.is_some() {
                    return Err(serde::de::Error::invalid_length(3, &self));
                }
                Ok(pos(x, y))
            }
        }
        deserializer.deserialize_tuple(2, PosVisitor)
    }
}

/// Taxicab distance between two cells; adjacency means distance exactly 1.
pub fn dist(p: Position, q: Position) -> u32 {
    p.x.abs_diff(q.x) + p.y.abs_diff(q.y)
}

/// An axis-aligned rectangle of cells: `m` columns by `n` rows with
/// bottom-left corner `(x0, y0)`. Both dimensions are at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rectangle {
    pub x0: i32,
    pub y0: i32,
    pub m: u32,
    pub n: u32,
}

impl Rectangle {
    pub fn new(x0: i32, y0: i32, m: u32, n: u32) -> Rectangle {
        assert!(m >= 1 && n >= 1, "rectangle dimensions must be positive");
        Rectangle { x0, y0, m, n }
    }

    /// Largest x coordinate inside the rectangle.
    pub fn x1(&self) -> i32 {
        self.x0 + self.m as i32 - 1
    }

    /// Largest y coordinate inside the rectangle.
    pub fn y1(&self) -> i32 {
        self.y0 + self.n as i32 - 1
    }

    pub fn contains(&self, p: Position) -> bool {
        p.x >= self.x0 && p.x <= self.x1() && p.y >= self.y0 && p.y <= self.y1()
    }

    pub fn contains_rect(&self, other: &Rectangle) -> bool {
        other.x0 >= self.x0 && other.x1() <= self.x1() && other.y0 >= self.y0 && other.y1() <= self.y1()
    }

    pub fn area(&self) -> u64 {
        self.m as u64 * self.n as u64
    }

    /// Half the perimeter in cell counts: `m + n`.
    pub fn half_perimeter(&self) -> u32 {
        self.m + self.n
    }

    /// A rectangle is even when `m + n` is even, odd otherwise. The parity
    /// controls whether a minimum configuration spanning it may contain an
    /// adjacent pair.
    pub fn is_even(&self) -> bool {
        (self.m + self.n) % 2 == 0
    }

    pub fn is_odd(&self) -> bool {
        !self.is_even()
    }

    /// Fewest coins whose span can be this whole rectangle: `⌈(m+n)/2⌉`.
    pub fn min_cardinality(&self) -> u32 {
        (self.m + self.n).div_ceil(2)
    }

    /// All cells, in column-major sorted order.
    pub fn cells(&self) -> impl Iterator<Item = Position> + '_ {
        let (x0, y0) = (self.x0, self.y0);
        let (m, n) = (self.m as i32, self.n as i32);
        (0..m).flat_map(move |dx| (0..n).map(move |dy| pos(x0 + dx, y0 + dy)))
    }

    /// Taxicab distance between the closest cells of two rectangles
    /// (0 when they touch or overlap).
    pub fn dist_to(&self, other: &Rectangle) -> u32 {
        let gap = |a0: i32, a1: i32, b0: i32, b1: i32| -> u32 {
            if b0 > a1 {
                (b0 - a1) as u32
            } else if a0 > b1 {
                (a0 - b1) as u32
            } else {
                0
            }
        };
        gap(self.x0, self.x1(), other.x0, other.x1())
            + gap(self.y0, self.y1(), other.y0, other.y1())
    }

    /// Smallest rectangle containing both.
    pub fn hull(&self, other: &Rectangle) -> Rectangle {
        let x0 = self.x0.min(other.x0);
        let y0 = self.y0.min(other.y0);
        let x1 = self.x1().max(other.x1());
        let y1 = self.y1().max(other.y1());
        Rectangle::new(x0, y0, (x1 - x0 + 1) as u32, (y1 - y0 + 1) as u32)
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} at ({}, {})", self.m, self.n, self.x0, self.y0)
    }
}

/// A set of coins, at most one per cell. Backed by a sorted set so that
/// iteration order, serialization and hashing are all canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration(BTreeSet<Position>);

impl Configuration {
    pub fn new() -> Configuration {
        Configuration(BTreeSet::new())
    }

    pub fn from_coords(coords: &[(i32, i32)]) -> Configuration {
        coords.iter().map(|&(x, y)| pos(x, y)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: Position) -> bool {
        self.0.contains(&p)
    }

    /// Inserts a coin; returns false if the cell was already occupied.
    pub fn insert(&mut self, p: Position) -> bool {
        self.0.insert(p)
    }

    /// Removes a coin; returns false if the cell was empty.
    pub fn remove(&mut self, p: Position) -> bool {
        self.0.remove(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = Position> + '_ {
        self.0.iter().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<Position> {
        &self.0
    }

    /// Number of occupied orthogonal neighbors of `p` (whether or not `p`
    /// itself is occupied).
    pub fn occupied_neighbors(&self, p: Position) -> u32 {
        p.neighbors().iter().filter(|q| self.contains(**q)).count() as u32
    }

    pub fn is_subset(&self, other: &Configuration) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Configuration) -> Configuration {
        Configuration(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &Configuration) -> Configuration {
        Configuration(self.0.difference(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &Configuration) -> Configuration {
        Configuration(self.0.intersection(&other.0).copied().collect())
    }

    /// The configuration with one coin removed.
    pub fn without(&self, p: Position) -> Configuration {
        let mut c = self.clone();
        c.remove(p);
        c
    }

    /// The configuration with one coin added.
    pub fn with(&self, p: Position) -> Configuration {
        let mut c = self.clone();
        c.insert(p);
        c
    }

    pub fn translate(&self, dx: i32, dy: i32) -> Configuration {
        self.iter().map(|p| p.offset(dx, dy)).collect()
    }

    /// All unordered adjacent pairs, each as `(a, b)` with `a < b`.
    pub fn adjacent_pairs(&self) -> Vec<(Position, Position)> {
        let mut pairs = Vec::new();
        for p in self.iter() {
            for q in [pos(p.x + 1, p.y), pos(p.x, p.y + 1)] {
                if self.contains(q) {
                    pairs.push((p.min(q), p.max(q)));
                }
            }
        }
        pairs.sort();
        pairs
    }

    /// True when no two coins are adjacent.
    pub fn is_isolated(&self) -> bool {
        self.adjacent_pairs().is_empty()
    }
}

impl FromIterator<Position> for Configuration {
    fn from_iter<T: IntoIterator<Item = Position>>(iter: T) -> Self {
        Configuration(iter.into_iter().collect())
    }
}

impl From<BTreeSet<Position>> for Configuration {
    fn from(set: BTreeSet<Position>) -> Self {
        Configuration(set)
    }
}

/// Smallest rectangle containing every coin.
pub fn enclosing_rectangle(c: &Configuration) -> Result<Rectangle, Error> {
    let mut iter = c.iter();
    let first = iter.next().ok_or(Error::Empty)?;
    let (mut x0, mut y0, mut x1, mut y1) = (first.x, first.y, first.x, first.y);
    for p in iter {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    Ok(Rectangle::new(x0, y0, (x1 - x0 + 1) as u32, (y1 - y0 + 1) as u32))
}

/// Translates the configuration so its enclosing rectangle's corner sits at
/// the origin; returns the translated set and the offset that was subtracted.
/// Useful as a dedup key; the offset lets callers restore absolute positions.
pub fn normalize_translation(c: &Configuration) -> Result<(Configuration, (i32, i32)), Error> {
    let rect = enclosing_rectangle(c)?;
    Ok((c.translate(-rect.x0, -rect.y0), (rect.x0, rect.y0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_is_taxicab() {
        assert_eq!(dist(pos(0, 0), pos(0, 0)), 0);
        assert_eq!(dist(pos(0, 0), pos(1, 0)), 1);
        assert_eq!(dist(pos(0, 0), pos(1, 1)), 2);
        assert_eq!(dist(pos(-2, 3), pos(1, -1)), 7);
        // Symmetry and the triangle inequality on a few triples.
        let pts = [pos(0, 0), pos(3, -2), pos(-1, 5), pos(2, 2)];
        for a in pts {
            for b in pts {
                assert_eq!(dist(a, b), dist(b, a));
                for c in pts {
                    assert!(dist(a, c) <= dist(a, b) + dist(b, c));
                }
            }
        }
    }

    #[test]
    fn neighbors_are_the_four_cells_at_distance_one() {
        let p = pos(4, -1);
        let ns = p.neighbors();
        assert_eq!(ns.len(), 4);
        for q in ns {
            assert_eq!(dist(p, q), 1);
        }
        let set: BTreeSet<_> = ns.into_iter().collect();
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn enclosing_rectangle_of_two_coins() {
        let c = Configuration::from_coords(&[(0, 0), (2, 0)]);
        let r = enclosing_rectangle(&c).unwrap();
        assert_eq!(r, Rectangle::new(0, 0, 3, 1));
        assert!(enclosing_rectangle(&Configuration::new()).is_err());
        assert_eq!(
            enclosing_rectangle(&Configuration::new()).unwrap_err().to_string(),
            "empty"
        );
    }

    #[test]
    fn rectangle_accessors() {
        let r = Rectangle::new(-1, 2, 4, 3);
        assert_eq!(r.x1(), 2);
        assert_eq!(r.y1(), 4);
        assert!(r.contains(pos(-1, 2)));
        assert!(r.contains(pos(2, 4)));
        assert!(!r.contains(pos(3, 4)));
        assert_eq!(r.area(), 12);
        assert_eq!(r.half_perimeter(), 7);
        assert!(r.is_odd());
        assert_eq!(r.min_cardinality(), 4);
        assert_eq!(r.cells().count(), 12);
    }

    #[test]
    fn rectangle_distances() {
        let a = Rectangle::new(0, 0, 3, 1);
        let b = Rectangle::new(0, 4, 3, 1);
        // Rows y=0 and y=4 share x range; closest cells are (x,0)-(x,4).
        assert_eq!(a.dist_to(&b), 4);
        assert_eq!(b.dist_to(&a), 4);
        let c = Rectangle::new(5, 2, 1, 1);
        // Closest pair is (2,0)-(5,2).
        assert_eq!(a.dist_to(&c), 5);
        assert_eq!(a.dist_to(&a), 0);
        let d = Rectangle::new(0, 1, 3, 1);
        assert_eq!(a.dist_to(&d), 1);
        assert_eq!(a.hull(&b), Rectangle::new(0, 0, 3, 5));
    }

    #[test]
    fn configuration_set_operations() {
        let mut c = Configuration::from_coords(&[(0, 0), (1, 0)]);
        assert_eq!(c.len(), 2);
        assert!(c.contains(pos(1, 0)));
        assert!(c.insert(pos(1, 1)));
        assert!(!c.insert(pos(1, 1)));
        assert!(c.remove(pos(0, 0)));
        assert!(!c.remove(pos(0, 0)));
        assert_eq!(c.len(), 2);
        assert_eq!(c.occupied_neighbors(pos(1, 0)), 1);
        assert_eq!(c.occupied_neighbors(pos(2, 0)), 1);
        assert_eq!(c.occupied_neighbors(pos(0, 1)), 1);

        let d = Configuration::from_coords(&[(1, 0)]);
        assert!(d.is_subset(&c));
        assert_eq!(c.difference(&d).len(), 1);
        assert_eq!(c.union(&d).len(), 2);
        assert_eq!(c.intersection(&d), d);
    }

    #[test]
    fn adjacent_pairs_and_isolation() {
        let c = Configuration::from_coords(&[(0, 0), (1, 0), (1, 1), (3, 3)]);
        let pairs = c.adjacent_pairs();
        assert_eq!(
            pairs,
            vec![(pos(0, 0), pos(1, 0)), (pos(1, 0), pos(1, 1))]
        );
        assert!(!c.is_isolated());
        assert!(Configuration::from_coords(&[(0, 0), (2, 0), (0, 2)]).is_isolated());
    }

    #[test]
    fn translation_normalization_keeps_shape() {
        let c = Configuration::from_coords(&[(2, 3), (4, 3), (2, 5)]);
        let (norm, (ox, oy)) = normalize_translation(&c).unwrap();
        assert_eq!((ox, oy), (2, 3));
        assert_eq!(norm, Configuration::from_coords(&[(0, 0), (2, 0), (0, 2)]));
        assert_eq!(norm.translate(ox, oy), c);
    }

    #[test]
    fn position_serializes_as_pair() {
        let c = Configuration::from_coords(&[(1, 2), (0, 0)]);
        let json = serde_json::to_string(&c).unwrap();
        // Sorted order makes the serialized form canonical.
        assert_eq!(json, "[[0,0],[1,2]]");
        let back: Configuration = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Configuration>("[[0,0,0]]").is_err());
    }
}
