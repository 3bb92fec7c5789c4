//! Grid isometries: signed axis permutations composed with translations.
//! Used to normalize an 'L' onto the bottom-left corner of its span, build
//! action templates there, and map them back to the board frame.

use crate::engine::Action;
use crate::grid::{pos, Configuration, Position, Rectangle};

/// An isometry `p ↦ M·p + t` with `M` a signed permutation matrix, stored
/// row-major as `[a, b, c, d]`: `x' = a·x + b·y + tx`, `y' = c·x + d·y + ty`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Isometry {
    m: [i32; 4],
    t: (i32, i32),
}

impl Isometry {
    pub(crate) fn identity() -> Isometry {
        Isometry {
            m: [1, 0, 0, 1],
            t: (0, 0),
        }
    }

    /// Reflection of `r` onto itself across its vertical center line.
    pub(crate) fn mirror_x_within(r: &Rectangle) -> Isometry {
        Isometry {
            m: [-1, 0, 0, 1],
            t: (r.x0 + r.x1(), 0),
        }
    }

    /// Reflection of `r` onto itself across its horizontal center line.
    pub(crate) fn mirror_y_within(r: &Rectangle) -> Isometry {
        Isometry {
            m: [1, 0, 0, -1],
            t: (0, r.y0 + r.y1()),
        }
    }

    /// Half-turn of `r` onto itself.
    pub(crate) fn half_turn_within(r: &Rectangle) -> Isometry {
        Isometry {
            m: [-1, 0, 0, -1],
            t: (r.x0 + r.x1(), r.y0 + r.y1()),
        }
    }

    /// Axis swap fixing `r`'s bottom-left corner; maps `r` onto its
    /// transpose at the same corner.
    pub(crate) fn transpose_at(r: &Rectangle) -> Isometry {
        Isometry {
            m: [0, 1, 1, 0],
            t: (r.x0 - r.y0, r.y0 - r.x0),
        }
    }

    pub(crate) fn inverse(&self) -> Isometry {
        let [a, b, c, d] = self.m;
        let (tx, ty) = self.t;
        // The linear part is orthogonal, so its inverse is its transpose.
        Isometry {
            m: [a, c, b, d],
            t: (-(a * tx + c * ty), -(b * tx + d * ty)),
        }
    }

    /// `self` followed by `other`.
    pub(crate) fn then(&self, other: &Isometry) -> Isometry {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        let (tx, ty) = self.t;
        Isometry {
            m: [
                e * a + f * c,
                e * b + f * d,
                g * a + h * c,
                g * b + h * d,
            ],
            t: (
                e * tx + f * ty + other.t.0,
                g * tx + h * ty + other.t.1,
            ),
        }
    }

    pub(crate) fn apply(&self, p: Position) -> Position {
        let [a, b, c, d] = self.m;
        pos(
            a * p.x + b * p.y + self.t.0,
            c * p.x + d * p.y + self.t.1,
        )
    }

    pub(crate) fn apply_config(&self, c: &Configuration) -> Configuration {
        c.iter().map(|p| self.apply(p)).collect()
    }

    pub(crate) fn apply_rect(&self, r: &Rectangle) -> Rectangle {
        let p = self.apply(pos(r.x0, r.y0));
        let q = self.apply(pos(r.x1(), r.y1()));
        let (x0, x1) = (p.x.min(q.x), p.x.max(q.x));
        let (y0, y1) = (p.y.min(q.y), p.y.max(q.y));
        Rectangle::new(x0, y0, (x1 - x0 + 1) as u32, (y1 - y0 + 1) as u32)
    }

    pub(crate) fn apply_action(&self, a: Action) -> Action {
        match a {
            Action::Move { from, to } => Action::Move {
                from: self.apply(from),
                to: self.apply(to),
            },
            Action::PickUp { at } => Action::PickUp { at: self.apply(at) },
            Action::Drop { at } => Action::Drop { at: self.apply(at) },
        }
    }

    pub(crate) fn apply_actions(&self, seq: &[Action]) -> Vec<Action> {
        seq.iter().map(|&a| self.apply_action(a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<Isometry> {
        let r = Rectangle::new(-2, 3, 5, 4);
        vec![
            Isometry::identity(),
            Isometry::mirror_x_within(&r),
            Isometry::mirror_y_within(&r),
            Isometry::half_turn_within(&r),
            Isometry::transpose_at(&r),
        ]
    }

    #[test]
    fn inverse_round_trips() {
        for g in sample() {
            for p in [pos(0, 0), pos(3, -1), pos(-4, 7)] {
                assert_eq!(g.inverse().apply(g.apply(p)), p);
                assert_eq!(g.apply(g.inverse().apply(p)), p);
            }
        }
    }

    #[test]
    fn composition_applies_left_to_right() {
        let r = Rectangle::new(0, 0, 3, 2);
        let g = Isometry::mirror_x_within(&r).then(&Isometry::mirror_y_within(&r));
        assert_eq!(g.apply(pos(0, 0)), pos(2, 1));
        assert_eq!(g, Isometry::half_turn_within(&r));
    }

    #[test]
    fn rect_symmetries_fix_the_rectangle() {
        let r = Rectangle::new(-2, 3, 5, 4);
        for g in [
            Isometry::mirror_x_within(&r),
            Isometry::mirror_y_within(&r),
            Isometry::half_turn_within(&r),
        ] {
            assert_eq!(g.apply_rect(&r), r);
            assert_eq!(g.then(&g), Isometry::identity());
        }
    }

    #[test]
    fn transpose_swaps_extents() {
        let r = Rectangle::new(4, -1, 5, 2);
        let g = Isometry::transpose_at(&r);
        assert_eq!(g.apply_rect(&r), Rectangle::new(4, -1, 2, 5));
        assert_eq!(g.apply(pos(4, -1)), pos(4, -1));
        assert_eq!(g.apply(pos(8, 0)), pos(5, 3));
        assert_eq!(g.then(&g), Isometry::identity());
    }

    #[test]
    fn distances_are_preserved() {
        use crate::grid::dist;
        for g in sample() {
            let (p, q) = (pos(1, 2), pos(-3, 5));
            assert_eq!(dist(g.apply(p), g.apply(q)), dist(p, q));
        }
    }
}
