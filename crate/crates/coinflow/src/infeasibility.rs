//! Proofs that a puzzle cannot be solved: quickly checkable necessary
//! conditions, coin-count lower bounds for puzzles that would have to tear
//! one span component into two, machine-checkable certificates bundling
//! either kind of evidence, and a generator for arbitrarily lopsided
//! unsolvable instances.

use crate::engine::{legal_moves, single_move_between};
use crate::error::Error;
use crate::grid::{Configuration, Position, Rectangle};
use crate::oracle::{shortest_solution, SearchLimits};
use crate::span::{find_extra_coins, span, span_components};
use crate::words::{canonical_l_word, word_positions};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// An exact half-integer, stored as twice its value. The split bounds below
/// are all of the form `odd/2` or `even/2`, and comparisons against whole
/// coin counts must not go through floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(i64);

impl Half {
    /// The value `doubled / 2`, exactly.
    pub fn from_halves(doubled: i64) -> Half {
        Half(doubled)
    }

    pub fn from_int(n: i64) -> Half {
        Half(2 * n)
    }

    /// Twice the value, always exact.
    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Exact: every half-integer in range has an exact f64 form, and
        // Rust prints 5.0 as "5" and 6.5 as "6.5".
        write!(f, "{}", self.as_f64())
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Half {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Half, D::Error> {
        let v = f64::deserialize(deserializer)?;
        let doubled = v * 2.0;
        if !doubled.is_finite() || doubled.fract() != 0.0 || doubled.abs() > 2f64.powi(52) {
            return Err(D::Error::custom(format!("{v} is not a half-integer")));
        }
        Ok(Half(doubled as i64))
    }
}

/// One violated necessary condition, with enough data to re-check it.
/// Any single violation proves the puzzle unsolvable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// Moves conserve coins, so the two boards must have equal size.
    CardinalityMismatch { start: usize, target: usize },
    /// Spans never grow along moves; `witness` is a target-span cell
    /// outside the start span.
    SpanNotContained { witness: Position },
    /// The first move vacates some coin while the rest must still span the
    /// target's span; no start coin can be spared that way.
    NoExtraRelative,
    /// The last move drops a coin next to two others, so some target coin
    /// must have two occupied neighbors; none does.
    NoRedundantCoin,
    /// Removing `witness` from the target leaves all coins isolated, which
    /// forces any solution to be a single move — and no single legal move
    /// turns the start into the target.
    SingleMoveImpossible { witness: Position },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::CardinalityMismatch { .. } => "cardinality_mismatch",
            Violation::SpanNotContained { .. } => "span_not_contained",
            Violation::NoExtraRelative => "no_extra_relative",
            Violation::NoRedundantCoin => "no_redundant_coin",
            Violation::SingleMoveImpossible { .. } => "single_move_impossible",
        }
    }
}

/// Checks every quick necessary condition for `a` reaching `b` and returns
/// the violated ones, in a fixed order. An empty list means "no trivial
/// obstruction", not solvability. Equal boards violate nothing.
pub fn necessary_conditions(a: &Configuration, b: &Configuration) -> Vec<Violation> {
    let mut out = Vec::new();
    if a == b {
        return out;
    }
    if a.len() != b.len() {
        out.push(Violation::CardinalityMismatch {
            start: a.len(),
            target: b.len(),
        });
    }
    let span_a = span(a);
    let span_b = span(b);
    if let Some(witness) = span_b.iter().find(|&p| !span_a.contains(p)) {
        out.push(Violation::SpanNotContained { witness });
    }
    if find_extra_coins(a, Some(b), 1).is_none() {
        out.push(Violation::NoExtraRelative);
    }
    if !b.iter().any(|p| b.occupied_neighbors(p) >= 2) {
        out.push(Violation::NoRedundantCoin);
    }
    if let Some(witness) = b.iter().find(|&w| b.without(w).is_isolated()) {
        if single_move_between(a, b).is_none() {
            out.push(Violation::SingleMoveImpossible { witness });
        }
    }
    out
}

/// Validates that `r1` and `r2` face each other across a gap: their
/// projections overlap on exactly one axis, and on the other axis `h >= 2`
/// empty rows (or columns) separate them. Returns the gap width.
pub fn split_geometry(r1: &Rectangle, r2: &Rectangle) -> Result<u32, Error> {
    let x_overlap = r1.x0.max(r2.x0) <= r1.x1().min(r2.x1());
    let y_overlap = r1.y0.max(r2.y0) <= r1.y1().min(r2.y1());
    let gap = match (x_overlap, y_overlap) {
        (true, false) => r1.y0.max(r2.y0) - r1.y1().min(r2.y1()) - 1,
        (false, true) => r1.x0.max(r2.x0) - r1.x1().min(r2.x1()) - 1,
        _ => return Err(Error::GeometryPrecondition),
    };
    if gap < 2 {
        return Err(Error::GeometryPrecondition);
    }
    Ok(gap as u32)
}

fn bound_from_gap(r1: &Rectangle, r2: &Rectangle, extra: i64) -> Result<Half, Error> {
    let h = split_geometry(r1, r2)? as i64;
    let sides = (r1.half_perimeter() + r2.half_perimeter()) as i64;
    Ok(Half::from_halves(sides + h + extra))
}

/// Fewest coins any configuration can hold at the moment just before a move
/// first places `r1` and `r2` in different span components, given that they
/// start out inside one component: `(m1+n1+m2+n2+h-1)/2`. A board with
/// fewer coins can never separate the two rectangles.
pub fn split_bound(r1: &Rectangle, r2: &Rectangle) -> Result<Half, Error> {
    bound_from_gap(r1, r2, -1)
}

/// Sharper version of [`split_bound`], `(m1+n1+m2+n2+h+2)/2`, valid only
/// when no sequence of at most two moves already separates the rectangles
/// (the board just before a longer separation retains a coin with two
/// neighbors, and removing it cannot leave all coins isolated).
pub fn refined_split_bound(r1: &Rectangle, r2: &Rectangle) -> Result<Half, Error> {
    bound_from_gap(r1, r2, 2)
}

/// The refined count argument gives one extra half when both rectangles
/// have even half-perimeter and the gap is odd; recorded as metadata, never
/// used as the advertised bound.
fn parity_bound(r1: &Rectangle, r2: &Rectangle, h: u32) -> Option<Half> {
    (r1.is_even() && r2.is_even() && h % 2 == 1)
        .then(|| bound_from_gap(r1, r2, 3).expect("geometry already validated"))
}

/// Machine-checkable evidence that a puzzle is unsolvable. Everything a
/// checker needs is stored; [`check_certificate`] re-derives the claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A quick necessary condition fails.
    NecessaryCondition { violation: Violation },
    /// The target needs `r1` and `r2` in different span components, the
    /// start has them in one, and `coins` falls short of the separation
    /// bound. `refined` records which bound was used; `parity_bound`, when
    /// present, is a still stronger valid bound for this geometry.
    SplitBound {
        r1: Rectangle,
        r2: Rectangle,
        h: u32,
        bound: Half,
        coins: usize,
        refined: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        parity_bound: Option<Half>,
    },
    /// A complete search of the named bounded state space found no
    /// solution; `states` is the budget that sufficed to close it.
    ExhaustiveSearch { method: String, states: u64 },
}

/// True when any move sequence of length one or two, starting from `a`,
/// ends with `r1` and `r2` contained in two different span components.
pub(crate) fn split_within_two_moves(a: &Configuration, r1: &Rectangle, r2: &Rectangle) -> bool {
    let separated = |c: &Configuration| -> bool {
        let Ok(dec) = span_components(c) else {
            return false;
        };
        let k1 = dec.rectangles.iter().find(|k| k.contains_rect(r1));
        let k2 = dec.rectangles.iter().find(|k| k.contains_rect(r2));
        matches!((k1, k2), (Some(k1), Some(k2)) if k1 != k2)
    };
    for (from, to) in legal_moves(a) {
        let once = a.without(from).with(to);
        if separated(&once) {
            return true;
        }
        for (from2, to2) in legal_moves(&once) {
            if separated(&once.without(from2).with(to2)) {
                return true;
            }
        }
    }
    false
}

/// Searches for a pair of target-span components that sit inside a single
/// start-span component with facing geometry and too few coins to ever
/// separate. Tries the plain bound on every pair first, then the refined
/// bound (which costs a two-move search to justify). `None` means this
/// argument does not apply, not that the puzzle is solvable.
pub fn prove_unsolvable_by_split(a: &Configuration, b: &Configuration) -> Option<Certificate> {
    let dec_a = span_components(a).ok()?;
    let dec_b = span_components(b).ok()?;
    if dec_b.rectangles.len() < 2 {
        return None;
    }
    let coins = a.len();
    let have = Half::from_int(coins as i64);
    let mut candidates = Vec::new();
    for (i, r1) in dec_b.rectangles.iter().enumerate() {
        for r2 in dec_b.rectangles.iter().skip(i + 1) {
            let together = dec_a
                .rectangles
                .iter()
                .any(|k| k.contains_rect(r1) && k.contains_rect(r2));
            if !together {
                continue;
            }
            if let Ok(h) = split_geometry(r1, r2) {
                candidates.push((*r1, *r2, h));
            }
        }
    }
    for &(r1, r2, h) in &candidates {
        let bound = split_bound(&r1, &r2).expect("geometry already validated");
        if have < bound {
            return Some(Certificate::SplitBound {
                r1,
                r2,
                h,
                bound,
                coins,
                refined: false,
                parity_bound: None,
            });
        }
    }
    for &(r1, r2, h) in &candidates {
        let bound = refined_split_bound(&r1, &r2).expect("geometry already validated");
        if have < bound && !split_within_two_moves(a, &r1, &r2) {
            return Some(Certificate::SplitBound {
                r1,
                r2,
                h,
                bound,
                coins,
                refined: true,
                parity_bound: parity_bound(&r1, &r2, h),
            });
        }
    }
    None
}

/// Re-derives a certificate from scratch against the puzzle it claims to
/// settle. Accepts exactly the certificates whose evidence holds: the
/// violation is re-observed, the split arithmetic and geometry re-check
/// (including the two-move search behind a refined bound), or the recorded
/// exhaustive search re-runs to the same negative answer.
pub fn check_certificate(a: &Configuration, b: &Configuration, cert: &Certificate) -> bool {
    match cert {
        Certificate::NecessaryCondition { violation } => {
            necessary_conditions(a, b).contains(violation)
        }
        Certificate::SplitBound {
            r1,
            r2,
            h,
            bound,
            coins,
            refined,
            parity_bound: parity,
        } => {
            if *coins != a.len() {
                return false;
            }
            if split_geometry(r1, r2) != Ok(*h) {
                return false;
            }
            let Ok(dec_a) = span_components(a) else {
                return false;
            };
            if !dec_a
                .rectangles
                .iter()
                .any(|k| k.contains_rect(r1) && k.contains_rect(r2))
            {
                return false;
            }
            let Ok(dec_b) = span_components(b) else {
                return false;
            };
            let k1 = dec_b.rectangles.iter().find(|k| k.contains_rect(r1));
            let k2 = dec_b.rectangles.iter().find(|k| k.contains_rect(r2));
            if !matches!((k1, k2), (Some(k1), Some(k2)) if k1 != k2) {
                return false;
            }
            let expected = if *refined {
                refined_split_bound(r1, r2)
            } else {
                split_bound(r1, r2)
            };
            if expected != Ok(*bound) || Half::from_int(*coins as i64) >= *bound {
                return false;
            }
            if *refined && split_within_two_moves(a, r1, r2) {
                return false;
            }
            let expected_parity = if *refined {
                parity_bound(r1, r2, *h)
            } else {
                None
            };
            *parity == expected_parity
        }
        Certificate::ExhaustiveSearch { method, states } => match method.as_str() {
            "minimum_plus_one_reduction" => {
                crate::poking::solve_min_plus1(a, b).is_unsolvable()
            }
            "oracle" => {
                let limits = SearchLimits::with_max_states((*states).max(1) as usize);
                matches!(shortest_solution(a, b, &limits), Ok(None))
            }
            _ => false,
        },
    }
}

/// Builds an unsolvable puzzle on an `n × n` board, `n >= 9`, that defeats
/// every count-based solvability heuristic: the start has `⌊(n-2)/2⌋` spare
/// coins, the target has `⌊(n-5)/2⌋` coins with two neighbors, the target's
/// span sits strictly inside the start's — yet separating the target's two
/// rows would need more coins than the boards hold.
///
/// The start is a minimum configuration spanning the full square plus
/// fillers on the bottom row; the target spans only the top and bottom
/// rows, with the same filler count balancing the sizes.
pub fn gen_counterexample(n: u32) -> Result<(Configuration, Configuration), Error> {
    if n < 9 {
        return Err(Error::NTooSmall);
    }
    let fill_bottom_row = |c: &mut Configuration, count: u32| {
        for _ in 0..count {
            let free: Vec<Position> = (0..n as i32)
                .map(|x| Position { x, y: 0 })
                .filter(|&p| !c.contains(p))
                .collect();
            let chosen = free
                .iter()
                .find(|&&p| c.occupied_neighbors(p) == 0)
                .or_else(|| free.first())
                .expect("bottom row never fills up");
            c.insert(*chosen);
        }
    };
    let top_left = Position {
        x: 0,
        y: n as i32 - 1,
    };
    let mut a: Configuration = word_positions(top_left, &canonical_l_word(n, n))
        .into_iter()
        .collect();
    fill_bottom_row(&mut a, (n - 2) / 2);
    let mut b: Configuration = word_positions(top_left, &canonical_l_word(n, 1))
        .into_iter()
        .chain(word_positions(Position { x: 0, y: 0 }, &canonical_l_word(n, 1)))
        .collect();
    fill_bottom_row(&mut b, (n - 5) / 2);
    debug_assert_eq!(a.len(), b.len());
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span::find_redundant_coins;

    fn cfg(coords: &[(i32, i32)]) -> Configuration {
        Configuration::from_coords(coords)
    }

    #[test]
    fn half_values_compare_and_print() {
        assert_eq!(Half::from_int(5).to_string(), "5");
        assert_eq!(Half::from_halves(13).to_string(), "6.5");
        assert_eq!(Half::from_halves(-13).to_string(), "-6.5");
        assert!(Half::from_halves(13) > Half::from_int(6));
        assert!(Half::from_halves(13) < Half::from_int(7));
        assert!(Half::from_int(4).is_integer());
        assert!(!Half::from_halves(5).is_integer());
        assert_eq!(Half::from_halves(5).as_f64(), 2.5);
        assert_eq!(Half::from_halves(5).halves(), 5);
    }

    #[test]
    fn half_serde_round_trips_and_rejects_junk() {
        let x = Half::from_halves(13);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "6.5");
        assert_eq!(serde_json::from_str::<Half>(&json).unwrap(), x);
        assert_eq!(serde_json::from_str::<Half>("5").unwrap(), Half::from_int(5));
        assert!(serde_json::from_str::<Half>("1.3").is_err());
        assert!(serde_json::from_str::<Half>("\"x\"").is_err());
    }

    #[test]
    fn conditions_pass_on_solvable_one_move_puzzle() {
        let a = cfg(&[(0, 0), (0, 1), (1, 0)]);
        let b = cfg(&[(0, 1), (1, 0), (1, 1)]);
        assert_eq!(necessary_conditions(&a, &b), vec![]);
        assert_eq!(necessary_conditions(&a, &a), vec![]);
    }

    #[test]
    fn conditions_catch_cardinality_mismatch() {
        let a = cfg(&[(0, 0), (1, 0)]);
        let b = cfg(&[(0, 0)]);
        let got = necessary_conditions(&a, &b);
        assert_eq!(
            got,
            vec![
                Violation::CardinalityMismatch { start: 2, target: 1 },
                Violation::NoRedundantCoin,
                Violation::SingleMoveImpossible {
                    witness: Position { x: 0, y: 0 }
                },
            ]
        );
        assert_eq!(got[0].name(), "cardinality_mismatch");
    }

    #[test]
    fn conditions_catch_span_escape() {
        let a = cfg(&[(0, 0), (0, 1), (1, 0)]);
        let b = cfg(&[(10, 0), (11, 0), (10, 1)]);
        let got = necessary_conditions(&a, &b);
        assert_eq!(
            got,
            vec![
                Violation::SpanNotContained {
                    witness: Position { x: 10, y: 0 }
                },
                Violation::NoExtraRelative,
                Violation::SingleMoveImpossible {
                    witness: Position { x: 10, y: 0 }
                },
            ]
        );
    }

    #[test]
    fn conditions_catch_forced_single_move() {
        // Minimum start: no coin can be spared, and the all-isolated target
        // minus any coin stays isolated, forcing a (nonexistent) single move.
        let a = cfg(&[(0, 0), (0, 2), (2, 0)]);
        let b = cfg(&[(0, 2), (2, 2), (2, 0)]);
        let got = necessary_conditions(&a, &b);
        assert_eq!(
            got,
            vec![
                Violation::NoExtraRelative,
                Violation::NoRedundantCoin,
                Violation::SingleMoveImpossible {
                    witness: Position { x: 0, y: 2 }
                },
            ]
        );
        // The certified verdict agrees with a full search.
        let limits = SearchLimits::with_max_states(100_000);
        assert!(matches!(shortest_solution(&a, &b, &limits), Ok(None)));
    }

    #[test]
    fn geometry_requires_one_axis_overlap_and_a_real_gap() {
        let bottom = Rectangle::new(0, 0, 3, 1);
        let top = Rectangle::new(0, 4, 3, 1);
        assert_eq!(split_geometry(&bottom, &top), Ok(3));
        assert_eq!(split_geometry(&top, &bottom), Ok(3));
        // Transposed: columns facing across empty columns.
        let left = Rectangle::new(0, 0, 1, 3);
        let right = Rectangle::new(4, 0, 1, 3);
        assert_eq!(split_geometry(&left, &right), Ok(3));
        // Overlapping, diagonal, and gap-1 placements all fail.
        assert!(split_geometry(&bottom, &Rectangle::new(1, 0, 3, 1)).is_err());
        assert!(split_geometry(&bottom, &Rectangle::new(5, 3, 2, 2)).is_err());
        assert!(split_geometry(&bottom, &Rectangle::new(0, 2, 3, 1)).is_err());
    }

    #[test]
    fn split_bound_plug_ins() {
        let r31 = |y| Rectangle::new(0, y, 3, 1);
        assert_eq!(split_bound(&r31(0), &r31(4)), Ok(Half::from_int(5)));
        let dot = |y| Rectangle::new(0, y, 1, 1);
        assert_eq!(split_bound(&dot(0), &dot(3)), Ok(Half::from_halves(5)));
        // Two n-cell rows across an (n-2)-row gap need (3n-1)/2 coins.
        for n in [9u32, 10] {
            let row = |y| Rectangle::new(0, y, n, 1);
            assert_eq!(
                split_bound(&row(0), &row(n as i32 - 1)),
                Ok(Half::from_halves(3 * n as i64 - 1))
            );
        }
    }

    #[test]
    fn refined_split_bound_plug_ins() {
        let r31 = |y| Rectangle::new(0, y, 3, 1);
        assert_eq!(refined_split_bound(&r31(0), &r31(4)), Ok(Half::from_halves(13)));
        let dot = |y| Rectangle::new(0, y, 1, 1);
        assert_eq!(refined_split_bound(&dot(0), &dot(3)), Ok(Half::from_int(4)));
    }

    #[test]
    fn two_move_split_detector_finds_the_cut() {
        // A tower with a waist: moving (0,3) down to (1,1) strands the top.
        let a = cfg(&[(0, 0), (1, 0), (0, 1), (0, 3), (0, 4), (0, 6), (1, 6), (0, 7)]);
        let dec = span_components(&a).unwrap();
        assert_eq!(dec.rectangles, vec![Rectangle::new(0, 0, 2, 8)]);
        let bottom = Rectangle::new(0, 0, 1, 1);
        let top = Rectangle::new(0, 7, 1, 1);
        assert!(split_within_two_moves(&a, &bottom, &top));
    }

    #[test]
    fn refined_certificate_for_far_rows() {
        // Tall column that spans a 3x5 block; target keeps only the top and
        // bottom rows. Six coins beat the plain bound 5 but not the refined
        // bound 6.5, and no one- or two-move sequence separates the rows.
        let a = cfg(&[(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (2, 0)]);
        let b = cfg(&[(0, 0), (1, 0), (2, 0), (0, 4), (1, 4), (2, 4)]);
        assert_eq!(necessary_conditions(&a, &b), vec![]);
        let bottom = Rectangle::new(0, 0, 3, 1);
        let top = Rectangle::new(0, 4, 3, 1);
        assert!(!split_within_two_moves(&a, &bottom, &top));
        let cert = prove_unsolvable_by_split(&a, &b).unwrap();
        assert_eq!(
            cert,
            Certificate::SplitBound {
                r1: bottom,
                r2: top,
                h: 3,
                bound: Half::from_halves(13),
                coins: 6,
                refined: true,
                parity_bound: Some(Half::from_int(7)),
            }
        );
        assert!(check_certificate(&a, &b, &cert));
        // Tampered copies are rejected.
        let weaker = Certificate::SplitBound {
            r1: bottom,
            r2: top,
            h: 3,
            bound: Half::from_int(5),
            coins: 6,
            refined: false,
            parity_bound: None,
        };
        assert!(!check_certificate(&a, &b, &weaker));
        let wrong_parity = Certificate::SplitBound {
            r1: bottom,
            r2: top,
            h: 3,
            bound: Half::from_halves(13),
            coins: 6,
            refined: true,
            parity_bound: None,
        };
        assert!(!check_certificate(&a, &b, &wrong_parity));
        // And the verdict agrees with a full search.
        let limits = SearchLimits::with_max_states(2_000_000);
        assert!(matches!(shortest_solution(&a, &b, &limits), Ok(None)));
    }

    #[test]
    fn worst_case_family_sizes_and_certificates() {
        assert!(matches!(gen_counterexample(8), Err(Error::NTooSmall)));
        for (n, coins, doubled_bound) in [(9u32, 12usize, 26i64), (10, 14, 29)] {
            let (a, b) = gen_counterexample(n).unwrap();
            assert_eq!(a.len(), coins);
            assert_eq!(b.len(), coins);
            let side = n as i32;
            let dec_a = span_components(&a).unwrap();
            assert_eq!(dec_a.rectangles, vec![Rectangle::new(0, 0, n, n)]);
            let dec_b = span_components(&b).unwrap();
            assert_eq!(
                dec_b.rectangles,
                vec![Rectangle::new(0, 0, n, 1), Rectangle::new(0, side - 1, n, 1)]
            );
            let cert = prove_unsolvable_by_split(&a, &b).unwrap();
            assert_eq!(
                cert,
                Certificate::SplitBound {
                    r1: Rectangle::new(0, 0, n, 1),
                    r2: Rectangle::new(0, side - 1, n, 1),
                    h: n - 2,
                    bound: Half::from_halves(doubled_bound),
                    coins,
                    refined: false,
                    parity_bound: None,
                }
            );
            assert!(check_certificate(&a, &b, &cert));
        }
    }

    #[test]
    fn family_scales_with_added_coins() {
        // For every k from 2 up, some instance has k spare start coins and
        // k well-supported target coins yet stays certified unsolvable.
        for k in [2usize, 4, 10] {
            let n = 2 * k as u32 + 5;
            let (a, b) = gen_counterexample(n).unwrap();
            assert!(find_extra_coins(&a, Some(&b), k).is_some());
            assert!(find_redundant_coins(&b, k).is_some());
            let span_a = span(&a);
            let span_b = span(&b);
            assert!(span_b.is_subset(&span_a) && span_b != span_a);
            let cert = prove_unsolvable_by_split(&a, &b).unwrap();
            assert!(matches!(cert, Certificate::SplitBound { refined: false, .. }));
            assert!(check_certificate(&a, &b, &cert));
        }
    }

    #[test]
    fn certificate_serde_round_trips() {
        let nc = Certificate::NecessaryCondition {
            violation: Violation::SingleMoveImpossible {
                witness: Position { x: 0, y: 2 },
            },
        };
        let json = serde_json::to_string(&nc).unwrap();
        assert!(json.contains("\"kind\":\"necessary_condition\""));
        assert!(json.contains("\"condition\":\"single_move_impossible\""));
        assert_eq!(serde_json::from_str::<Certificate>(&json).unwrap(), nc);

        let sb = Certificate::SplitBound {
            r1: Rectangle::new(0, 0, 3, 1),
            r2: Rectangle::new(0, 4, 3, 1),
            h: 3,
            bound: Half::from_halves(13),
            coins: 6,
            refined: true,
            parity_bound: Some(Half::from_int(7)),
        };
        let json = serde_json::to_string(&sb).unwrap();
        assert!(json.contains("\"kind\":\"split_bound\""));
        assert!(json.contains("\"bound\":6.5"));
        assert_eq!(serde_json::from_str::<Certificate>(&json).unwrap(), sb);
        let plain = Certificate::SplitBound {
            r1: Rectangle::new(0, 0, 3, 1),
            r2: Rectangle::new(0, 4, 3, 1),
            h: 3,
            bound: Half::from_int(5),
            coins: 4,
            refined: false,
            parity_bound: None,
        };
        let json = serde_json::to_string(&plain).unwrap();
        assert!(!json.contains("parity_bound"));
        assert_eq!(serde_json::from_str::<Certificate>(&json).unwrap(), plain);

        let ex = Certificate::ExhaustiveSearch {
            method: "oracle".into(),
            states: 100_000,
        };
        let json = serde_json::to_string(&ex).unwrap();
        assert!(json.contains("\"kind\":\"exhaustive_search\""));
        assert_eq!(serde_json::from_str::<Certificate>(&json).unwrap(), ex);
    }

    #[test]
    fn checker_matches_recomputed_violations() {
        let a = cfg(&[(0, 0), (0, 2), (2, 0)]);
        let b = cfg(&[(0, 2), (2, 2), (2, 0)]);
        let good = Certificate::NecessaryCondition {
            violation: Violation::NoRedundantCoin,
        };
        assert!(check_certificate(&a, &b, &good));
        let bad = Certificate::NecessaryCondition {
            violation: Violation::CardinalityMismatch { start: 3, target: 3 },
        };
        assert!(!check_certificate(&a, &b, &bad));
    }

    #[test]
    fn exhaustive_search_certificate_rechecks_with_the_oracle() {
        let a = cfg(&[(0, 0), (0, 2), (2, 0)]);
        let b = cfg(&[(0, 2), (2, 2), (2, 0)]);
        let cert = Certificate::ExhaustiveSearch {
            method: "oracle".into(),
            states: 100_000,
        };
        assert!(check_certificate(&a, &b, &cert));
        let unknown_method = Certificate::ExhaustiveSearch {
            method: "guesswork".into(),
            states: 100_000,
        };
        assert!(!check_certificate(&a, &b, &unknown_method));
        // A solvable pair cannot carry a search certificate.
        let b2 = cfg(&[(0, 1), (1, 0), (1, 1)]);
        let a2 = cfg(&[(0, 0), (0, 1), (1, 0)]);
        assert!(!check_certificate(&a2, &b2, &cert));
    }
}
