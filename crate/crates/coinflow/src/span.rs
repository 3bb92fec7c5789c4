//! The span of a configuration: the closure under adding cells with at
//! least two occupied neighbors, plus the quantities derived from it.

use crate::error::Error;
use crate::grid::{enclosing_rectangle, Configuration, Position, Rectangle};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Cells not in `c` that have at least two occupied neighbors — exactly the
/// legal drop destinations.
pub fn adjacent_set(c: &Configuration) -> BTreeSet<Position> {
    let mut out = BTreeSet::new();
    for coin in c.iter() {
        for cand in coin.neighbors() {
            if !c.contains(cand) && c.occupied_neighbors(cand) >= 2 {
                out.insert(cand);
            }
        }
    }
    out
}

/// The closure of `c` under repeatedly adding every cell with two or more
/// occupied neighbors. Every move and drop stays inside the span of the
/// starting configuration, which is what makes it the central invariant.
pub fn span(c: &Configuration) -> Configuration {
    let mut set: BTreeSet<Position> = c.iter().collect();
    let mut queue: VecDeque<Position> = set
        .iter()
        .flat_map(|p| p.neighbors())
        .filter(|p| !set.contains(p))
        .collect();
    while let Some(p) = queue.pop_front() {
        if set.contains(&p) {
            continue;
        }
        let occ = p.neighbors().iter().filter(|q| set.contains(q)).count();
        if occ >= 2 {
            set.insert(p);
            for q in p.neighbors() {
                if !set.contains(&q) {
                    queue.push_back(q);
                }
            }
        }
    }
    set.into_iter().collect()
}

/// The round-by-round closure sequence: element 0 is `c` itself, each later
/// element adds every cell that had two occupied neighbors in the previous
/// round, and the last element is the span. Useful for structural checks
/// such as perimeter monotonicity along the construction.
pub fn span_closure_steps(c: &Configuration) -> Vec<Configuration> {
    let mut steps = vec![c.clone()];
    loop {
        let cur = steps.last().unwrap();
        let add = adjacent_set(cur);
        if add.is_empty() {
            break;
        }
        let next: Configuration = cur.iter().chain(add.into_iter()).collect();
        steps.push(next);
    }
    steps
}

/// A span decomposed into maximal rectangles, pairwise at distance >= 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanDecomposition {
    pub rectangles: Vec<Rectangle>,
}

impl SpanDecomposition {
    /// Total minimum cardinality: the sum of `⌈(m+n)/2⌉` over rectangles.
    pub fn min_cardinality(&self) -> u32 {
        self.rectangles.iter().map(|r| r.min_cardinality()).sum()
    }

    pub fn contains(&self, p: Position) -> bool {
        self.rectangles.iter().any(|r| r.contains(p))
    }

    /// The rectangle containing `p`, if any.
    pub fn component_of(&self, p: Position) -> Option<&Rectangle> {
        self.rectangles.iter().find(|r| r.contains(p))
    }
}

/// Decomposes the span of a nonempty configuration into its connected
/// components and checks the structural facts every span satisfies: each
/// component is a full rectangle and components are pairwise at distance at
/// least 3. A violation means a bug in `span` itself, reported as
/// `not_rectangular` rather than silently mis-decomposed.
pub fn span_components(c: &Configuration) -> Result<SpanDecomposition, Error> {
    if c.is_empty() {
        return Err(Error::Empty);
    }
    let s = span(c);
    let mut seen: BTreeSet<Position> = BTreeSet::new();
    let mut rects: Vec<Rectangle> = Vec::new();
    for start in s.iter() {
        if seen.contains(&start) {
            continue;
        }
        // Flood-fill one 4-connected component.
        let mut comp: BTreeSet<Position> = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(p) = queue.pop_front() {
            comp.insert(p);
            for q in p.neighbors() {
                if s.contains(q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        let comp: Configuration = comp.into_iter().collect();
        let rect = enclosing_rectangle(&comp).expect("component is nonempty");
        if comp.len() as u64 != rect.area() {
            return Err(Error::NotRectangular);
        }
        rects.push(rect);
    }
    rects.sort();
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            if rects[i].dist_to(&rects[j]) < 3 {
                return Err(Error::NotRectangular);
            }
        }
    }
    Ok(SpanDecomposition { rectangles: rects })
}

/// Perimeter of the union of unit squares at the coin cells:
/// `4·|C| − 2·(number of adjacent pairs)`.
pub fn perimeter(c: &Configuration) -> u32 {
    4 * c.len() as u32 - 2 * c.adjacent_pairs().len() as u32
}

/// Fewest coins that can span the same region as `c`.
pub fn min_cardinality(decomposition: &SpanDecomposition) -> u32 {
    decomposition.min_cardinality()
}

/// True when removing any single coin strictly shrinks the span.
pub fn is_minimal(c: &Configuration) -> bool {
    let full = span(c);
    c.iter().all(|coin| span(&c.without(coin)) != full)
}

/// True when `c` has the fewest possible coins for its span. Minimum implies
/// minimal but not conversely.
pub fn is_minimum(c: &Configuration) -> bool {
    if c.is_empty() {
        return true;
    }
    let decomposition = span_components(c).expect("span decomposition of nonempty configuration");
    c.len() as u32 == decomposition.min_cardinality()
}

/// Searches for `k` coins whose removal leaves a span still covering the
/// reference region: `span(B)` for `relative_to = Some(B)`, or all of
/// `span(A)` when `None` (the "absolute" reading). Exhaustive over singletons
/// and pairs on boards of up to 64 coins; beyond that (or for k >= 3) a
/// greedy pass removes one qualifying coin at a time, which can miss
/// solutions but never reports a wrong one.
pub fn find_extra_coins(
    a: &Configuration,
    relative_to: Option<&Configuration>,
    k: usize,
) -> Option<Vec<Position>> {
    let required: Configuration = match relative_to {
        Some(b) => span(b),
        None => span(a),
    };
    let ok = |removed: &[Position]| -> bool {
        let mut rest = a.clone();
        for &p in removed {
            rest.remove(p);
        }
        required.is_subset(&span(&rest))
    };
    if k == 0 {
        return if ok(&[]) { Some(vec![]) } else { None };
    }
    let coins: Vec<Position> = a.iter().collect();
    if k <= 2 && coins.len() <= 64 {
        if k == 1 {
            return coins.iter().find(|&&p| ok(&[p])).map(|&p| vec![p]);
        }
        for i in 0..coins.len() {
            for j in i + 1..coins.len() {
                if ok(&[coins[i], coins[j]]) {
                    return Some(vec![coins[i], coins[j]]);
                }
            }
        }
        return None;
    }
    // Greedy fallback: peel off one coin at a time while the condition holds.
    let mut removed: Vec<Position> = Vec::new();
    let mut rest = a.clone();
    for _ in 0..k {
        let next = rest.iter().find(|&p| {
            let cand = rest.without(p);
            required.is_subset(&span(&cand))
        })?;
        rest.remove(next);
        removed.push(next);
    }
    Some(removed)
}

/// Searches for an ordered list `b_1, …, b_k` where each `b_i` has at least
/// two neighbors among the coins remaining after `b_1 … b_{i−1}` are taken
/// away. Such coins can be picked up in order and dropped back in reverse.
/// Backtracking over candidate orders, smallest position first.
pub fn find_redundant_coins(b: &Configuration, k: usize) -> Option<Vec<Position>> {
    fn rec(current: &mut Configuration, chosen: &mut Vec<Position>, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        let candidates: Vec<Position> = current
            .iter()
            .filter(|&p| current.without(p).occupied_neighbors(p) >= 2)
            .collect();
        for p in candidates {
            current.remove(p);
            chosen.push(p);
            if rec(current, chosen, k) {
                return true;
            }
            chosen.pop();
            current.insert(p);
        }
        false
    }
    let mut current = b.clone();
    let mut chosen = Vec::new();
    rec(&mut current, &mut chosen, k).then_some(chosen)
}

/// Groups the coins of `c` by the span component that contains them.
/// Every coin lies in its own span, so the grouping is total.
pub fn coins_by_component(
    c: &Configuration,
    decomposition: &SpanDecomposition,
) -> HashMap<Rectangle, Configuration> {
    let mut map: HashMap<Rectangle, Configuration> = HashMap::new();
    for coin in c.iter() {
        let rect = decomposition
            .component_of(coin)
            .expect("every coin lies inside its span");
        map.entry(*rect).or_default().insert(coin);
    }
    map
}
