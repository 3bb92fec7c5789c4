//! Puzzle files: a start and a target configuration with optional
//! metadata, read and written in two formats.
//!
//! The grid format is two blocks of `.`/`o` rows separated by a `---`
//! line, oriented y-up: the bottom-left character of a block is its
//! origin, which defaults to (0, 0) and can be overridden per block with a
//! `# origin X Y` comment line. The JSON format
//! `{"start": [[x,y], ...], "target": [[x,y], ...]}` is the authoritative
//! interchange form and also carries the metadata.

use crate::error::Error;
use crate::grid::{Configuration, Position, Rectangle};
use crate::span::span;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A puzzle: can `start` be played into `target`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuzzleFile {
    pub start: Configuration,
    pub target: Configuration,
    pub name: Option<String>,
    pub source: Option<String>,
}

impl PuzzleFile {
    /// A bare puzzle with no metadata.
    pub fn new(start: Configuration, target: Configuration) -> PuzzleFile {
        PuzzleFile {
            start,
            target,
            name: None,
            source: None,
        }
    }

    /// The JSON interchange form (coins as `[x, y]` pairs, metadata kept).
    pub fn to_json(&self) -> String {
        let bridge = PuzzleJson {
            start: self.start.iter().map(|p| (p.x, p.y)).collect(),
            target: self.target.iter().map(|p| (p.x, p.y)).collect(),
            name: self.name.clone(),
            source: self.source.clone(),
        };
        let mut text = serde_json::to_string_pretty(&bridge).expect("puzzle JSON never fails");
        text.push('\n');
        text
    }
}

#[derive(Serialize, Deserialize)]
struct PuzzleJson {
    start: Vec<(i32, i32)>,
    target: Vec<(i32, i32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

/// Parses either format, auto-detected: text whose first non-blank
/// character is `{` is JSON, anything else is the grid format. Either way
/// both configurations must be nonempty and free of repeated coins.
pub fn parse_puzzle(text: &str) -> Result<PuzzleFile, Error> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_grid(text)
    }
}

fn parse_json(text: &str) -> Result<PuzzleFile, Error> {
    let bridge: PuzzleJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line().max(1),
        column: e.column().max(1),
        message: strip_location(&e.to_string()),
    })?;
    let start = coords_to_config(&bridge.start)?;
    let target = coords_to_config(&bridge.target)?;
    if start.is_empty() || target.is_empty() {
        return Err(Error::Empty);
    }
    Ok(PuzzleFile {
        start,
        target,
        name: bridge.name,
        source: bridge.source,
    })
}

/// serde_json appends " at line L column C" to its messages; the location
/// already lives in the structured error fields.
fn strip_location(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn coords_to_config(coords: &[(i32, i32)]) -> Result<Configuration, Error> {
    let mut c = Configuration::new();
    for &(x, y) in coords {
        if !c.insert(Position { x, y }) {
            return Err(Error::DuplicateCoin);
        }
    }
    Ok(c)
}

fn parse_grid(text: &str) -> Result<PuzzleFile, Error> {
    struct Block {
        origin: (i32, i32),
        rows: Vec<(usize, String)>,
    }
    let mut blocks = vec![Block {
        origin: (0, 0),
        rows: vec![],
    }];
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end();
        if line.trim() == "---" {
            if !blocks.last().unwrap().rows.is_empty() || blocks.len() > 1 {
                blocks.push(Block {
                    origin: (0, 0),
                    rows: vec![],
                });
            } else {
                return Err(Error::Parse {
                    line: lineno,
                    column: 1,
                    message: "separator before any grid rows".to_string(),
                });
            }
            continue;
        }
        if let Some(rest) = line.trim_start().strip_prefix('#') {
            let words: Vec<&str> = rest.split_whitespace().collect();
            if words.first() == Some(&"origin") {
                let parsed = (words.len() == 3)
                    .then(|| Some((words[1].parse().ok()?, words[2].parse().ok()?)))
                    .flatten();
                match parsed {
                    Some(origin) => blocks.last_mut().unwrap().origin = origin,
                    None => {
                        return Err(Error::Parse {
                            line: lineno,
                            column: 1,
                            message: "origin comment must read `# origin X Y`".to_string(),
                        })
                    }
                }
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        blocks.last_mut().unwrap().rows.push((lineno, line.to_string()));
    }
    if blocks.len() != 2 {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: format!("expected exactly two blocks, found {}", blocks.len()),
        });
    }
    let mut configs = Vec::new();
    for block in &blocks {
        let mut c = Configuration::new();
        let height = block.rows.len();
        for (row_index, (lineno, row)) in block.rows.iter().enumerate() {
            // The last row of the block is the bottom of the diagram.
            let y = block.origin.1 + (height - 1 - row_index) as i32;
            for (j, ch) in row.chars().enumerate() {
                let x = block.origin.0 + j as i32;
                match ch {
                    '.' => {}
                    'o' => {
                        c.insert(Position { x, y });
                    }
                    other => {
                        return Err(Error::Parse {
                            line: *lineno,
                            column: j + 1,
                            message: format!("expected `.` or `o`, found {other:?}"),
                        })
                    }
                }
            }
        }
        if c.is_empty() {
            return Err(Error::Empty);
        }
        configs.push(c);
    }
    let target = configs.pop().unwrap();
    let start = configs.pop().unwrap();
    Ok(PuzzleFile::new(start, target))
}

/// Writes the canonical grid form: each block spans its bounding box, with
/// an origin comment only when the bounding box is not anchored at (0, 0).
/// Parsing the result reproduces the same configurations, and re-rendering
/// a parsed canonical text is byte-identical.
pub fn render_puzzle(p: &PuzzleFile) -> String {
    let mut out = render_grid_block(&p.start);
    out.push_str("---\n");
    out.push_str(&render_grid_block(&p.target));
    out
}

fn render_grid_block(c: &Configuration) -> String {
    let xs: Vec<i32> = c.iter().map(|p| p.x).collect();
    let ys: Vec<i32> = c.iter().map(|p| p.y).collect();
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let mut out = String::new();
    if (x0, y0) != (0, 0) {
        out.push_str(&format!("# origin {x0} {y0}\n"));
    }
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            out.push(if c.contains(Position { x, y }) { 'o' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// Draws `coins` distinct cells uniformly from the rectangle, rejecting
/// samples until the span is exactly the rectangle. Fails once no sample
/// can work (too few or too many coins) or after a generous attempt cap.
pub fn random_configuration(
    r: &Rectangle,
    coins: usize,
    rng: &mut impl Rng,
) -> Result<Configuration, Error> {
    let cells: Vec<Position> = r.cells().collect();
    if coins < r.min_cardinality() as usize || coins > cells.len() {
        return Err(Error::GenerationFailed);
    }
    let full: Configuration = r.cells().collect();
    let mut deck = cells;
    for _ in 0..10_000 {
        deck.shuffle(rng);
        let sample: Configuration = deck[..coins].iter().copied().collect();
        if span(&sample) == full {
            return Ok(sample);
        }
    }
    Err(Error::GenerationFailed)
}

/// A reproducible random puzzle: start and target drawn independently
/// from the same rectangle with the same coin count.
pub fn random_puzzle(r: &Rectangle, coins: usize, seed: u64) -> Result<PuzzleFile, Error> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let start = random_configuration(r, coins, &mut rng)?;
    let target = random_configuration(r, coins, &mut rng)?;
    Ok(PuzzleFile::new(start, target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tiny_grid_blocks_parse_bottom_up() {
        let p = parse_puzzle("o.o\n---\noo.\n").unwrap();
        assert_eq!(p.start, Configuration::from_coords(&[(0, 0), (2, 0)]));
        assert_eq!(p.target, Configuration::from_coords(&[(0, 0), (1, 0)]));
        // Multi-row blocks: the first text row is the top.
        let p = parse_puzzle("o.\n.o\n---\no\n").unwrap();
        assert_eq!(p.start, Configuration::from_coords(&[(0, 1), (1, 0)]));
    }

    #[test]
    fn origin_comments_shift_blocks() {
        let text = "# origin 2 3\noo\n---\n# origin -1 0\no.o\n";
        let p = parse_puzzle(text).unwrap();
        assert_eq!(p.start, Configuration::from_coords(&[(2, 3), (3, 3)]));
        assert_eq!(p.target, Configuration::from_coords(&[(-1, 0), (1, 0)]));
    }

    #[test]
    fn json_puzzles_parse_and_keep_metadata() {
        let text = r#"{"start": [[0,0],[2,0],[4,0]], "target": [[0,0],[1,0],[2,0]], "name": "row"}"#;
        let p = parse_puzzle(text).unwrap();
        assert_eq!(p.start.len(), 3);
        assert_eq!(p.name.as_deref(), Some("row"));
        let back = parse_puzzle(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn malformed_inputs_fail_with_positions() {
        match parse_puzzle("o.o\n") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("two blocks")),
            other => panic!("expected a block-count error, got {other:?}"),
        }
        match parse_puzzle("oxo\n---\no\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 2)),
            other => panic!("expected a character error, got {other:?}"),
        }
        match parse_puzzle("o\n---\no\n---\no\n") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("found 3")),
            other => panic!("expected a block-count error, got {other:?}"),
        }
        assert!(matches!(
            parse_puzzle(r#"{"start": [[0,0],[0,0]], "target": [[1,1]]}"#),
            Err(Error::DuplicateCoin)
        ));
        assert!(matches!(
            parse_puzzle(r#"{"start": [], "target": [[1,1]]}"#),
            Err(Error::Empty)
        ));
        match parse_puzzle("{\n  \"start\": oops\n}") {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(!message.contains("at line"));
            }
            other => panic!("expected a JSON error, got {other:?}"),
        }
    }

    #[test]
    fn canonical_grid_text_round_trips_byte_identically() {
        let p = PuzzleFile::new(
            Configuration::from_coords(&[(0, 0), (1, 0), (1, 1), (3, 0)]),
            Configuration::from_coords(&[(2, 5), (3, 5), (4, 5)]),
        );
        let text = render_puzzle(&p);
        let parsed = parse_puzzle(&text).unwrap();
        assert_eq!(parsed.start, p.start);
        assert_eq!(parsed.target, p.target);
        assert_eq!(render_puzzle(&parsed), text);
        assert!(text.contains("# origin 2 5"));
    }

    #[test]
    fn random_configurations_span_their_rectangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = Rectangle::new(0, 0, 4, 3);
        let full: Configuration = r.cells().collect();
        for coins in 4..=7 {
            let c = random_configuration(&r, coins, &mut rng).unwrap();
            assert_eq!(c.len(), coins);
            assert_eq!(span(&c), full);
        }
        assert!(matches!(
            random_configuration(&r, 2, &mut rng),
            Err(Error::GenerationFailed)
        ));
        assert!(matches!(
            random_configuration(&r, 13, &mut rng),
            Err(Error::GenerationFailed)
        ));
    }
}
