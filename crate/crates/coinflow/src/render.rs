//! ASCII and SVG diagrams of boards and action sequences.
//!
//! A sequence of N actions renders as N+1 frames. Following the diagram
//! convention used throughout, a coin that has just been dropped is drawn
//! encircled (`@` in ASCII, a ring in SVG) and a coin about to be picked
//! up is crossed out (`x` in ASCII, a cross in SVG); a move shows the
//! cross in one frame and the ring in the next.

use crate::engine::{validate_sequence, Action, GameState};
use crate::error::Error;
use crate::grid::{Configuration, Position};

/// One rendered step: the board, the cell a previous action just filled,
/// and the cell the next action is about to empty.
struct Frame {
    board: Configuration,
    hand: u32,
    dropped: Option<Position>,
    picked: Option<Position>,
}

fn replay_frames(start: &GameState, actions: &[Action]) -> Result<Vec<Frame>, Error> {
    let mut frames = Vec::with_capacity(actions.len() + 1);
    let mut state = start.clone();
    for k in 0..=actions.len() {
        let dropped = k.checked_sub(1).and_then(|i| match actions[i] {
            Action::Move { to, .. } => Some(to),
            Action::Drop { at } => Some(at),
            Action::PickUp { .. } => None,
        });
        let picked = actions.get(k).and_then(|a| match *a {
            Action::Move { from, .. } => Some(from),
            Action::PickUp { at } => Some(at),
            Action::Drop { .. } => None,
        });
        frames.push(Frame {
            board: state.board.clone(),
            hand: state.hand,
            dropped,
            picked,
        });
        if let Some(action) = actions.get(k) {
            state = validate_sequence(&state, std::slice::from_ref(action), None)
                .map_err(|e| e.at_index(k))?;
        }
    }
    Ok(frames)
}

/// Bounding box of everything the frames touch.
fn frames_bbox(frames: &[Frame]) -> Option<(i32, i32, i32, i32)> {
    let mut bbox: Option<(i32, i32, i32, i32)> = None;
    let mut grow = |p: Position| {
        bbox = Some(match bbox {
            None => (p.x, p.y, p.x, p.y),
            Some((x0, y0, x1, y1)) => (x0.min(p.x), y0.min(p.y), x1.max(p.x), y1.max(p.y)),
        });
    };
    for f in frames {
        for p in f.board.iter() {
            grow(p);
        }
        if let Some(p) = f.dropped {
            grow(p);
        }
        if let Some(p) = f.picked {
            grow(p);
        }
    }
    bbox
}

fn ascii_grid(f: &Frame, bbox: (i32, i32, i32, i32)) -> String {
    let (x0, y0, x1, y1) = bbox;
    let mut out = String::new();
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            let p = Position { x, y };
            let occupied = f.board.contains(p);
            out.push(if occupied && f.picked == Some(p) {
                'x'
            } else if occupied && f.dropped == Some(p) {
                '@'
            } else if occupied {
                'o'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

/// The board alone, cropped to its bounding box, coins as `o`. An empty
/// board renders as the empty string.
pub fn render_config_ascii(c: &Configuration) -> String {
    let frame = Frame {
        board: c.clone(),
        hand: 0,
        dropped: None,
        picked: None,
    };
    match frames_bbox(std::slice::from_ref(&frame)) {
        Some(bbox) => {
            let mut text = ascii_grid(&frame, bbox);
            text.pop();
            text
        }
        None => String::new(),
    }
}

/// The replayed sequence as headed frames over one common bounding box.
pub fn render_sequence_ascii(start: &GameState, actions: &[Action]) -> Result<String, Error> {
    let frames = replay_frames(start, actions)?;
    let bbox = frames_bbox(&frames).unwrap_or((0, 0, 0, 0));
    let mut out = String::new();
    for (k, f) in frames.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        if f.hand > 0 {
            out.push_str(&format!("frame {k} (hand {})\n", f.hand));
        } else {
            out.push_str(&format!("frame {k}\n"));
        }
        out.push_str(&ascii_grid(f, bbox));
    }
    Ok(out)
}

const CELL: i32 = 24;
const MARGIN: i32 = 12;

fn svg_frame(out: &mut String, f: &Frame, bbox: (i32, i32, i32, i32), tx: i32, label: Option<usize>) {
    let (x0, y0, x1, y1) = bbox;
    let center = |p: Position| {
        (
            tx + MARGIN + (p.x - x0) * CELL + CELL / 2,
            MARGIN + (y1 - p.y) * CELL + CELL / 2,
        )
    };
    for y in y0..=y1 {
        for x in x0..=x1 {
            let (cx, cy) = center(Position { x, y });
            out.push_str(&format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\" \
                 fill=\"none\" stroke=\"#cccccc\"/>\n",
                cx - CELL / 2,
                cy - CELL / 2
            ));
        }
    }
    for p in f.board.iter() {
        let (cx, cy) = center(p);
        out.push_str(&format!(
            "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"8\" fill=\"#e8c36a\" stroke=\"#333333\"/>\n"
        ));
        if f.dropped == Some(p) && f.picked != Some(p) {
            out.push_str(&format!(
                "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"11\" fill=\"none\" stroke=\"#333333\"/>\n"
            ));
        }
        if f.picked == Some(p) {
            for (sx, sy) in [(-1, -1), (-1, 1)] {
                out.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\"/>\n",
                    cx + sx * 10,
                    cy + sy * 10,
                    cx - sx * 10,
                    cy - sy * 10
                ));
            }
        }
    }
    if let Some(k) = label {
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"monospace\">{k}</text>\n",
            tx + MARGIN,
            MARGIN - 2
        ));
    }
}

fn svg_document(frames: &[Frame], labels: bool) -> String {
    let bbox = frames_bbox(frames).unwrap_or((0, 0, 0, 0));
    let (x0, _, x1, _) = bbox;
    let frame_w = (x1 - x0 + 1) * CELL + 2 * MARGIN;
    let frame_h = (bbox.3 - bbox.1 + 1) * CELL + 2 * MARGIN;
    let total_w = frame_w * frames.len() as i32;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total_w}\" height=\"{frame_h}\" \
         viewBox=\"0 0 {total_w} {frame_h}\">\n\
         <rect width=\"{total_w}\" height=\"{frame_h}\" fill=\"#ffffff\"/>\n"
    );
    for (k, f) in frames.iter().enumerate() {
        svg_frame(&mut out, f, bbox, frame_w * k as i32, labels.then_some(k));
    }
    out.push_str("</svg>\n");
    out
}

/// The board alone as a standalone SVG.
pub fn render_config_svg(c: &Configuration) -> String {
    svg_document(
        &[Frame {
            board: c.clone(),
            hand: 0,
            dropped: None,
            picked: None,
        }],
        false,
    )
}

/// The replayed sequence as a standalone SVG, frames left to right.
pub fn render_sequence_svg(start: &GameState, actions: &[Action]) -> Result<String, Error> {
    Ok(svg_document(&replay_frames(start, actions)?, true))
}

/// Two boards side by side in one SVG, sharing a bounding box — the shape
/// a puzzle file's start and target are drawn in.
pub fn render_pair_svg(left: &Configuration, right: &Configuration) -> String {
    let frame = |c: &Configuration| Frame {
        board: c.clone(),
        hand: 0,
        dropped: None,
        picked: None,
    };
    svg_document(&[frame(left), frame(right)], false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::pos;

    fn cfg(coords: &[(i32, i32)]) -> Configuration {
        Configuration::from_coords(coords)
    }

    #[test]
    fn configs_render_cropped_to_their_bounding_box() {
        assert_eq!(render_config_ascii(&cfg(&[(0, 0)])), "o");
        assert_eq!(render_config_ascii(&cfg(&[(0, 0), (1, 0), (2, 0)])), "ooo");
        assert_eq!(render_config_ascii(&cfg(&[(5, 5), (6, 5)])), "oo");
        assert_eq!(render_config_ascii(&cfg(&[(0, 0), (0, 1)])), "o\no");
        assert_eq!(render_config_ascii(&cfg(&[(0, 1), (1, 0)])), "o.\n.o");
        assert_eq!(render_config_ascii(&Configuration::new()), "");
    }

    #[test]
    fn sequences_render_one_frame_per_state() {
        let start = GameState::grounded(cfg(&[(0, 0), (0, 1), (1, 0)]));
        let actions = [
            Action::Move {
                from: pos(0, 0),
                to: pos(1, 1),
            },
            Action::PickUp { at: pos(1, 1) },
        ];
        let text = render_sequence_ascii(&start, &actions).unwrap();
        assert_eq!(text.matches("frame ").count(), 3);
        // The mover is crossed out before the move and the landing cell is
        // ringed after it; a cell both ringed and about to be lifted keeps
        // the cross.
        assert_eq!(text.matches('x').count(), 2);
        assert_eq!(text.matches('@').count(), 0);
        assert!(text.contains("frame 2 (hand 1)"));
        let plain = render_sequence_ascii(
            &start,
            &[Action::Move {
                from: pos(0, 0),
                to: pos(1, 1),
            }],
        )
        .unwrap();
        assert_eq!(plain.matches('@').count(), 1);
    }

    #[test]
    fn sequences_replay_before_rendering() {
        let start = GameState::grounded(cfg(&[(0, 0), (5, 5)]));
        let bad = [Action::Move {
            from: pos(0, 0),
            to: pos(9, 9),
        }];
        assert!(matches!(
            render_sequence_ascii(&start, &bad),
            Err(Error::Sequence { index: 0, .. })
        ));
    }

    #[test]
    fn svg_output_is_well_formed() {
        let svg = render_config_svg(&cfg(&[(0, 0), (1, 0), (1, 1)]));
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 3);
        let start = GameState::grounded(cfg(&[(0, 0), (0, 1), (1, 0)]));
        let seq = [Action::Move {
            from: pos(0, 0),
            to: pos(1, 1),
        }];
        let svg = render_sequence_svg(&start, &seq).unwrap();
        // Two frames: 3 coins each, plus one ring on the landing cell.
        assert_eq!(svg.matches("<circle").count(), 7);
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("<text").count(), 2);
    }
}
