//! The `coinflow` command: solve, check, classify, search, generate, and
//! render coin-moving puzzles.
//!
//! Exit codes: 0 solved/valid, 1 unsolvable/invalid, 2 unknown or
//! inconclusive, 3 usage or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use coinflow::engine::validate_sequence;
use coinflow::oracle::{reachable_set, shortest_solution, SearchLimits};
use coinflow::puzzle::{parse_puzzle, random_puzzle, PuzzleFile};
use coinflow::render::{render_config_ascii, render_pair_svg};
use coinflow::solver::{
    solve_same_span, solve_sweep, solve_two_extra, solve_with, SolveOutcome, DEFAULT_SOLVE_STATES,
};
use coinflow::{pos, Action, ActionSequence, Error, GameState, Rectangle};

const EXIT_SOLVED: u8 = 0;
const EXIT_UNSOLVABLE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "coinflow",
    version,
    about = "Decide, solve, and certify coin-moving puzzles on the square grid"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a puzzle and print the action sequence.
    Solve {
        file: PathBuf,
        /// Which solver to run; `auto` chains them all.
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Also write the actions to this file, one per line.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Replay an action file against a puzzle.
    Check { file: PathBuf, moves: PathBuf },
    /// Print the verdict (and certificate, if unsolvable).
    Classify {
        file: PathBuf,
        /// Emit the verdict as JSON instead of prose.
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively search the move graph.
    Oracle {
        file: PathBuf,
        /// Cap on distinct board states to visit.
        #[arg(long)]
        max_states: Option<usize>,
        /// Report a shortest solution instead of plain reachability.
        #[arg(long)]
        shortest: bool,
    },
    /// Produce puzzle files.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Draw the start and target boards.
    Render {
        file: PathBuf,
        /// Write an SVG diagram to this file as well.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// The unsolvable-despite-everything family (sizes 9 and up).
    Counterexample {
        #[arg(long)]
        n: u32,
    },
    /// Random start and target spanning the same rectangle.
    Random {
        /// Rectangle as MxN, e.g. 4x3.
        #[arg(long)]
        span: String,
        /// Coins on each side.
        #[arg(long)]
        coins: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    SameSpan,
    TwoExtra,
    Sweep,
    Oracle,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_SOLVED,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { file, method, emit } => cmd_solve(&file, method, emit.as_deref()),
        Command::Check { file, moves } => cmd_check(&file, &moves),
        Command::Classify { file, json } => cmd_classify(&file, json),
        Command::Oracle {
            file,
            max_states,
            shortest,
        } => cmd_oracle(&file, max_states, shortest),
        Command::Gen { what } => cmd_gen(what),
        Command::Render { file, svg } => cmd_render(&file, svg.as_deref()),
    }
}

fn load_puzzle(path: &Path) -> Result<PuzzleFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_puzzle(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The oracle state budget: flag, then COINFLOW_MAX_STATES, then `fallback`.
fn limits(flag: Option<usize>, fallback: usize) -> Result<SearchLimits> {
    if let Some(n) = flag {
        return Ok(SearchLimits::with_max_states(n));
    }
    match std::env::var("COINFLOW_MAX_STATES") {
        Ok(text) => {
            let n: usize = text
                .parse()
                .map_err(|_| anyhow!("COINFLOW_MAX_STATES must be a positive integer"))?;
            Ok(SearchLimits::with_max_states(n))
        }
        Err(_) => Ok(SearchLimits::with_max_states(fallback)),
    }
}

fn cmd_solve(file: &Path, method: Method, emit: Option<&Path>) -> Result<u8> {
    let p = load_puzzle(file)?;
    let outcome = match method {
        Method::Auto => solve_with(&p.start, &p.target, &limits(None, DEFAULT_SOLVE_STATES)?),
        Method::SameSpan => solve_same_span(&p.start, &p.target),
        Method::TwoExtra => solve_two_extra(&p.start, &p.target),
        Method::Sweep => solve_sweep(&p.start, &p.target),
        Method::Oracle => match shortest_solution(
            &p.start,
            &p.target,
            &limits(None, SearchLimits::default().max_states)?,
        ) {
            Ok(Some(actions)) => SolveOutcome::Solved { actions },
            Ok(None) => SolveOutcome::Unsolvable {
                certificate: exhaustive_certificate(&p, None)?,
            },
            Err(_) => SolveOutcome::Unknown {
                reason: "search_budget_exhausted".to_string(),
            },
        },
    };
    match outcome {
        SolveOutcome::Solved { actions } => {
            validate_sequence(
                &GameState::grounded(p.start.clone()),
                &actions,
                Some(&GameState::grounded(p.target.clone())),
            )
            .context("solver output failed replay")?;
            println!("solved: {} actions", actions.len());
            let text = format_moves(&actions);
            print!("{text}");
            if let Some(out) = emit {
                fs::write(out, text).with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(EXIT_SOLVED)
        }
        SolveOutcome::Unsolvable { certificate } => {
            println!("unsolvable: {}", serde_json::to_string(&certificate)?);
            Ok(EXIT_UNSOLVABLE)
        }
        SolveOutcome::Unknown { reason } => {
            println!("unknown: {reason}");
            Ok(EXIT_UNKNOWN)
        }
    }
}

/// A complete-search certificate for the direct oracle method.
fn exhaustive_certificate(
    p: &PuzzleFile,
    max_states: Option<usize>,
) -> Result<coinflow::infeasibility::Certificate> {
    let lim = limits(max_states, SearchLimits::default().max_states)?;
    let reach = reachable_set(&p.start, &lim);
    anyhow::ensure!(
        reach.complete && !reach.contains(&p.target),
        "search did not close"
    );
    Ok(coinflow::infeasibility::Certificate::ExhaustiveSearch {
        method: "oracle".to_string(),
        states: reach.len() as u64,
    })
}

fn cmd_check(file: &Path, moves: &Path) -> Result<u8> {
    let p = load_puzzle(file)?;
    let text =
        fs::read_to_string(moves).with_context(|| format!("reading {}", moves.display()))?;
    let actions = parse_moves(&text).with_context(|| format!("parsing {}", moves.display()))?;
    match validate_sequence(
        &GameState::grounded(p.start),
        &actions,
        Some(&GameState::grounded(p.target)),
    ) {
        Ok(_) => {
            println!("valid: {} actions replay from start to target", actions.len());
            Ok(EXIT_SOLVED)
        }
        Err(e) => {
            println!("invalid: {e}");
            Ok(EXIT_UNSOLVABLE)
        }
    }
}

fn cmd_classify(file: &Path, json: bool) -> Result<u8> {
    let p = load_puzzle(file)?;
    let outcome = solve_with(&p.start, &p.target, &limits(None, DEFAULT_SOLVE_STATES)?);
    if json {
        println!("{}", serde_json::to_string_pretty(&outcome)?);
    } else {
        match &outcome {
            SolveOutcome::Solved { actions } => println!("solved: {} actions", actions.len()),
            SolveOutcome::Unsolvable { certificate } => {
                println!("unsolvable: {}", serde_json::to_string(certificate)?)
            }
            SolveOutcome::Unknown { reason } => println!("unknown: {reason}"),
        }
    }
    Ok(match outcome {
        SolveOutcome::Solved { .. } => EXIT_SOLVED,
        SolveOutcome::Unsolvable { .. } => EXIT_UNSOLVABLE,
        SolveOutcome::Unknown { .. } => EXIT_UNKNOWN,
    })
}

fn cmd_oracle(file: &Path, max_states: Option<usize>, shortest: bool) -> Result<u8> {
    let p = load_puzzle(file)?;
    let lim = limits(max_states, SearchLimits::default().max_states)?;
    if shortest {
        return match shortest_solution(&p.start, &p.target, &lim) {
            Ok(Some(actions)) => {
                println!("shortest: {} moves", actions.len());
                print!("{}", format_moves(&actions));
                Ok(EXIT_SOLVED)
            }
            Ok(None) => {
                println!("unreachable");
                Ok(EXIT_UNSOLVABLE)
            }
            Err(_) => {
                println!("inconclusive: state budget exhausted");
                Ok(EXIT_UNKNOWN)
            }
        };
    }
    let reach = reachable_set(&p.start, &lim);
    if reach.contains(&p.target) {
        println!("reachable: explored {} states", reach.len());
        Ok(EXIT_SOLVED)
    } else if reach.complete {
        println!("unreachable: complete after {} states", reach.len());
        Ok(EXIT_UNSOLVABLE)
    } else {
        println!("inconclusive: truncated after {} states", reach.len());
        Ok(EXIT_UNKNOWN)
    }
}

fn cmd_gen(what: GenCommand) -> Result<u8> {
    let puzzle = match what {
        GenCommand::Counterexample { n } => {
            let (start, target) = coinflow::infeasibility::gen_counterexample(n)
                .with_context(|| format!("generating the size-{n} counterexample"))?;
            let mut p = PuzzleFile::new(start, target);
            p.name = Some(format!("counterexample-{n}"));
            p
        }
        GenCommand::Random { span, coins, seed } => {
            let rect = parse_span(&span)?;
            let mut p = random_puzzle(&rect, coins, seed)
                .context("no spanning configuration found for these parameters")?;
            p.name = Some(format!("random-{span}-{coins}-{seed}"));
            p
        }
    };
    print!("{}", puzzle.to_json());
    Ok(EXIT_SOLVED)
}

fn parse_span(text: &str) -> Result<Rectangle> {
    let parts: Vec<&str> = text.split(['x', 'X']).collect();
    let dims: Option<(u32, u32)> = match parts.as_slice() {
        [m, n] => m.parse().ok().zip(n.parse().ok()),
        _ => None,
    };
    let (m, n) = dims.ok_or_else(|| anyhow!("--span must look like 4x3"))?;
    anyhow::ensure!(m > 0 && n > 0, "--span sides must be positive");
    Ok(Rectangle::new(0, 0, m, n))
}

fn cmd_render(file: &Path, svg: Option<&Path>) -> Result<u8> {
    let p = load_puzzle(file)?;
    println!("{}", render_config_ascii(&p.start));
    println!("---");
    println!("{}", render_config_ascii(&p.target));
    if let Some(out) = svg {
        fs::write(out, render_pair_svg(&p.start, &p.target))
            .with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(EXIT_SOLVED)
}

/// One action per line: `move X0 Y0 -> X1 Y1`, `pick X Y`, `drop X Y`.
/// Blank lines and `#` comments are skipped.
fn format_moves(actions: &[Action]) -> String {
    let mut out = String::new();
    for a in actions {
        match *a {
            Action::Move { from, to } => {
                out.push_str(&format!("move {} {} -> {} {}\n", from.x, from.y, to.x, to.y))
            }
            Action::PickUp { at } => out.push_str(&format!("pick {} {}\n", at.x, at.y)),
            Action::Drop { at } => out.push_str(&format!("drop {} {}\n", at.x, at.y)),
        }
    }
    out
}

fn parse_moves(text: &str) -> Result<ActionSequence, Error> {
    let mut actions = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: &str| Error::Parse {
            line: i + 1,
            column: 1,
            message: message.to_string(),
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        let coord = |a: &str, b: &str| -> Option<_> { Some(pos(a.parse().ok()?, b.parse().ok()?)) };
        let action = match words.as_slice() {
            ["move", x0, y0, "->", x1, y1] => coord(x0, y0)
                .zip(coord(x1, y1))
                .map(|(from, to)| Action::Move { from, to }),
            ["pick", x, y] => coord(x, y).map(|at| Action::PickUp { at }),
            ["drop", x, y] => coord(x, y).map(|at| Action::Drop { at }),
            _ => None,
        };
        actions.push(action.ok_or_else(|| {
            bad("expected `move X0 Y0 -> X1 Y1`, `pick X Y`, or `drop X Y`")
        })?);
    }
    Ok(actions)
}
