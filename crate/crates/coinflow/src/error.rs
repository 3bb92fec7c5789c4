use thiserror::Error;

/// Library-wide error type. Display strings are stable identifiers used by
/// tests and the CLI; variants carrying context append it after the
/// identifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation that needs at least one coin got an empty configuration.
    #[error("empty")]
    Empty,
    /// A computed span failed to decompose into rectangles pairwise at
    /// distance at least 3 — this indicates an internal bug, not bad input.
    #[error("not_rectangular")]
    NotRectangular,
    /// A move's destination is occupied, equal to the source, or lacks two
    /// occupied neighbors besides the mover.
    #[error("illegal_move")]
    IllegalMove,
    /// A move or pick-up names a cell with no coin on it.
    #[error("not_occupied")]
    NotOccupied,
    /// A drop was attempted with no coins in hand.
    #[error("empty_hand")]
    EmptyHand,
    /// A drop destination has fewer than two occupied neighbors.
    #[error("drop_violates_2adjacency")]
    DropViolates2Adjacency,
    /// A replay finished on a state different from the expected one.
    #[error("final_mismatch")]
    FinalMismatch,
    /// Pick-ups and drops in a sequence do not pair off.
    #[error("unbalanced_hand")]
    UnbalancedHand,
    /// A subroutine needs more coins in hand than the state provides.
    #[error("insufficient_hand")]
    InsufficientHand,
    /// A pair-relocation was requested on an 'L' without an adjacent pair.
    #[error("not_odd")]
    NotOdd,
    /// A trim would remove more rows/columns than the shape has.
    #[error("amount_too_large")]
    AmountTooLarge,
    /// A poke that is not legal in the given minimum configuration.
    #[error("illegal_poke")]
    IllegalPoke,
    /// An operation's precondition on its input shape does not hold.
    #[error("precondition_violated")]
    PreconditionViolated,
    /// The configuration is not a minimum chain with one adjacent pair.
    #[error("not_a_chain")]
    NotAChain,
    /// The requested target is provably not reachable by pokes.
    #[error("not_reachable")]
    NotReachable,
    /// Two rectangles do not have the overlapping/disjoint projection
    /// geometry required for a split bound.
    #[error("geometry_precondition")]
    GeometryPrecondition,
    /// A cardinality hypothesis of the sweep builder fails; the payload
    /// spells out the violated inequality.
    #[error("hypothesis_violated: {0}")]
    HypothesisViolated(String),
    /// The worst-case family is only defined from size 9 upward.
    #[error("n_too_small")]
    NTooSmall,
    /// A bounded search hit its state limit before reaching an answer.
    #[error("exhausted")]
    Exhausted,
    /// Malformed puzzle or action text; positions are 1-based.
    #[error("parse_error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// The same coin position appears twice in one configuration.
    #[error("duplicate_coin")]
    DuplicateCoin,
    /// A guided search exceeded its node budget; callers degrade to an
    /// honest "unknown" rather than guessing.
    #[error("search_budget_exceeded")]
    SearchBudgetExceeded,
    /// Rejection sampling failed to produce a configuration with the
    /// requested span within the attempt cap.
    #[error("generation_failed")]
    GenerationFailed,
    /// An error raised by the action at the given index of a sequence.
    #[error("action {index}: {source}")]
    Sequence {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with the index of the sequence element that caused it.
    pub fn at_index(self, index: usize) -> Error {
        Error::Sequence {
            index,
            source: Box::new(self),
        }
    }
}
