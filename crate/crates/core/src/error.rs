use thiserror::Error;

/// Errors raised by validation and by the enumeration pipeline.
///
/// Element labels in messages are 1-based, matching the text formats used
/// for input and output.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("base set of {0} elements exceeds the supported maximum of 32")]
    BaseTooLarge(usize),

    #[error("format ({0}, {1}) is invalid; both sides must be at least 1")]
    EmptyFormat(usize, usize),

    #[error("rectangle rows and columns must share exactly one element, found {0}")]
    InvalidRectangle(usize),

    #[error("rectangle format ({got_rows}, {got_cols}) does not match base format ({rows}, {cols})")]
    FormatMismatch {
        got_rows: usize,
        got_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("rectangle violates the partial rectangular structure axioms")]
    InvalidExtension,

    #[error("structure has {got} rectangles, a full structure needs {want}")]
    NotFull { got: usize, want: usize },

    #[error("structure is not a rectangular structure: pair ({0}, {1}) is covered {2} times")]
    BadCoverage(usize, usize, usize),

    #[error("rectangle {0} is not part of the structure")]
    NotInStructure(String),

    #[error("table entry {entry} at ({row}, {col}) is outside 1..={order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        entry: usize,
        order: usize,
    },

    #[error("operation tables have different orders: {0} and {1}")]
    OrderMismatch(usize, usize),

    #[error("semicentral axiom fails at ({a}, {b}, {c})")]
    ScbAxiom { a: usize, b: usize, c: usize },

    #[error("central groupoid axiom fails at ({a}, {b}, {c}): ({a} * {b}) * ({b} * {c}) = {got}, expected {b}")]
    CgAxiom {
        a: usize,
        b: usize,
        c: usize,
        got: usize,
    },

    #[error("order {0} is not a perfect square")]
    NonSquareOrder(usize),

    #[error("table of order {order} has {got} idempotents, a central groupoid needs {want}")]
    IdempotentCount {
        order: usize,
        got: usize,
        want: usize,
    },

    #[error("square map is not a bijection: {a} and {b} both square to {image}")]
    SquareMapNotBijective { a: usize, b: usize, image: usize },

    #[error("operation is not idempotent at element {0}")]
    NotIdempotent(usize),

    #[error("permutation degree {got} does not match expected degree {want}")]
    DegreeMismatch { got: usize, want: usize },

    #[error("images do not describe a permutation")]
    NotBijective,

    #[error("cannot parse permutation cycles: {0}")]
    BadCycleString(String),

    #[error("internal consistency violation: {0}")]
    TheoryViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
