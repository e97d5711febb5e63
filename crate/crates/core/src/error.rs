use thiserror::Error;

/// Errors produced by the algebra, protocol and attack layers.
///
/// All arithmetic is exact: integer overflow is reported, never wrapped
/// or saturated.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arithmetic overflow in exact tropical computation")]
    Overflow,

    #[error("shape mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions {rows}x{cols} do not match entry count {entries}")]
    BadDimensions {
        rows: usize,
        cols: usize,
        entries: usize,
    },

    #[error("matrix is not circulant: row {row} is not the cyclic right shift of row {}", row - 1)]
    NotCirculant { row: usize },

    #[error("3x3 block at block position ({block_row},{block_col}) is not circulant")]
    NotInSubring { block_row: usize, block_col: usize },

    #[error("Kleene star diverges: the matrix has a cycle of positive weight")]
    DivergentStar,

    #[error("the digraph of finite entries is acyclic; no cycle mean exists")]
    Acyclic,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("internal key agreement failed: the two derived keys differ")]
    KeyDisagreement,

    #[error("attack failed: no verified exponent pair was found")]
    AttackFailed,
}

pub type Result<T> = std::result::Result<T, Error>;
