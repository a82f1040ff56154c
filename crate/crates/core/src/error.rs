use thiserror::Error;

use crate::lattice::ElemId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element id {id} out of range for {n} elements")]
    BadElement { id: usize, n: usize },

    #[error("cover relation contains a cycle")]
    CycleDetected,

    #[error("order has no unique {0}")]
    NoBounds(&'static str),

    #[error("elements {a} and {b} have no {what}")]
    NotALattice {
        a: ElemId,
        b: ElemId,
        what: &'static str,
    },

    #[error("lattice is not slim rectangular: {0}")]
    NotRectangular(String),

    #[error("grid factors must have at least two elements (got {a} x {b})")]
    SingletonChain { a: usize, b: usize },

    #[error("4-cell with bottom {bottom} is not distributive")]
    CellNotDistributive { bottom: ElemId },

    #[error("multifork rank must be positive")]
    RankNonPositive,

    #[error("no 4-cell has its bottom at grid position ({l}, {r})")]
    BadCellAddress { l: usize, r: usize },

    #[error("internal error: {0}")]
    InternalError(String),

    #[error("diagram violates the beta property: {0}")]
    BetaViolation(String),

    #[error("({lower}, {upper}) is not a covering pair")]
    NotACover { lower: ElemId, upper: ElemId },

    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("cov is undefined at the top element")]
    CovOfTop,

    #[error("lamp {0} is not a boundary lamp")]
    NotABoundaryLamp(usize),

    #[error("closure of the lamp relation is not antisymmetric ({0} and {1})")]
    NotAntisymmetric(usize, usize),

    #[error("size bound {0} exceeds the exhaustive-search limit {1}")]
    BoundTooLarge(usize, usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown lamp selector '{0}'")]
    UnknownLamp(String),
}
