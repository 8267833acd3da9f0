use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
///
/// Negative verdicts of predicates are not errors; they are reported through
/// the predicate's own witness type. Errors signal malformed input or a
/// precondition violation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("carrier size {size} exceeds the bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("not a lattice: elements {a} and {b} have no {missing}")]
    NotALattice {
        a: usize,
        b: usize,
        missing: &'static str,
    },

    #[error("not a lattice: {0}")]
    NoExtremes(&'static str),

    #[error("no residual for {a} -> {b}")]
    NoResidual { a: usize, b: usize },

    #[error("not distributive: x={x}, y={y}, z={z}")]
    NotDistributive { x: usize, y: usize, z: usize },

    #[error("map is not a {kind} homomorphism")]
    NotAHomomorphism { kind: &'static str },

    #[error("maps or sets live over different structures")]
    Mismatch,

    #[error("malformed structure at {path}: {msg}")]
    Malformed { path: String, msg: String },

    #[error("periodic pattern needs period {0}, above the supported maximum of 64")]
    PeriodOverflow(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Malformed {
        path: path.into(),
        msg: msg.into(),
    }
}
