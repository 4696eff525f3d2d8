use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("partition parts must be positive")]
    ZeroPart,

    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,

    #[error("(q^a;q)_inf requires a >= 1")]
    ZeroPochhammerBase,

    #[error("substitution q -> q^k requires k >= 1")]
    ZeroSubstitution,

    #[error("function `{name}` is tabulated for n <= {available}, but order {requested} was requested")]
    TabulationGap {
        name: String,
        available: usize,
        requested: usize,
    },

    #[error("form `{form}` enumerates partitions and is limited to order {guard}; order {requested} requested")]
    EnumerationGuard {
        form: &'static str,
        guard: usize,
        requested: usize,
    },

    #[error("invalid path parameter: {0}")]
    InvalidPath(String),

    #[error("path point {index} leaves the Stolz sector: |1-q|/(1-|q|) = {ratio} > M = {m}")]
    SectorViolation { index: usize, ratio: f64, m: f64 },

    #[error("point {index} has |q| = {modulus}, outside the open unit disk")]
    OutsideDisk { index: usize, modulus: f64 },

    #[error("order {order} is inadequate at point {index} (|q| = {modulus}); need order >= {needed}")]
    InadequateOrder {
        index: usize,
        modulus: f64,
        order: usize,
        needed: usize,
    },

    #[error("path has no points")]
    EmptyPath,

    #[error("Lambert denominator magnitude {magnitude} below 1e-12 at point {index}")]
    SmallDenominator { index: usize, magnitude: f64 },

    #[error("partition function `{name}` is declared to vanish on repeated parts, but a{partition} = {value}")]
    FlagViolation {
        name: String,
        partition: String,
        value: String,
    },

    #[error("partition function `{0}` has no closed-form evaluator; its limit cannot be estimated beyond the enumeration guard")]
    NoClosedForm(String),

    #[error("partition function `{0}` is not declared to vanish on repeated parts")]
    RequiresVanishing(String),

    #[error("form `{0}` is not a single n-sum and has no term sequence")]
    NotSingleSum(&'static str),

    #[error("unknown {kind} `{name}`; valid values: {valid}")]
    Unknown {
        kind: &'static str,
        name: String,
        valid: String,
    },
}
