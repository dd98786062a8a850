use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("element {0} appears more than once")]
    Duplicate(usize),
    #[error("element {element} is outside 1..={m}")]
    OutOfRange { element: usize, m: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("chord diagrams need an even number of points, got {0}")]
    OddChordSize(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {{{0}, {1}}} listed twice")]
    RepeatedEdge(usize, usize),
    #[error("weights must list one positive integer per vertex")]
    BadWeights,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot substitute a non-monomial for {0} appearing with a negative exponent")]
    NegativePowerSubstitution(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent on {0}; only N may carry one")]
    NegativeExponent(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("pivot {pivot} is outside 1..{m}")]
    PivotOutOfRange { pivot: usize, m: usize },
    #[error("pivot {pivot} joins an ascending pair α({pivot}) = {next}", next = pivot + 1)]
    AscendingPair { pivot: usize },
    #[error("no pivot index in {0}, which is not a product of standard cycles")]
    NoPivot(Permutation),
    #[error("reduction of {from} produced {to}, which is not smaller in the class order")]
    NonDecreasing { from: Permutation, to: Permutation },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("rank N = {0} exceeds the supported bound of 3")]
    RankTooLarge(usize),
    #[error("rank N must be at least 1")]
    RankZero,
    #[error("permutation size {0} exceeds the supported bound of 5")]
    SizeTooLarge(usize),
    #[error("matrix unit index ({0}, {1}) is outside 1..={2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("variable {0} cannot be evaluated in U(gl(N))")]
    UnsupportedVariable(String),
    #[error("negative power of N in a Casimir polynomial")]
    NegativePower,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}
