//! Exact computation of the universal gl-weight system on permutations,
//! the prechromatic invariant derived from it, and the rotational Hopf
//! algebra of permutation classes, together with independent oracles
//! (deletion–contraction chromatic polynomials and normal ordering in
//! `U(gl(N))`) and exhaustive verification sweeps.
//!
//! The algebraic types are generic over an exact coefficient ring; the
//! aliases below fix it to arbitrary-precision integers.

pub mod chromatic;
pub mod engine;
pub mod error;
pub mod graph;
pub mod hopf;
pub mod pbw;
pub mod perm;
pub mod poly;
pub mod ring;
pub mod verify;

pub use num_bigint::BigInt;

pub use engine::{PivotKind, Specialization, Substitution};
pub use error::{EngineError, GraphError, PbwError, PermError, PolyError, VerifyError};
pub use graph::SimpleGraph;
pub use perm::{ClassKey, Permutation};
pub use poly::{PolyFormat, Var};
pub use ring::Coeff;
pub use verify::Suite;

pub type Poly = poly::MPoly<BigInt>;
pub type Engine = engine::GlEngine<BigInt>;
pub type PivotOutcome = engine::PivotOutcome<BigInt>;
pub type HopfElement = hopf::HopfElement<BigInt>;
pub type TensorElement = hopf::TensorElement<BigInt>;
pub type PbwElement = pbw::PbwElement<BigInt>;
pub type Pbw = pbw::Pbw<BigInt>;
pub type ChromaticOracle = chromatic::ChromaticOracle<BigInt>;
pub type Verifier = verify::Verifier<BigInt>;
