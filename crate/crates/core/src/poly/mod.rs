//! Polynomial algebra over binary fields.

mod linalg;
mod multi;
mod point;
mod resultant;
mod system;
mod text;
mod uni;

use thiserror::Error;

use crate::gf2m::GfError;

pub use linalg::{linear_solve, linear_solve_elems, nullspace, LinearSolution};
pub use multi::{adjusted_multiplicity, multiplicity_at, Monomial, MultiPoly, DEFAULT_VARS};
pub use point::ProjPoint;
pub use resultant::{resultant, resultant_uni, Resultant};
pub use system::{solve_plane_system, PlaneSolution};
pub use text::{format_poly_file, parse_poly, parse_poly_file, PolyFile};
pub use uni::{cmp_poly, Root, RootSet, UniPoly, SPLIT_SEED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operands live in different fields")]
    ContextMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("variable {0} does not occur")]
    VariableAbsent(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("roots lie beyond extension degree {0}")]
    ExtensionBoundExceeded(u32),
    #[error("system has a positive-dimensional solution set")]
    NotZeroDimensional,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Field(#[from] GfError),
}
