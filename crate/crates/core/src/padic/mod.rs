//! Truncated p-adic arithmetic: approximations, Hensel lifting, Newton
//! polygons, local factorization shapes and certified root selection.
//!
//! Valuations are normalized with `v_p(p) = 1` throughout this module.

mod approx;
mod local;
mod newton;
mod select;
mod shape;

pub use approx::{hensel_lift, valuation, PadicApprox, PadicZeroTest};
pub use local::RamifiedAlgebra;
pub use newton::{newton_polygon, NewtonSegment};
pub use select::{canonical_seed, select_padic_root, RootSeed};
pub use shape::{factor_shape_over_qp, LocalFactor};

/// Default precision budget in p-adic digits.
pub const DEFAULT_PRECISION: u32 = 64;
/// Largest precision the drivers escalate to before surfacing an error.
pub const MAX_PRECISION: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("seed {seed} is not a root modulo {p}")]
    NotARoot { seed: String, p: u64 },
    #[error("seed {seed} is a multiple root modulo {p}")]
    NotSimpleRoot { seed: String, p: u64 },
    #[error("root selection is ambiguous: {0}")]
    Ambiguous(String),
    #[error("no root matches the seed: {0}")]
    NoSuchRoot(String),
    #[error("local factorization undetermined on the segment of slope {slope}")]
    Undetermined { slope: String },
}
