use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("matrix is singular (pivot {pivot:.3e} at column {column})")]
    Singular { column: usize, pivot: f64 },

    #[error("1 is an eigenvalue within tolerance (nearest eigenvalue {nearest})")]
    UnitEigenvalue { nearest: Complex64 },

    #[error("value {value} is not on the unit circle")]
    NotUnitModulus { value: Complex64 },

    #[error("pair lies outside the domain: eigenvalue product {x} * {y} is within {distance:.3e} of 1")]
    OutsideDomain { x: Complex64, y: Complex64, distance: f64 },

    #[error("matrix is not a Kronecker product (rank-one residual {residual:.3e})")]
    NotRankOne { residual: f64 },

    #[error("cayley(A ⊗ B) is not a Kronecker product (residual {residual:.3e})")]
    NotFactorable { residual: f64 },

    #[error("no phase avoids the eigenvalue 1 (largest angular gap {gap:.3e})")]
    NoSafePhase { gap: f64 },

    #[error("eigenvalue {value} is zero within tolerance")]
    ZeroEigenvalue { value: f64 },

    #[error("no real companion eigenvalue for {value} (discriminant {discriminant:.6e})")]
    NoRealCompanion { value: f64, discriminant: f64 },

    #[error("product dimension {dimension} exceeds cap {cap}")]
    DimensionCap { dimension: usize, cap: usize },

    #[error("spectral verdict ({spectral}) disagrees with direct comparison (residual {direct_residual:.3e})")]
    PathDisagreement { spectral: bool, direct_residual: f64 },

    #[error("{origin}: {location}: {message}")]
    Parse { origin: String, location: String, message: String },

    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),
}
