use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("non-finite entry in vector or matrix")]
    NonFinite,

    #[error("matrix is not unitary (max deviation {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("derivative not invertible (condition estimate {condition:e})")]
    NotInvertible { condition: f64 },

    #[error("Cayley pole: |denominator| = {modulus:e}")]
    CayleyPole { modulus: f64 },

    #[error("pole of automorphism: |denominator| = {modulus:e}")]
    AutomorphismPole { modulus: f64 },

    #[error("map is not origin-fixing: |H(0,0)| = {offset:e}")]
    NotOriginFixing { offset: f64 },

    #[error("g_w not positive real: g_w(0) = {re} + {im}i")]
    GwNotPositiveReal { re: f64, im: f64 },

    #[error("normalized f_z not unitary (max deviation {defect:e})")]
    NormalizedFzNotUnitary { defect: f64 },

    #[error("R not real: Im R = {im:e}")]
    RNotReal { im: f64 },

    #[error("derivative not onto: f_z(0) is numerically singular (condition estimate {condition:e})")]
    DerivativeNotOnto { condition: f64 },

    #[error("map does not preserve the hypersurface: |g_z(0)| = {residual:e}")]
    GzNonzero { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// True for the pole errors raised when a denominator vanishes.
    pub fn is_pole(&self) -> bool {
        matches!(self, Error::CayleyPole { .. } | Error::AutomorphismPole { .. })
    }
}
