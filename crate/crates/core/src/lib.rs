//! Numerical toolkit for the automorphisms of the unit ball in (truncated)
//! complex Hilbert space.
//!
//! The ball is studied in Siegel coordinates `(z, w)`, where its boundary
//! becomes the hypersurface `Im w = ‖z‖²`. Every boundary automorphism fixing
//! the origin there is a linear-fractional map determined by a unitary `U`,
//! a scale `s > 0`, a vector `a` and a real number `R`; those four parameters
//! can be read off from the second-order jet of the map at the origin.
//!
//! Modules:
//!
//! * [`hilbert`]: complex vectors, the inner product, unitary matrices.
//! * [`geometry`]: Cayley transform, defect functions, point samplers.
//! * [`autgroup`]: the automorphism family, its generators and group laws.
//! * [`jets`]: Cauchy-integral differentiation and parameter recovery.
//! * [`examples`]: the homogeneous-sum and generalized Whitney maps.
//! * [`verify`]: the seeded verification harness behind the CLI.

pub mod autgroup;
pub mod error;
pub mod examples;
pub mod geometry;
pub mod hilbert;
pub mod jets;
pub mod verify;

pub use autgroup::{AutParams, HoloMap};
pub use error::{Error, Result};
pub use geometry::{BallPoint, DefectReport, Region, SiegelPoint};
pub use hilbert::{CVector, UnitaryMatrix};
pub use jets::{DiffConfig, Jet2};
pub use num_complex::Complex64;

/// Shared pole guard: denominators with modulus at or below this raise an error.
pub const EPS_DENOM: f64 = 1e-12;
