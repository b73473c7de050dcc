//! Exact exterior calculus for the standard G2-structure on R⁷ and the flat torus T⁷.

pub mod derivations;
pub mod figures;
pub mod g2_decomp;
pub mod g2_linear;
pub mod graded;
pub mod linalg;
pub mod massey_dga;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod torus_spectral;

pub use g2_decomp::{projectors, TypeLabel};
pub use g2_linear::{standard_g2, Form, G2Structure, MultiIndex, Vector};
pub use graded::{GradedOp, Probe};
pub use linalg::Matrix;
pub use scalar::{Field, Q, Qi};
