//! Classical limits of quantum systems built from polynomials in the
//! generators of `su(M)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`lie`]: the generator catalog of `sl_M`, weights and the Weyl dimension.
//! * [`operator`] and [`parser`]: abstract operators in the tensor algebra,
//!   the formal adjoint, and a small text DSL for Hamiltonians.
//! * [`irrep`]: explicit unitary irreducible representations, built as cyclic
//!   subspaces of tensor products of exterior powers.
//! * [`gauss`], [`jet`], [`orbit`]: Gauss decomposition, truncated Taylor
//!   jets, and the first-order operators acting on the lower-unipotent chart.
//! * [`norm`]: squared norms of orbit points, factorized and direct.
//! * [`limit`]: momentum map, the classical limit `cl`, the symbol map `l`,
//!   the scaled sequence `cl_n`, and the Poisson checks.
//! * [`harness`]: configuration, sampling and the report-producing commands
//!   behind the `semiclassical` binary.

pub mod error;
pub mod gauss;
pub mod harness;
pub mod irrep;
pub mod jet;
pub mod lie;
pub mod limit;
pub mod norm;
pub mod operator;
pub mod orbit;
pub mod parser;
pub mod wedge;

pub use error::{Error, Result};
pub use irrep::{build_irrep, Irrep, IrrepOptions};
pub use lie::{AlgebraSpec, Generator, Weight};
pub use operator::{AbstractOperator, TensorMonomial};
pub use orbit::OrbitPoint;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
