//! Cayley transforms of Hermitian matrices and their interaction with the
//! Kronecker product.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] holds the dense complex matrix type, structured products
//!   (Kronecker, direct sum, star), the commutation permutation, a Jacobi
//!   eigensolver for Hermitian matrices, inversion and spectral functions.
//! * [`cayley`] implements `A ↦ (A − iI)(A + iI)⁻¹`, its inverse and the
//!   scalar map `λ ↦ (λ − i)/(λ + i)`.
//! * [`analogue`] provides the Kronecker sum and the map `g` with
//!   `cayley(g(A, B)) = cayley(A) ⊗ cayley(B)`.
//! * [`separability`] decides when `cayley(A ⊗ B)` is a Kronecker product and
//!   constructs the factors, Hermitian ones included.
//! * [`predicates`] decides exactly when `cayley(A ⊗ B) = cayley(A) ⊗ cayley(B)`
//!   and handles chains of more than two factors.
//! * [`cli`] is the command-line front end with JSON reports.

pub mod analogue;
pub mod cayley;
pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod predicates;
pub mod separability;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use linalg::{CMatrix, Spectrum, Tolerances, C64};
