//! Dense complex linear algebra.

mod eig;
mod inverse;
mod matrix;
mod products;
mod spectral;
mod tolerances;

pub use eig::{hermitian_eig, Cluster, Spectrum};
pub use inverse::{determinant, inverse};
pub use matrix::{CMatrix, C64};
pub use products::{commutation_matrix, direct_sum, kron, kron_all, star_permutation, star_product};
pub use spectral::{has_unit_eigenvalue, is_unitary, spectral_fn};
pub(crate) use eig::require_hermitian;
pub(crate) use spectral::{normal_eigenvalues, unitary_defect};
pub use tolerances::{cluster_values, Tolerances};
