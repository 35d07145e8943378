use super::eig::hermitian_eig;
use super::inverse::determinant;
use super::matrix::{CMatrix, C64};
use super::tolerances::{cluster_values, Tolerances};
use crate::error::Result;

/// `φ(A) = V · diag(φ(λ_j)) · V*` for Hermitian `A`.
pub fn spectral_fn(a: &CMatrix, phi: impl Fn(f64) -> C64, tol: &Tolerances) -> Result<CMatrix> {
    Ok(hermitian_eig(a, tol)?.apply(phi))
}

/// `‖U*U − I‖_max ≤ tol.eq`.
pub fn is_unitary(u: &CMatrix, tol: &Tolerances) -> bool {
    u.is_square() && unitary_defect(u) <= tol.eq
}

pub(crate) fn unitary_defect(u: &CMatrix) -> f64 {
    (&u.adjoint() * u).max_abs_diff(&CMatrix::identity(u.cols()))
}

/// Whether 1 is an eigenvalue of the square matrix `U`, within `tol.cluster`.
///
/// Unitary inputs go through [`normal_eigenvalues`]; anything else falls back
/// to `|det(U − I)| ≤ tol.cluster · n · ‖U − I‖_max^(n−1)`. Non-square input
/// has no eigenvalues and yields `false`.
pub fn has_unit_eigenvalue(u: &CMatrix, tol: &Tolerances) -> bool {
    if !u.is_square() {
        return false;
    }
    let n = u.rows();
    let shifted = u.shift(C64::new(-1.0, 0.0));
    if is_unitary(u, tol) {
        if let Ok(eigs) = normal_eigenvalues(u, tol) {
            debug_assert!({
                let product: f64 = eigs.iter().map(|z| (z - 1.0).norm()).product();
                let det = determinant(&shifted).map(|d| d.norm()).unwrap_or(product);
                (det - product).abs() <= 1e-8 * 2f64.powi(n as i32)
            });
            return eigs.iter().map(|z| (z - 1.0).norm()).fold(f64::INFINITY, f64::min) <= tol.cluster;
        }
    }
    let det = determinant(&shifted).map(|d| d.norm()).unwrap_or(0.0);
    det <= tol.cluster * n as f64 * shifted.max_norm().powi(n as i32 - 1)
}

/// Eigenvalues of a normal matrix from its Hermitian and anti-Hermitian parts.
///
/// `U = H₁ + iH₂` with commuting Hermitian `H₁`, `H₂`. Diagonalise `H₁`, then
/// diagonalise `H₂` inside each eigenspace of `H₁`; the resulting basis
/// diagonalises `U` and the eigenvalues are its Rayleigh quotients.
pub(crate) fn normal_eigenvalues(u: &CMatrix, tol: &Tolerances) -> Result<Vec<C64>> {
    u.require_square("normal matrix")?;
    let n = u.rows();
    let real_part = u.hermitian_part();
    let half_i = C64::new(0.0, 0.5);
    let imag_part = CMatrix::from_fn(n, n, |i, j| (u[(i, j)] - u[(j, i)].conj()) * -half_i);

    let outer = hermitian_eig(&real_part, tol)?;
    let radius = tol.cluster_radius(outer.spectral_radius());
    let mut eigenvalues = Vec::with_capacity(n);
    for (_, indices) in cluster_values(&outer.eigenvalues, radius) {
        let basis = outer.eigenvectors.select_columns(&indices);
        let restricted = (&(&basis.adjoint() * &imag_part) * &basis).hermitian_part();
        let inner = hermitian_eig(&restricted, tol)?;
        let refined = &basis * &inner.eigenvectors;
        let image = u * &refined;
        for j in 0..refined.cols() {
            let q: C64 = (0..n).map(|i| refined[(i, j)].conj() * image[(i, j)]).sum();
            eigenvalues.push(q);
        }
    }
    Ok(eigenvalues)
}
