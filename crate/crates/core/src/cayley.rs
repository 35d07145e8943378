//! The Cayley transform `U_A = (A − iI)(A + iI)⁻¹` of a Hermitian matrix, its
//! inverse `A = i(I + U)(I − U)⁻¹`, and the scalar map `λ ↦ (λ − i)/(λ + i)`
//! which acts on each eigenvalue.
//!
//! The scalar map sends the real line injectively onto the unit circle minus
//! the point 1, so every `U_A` is unitary without eigenvalue 1 and every such
//! unitary has a unique Hermitian preimage.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{
    has_unit_eigenvalue, inverse, is_unitary, normal_eigenvalues, require_hermitian, unitary_defect, CMatrix, Tolerances, C64,
};

const I: C64 = C64::new(0.0, 1.0);

/// `(λ − i)/(λ + i)`; always on the unit circle and never equal to 1.
pub fn scalar_cayley(lambda: f64) -> C64 {
    (C64::new(lambda, -1.0)) / (C64::new(lambda, 1.0))
}

/// `i(1 + u)/(1 − u)` for `u` on the unit circle away from 1.
pub fn scalar_inverse_cayley(u: C64, tol: &Tolerances) -> Result<f64> {
    if (u - 1.0).norm() <= tol.cluster {
        return Err(Error::UnitEigenvalue { nearest: u });
    }
    if (u.norm() - 1.0).abs() > tol.eq {
        return Err(Error::NotUnitModulus { value: u });
    }
    let v = I * (1.0 + u) / (1.0 - u);
    debug_assert!(v.im.abs() <= tol.eq * v.norm().max(1.0));
    Ok(v.re)
}

/// Cayley transform of a Hermitian matrix, by the resolvent formula.
pub fn cayley(a: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    require_hermitian(a, tol)?;
    let minus = a.shift(-I);
    let resolvent = inverse(&a.shift(I), tol)?;
    debug_assert!((&minus * &resolvent).approx_eq(&(&resolvent * &minus), 1e-6));
    Ok(&minus * &resolvent)
}

/// Inverse Cayley transform of a unitary matrix without eigenvalue 1.
///
/// The result is Hermitized, which only removes rounding noise since the
/// exact preimage is Hermitian.
pub fn inverse_cayley(u: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    u.require_square("unitary input")?;
    if !is_unitary(u, tol) {
        return Err(Error::NotUnitary { deviation: unitary_defect(u) });
    }
    if has_unit_eigenvalue(u, tol) {
        let nearest = normal_eigenvalues(u, tol)
            .ok()
            .and_then(|e| e.into_iter().min_by(|a, b| (a - 1.0).norm().total_cmp(&(b - 1.0).norm())))
            .unwrap_or(C64::new(1.0, 0.0));
        return Err(Error::UnitEigenvalue { nearest });
    }
    let n = u.rows();
    let plus = u.shift(C64::new(1.0, 0.0));
    let minus = &CMatrix::identity(n) - u;
    let a = (&plus * &inverse(&minus, tol)?).scale(I);
    Ok(a.hermitian_part())
}

/// A Hermitian matrix together with its Cayley transform.
#[derive(Debug, Clone)]
pub struct CayleyPair {
    hermitian: CMatrix,
    unitary: CMatrix,
}

impl CayleyPair {
    pub fn from_hermitian(a: CMatrix, tol: &Tolerances) -> Result<Self> {
        let unitary = cayley(&a, tol)?;
        Ok(Self { hermitian: a, unitary })
    }

    pub fn from_unitary(u: CMatrix, tol: &Tolerances) -> Result<Self> {
        let hermitian = inverse_cayley(&u, tol)?;
        Ok(Self { hermitian, unitary: u })
    }

    pub fn hermitian(&self) -> &CMatrix {
        &self.hermitian
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }
}

/// The 2×2 Hermitian matrix `[[a + d, b − ic], [b + ic, a − d]]`.
pub fn pauli_hermitian(a: f64, b: f64, c: f64, d: f64) -> CMatrix {
    CMatrix::new(2, 2, vec![C64::new(a + d, 0.0), C64::new(b, -c), C64::new(b, c), C64::new(a - d, 0.0)])
        .expect("finite 2x2 entries")
}

/// Number of fallback phases tried after the analytic candidate.
const PHASE_GRID: usize = 360;

/// Looks for a phase `φ` with `cayley(H) = e^{iφ} H`, where `H` is built by
/// [`pauli_hermitian`].
///
/// Such a phase exists exactly when both eigenvalues `a ± √(b² + c² + d²)` lie
/// in `{−1, 1}`, and it is then `−π/2`. That candidate is tried first; a grid
/// over `[−π, π)` is searched as a fallback.
pub fn phase_coincidence(a: f64, b: f64, c: f64, d: f64, tol: &Tolerances) -> Option<f64> {
    let h = pauli_hermitian(a, b, c, d);
    let u = cayley(&h, tol).expect("H + iI is invertible for Hermitian H");
    let matches = |phi: f64| u.approx_eq(&h.scale(C64::from_polar(1.0, phi)), tol.eq);
    std::iter::once(-PI / 2.0)
        .chain((0..PHASE_GRID).map(|k| 2.0 * PI * k as f64 / PHASE_GRID as f64 - PI))
        .find(|&phi| matches(phi))
}
