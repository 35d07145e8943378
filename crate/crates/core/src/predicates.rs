//! Exact conditions for `cayley(A ⊗ B) = cayley(A) ⊗ cayley(B)`.
//!
//! Both sides are diagonal in the joint eigenbasis, so the identity holds iff
//! `U(a_j)·U(b_k) = U(a_j b_k)` for every eigenvalue pair, which reduces to
//!
//! ```text
//! a_j b_k (1 − a_j − b_k) = 1.
//! ```
//!
//! For a fixed `a ≠ 0` this is the quadratic `a b² − a(1 − a) b + 1 = 0`, so
//! the identity holds exactly when one factor has a single nonzero eigenvalue
//! and every eigenvalue of the other is a real root ("companion") of it.
//!
//! The self-paired case `A ⊗ A` is not excluded outright: `A = aI` works when
//! `a` is a companion of itself, i.e. the real root of `2a³ − a² + 1 = 0`
//! (`a ≈ −0.6573`). Every other Hermitian `A` fails.

use std::fmt;

use crate::cayley::{cayley, scalar_cayley};
use crate::error::{Error, Result};
use crate::linalg::{cluster_values, hermitian_eig, kron, kron_all, require_hermitian, CMatrix, Tolerances, C64};

/// Largest product dimension handled by [`multipartite_direct`] by default.
pub const DEFAULT_DIMENSION_CAP: usize = 4096;

/// Largest Kronecker power [`identity_power_equal`] accepts.
pub const MAX_IDENTITY_POWER: usize = 1024;

/// Largest dimension `m^k` for which [`identity_power_equal`] also builds the
/// matrices explicitly.
const DIRECT_POWER_DIMENSION: usize = 1024;

/// `a·b·(1 − a − b) − 1`; zero exactly when `U(a)U(b) = U(ab)`.
pub fn e13_residual(a: f64, b: f64) -> f64 {
    a * b * (1.0 - a - b) - 1.0
}

/// Discriminant `a²(1 − a)² − 4a` of the companion quadratic.
pub fn companion_discriminant(a: f64) -> f64 {
    let s = a * (1.0 - a);
    s * s - 4.0 * a
}

/// Real roots `b` of `a b² − a(1 − a) b + 1 = 0`, ascending.
///
/// A single root is returned when the discriminant is within `tol.cluster`
/// of zero.
pub fn companion_eigenvalues(a: f64, tol: &Tolerances) -> Result<Vec<f64>> {
    if a.abs() <= tol.cluster {
        return Err(Error::ZeroEigenvalue { value: a });
    }
    let disc = companion_discriminant(a);
    if disc < -tol.cluster {
        return Err(Error::NoRealCompanion { value: a, discriminant: disc });
    }
    // b² − s·b + 1/a = 0 with s = 1 − a; the roots multiply to 1/a
    let s = 1.0 - a;
    if disc.abs() <= tol.cluster {
        return Ok(vec![s / 2.0]);
    }
    let root = disc.sqrt() / a.abs();
    let big = (s + root.copysign(s)) / 2.0;
    let small = 1.0 / (a * big);
    Ok(if big < small { vec![big, small] } else { vec![small, big] })
}

/// Which factor carries the single eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T3Case {
    SingleA,
    SingleB,
}

impl fmt::Display for T3Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SingleA => "SingleA",
            Self::SingleB => "SingleB",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct T3Verdict {
    pub holds: bool,
    pub case: Option<T3Case>,
    /// `max |a b (1 − a − b) − 1|` over distinct eigenvalue pairs.
    pub residual: f64,
    /// `‖cayley(A ⊗ B) − cayley(A) ⊗ cayley(B)‖_max`.
    pub direct_residual: f64,
}

/// Spectral criterion on clustered distinct eigenvalues.
pub fn spectral_criterion(distinct_a: &[f64], distinct_b: &[f64], tol: &Tolerances) -> Option<T3Case> {
    let all_companions = |single: &[f64], other: &[f64]| match single {
        [value] => companion_eigenvalues(*value, tol).is_ok_and(|roots| {
            other.iter().all(|v| roots.iter().any(|r| (v - r).abs() <= tol.cluster_radius(r.abs())))
        }),
        _ => false,
    };
    if all_companions(distinct_a, distinct_b) {
        Some(T3Case::SingleA)
    } else if all_companions(distinct_b, distinct_a) {
        Some(T3Case::SingleB)
    } else {
        None
    }
}

/// Decides `cayley(A ⊗ B) = cayley(A) ⊗ cayley(B)` along two independent
/// paths: the spectral criterion and a direct matrix comparison. A
/// disagreement is returned as [`Error::PathDisagreement`].
pub fn theorem3_check(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<T3Verdict> {
    let da = hermitian_eig(a, tol)?.distinct(tol);
    let db = hermitian_eig(b, tol)?.distinct(tol);
    let case = spectral_criterion(&da, &db, tol);
    let residual = da
        .iter()
        .flat_map(|&x| db.iter().map(move |&y| e13_residual(x, y).abs()))
        .fold(0.0, f64::max);

    let joint = cayley(&kron(a, b), tol)?;
    let separate = kron(&cayley(a, tol)?, &cayley(b, tol)?);
    let direct_residual = joint.max_abs_diff(&separate);
    let direct = direct_residual <= tol.eq;

    if direct != case.is_some() {
        return Err(Error::PathDisagreement { spectral: case.is_some(), direct_residual });
    }
    Ok(T3Verdict { holds: direct, case, residual, direct_residual })
}

/// Outcome of the direct multipartite comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiDirect {
    pub holds: bool,
    /// `‖cayley(A₁ ⊗ … ⊗ A_k) − cayley(A₁) ⊗ … ⊗ cayley(A_k)‖_max`.
    pub residual: f64,
}

pub fn multipartite_direct(matrices: &[CMatrix], tol: &Tolerances) -> Result<MultiDirect> {
    multipartite_direct_with_cap(matrices, tol, DEFAULT_DIMENSION_CAP)
}

/// Compares `cayley` of the full Kronecker product with the product of the
/// individual transforms.
pub fn multipartite_direct_with_cap(matrices: &[CMatrix], tol: &Tolerances, cap: usize) -> Result<MultiDirect> {
    let dimension = product_dimension(matrices)?;
    if dimension > cap {
        return Err(Error::DimensionCap { dimension, cap });
    }
    for m in matrices {
        require_hermitian(m, tol)?;
    }
    let joint = cayley(&kron_all(matrices)?, tol)?;
    let transforms = matrices.iter().map(|m| cayley(m, tol)).collect::<Result<Vec<_>>>()?;
    let residual = joint.max_abs_diff(&kron_all(&transforms)?);
    Ok(MultiDirect { holds: residual <= tol.eq, residual })
}

fn product_dimension(matrices: &[CMatrix]) -> Result<usize> {
    if matrices.is_empty() {
        return Err(Error::Dimension("no matrices given".into()));
    }
    matrices
        .iter()
        .try_fold(1usize, |acc, m| acc.checked_mul(m.rows()))
        .ok_or(Error::DimensionCap { dimension: usize::MAX, cap: DEFAULT_DIMENSION_CAP })
}

/// Which spectral routes establish the multipartite identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainVerdict {
    /// `(A_j, A_{j+1} ⊗ … ⊗ A_k)` satisfies the spectral criterion for every `j`.
    pub left_nested: bool,
    /// `(A_1 ⊗ … ⊗ A_{j−1}, A_j)` satisfies it for every `j ≥ 2`.
    pub right_nested: bool,
    /// `U(λ_1) ⋯ U(λ_k) = U(λ_1 ⋯ λ_k)` for every tuple of distinct eigenvalues.
    pub eigenvalue_tuples: bool,
}

impl ChainVerdict {
    pub fn holds(&self) -> bool {
        self.left_nested || self.right_nested || self.eigenvalue_tuples
    }
}

/// Largest number of eigenvalue tuples [`multipartite_sufficient`] enumerates.
const MAX_TUPLES: usize = 1 << 20;

/// Sufficient condition for the multipartite identity: some nesting of
/// bipartite splits satisfies the spectral criterion at every link, or the
/// scalar identity holds on every tuple of eigenvalues.
///
/// Only eigenvalues are needed; a Kronecker product's spectrum is the set of
/// products of its factors' eigenvalues.
pub fn multipartite_sufficient(matrices: &[CMatrix], tol: &Tolerances) -> Result<ChainVerdict> {
    if matrices.is_empty() {
        return Err(Error::Dimension("no matrices given".into()));
    }
    let spectra = matrices
        .iter()
        .map(|m| Ok(hermitian_eig(m, tol)?.distinct(tol)))
        .collect::<Result<Vec<_>>>()?;
    let k = spectra.len();
    let left_nested =
        (0..k - 1).all(|j| spectral_criterion(&spectra[j], &product_spectrum(&spectra[j + 1..], tol), tol).is_some());
    let right_nested =
        (1..k).all(|j| spectral_criterion(&product_spectrum(&spectra[..j], tol), &spectra[j], tol).is_some());
    Ok(ChainVerdict { left_nested, right_nested, eigenvalue_tuples: tuples_close(&spectra, tol) })
}

fn tuples_close(spectra: &[Vec<f64>], tol: &Tolerances) -> bool {
    let count = spectra.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.len()));
    if count.is_none_or(|c| c > MAX_TUPLES) {
        return false;
    }
    // (λ_1 ⋯ λ_j, U(λ_1) ⋯ U(λ_j)) for every prefix tuple
    let products = spectra.iter().fold(vec![(1.0, C64::new(1.0, 0.0))], |acc, s| {
        acc.iter().flat_map(|&(l, u)| s.iter().map(move |&x| (l * x, u * scalar_cayley(x)))).collect()
    });
    products.iter().all(|&(l, u)| (u - scalar_cayley(l)).norm() <= tol.eq)
}

/// Distinct eigenvalues of a Kronecker product from its factors' spectra.
fn product_spectrum(spectra: &[Vec<f64>], tol: &Tolerances) -> Vec<f64> {
    let mut values = spectra.iter().fold(vec![1.0], |acc, s| {
        acc.iter().flat_map(|&x| s.iter().map(move |&y| x * y)).collect()
    });
    values.sort_by(f64::total_cmp);
    let radius = tol.cluster_radius(values.iter().fold(0.0, |m, v| m.max(v.abs())));
    cluster_values(&values, radius).into_iter().map(|(v, _)| v).collect()
}

/// Whether `cayley(I_m^{⊗k}) = cayley(I_m)^{⊗k}`.
///
/// Both sides are scalar multiples of the identity, `−i` and `(−i)^k`, so the
/// answer is `k ≡ 1 (mod 4)`. Small cases are also computed with explicit
/// matrices and checked against the scalar answer.
pub fn identity_power_equal(m: usize, k: usize) -> Result<bool> {
    if m == 0 || k == 0 || k > MAX_IDENTITY_POWER {
        return Err(Error::Dimension(format!(
            "identity power needs m >= 1 and 1 <= k <= {MAX_IDENTITY_POWER}, got m = {m}, k = {k}"
        )));
    }
    let u = scalar_cayley(1.0);
    let power = (0..k).fold(C64::new(1.0, 0.0), |acc, _| acc * u);
    let scalar = (power - scalar_cayley(1.0)).norm() <= 1e-12;

    let direct_dimension = u32::try_from(k).ok().and_then(|k| m.checked_pow(k));
    if direct_dimension.is_some_and(|d| d <= DIRECT_POWER_DIMENSION) {
        let direct = identity_power_direct(m, k)?;
        assert_eq!(direct, scalar, "direct and scalar identity-power checks disagree for m = {m}, k = {k}");
    }
    Ok(scalar)
}

fn identity_power_direct(m: usize, k: usize) -> Result<bool> {
    let copies = vec![CMatrix::identity(m); k];
    Ok(multipartite_direct(&copies, &Tolerances::default())?.holds)
}
