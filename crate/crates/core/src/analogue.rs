//! The Kronecker sum and its Cayley-transform counterpart.
//!
//! Under the exponential, `f(A, B) = A ⊗ I + I ⊗ B` satisfies
//! `exp f(A, B) = exp A ⊗ exp B`. For the Cayley transform the matching map is
//!
//! ```text
//! g(A, B) = i · f(U_A*, −U_B)⁻¹ · f(U_A*, U_B)
//!         = i · f(−U_A, U_B*)⁻¹ · f(U_A, U_B*)
//! ```
//!
//! with `cayley(g(A, B)) = U_A ⊗ U_B`, defined whenever `U_A ⊗ U_B` does not
//! have 1 as an eigenvalue. On eigenvalues `g` acts as `(ab − 1)/(a + b)`, so
//! a pair leaves the domain exactly when `a_j = −b_k` for some eigenvalues.

use crate::cayley::{cayley, scalar_cayley};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, inverse, kron, require_hermitian, CMatrix, Tolerances, C64};

/// Kronecker sum `A ⊗ I_n + I_m ⊗ B`.
pub fn kron_sum(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.require_square("Kronecker sum left operand")?;
    b.require_square("Kronecker sum right operand")?;
    Ok(&kron(a, &CMatrix::identity(b.rows())) + &kron(&CMatrix::identity(a.rows()), b))
}

/// Whether `(A, B)` lies in the domain of [`g_map`].
#[derive(Debug, Clone, PartialEq)]
pub struct DomainVerdict {
    pub in_domain: bool,
    /// Eigenvalues `(x, y)` of `U_A` and `U_B` whose product is within
    /// `tol.cluster` of 1; present exactly when `in_domain` is false.
    pub offending_pair: Option<(C64, C64)>,
    /// `min |xy − 1|` over all eigenvalue pairs.
    pub margin: f64,
}

pub fn in_domain(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<DomainVerdict> {
    let xs: Vec<C64> = hermitian_eig(a, tol)?.eigenvalues.into_iter().map(scalar_cayley).collect();
    let ys: Vec<C64> = hermitian_eig(b, tol)?.eigenvalues.into_iter().map(scalar_cayley).collect();
    let (margin, pair) = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| ((x * y - 1.0).norm(), (x, y))))
        .min_by(|p, q| p.0.total_cmp(&q.0))
        .expect("spectra are non-empty");
    let in_domain = margin > tol.cluster;
    Ok(DomainVerdict { in_domain, offending_pair: (!in_domain).then_some(pair), margin })
}

/// Which of the two equivalent closed forms of `g` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GVariant {
    /// `i · f(U_A*, −U_B)⁻¹ · f(U_A*, U_B)`
    Primary,
    /// `i · f(−U_A, U_B*)⁻¹ · f(U_A, U_B*)`
    Alternate,
}

/// The Hermitian `G` with `cayley(G) = cayley(A) ⊗ cayley(B)`.
///
/// The domain is checked before any inversion; pairs outside it are
/// reported with the eigenvalue pair that comes closest to product 1.
pub fn g_map(a: &CMatrix, b: &CMatrix, tol: &Tolerances, variant: GVariant) -> Result<CMatrix> {
    require_hermitian(a, tol)?;
    require_hermitian(b, tol)?;
    let verdict = in_domain(a, b, tol)?;
    if let Some((x, y)) = verdict.offending_pair {
        return Err(Error::OutsideDomain { x, y, distance: verdict.margin });
    }
    let ua = cayley(a, tol)?;
    let ub = cayley(b, tol)?;
    let (denominator, numerator) = match variant {
        GVariant::Primary => {
            let ua_star = ua.adjoint();
            (kron_sum(&ua_star, &-&ub)?, kron_sum(&ua_star, &ub)?)
        }
        GVariant::Alternate => {
            let ub_star = ub.adjoint();
            (kron_sum(&-&ua, &ub_star)?, kron_sum(&ua, &ub_star)?)
        }
    };
    Ok((&inverse(&denominator, tol)? * &numerator).scale(C64::new(0.0, 1.0)))
}
