//! When is `cayley(A ⊗ B)` itself a Kronecker product?
//!
//! In the joint eigenbasis, `cayley(A ⊗ B) = Σ_{j,k} U(a_j b_k) P_j ⊗ Q_k`
//! where `P_j`, `Q_k` are the spectral projectors of `A` and `B`. Since those
//! projectors are linearly independent, the sum factors exactly when the
//! coefficient grid `U(a_j b_k)` has rank one. All 2×2 minors of that grid
//! vanish iff `(a_p − a_r)(b_q − b_s)(a_p a_r b_q b_s − 1) = 0` for every
//! choice of eigenvalues, which leaves three cases: `A` has a single
//! eigenvalue, `B` has a single eigenvalue, or both have exactly two with
//! `a₁a₂b₁b₂ = 1`.

use std::f64::consts::TAU;
use std::fmt;

use crate::cayley::{cayley, inverse_cayley, scalar_cayley};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, normal_eigenvalues, require_hermitian, CMatrix, Tolerances, C64};

/// Coefficients `a_{j,k}` of a matrix expanded as `Σ a_{j,k} C_j ⊗ D_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid {
    m: usize,
    n: usize,
    values: Vec<C64>,
}

impl CoefficientGrid {
    pub fn new(m: usize, n: usize, values: Vec<C64>) -> Result<Self> {
        if values.len() != m * n {
            return Err(Error::Dimension(format!("grid {m}x{n} needs {} values, got {}", m * n, values.len())));
        }
        if let Some(i) = values.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { row: i / n, col: i % n });
        }
        Ok(Self { m, n, values })
    }

    pub fn from_fn(m: usize, n: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        Self { m, n, values: (0..m * n).map(|i| f(i / n, i % n)).collect() }
    }

    pub fn get(&self, j: usize, k: usize) -> C64 {
        self.values[j * self.n + k]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }
}

/// True iff `|a_pq a_rs − a_ps a_rq| ≤ tol.eq · (1 + max|a|²)` for all index
/// choices, i.e. the grid has rank at most one.
pub fn grid_rank1_check(grid: &CoefficientGrid, tol: &Tolerances) -> bool {
    let biggest = grid.values.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    let bound = tol.eq * (1.0 + biggest);
    let (m, n) = grid.shape();
    for p in 0..m {
        for r in p + 1..m {
            for q in 0..n {
                for s in q + 1..n {
                    let minor = grid.get(p, q) * grid.get(r, s) - grid.get(p, s) * grid.get(r, q);
                    if minor.norm() > bound {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The grid `U(a_j b_k)` over the clustered distinct eigenvalues of `A` and `B`.
pub fn cayley_grid(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<CoefficientGrid> {
    let da = hermitian_eig(a, tol)?.distinct(tol);
    let db = hermitian_eig(b, tol)?.distinct(tol);
    Ok(CoefficientGrid::from_fn(da.len(), db.len(), |j, k| scalar_cayley(da[j] * db[k])))
}

fn check_kron_shape(rows: usize, cols: usize, m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 || rows != m * n || cols != m * n {
        return Err(Error::Dimension(format!("a {rows}x{cols} matrix does not split as ({m}x{m}) ⊗ ({n}x{n})")));
    }
    Ok(())
}

/// Rearranges an `mn × mn` matrix into `m² × n²` so that `C ⊗ D` becomes the
/// outer product `vec(C) vec(D)ᵗ` (row-major vectorisation).
pub fn kron_rearrange(mat: &CMatrix, m: usize, n: usize) -> Result<CMatrix> {
    check_kron_shape(mat.rows(), mat.cols(), m, n)?;
    Ok(CMatrix::from_fn(m * m, n * n, |row, col| {
        let (j, jp) = (row / m, row % m);
        let (k, kp) = (col / n, col % n);
        mat[(j * n + k, jp * n + kp)]
    }))
}

/// Inverse of [`kron_rearrange`].
pub fn kron_unrearrange(r: &CMatrix, m: usize, n: usize) -> Result<CMatrix> {
    if r.rows() != m * m || r.cols() != n * n {
        return Err(Error::Dimension(format!("expected a {}x{} rearrangement, got {}x{}", m * m, n * n, r.rows(), r.cols())));
    }
    Ok(CMatrix::from_fn(m * n, m * n, |row, col| {
        let (j, k) = (row / n, row % n);
        let (jp, kp) = (col / n, col % n);
        r[(j * m + jp, k * n + kp)]
    }))
}

/// Splits `M = C ⊗ D` with `C` of order `m` and `D` of order `n`.
///
/// The rank-one factor is read off the row and column of the largest entry
/// of the rearrangement. `C` is scaled to Frobenius norm `√m` and the pair's
/// common phase is chosen so the largest entry of `C` is real positive; for a
/// unitary `M` both factors are then unitary.
pub fn kron_factorize(mat: &CMatrix, m: usize, n: usize, tol: &Tolerances) -> Result<(CMatrix, CMatrix)> {
    let r = kron_rearrange(mat, m, n)?;
    let (p, q) = argmax_abs(&r);
    let pivot = r[(p, q)];
    if pivot.norm() == 0.0 {
        return Ok((CMatrix::zeros(m, m), CMatrix::zeros(n, n)));
    }
    let left = r.column(q);
    let right: Vec<C64> = (0..n * n).map(|k| r[(p, k)] / pivot).collect();

    let mut residual = 0.0f64;
    for (i, li) in left.iter().enumerate() {
        for (k, rk) in right.iter().enumerate() {
            residual = residual.max((r[(i, k)] - li * rk).norm());
        }
    }
    if residual > tol.eq * mat.frobenius_norm() {
        return Err(Error::NotRankOne { residual });
    }

    let c = CMatrix::new(m, m, left)?;
    let d = CMatrix::new(n, n, right)?;
    let scale = (m as f64).sqrt() / c.frobenius_norm();
    let (i, j) = argmax_abs(&c);
    let phase = c[(i, j)] / c[(i, j)].norm();
    let c = c.scale(phase.conj() * scale);
    let d = d.scale(phase / scale);
    Ok((c, d))
}

fn argmax_abs(m: &CMatrix) -> (usize, usize) {
    let mut best = (0, 0);
    let mut best_norm = -1.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m[(i, j)].norm();
            if v > best_norm {
                best_norm = v;
                best = (i, j);
            }
        }
    }
    best
}

/// Which case makes `cayley(A ⊗ B)` a Kronecker product, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorVerdict {
    SingleSpectrumA,
    SingleSpectrumB,
    TwoByTwoUnitProduct,
    NotFactorable,
}

impl fmt::Display for FactorVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SingleSpectrumA => "SingleSpectrumA",
            Self::SingleSpectrumB => "SingleSpectrumB",
            Self::TwoByTwoUnitProduct => "TwoByTwoUnitProduct",
            Self::NotFactorable => "NotFactorable",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorClassification {
    pub verdict: FactorVerdict,
    pub distinct_eigenvalues_a: Vec<f64>,
    pub distinct_eigenvalues_b: Vec<f64>,
    /// Largest `|(a_p − a_r)(b_q − b_s)(a_p a_r b_q b_s − 1)|`.
    pub residual: f64,
}

impl FactorClassification {
    pub fn is_factorable(&self) -> bool {
        self.verdict != FactorVerdict::NotFactorable
    }
}

/// Classifies `(A, B)` by the spectral criterion for `cayley(A ⊗ B) = C ⊗ D`.
pub fn theorem1_classify(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<FactorClassification> {
    let da = hermitian_eig(a, tol)?.distinct(tol);
    let db = hermitian_eig(b, tol)?.distinct(tol);

    let mut residual = 0.0f64;
    for &ap in &da {
        for &ar in &da {
            for &bq in &db {
                for &bs in &db {
                    residual = residual.max(((ap - ar) * (bq - bs) * (ap * ar * bq * bs - 1.0)).abs());
                }
            }
        }
    }

    let verdict = match (da.len(), db.len()) {
        (1, _) => FactorVerdict::SingleSpectrumA,
        (_, 1) => FactorVerdict::SingleSpectrumB,
        (2, 2) if (da[0] * da[1] * db[0] * db[1] - 1.0).abs() <= tol.cluster => FactorVerdict::TwoByTwoUnitProduct,
        _ => FactorVerdict::NotFactorable,
    };
    Ok(FactorClassification { verdict, distinct_eigenvalues_a: da, distinct_eigenvalues_b: db, residual })
}

/// Hermitian `C`, `D` with `cayley(C) ⊗ cayley(D) = cayley(A ⊗ B)`.
#[derive(Debug, Clone)]
pub struct HermitianFactors {
    pub c: CMatrix,
    pub d: CMatrix,
    /// Phase moved from the second unitary factor to the first.
    pub theta: f64,
}

/// Builds Hermitian Kronecker factors of `cayley(A ⊗ B)`.
///
/// The unitary factors `C' ⊗ D'` are made Cayley-invertible by moving a phase
/// `e^{iθ}` between them: `θ` is the midpoint of the widest gap among the
/// forbidden angles `−arg c_j` and `arg d_k`, so neither `e^{iθ}C'` nor
/// `e^{−iθ}D'` has eigenvalue 1.
pub fn theorem2_hermitian_factor(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<HermitianFactors> {
    require_hermitian(a, tol)?;
    require_hermitian(b, tol)?;
    let class = theorem1_classify(a, b, tol)?;
    if !class.is_factorable() {
        return Err(Error::NotFactorable { residual: class.residual });
    }
    let (m, n) = (a.rows(), b.rows());
    let u = cayley(&kron(a, b), tol)?;
    let (c1, d1) = kron_factorize(&u, m, n, tol).map_err(|e| match e {
        Error::NotRankOne { residual } => Error::NotFactorable { residual },
        other => other,
    })?;

    let mut angles: Vec<f64> = normal_eigenvalues(&c1, tol)?
        .iter()
        .map(|z| (-z.arg()).rem_euclid(TAU))
        .chain(normal_eigenvalues(&d1, tol)?.iter().map(|z| z.arg().rem_euclid(TAU)))
        .collect();
    angles.sort_by(f64::total_cmp);
    let (gap, start) = widest_gap(&angles);
    if gap < 10.0 * tol.cluster {
        return Err(Error::NoSafePhase { gap });
    }
    let theta = (start + gap / 2.0).rem_euclid(TAU);

    let c = inverse_cayley(&c1.scale(C64::from_polar(1.0, theta)), tol)?;
    let d = inverse_cayley(&d1.scale(C64::from_polar(1.0, -theta)), tol)?;
    Ok(HermitianFactors { c, d, theta })
}

/// Widest gap between consecutive sorted angles on the circle, as
/// `(width, start angle)`.
fn widest_gap(sorted: &[f64]) -> (f64, f64) {
    let Some(&first) = sorted.first() else {
        return (TAU, 0.0);
    };
    let last = *sorted.last().unwrap();
    let mut best = (first + TAU - last, last);
    for w in sorted.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[0]);
        }
    }
    best
}
