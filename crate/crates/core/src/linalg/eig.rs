use super::matrix::{CMatrix, C64};
use super::tolerances::{cluster_values, Tolerances};
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
const MAX_SWEEPS: usize = 30;

/// Eigen-decomposition of a Hermitian matrix: ascending real eigenvalues and
/// the orthonormal eigenvectors as the matching columns of `eigenvectors`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

/// A group of numerically equal eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub value: f64,
    pub indices: Vec<usize>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn clusters(&self, tol: &Tolerances) -> Vec<Cluster> {
        cluster_values(&self.eigenvalues, tol.cluster_radius(self.spectral_radius()))
            .into_iter()
            .map(|(value, indices)| Cluster { value, indices })
            .collect()
    }

    /// Distinct eigenvalues after clustering, ascending.
    pub fn distinct(&self, tol: &Tolerances) -> Vec<f64> {
        self.clusters(tol).into_iter().map(|c| c.value).collect()
    }

    /// Orthogonal projector onto the span of the eigenvectors in `indices`.
    pub fn projector(&self, indices: &[usize]) -> CMatrix {
        let v = self.eigenvectors.select_columns(indices);
        &v * &v.adjoint()
    }

    /// `V · diag(φ(λ)) · V*`.
    pub fn apply(&self, phi: impl Fn(f64) -> C64) -> CMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let weights: Vec<C64> = self.eigenvalues.iter().map(|&l| phi(l)).collect();
        CMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * weights[k] * v[(j, k)].conj()).sum())
    }
}

pub(crate) fn require_hermitian(a: &CMatrix, tol: &Tolerances) -> Result<()> {
    a.require_square("Hermitian input")?;
    let deviation = a.hermitian_defect();
    if deviation > tol.eq_bound(a.max_norm()) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation that zeroes it.
/// Sweeps stop once the largest off-diagonal magnitude is at most
/// `tol.conv · ‖A‖_F`.
pub fn hermitian_eig(a: &CMatrix, tol: &Tolerances) -> Result<Spectrum> {
    require_hermitian(a, tol)?;
    let n = a.rows();
    let mut w = a.hermitian_part();
    let mut v = CMatrix::identity(n);
    let threshold = tol.conv * a.frobenius_norm();

    let mut converged = false;
    let mut off = max_off_diagonal(&w);
    for _ in 0..MAX_SWEEPS {
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                rotate(&mut w, &mut v, p, q);
            }
        }
        off = max_off_diagonal(&w);
    }
    if !converged && off > threshold {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, off_diagonal: off });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re));
    Ok(Spectrum {
        eigenvalues: order.iter().map(|&i| w[(i, i)].re).collect(),
        eigenvectors: v.select_columns(&order),
    })
}

fn max_off_diagonal(w: &CMatrix) -> f64 {
    let n = w.rows();
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in p + 1..n {
            worst = worst.max(w[(p, q)].norm());
        }
    }
    worst
}

/// Zeroes `w[p][q]` with `w ← J* w J`, accumulating `v ← v J`.
fn rotate(w: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = w[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let theta = (w[(q, q)].re - w[(p, p)].re) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J restricted to (p, q) is diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = w.rows();
    for k in 0..n {
        let (wkp, wkq) = (w[(k, p)], w[(k, q)]);
        w[(k, p)] = wkp * jpp + wkq * jqp;
        w[(k, q)] = wkp * jpq + wkq * jqq;
    }
    for k in 0..n {
        let (wpk, wqk) = (w[(p, k)], w[(q, k)]);
        w[(p, k)] = jpp.conj() * wpk + jqp.conj() * wqk;
        w[(q, k)] = jpq.conj() * wpk + jqq.conj() * wqk;
    }
    w[(p, q)] = C64::new(0.0, 0.0);
    w[(q, p)] = C64::new(0.0, 0.0);
    w[(p, p)] = C64::new(w[(p, p)].re, 0.0);
    w[(q, q)] = C64::new(w[(q, q)].re, 0.0);

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}
