use super::matrix::{CMatrix, C64};
use crate::error::{Error, Result};

/// Kronecker product: block `(j, k)` of the result is `a[j][k] · B`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (p, q) = (b.rows(), b.cols());
    CMatrix::from_fn(a.rows() * p, a.cols() * q, |i, j| a[(i / p, j / q)] * b[(i % p, j % q)])
}

/// Left-to-right Kronecker product of a non-empty sequence.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a CMatrix>) -> Result<CMatrix> {
    let mut it = factors.into_iter();
    let first = it.next().ok_or_else(|| Error::Dimension("empty Kronecker product".into()))?;
    Ok(it.fold(first.clone(), |acc, m| kron(&acc, m)))
}

/// Block diagonal `diag(A, B)`.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut out = CMatrix::zeros(m + b.rows(), n + b.cols());
    for i in 0..m {
        for j in 0..n {
            out[(i, j)] = a[(i, j)];
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out[(m + i, n + j)] = b[(i, j)];
        }
    }
    out
}

/// Star product of a 2×2 matrix with a square `B`: the corners of `A` wrap
/// around `B`, which sits in the central block.
///
/// ```text
/// a11  0  a12
///  0   B   0
/// a21  0  a22
/// ```
pub fn star_product(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Dimension(format!("star product needs a 2x2 left factor, got {}x{}", a.rows(), a.cols())));
    }
    b.require_square("star product right factor")?;
    let n = b.rows();
    let last = n + 1;
    let mut out = CMatrix::zeros(n + 2, n + 2);
    out[(0, 0)] = a[(0, 0)];
    out[(0, last)] = a[(0, 1)];
    out[(last, 0)] = a[(1, 0)];
    out[(last, last)] = a[(1, 1)];
    for i in 0..n {
        for j in 0..n {
            out[(1 + i, 1 + j)] = b[(i, j)];
        }
    }
    Ok(out)
}

/// Permutation `P` of order `n + 2` with `P (A ⋆ B) Pᵗ = A ⊕ B` for every
/// 2×2 `A` and n×n `B`. Row `i` of `P` picks index `(0, n+1, 1, …, n)[i]`.
pub fn star_permutation(n: usize) -> CMatrix {
    let order: Vec<usize> = [0, n + 1].into_iter().chain(1..=n).collect();
    permutation_matrix(&order)
}

/// Commutation matrix `P` (order `mn`) with `P (A ⊗ B) Pᵗ = B ⊗ A` for every
/// m×m `A` and n×n `B`.
pub fn commutation_matrix(m: usize, n: usize) -> CMatrix {
    assert!(m > 0 && n > 0, "commutation matrix needs positive dimensions");
    // row k*m + i of B⊗A corresponds to row i*n + k of A⊗B
    let mut order = vec![0; m * n];
    for i in 0..m {
        for k in 0..n {
            order[k * m + i] = i * n + k;
        }
    }
    permutation_matrix(&order)
}

fn permutation_matrix(order: &[usize]) -> CMatrix {
    let n = order.len();
    let mut p = CMatrix::zeros(n, n);
    for (row, &col) in order.iter().enumerate() {
        p[(row, col)] = C64::new(1.0, 0.0);
    }
    p
}
