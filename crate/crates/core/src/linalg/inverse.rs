use super::matrix::{CMatrix, C64};
use super::tolerances::Tolerances;
use crate::error::{Error, Result};

/// Inverse by Gauss-Jordan elimination with partial pivoting.
///
/// Fails with [`Error::Singular`] when a pivot falls below `tol.eq · ‖A‖_max`.
pub fn inverse(a: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    a.require_square("matrix to invert")?;
    let n = a.rows();
    let floor = tol.eq * a.max_norm();
    let mut w = a.clone();
    let mut inv = CMatrix::identity(n);

    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, w[(r, col)].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty pivot range");
        if pivot <= floor || pivot == 0.0 {
            return Err(Error::Singular { column: col, pivot });
        }
        if pivot_row != col {
            swap_rows(&mut w, col, pivot_row);
            swap_rows(&mut inv, col, pivot_row);
        }
        let scale = w[(col, col)].inv();
        for j in 0..n {
            w[(col, j)] *= scale;
            inv[(col, j)] *= scale;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = w[(r, col)];
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                let (wc, ic) = (w[(col, j)], inv[(col, j)]);
                w[(r, j)] -= factor * wc;
                inv[(r, j)] -= factor * ic;
            }
        }
    }
    Ok(inv)
}

/// Determinant by LU elimination with partial pivoting. Never fails on a
/// square input; a singular matrix yields zero.
pub fn determinant(a: &CMatrix) -> Result<C64> {
    a.require_square("determinant input")?;
    let n = a.rows();
    let mut w = a.clone();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, w[(r, col)].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty pivot range");
        if pivot == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        if pivot_row != col {
            swap_rows(&mut w, col, pivot_row);
            det = -det;
        }
        let p = w[(col, col)];
        det *= p;
        for r in col + 1..n {
            let factor = w[(r, col)] / p;
            for j in col..n {
                let wc = w[(col, j)];
                w[(r, j)] -= factor * wc;
            }
        }
    }
    Ok(det)
}

fn swap_rows(m: &mut CMatrix, a: usize, b: usize) {
    for j in 0..m.cols() {
        let t = m[(a, j)];
        m[(a, j)] = m[(b, j)];
        m[(b, j)] = t;
    }
}
