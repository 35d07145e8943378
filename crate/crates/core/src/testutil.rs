//! Seeded random matrices for unit tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{CMatrix, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(r: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
}

/// Entries uniform in [-1, 1], Hermitized.
pub fn random_hermitian(r: &mut impl Rng, n: usize) -> CMatrix {
    random_complex(r, n, n).hermitian_part()
}

/// Unitary from modified Gram-Schmidt on a random complex matrix.
pub fn random_unitary(r: &mut impl Rng, n: usize) -> CMatrix {
    let m = random_complex(r, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = m.column(j);
        for q in &cols {
            let dot: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= dot * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `V diag(eigs) V*` for a random unitary `V`.
pub fn hermitian_with_spectrum(r: &mut impl Rng, eigs: &[f64]) -> CMatrix {
    let v = random_unitary(r, eigs.len());
    (&(&v * &CMatrix::from_real_diag(eigs)) * &v.adjoint()).hermitian_part()
}
