//! Seeded random matrices shared by the integration tests.
#![allow(dead_code)]

use cayley_kron::{CMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

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

/// Random Hermitian matrix of size `n` whose eigenvalues are drawn from `values`,
/// each value used at least once when `n` allows.
pub fn hermitian_from_values(r: &mut impl Rng, n: usize, values: &[f64]) -> CMatrix {
    let eigs: Vec<f64> = (0..n).map(|i| if i < values.len() { values[i] } else { values[r.gen_range(0..values.len())] }).collect();
    hermitian_with_spectrum(r, &eigs)
}

pub fn scaled_identity(n: usize, v: f64) -> CMatrix {
    CMatrix::identity(n).scale(C64::new(v, 0.0))
}

/// Writes `m` as an interchange-format file inside `dir`.
pub fn save(dir: &std::path::Path, name: &str, m: &CMatrix) -> std::path::PathBuf {
    let path = dir.join(name);
    cayley_kron::io::write_matrix(&path, m).unwrap();
    path
}
