use crate::error::{Error, Result};

/// Numeric comparison thresholds shared by every operation.
///
/// `eq` is relative: two matrices agree when their max-norm difference is at
/// most `eq * max(1, ‖reference‖_max)`. `cluster` decides when two computed
/// eigenvalues count as the same value, and `conv` stops the Jacobi sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub eq: f64,
    pub cluster: f64,
    pub conv: f64,
}

/// Smallest clustering radius ever used, whatever the tolerance.
const CLUSTER_FLOOR: f64 = 1e-12;

impl Default for Tolerances {
    fn default() -> Self {
        Self { eq: 1e-9, cluster: 1e-8, conv: 1e-13 }
    }
}

impl Tolerances {
    /// Sets `eq` and scales the other thresholds by the same factor as the defaults.
    pub fn scaled(eq: f64) -> Result<Self> {
        let d = Self::default();
        let factor = eq / d.eq;
        Self { eq, cluster: d.cluster * factor, conv: d.conv * factor }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        for (name, v) in [("tol_eq", self.eq), ("tol_cluster", self.cluster), ("tol_conv", self.conv)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerances(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if self.conv > self.eq {
            return Err(Error::InvalidTolerances(format!(
                "tol_conv ({}) must not exceed tol_eq ({})",
                self.conv, self.eq
            )));
        }
        Ok(self)
    }

    /// Equality threshold for matrices whose entries are of size `scale`.
    pub fn eq_bound(&self, scale: f64) -> f64 {
        self.eq * scale.max(1.0)
    }

    /// Clustering radius for eigenvalues of a matrix with spectral radius `radius`.
    pub fn cluster_radius(&self, radius: f64) -> f64 {
        (self.cluster * radius.max(1.0)).max(CLUSTER_FLOOR)
    }
}

/// Merges sorted reals into clusters whose consecutive gaps are at most
/// `radius`. Returns `(representative, member indices)` with the mean as the
/// representative.
pub fn cluster_values(sorted: &[f64], radius: f64) -> Vec<(f64, Vec<usize>)> {
    let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
    for (i, &v) in sorted.iter().enumerate() {
        match out.last_mut() {
            Some((_, members)) if v - sorted[*members.last().unwrap()] <= radius => members.push(i),
            _ => out.push((v, vec![i])),
        }
    }
    for (rep, members) in &mut out {
        *rep = members.iter().map(|&i| sorted[i]).sum::<f64>() / members.len() as f64;
    }
    out
}
