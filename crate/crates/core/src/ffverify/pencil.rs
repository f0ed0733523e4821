//! Matrix pencils over a prime field: an m x n matrix of linear forms in v
//! variables, the finite-field stand-in for a linear section of the space
//! of matrices.

use super::fp;
use crate::error::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FpMatrixPencil {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    pub v: usize,
    /// coeffs[i][j][k] = coefficient of x_k in entry (i, j)
    pub coeffs: Vec<Vec<Vec<u64>>>,
}

impl FpMatrixPencil {
    pub fn evaluate(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; self.n]; self.m];
        self.evaluate_into(x, &mut out);
        out
    }

    pub fn evaluate_into(&self, x: &[u64], out: &mut [Vec<u64>]) {
        debug_assert_eq!(x.len(), self.v);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, form) in row.iter().enumerate() {
                let mut acc = 0u64;
                for (c, xi) in form.iter().zip(x) {
                    acc = (acc + c * xi) % self.p;
                }
                out[i][j] = acc;
            }
        }
    }

    pub fn rank_at(&self, x: &[u64]) -> usize {
        let mut m = self.evaluate(x);
        fp::rank_in_place(&mut m, self.p)
    }
}

/// Reproducible pseudorandom pencil; the same seed yields the same pencil.
pub fn sample_pencil(m: usize, n: usize, v: usize, p: u64, seed: u64) -> Result<FpMatrixPencil> {
    fp::check_prime(p)?;
    if v == 0 {
        return Err(crate::error::CoreError::InvalidParams(
            "pencil needs at least one variable".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| (0..v).map(|_| rng.gen_range(0..p)).collect())
                .collect()
        })
        .collect();
    Ok(FpMatrixPencil { p, m, n, v, coeffs })
}

impl FpMatrixPencil {
    /// Rank of the mn x v coefficient matrix.
    pub fn coefficient_rank(&self) -> usize {
        let flat: Vec<Vec<u64>> = self
            .coeffs
            .iter()
            .flat_map(|row| row.iter().cloned())
            .collect();
        fp::rank(&flat, self.p)
    }

    /// True when the pencil parametrizes an honest linear section: the map
    /// from P^{v-1} into the matrix space is injective.
    pub fn is_injective(&self) -> bool {
        self.coefficient_rank() == self.v.min(self.m * self.n)
    }
}

/// Samples pencils deterministically until one with an injective
/// parametrization appears; returns it with the seed that produced it.
pub fn sample_admissible_pencil(
    m: usize,
    n: usize,
    v: usize,
    p: u64,
    seed: u64,
) -> Result<(FpMatrixPencil, u64)> {
    const CAP: u64 = 50;
    for attempt in 0..CAP {
        let s = seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let pencil = sample_pencil(m, n, v, p, s)?;
        if pencil.is_injective() {
            return Ok((pencil, s));
        }
    }
    Err(crate::error::CoreError::Degenerate(format!(
        "no admissible pencil in {CAP} draws from seed {seed}"
    )))
}

/// A pencil with two identical rows: every point of the determinant locus
/// is singular. Used to exercise the negative path of the smoothness test.
pub fn degenerate_pencil(m: usize, n: usize, v: usize, p: u64, seed: u64) -> Result<FpMatrixPencil> {
    let mut pencil = sample_pencil(m, n, v, p, seed)?;
    if m >= 2 {
        pencil.coeffs[1] = pencil.coeffs[0].clone();
    }
    Ok(pencil)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinism() {
        let a = sample_pencil(3, 4, 3, 7, 99).unwrap();
        let b = sample_pencil(3, 4, 3, 7, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_pencil(3, 4, 3, 7, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(sample_pencil(2, 2, 3, 6, 1).is_err());
        assert!(sample_pencil(2, 2, 0, 7, 1).is_err());
    }

    #[test]
    fn evaluation_is_linear() {
        let p = 11;
        let pencil = sample_pencil(2, 3, 4, p, 5).unwrap();
        let x = vec![1, 2, 3, 4];
        let twice: Vec<u64> = x.iter().map(|c| c * 2 % p).collect();
        let a = pencil.evaluate(&x);
        let b = pencil.evaluate(&twice);
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(b[i][j], a[i][j] * 2 % p);
            }
        }
    }
}
