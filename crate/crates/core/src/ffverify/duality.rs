//! The determinant duality check for square pencils (r = 1, c = n): the
//! degeneracy locus of M_L on P(U) must coincide pointwise with the
//! degeneracy locus of the dual map M^L built from the orthogonal
//! complement of L.

use super::enumerate::{point_at, projective_points};
use super::fp;
use crate::error::{CoreError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DualityReport {
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub seed: u64,
    pub agree: bool,
    pub degree_check: bool,
    pub degenerate_redraws: u32,
    pub locus_points: u64,
    pub total_points: u64,
}

const REDRAW_CAP: u32 = 50;

/// Samples an n-dimensional subspace L of the m x n matrix space and
/// compares { det M_L = 0 } with { det M^L = 0 } over every point of
/// P^{m-1}(F_p).
pub fn check_duality_dl(m: usize, n: usize, p: u64, seed: u64) -> Result<DualityReport> {
    fp::check_prime(p)?;
    if n < m {
        return Err(CoreError::InvalidParams(format!(
            "need n >= m, got m={m}, n={n}"
        )));
    }
    let mn = m * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = projective_points(p, m as u32) as u64;

    let mut redraws = 0u32;
    'resample: loop {
        if redraws > REDRAW_CAP {
            return Err(CoreError::Degenerate(
                "duality check kept drawing degenerate subspaces".into(),
            ));
        }
        // basis of L: n matrices, independent as vectors in F_p^{mn}
        let basis: Vec<Vec<Vec<u64>>> = (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
                    .collect()
            })
            .collect();
        let flat: Vec<Vec<u64>> = basis
            .iter()
            .map(|mat| mat.iter().flatten().copied().collect())
            .collect();
        if fp::rank(&flat, p) < n {
            redraws += 1;
            continue;
        }
        // L-perp: nullspace of the n x mn coefficient matrix
        let perp = fp::nullspace(&flat, mn, p);
        debug_assert_eq!(perp.len(), mn - n);

        let mut locus_points = 0u64;
        let mut any_nonzero = false;
        let mut agree = true;
        for idx in 0..total as u128 {
            let a = point_at(p, m as u32, idx);
            // M_L(a): n x n, column k = a . basis[k]
            let ml: Vec<Vec<u64>> = (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| {
                            (0..m).map(|i| a[i] * basis[k][i][j] % p).sum::<u64>() % p
                        })
                        .collect()
                })
                .collect();
            let d1 = fp::det(&ml, p);

            // M^L(a): reduce each phi in L-perp modulo the line spanned by
            // a inside U-dual, using explicit bases at this point
            let lead = a.iter().position(|&c| c != 0).expect("projective point");
            let inv_lead = fp::inv_mod(a[lead], p);
            let rows: Vec<(usize, usize)> = (0..m)
                .filter(|&i| i != lead)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .collect();
            debug_assert_eq!(rows.len(), perp.len());
            let msup: Vec<Vec<u64>> = rows
                .iter()
                .map(|&(i, j)| {
                    perp.iter()
                        .map(|phi| {
                            let phi_ij = phi[i * n + j];
                            let phi_lj = phi[lead * n + j];
                            (phi_ij + (p - a[i] * inv_lead % p) * phi_lj) % p
                        })
                        .collect()
                })
                .collect();
            let d2 = fp::det(&msup, p);

            if d1 != 0 {
                any_nonzero = true;
            } else {
                locus_points += 1;
            }
            if (d1 == 0) != (d2 == 0) {
                agree = false;
            }
        }
        if !any_nonzero {
            // det M_L identically zero: degenerate L, flag and resample
            redraws += 1;
            continue 'resample;
        }
        return Ok(DualityReport {
            m,
            n,
            p,
            seed,
            agree,
            degree_check: any_nonzero,
            degenerate_redraws: redraws,
            locus_points,
            total_points: total,
        });
    }
}
