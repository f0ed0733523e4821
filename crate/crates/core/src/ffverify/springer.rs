//! Sampling the Springer correspondence over F_p: pick a random
//! r-dimensional quotient of U, solve the linear conditions for a matrix in
//! the section factoring through it, and confirm rank <= r.

use super::fp;
use super::pencil::sample_pencil;
use crate::error::{CoreError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SpringerReport {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub c: u32,
    pub p: u64,
    pub seed: u64,
    pub trials: u32,
    pub successes: u32,
    pub degenerate_redraws: u32,
    pub success_ratio: f64,
}

const REDRAW_CAP: u32 = 200;

/// Runs `trials` Springer samples on the X-side section Z_L (v = mn - c
/// variables). Every produced matrix must satisfy rank <= r and the factor
/// condition; the report carries the success ratio.
pub fn springer_sample(
    m: usize,
    n: usize,
    r: usize,
    c: u32,
    p: u64,
    seed: u64,
    trials: u32,
) -> Result<SpringerReport> {
    fp::check_prime(p)?;
    if trials == 0 {
        return Err(CoreError::InvalidParams("trials must be >= 1".into()));
    }
    if r == 0 || r > m {
        return Err(CoreError::InvalidParams(format!(
            "need 0 < r <= m, got r={r}, m={m}"
        )));
    }
    let mn = (m * n) as u32;
    if c >= mn {
        return Err(CoreError::InvalidParams(format!(
            "need c < mn for a nonempty pencil, got c={c}"
        )));
    }
    let v = (mn - c) as usize;
    let pencil = sample_pencil(m, n, v, p, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5741_6e67);

    let mut successes = 0u32;
    let mut degenerate_redraws = 0u32;
    let mut done = 0u32;
    while done < trials {
        if degenerate_redraws > REDRAW_CAP {
            return Err(CoreError::Degenerate(format!(
                "springer sampling exceeded {REDRAW_CAP} redraws"
            )));
        }
        // random full-rank quotient map A: F^m -> F^r
        let a: Vec<Vec<u64>> = (0..r)
            .map(|_| (0..m).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if fp::rank(&a, p) < r {
            degenerate_redraws += 1;
            continue;
        }
        // kernel basis of A: columns that M must not leave
        let kernel = fp::nullspace(&a, m, p); // m - r vectors of length m
        // conditions K^T M(x) = 0: for each kernel vector kv and column j,
        // sum_k (sum_i kv[i] coeffs[i][j][k]) x_k = 0
        let mut eqs = Vec::with_capacity(kernel.len() * n);
        for kv in &kernel {
            for j in 0..n {
                let mut row = vec![0u64; v];
                for (i, ki) in kv.iter().enumerate() {
                    if *ki == 0 {
                        continue;
                    }
                    for (k, cell) in row.iter_mut().enumerate() {
                        *cell = (*cell + ki * pencil.coeffs[i][j][k]) % p;
                    }
                }
                eqs.push(row);
            }
        }
        let solutions = fp::nullspace(&eqs, v, p);
        if solutions.is_empty() {
            degenerate_redraws += 1;
            continue;
        }
        // random nonzero point of the solution space
        let x = loop {
            let mut x = vec![0u64; v];
            for basis_vec in &solutions {
                let t = rng.gen_range(0..p);
                if t == 0 {
                    continue;
                }
                for (xi, bi) in x.iter_mut().zip(basis_vec) {
                    *xi = (*xi + t * bi) % p;
                }
            }
            if x.iter().any(|&c| c != 0) {
                break x;
            }
        };
        done += 1;
        let mat = pencil.evaluate(&x);
        let rank_ok = fp::rank(&mat, p) <= r;
        // factor condition K^T M = 0, re-checked on the evaluated matrix
        let factor_ok = kernel.iter().all(|kv| {
            (0..n).all(|j| {
                let dot: u64 = (0..m).map(|i| kv[i] * mat[i][j] % p).sum::<u64>() % p;
                dot == 0
            })
        });
        if rank_ok && factor_ok {
            successes += 1;
        }
    }
    Ok(SpringerReport {
        m,
        n,
        r,
        c,
        p,
        seed,
        trials,
        successes,
        degenerate_redraws,
        success_ratio: successes as f64 / trials as f64,
    })
}
