//! Prime-field scalar and small-matrix arithmetic. Primes stay small (the
//! enumeration budget caps p^v), so u64 with explicit reduction is enough.

use crate::error::{CoreError, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CoreError::InvalidParams(format!("{p} is not prime")))
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p
    debug_assert!(a % p != 0);
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Row-reduces in place and returns the rank.
pub fn rank_in_place(mat: &mut [Vec<u64>], p: u64) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| mat[i][col] % p != 0) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = inv_mod(mat[rank][col], p);
        for j in col..cols {
            mat[rank][j] = mat[rank][j] % p * inv % p;
        }
        for i in 0..rows {
            if i != rank && mat[i][col] % p != 0 {
                let f = mat[i][col] % p;
                for j in col..cols {
                    mat[i][j] = (mat[i][j] + (p - f) * mat[rank][j]) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rank(mat: &[Vec<u64>], p: u64) -> usize {
    let mut m = mat.to_vec();
    rank_in_place(&mut m, p)
}

/// Determinant by Gaussian elimination.
pub fn det(mat: &[Vec<u64>], p: u64) -> u64 {
    let n = mat.len();
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut m = mat.to_vec();
    let mut d = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| m[i][col] % p != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(col, pivot);
            d = (p - d) % p;
        }
        d = d * (m[col][col] % p) % p;
        let inv = inv_mod(m[col][col], p);
        for i in col + 1..n {
            if m[i][col] % p != 0 {
                let f = m[i][col] % p * inv % p;
                for j in col..n {
                    m[i][j] = (m[i][j] + (p - f) * m[col][j]) % p;
                }
            }
        }
    }
    d
}

/// Basis of the right nullspace of `mat` (rows = equations).
pub fn nullspace(mat: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = mat.to_vec();
    let rank = rank_in_place(&mut m, p);
    // locate pivot columns of the reduced matrix
    let mut pivots = Vec::with_capacity(rank);
    let mut col = 0;
    for row in 0..rank {
        while col < cols && m[row][col] % p == 0 {
            col += 1;
        }
        if col == cols {
            break;
        }
        pivots.push(col);
        col += 1;
    }
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            // pc-entry = -m[row][free]
            v[pc] = (p - m[row][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}
