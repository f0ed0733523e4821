//! Exhaustive enumeration of projective space over a prime field and exact
//! rank-stratum counts of a matrix pencil.

use super::fp;
use super::pencil::FpMatrixPencil;
use crate::error::{CoreError, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Number of points of P^{v-1}(F_p).
pub fn projective_points(p: u64, v: u32) -> u128 {
    let mut pw = 1u128;
    for _ in 0..v {
        pw *= p as u128;
    }
    (pw - 1) / (p as u128 - 1)
}

pub fn check_budget(p: u64, v: u32, budget: u64) -> Result<()> {
    let mut pw = 1u128;
    for _ in 0..v {
        pw *= p as u128;
        if pw > budget as u128 {
            return Err(CoreError::BudgetExceeded {
                needed: pw,
                budget,
            });
        }
    }
    Ok(())
}

/// The idx-th point of P^{v-1}(F_p) in the leading-one normal form: zeros,
/// then 1, then free base-p digits.
pub fn point_at(p: u64, v: u32, mut idx: u128) -> Vec<u64> {
    let v = v as usize;
    let mut block = 1u128; // p^(v - lead - 1)
    for _ in 0..v - 1 {
        block *= p as u128;
    }
    let mut lead = 0;
    while idx >= block {
        idx -= block;
        block /= p as u128;
        lead += 1;
    }
    let mut coords = vec![0u64; v];
    coords[lead] = 1;
    let mut t = idx;
    for c in coords.iter_mut().skip(lead + 1) {
        *c = (t % p as u128) as u64;
        t /= p as u128;
    }
    coords
}

/// Exact per-rank point counts of the pencil over P^{v-1}(F_p).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StratumCount {
    pub p: u64,
    pub v: u32,
    /// per_rank[r] = number of points where the evaluated matrix has rank r
    pub per_rank: Vec<u64>,
    pub total: u64,
}

impl StratumCount {
    /// Number of points of rank at most r.
    pub fn at_most(&self, r: usize) -> u64 {
        self.per_rank.iter().take(r + 1).sum()
    }
}

pub fn rank_strata_count(pencil: &FpMatrixPencil, budget: u64) -> Result<StratumCount> {
    check_budget(pencil.p, pencil.v as u32, budget)?;
    let total = projective_points(pencil.p, pencil.v as u32);
    let total_u64 = u64::try_from(total).expect("budget keeps counts in u64");
    let max_rank = pencil.m.min(pencil.n);
    let chunk = 1u128 << 14;
    let chunks: Vec<(u128, u128)> = {
        let mut c = Vec::new();
        let mut lo = 0u128;
        while lo < total {
            let hi = (lo + chunk).min(total);
            c.push((lo, hi));
            lo = hi;
        }
        c
    };
    let per_rank = chunks
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut counts = vec![0u64; max_rank + 1];
            let mut mat = vec![vec![0u64; pencil.n]; pencil.m];
            for idx in lo..hi {
                let x = point_at(pencil.p, pencil.v as u32, idx);
                pencil.evaluate_into(&x, &mut mat);
                let r = fp::rank_in_place(&mut mat, pencil.p);
                counts[r] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; max_rank + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(StratumCount {
        p: pencil.p,
        v: pencil.v as u32,
        per_rank,
        total: total_u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffverify::pencil::{sample_admissible_pencil, sample_pencil};

    #[test]
    fn point_indexing_is_a_bijection() {
        let (p, v) = (3u64, 3u32);
        let total = projective_points(p, v);
        assert_eq!(total, 13);
        let mut seen = std::collections::HashSet::new();
        for idx in 0..total {
            let pt = point_at(p, v, idx);
            assert_eq!(*pt.iter().find(|&&c| c != 0).unwrap(), 1);
            assert!(seen.insert(pt));
        }
    }

    #[test]
    fn totals_match_projective_count() {
        let pencil = sample_pencil(2, 2, 3, 5, 42).unwrap();
        let s = rank_strata_count(&pencil, 10_000_000).unwrap();
        assert_eq!(s.per_rank.iter().sum::<u64>(), s.total);
        assert_eq!(s.total as u128, projective_points(5, 3));
    }

    #[test]
    fn segre_quadric_counts() {
        // full 2x2 matrix space (v = 4): rank <= 1 locus is P^1 x P^1 with
        // (p+1)^2 points
        for p in [3u64, 5, 7] {
            let (pencil, _) = sample_admissible_pencil(2, 2, 4, p, 7).unwrap();
            let s = rank_strata_count(&pencil, 10_000_000).unwrap();
            assert_eq!(s.at_most(1), (p + 1) * (p + 1), "p = {p}");
            assert_eq!(s.at_most(2), s.total);
            assert_eq!(s.per_rank[0], 0);
        }
    }

    #[test]
    fn nested_strata() {
        let pencil = sample_pencil(3, 3, 4, 5, 11).unwrap();
        let s = rank_strata_count(&pencil, 10_000_000).unwrap();
        for r in 1..s.per_rank.len() {
            assert!(s.at_most(r) >= s.at_most(r - 1));
        }
    }

    #[test]
    fn budget_guard() {
        let pencil = sample_pencil(2, 2, 8, 11, 1).unwrap();
        assert!(matches!(
            rank_strata_count(&pencil, 1000),
            Err(CoreError::BudgetExceeded { .. })
        ));
    }
}
