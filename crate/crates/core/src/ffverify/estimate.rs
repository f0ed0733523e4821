//! Integer dimension estimation from exact point counts over several
//! primes: the count of a d-dimensional locus scales like p^d, so the
//! best-fitting integer slope of log N against log p recovers d.

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionEstimate {
    Empty,
    Dim(i64),
    Inconclusive,
}

/// Estimates the dimension from (prime, count) pairs; at least two primes
/// required. The slope is fit with a free intercept so the degree of the
/// locus cancels out.
pub fn dimension_estimate(counts: &[(u64, u64)], max_dim: i64) -> Result<DimensionEstimate> {
    if counts.len() < 2 {
        return Err(CoreError::InvalidParams(
            "dimension estimate needs at least two primes".into(),
        ));
    }
    if counts.iter().all(|&(_, n)| n == 0) {
        return Ok(DimensionEstimate::Empty);
    }
    if counts.iter().any(|&(_, n)| n == 0) {
        // dying and reappearing across primes: not a clean scale
        return Ok(DimensionEstimate::Inconclusive);
    }
    let logs: Vec<(f64, f64)> = counts
        .iter()
        .map(|&(p, n)| ((p as f64).ln(), (n as f64).ln()))
        .collect();
    let score = |d: i64| -> f64 {
        let residuals: Vec<f64> = logs.iter().map(|&(lp, ln)| ln - d as f64 * lp).collect();
        let mean = residuals.iter().sum::<f64>() / residuals.len() as f64;
        residuals.iter().map(|x| (x - mean) * (x - mean)).sum()
    };
    let best = (0..=max_dim).min_by(|&a, &b| {
        score(a)
            .partial_cmp(&score(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    match best {
        Some(d) => Ok(DimensionEstimate::Dim(d)),
        None => Ok(DimensionEstimate::Inconclusive),
    }
}

/// Exact Hasse-Weil check: |count - (p + 1)| <= 2 g sqrt(p), evaluated as
/// (count - p - 1)^2 <= 4 g^2 p in integers.
pub fn hasse_weil_ok(p: u64, count: u64, genus: u64) -> bool {
    let diff = count as i128 - p as i128 - 1;
    diff * diff <= 4 * (genus as i128) * (genus as i128) * p as i128
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_space_scales() {
        // P^2 counts: p^2 + p + 1
        let counts: Vec<(u64, u64)> = [3u64, 5, 7]
            .iter()
            .map(|&p| (p, p * p + p + 1))
            .collect();
        assert_eq!(
            dimension_estimate(&counts, 10).unwrap(),
            DimensionEstimate::Dim(2)
        );
    }

    #[test]
    fn segre_quadric_scales() {
        let counts: Vec<(u64, u64)> = [3u64, 5, 7].iter().map(|&p| (p, (p + 1) * (p + 1))).collect();
        assert_eq!(
            dimension_estimate(&counts, 10).unwrap(),
            DimensionEstimate::Dim(2)
        );
    }

    #[test]
    fn zero_dimensional_and_empty() {
        let counts = [(3u64, 3u64), (5, 3), (7, 3)];
        assert_eq!(
            dimension_estimate(&counts, 10).unwrap(),
            DimensionEstimate::Dim(0)
        );
        let empty = [(3u64, 0u64), (5, 0)];
        assert_eq!(
            dimension_estimate(&empty, 10).unwrap(),
            DimensionEstimate::Empty
        );
    }

    #[test]
    fn curve_scales() {
        let counts: Vec<(u64, u64)> = [5u64, 7, 11].iter().map(|&p| (p, p + 1)).collect();
        assert_eq!(
            dimension_estimate(&counts, 10).unwrap(),
            DimensionEstimate::Dim(1)
        );
    }

    #[test]
    fn needs_two_primes() {
        assert!(dimension_estimate(&[(5, 10)], 10).is_err());
    }

    #[test]
    fn hasse_weil() {
        assert!(hasse_weil_ok(7, 8, 3));
        assert!(hasse_weil_ok(7, 8 + 15, 3)); // 15 <= 6 sqrt(7) ~ 15.87
        assert!(!hasse_weil_ok(7, 8 + 16, 3));
        assert!(hasse_weil_ok(11, 12, 0));
        assert!(!hasse_weil_ok(11, 13, 0));
    }
}
