//! Partitions inside an `rows x cols` box, indexing the Schubert basis.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A weakly decreasing sequence of positive integers (trailing zeros are
/// stripped on construction).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = parts.into_iter().take_while(|&p| p > 0).collect();
        assert!(
            v.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        v.shrink_to_fit();
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn fits(&self, rows: u32, cols: u32) -> bool {
        self.0.len() as u32 <= rows && self.0.first().copied().unwrap_or(0) <= cols
    }

    /// The full `rows x cols` rectangle.
    pub fn rectangle(rows: u32, cols: u32) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition(vec![cols; rows as usize])
    }

    /// Complement inside the `rows x cols` box: rotate the skew box shape by
    /// 180 degrees. Requires `self.fits(rows, cols)`.
    pub fn complement(&self, rows: u32, cols: u32) -> Partition {
        assert!(self.fits(rows, cols), "partition exceeds the box");
        let parts = (0..rows)
            .rev()
            .map(|i| cols - self.part(i as usize))
            .collect::<Vec<_>>();
        Partition::new(parts)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
            .collect::<Vec<_>>();
        Partition::new(parts)
    }

    /// All partitions fitting the `rows x cols` box, in lexicographic order.
    pub fn in_box(rows: u32, cols: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            out.push(Partition(cur.clone()));
            if (cur.len() as u32) < rows {
                let max = cur.last().copied().unwrap_or(cols);
                // push in reverse so the pop order is lexicographic
                for p in (1..=max).rev() {
                    let mut next = cur.clone();
                    next.push(p);
                    stack.push(next);
                }
            }
        }
        out.sort();
        out
    }

    /// Partitions obtained from `self` by adding a horizontal strip of size
    /// `k`, constrained to the box.
    pub fn horizontal_strips(&self, k: u32, rows: u32, cols: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let lam: Vec<u32> = (0..rows).map(|i| self.part(i as usize)).collect();
        let mut mu = vec![0u32; rows as usize];
        fn rec(
            lam: &[u32],
            mu: &mut Vec<u32>,
            i: usize,
            rem: u32,
            cols: u32,
            out: &mut Vec<Partition>,
        ) {
            if i == lam.len() {
                if rem == 0 {
                    out.push(Partition::new(mu.iter().copied()));
                }
                return;
            }
            // strip condition: mu_i <= lam_{i-1}; mu_i >= lam_i
            let hi = if i == 0 { cols } else { lam[i - 1].min(cols) };
            let lo = lam[i];
            if hi < lo {
                return;
            }
            for v in lo..=hi.min(lo + rem) {
                mu[i] = v;
                rec(lam, mu, i + 1, rem - (v - lo), cols, out);
            }
            mu[i] = 0;
        }
        rec(&lam, &mut mu, 0, k, cols, &mut out);
        out
    }

    /// Partitions obtained by adding a vertical strip of size `k` (at most
    /// one box per row), constrained to the box.
    pub fn vertical_strips(&self, k: u32, rows: u32, cols: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let lam: Vec<u32> = (0..rows).map(|i| self.part(i as usize)).collect();
        let mut mu = vec![0u32; rows as usize];
        fn rec(
            lam: &[u32],
            mu: &mut Vec<u32>,
            i: usize,
            rem: u32,
            cols: u32,
            out: &mut Vec<Partition>,
        ) {
            if i == lam.len() {
                if rem == 0 {
                    out.push(Partition::new(mu.iter().copied()));
                }
                return;
            }
            for add in 0..=1u32.min(rem) {
                let v = lam[i] + add;
                if v > cols || (i > 0 && v > mu[i - 1]) {
                    continue;
                }
                mu[i] = v;
                rec(lam, mu, i + 1, rem - add, cols, out);
            }
            mu[i] = 0;
        }
        rec(&lam, &mut mu, 0, k, cols, &mut out);
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
