//! The Chow ring of the Grassmannian of `r`-dimensional quotients of an
//! `m`-dimensional space, on the Schubert (Schur) basis indexed by
//! partitions in the `r x (m-r)` box.
//!
//! Products are computed by expanding one factor through its Jacobi-Trudi
//! determinant into monomials in the special classes h_k (rows) or e_k
//! (columns) and applying the Pieri rule repeatedly. Classes outside the
//! box vanish in the ring and are dropped at every step.

use crate::coeff::{Coeff, Int};
use crate::error::CoreError;
use crate::partition::Partition;
use std::collections::BTreeMap;
use std::fmt;

/// Ring handle: fixes (m, r) and hands out basis enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GrassRing {
    m: u32,
    r: u32,
}

impl GrassRing {
    pub fn new(m: u32, r: u32) -> Result<Self, CoreError> {
        if r == 0 || r >= m {
            return Err(CoreError::InvalidParams(format!(
                "grassmannian G({m},{r}) requires 0 < r < m"
            )));
        }
        Ok(GrassRing { m, r })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Number of rows of the indexing box.
    pub fn rows(&self) -> u32 {
        self.r
    }

    /// Number of columns of the indexing box.
    pub fn cols(&self) -> u32 {
        self.m - self.r
    }

    pub fn dim(&self) -> u32 {
        self.r * (self.m - self.r)
    }

    /// All Schubert classes, ordered lexicographically by partition.
    pub fn basis(&self) -> Vec<Partition> {
        Partition::in_box(self.rows(), self.cols())
    }

    /// The class of a point: the full box rectangle.
    pub fn top(&self) -> Partition {
        Partition::rectangle(self.rows(), self.cols())
    }
}

/// An element of the Chow ring: a finite integer (or rational) combination
/// of Schubert classes. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Schubert<C: Coeff> {
    ring: GrassRing,
    coeffs: BTreeMap<Partition, C>,
}

pub type SchubertElement = Schubert<Int>;

impl<C: Coeff> Schubert<C> {
    pub fn zero(ring: GrassRing) -> Self {
        Schubert { ring, coeffs: BTreeMap::new() }
    }

    pub fn one(ring: GrassRing) -> Self {
        Self::class(ring, Partition::empty())
    }

    /// A single Schubert class sigma_lambda; zero if lambda does not fit.
    pub fn class(ring: GrassRing, lam: Partition) -> Self {
        let mut s = Self::zero(ring);
        if lam.fits(ring.rows(), ring.cols()) {
            s.coeffs.insert(lam, C::one());
        }
        s
    }

    pub fn ring(&self) -> GrassRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lam: &Partition) -> C {
        self.coeffs.get(lam).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, lam: Partition, c: C) {
        if c.is_zero() || !lam.fits(self.ring.rows(), self.ring.cols()) {
            return;
        }
        let entry = self.coeffs.entry(lam);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut out = self.clone();
        for (lam, c) in &other.coeffs {
            out.add_term(lam.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.ring);
        for (lam, c) in &self.coeffs {
            out.coeffs.insert(lam.clone(), c.neg_ref());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        let mut out = Self::zero(self.ring);
        for (lam, a) in &self.coeffs {
            let p = a.mul_ref(c);
            if !p.is_zero() {
                out.coeffs.insert(lam.clone(), p);
            }
        }
        out
    }

    /// Multiplication by the special class h_k = sigma_(k) (Pieri rule,
    /// horizontal strips). h_0 is the identity; h_k = 0 for k > cols.
    pub fn mul_h(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let (rows, cols) = (self.ring.rows(), self.ring.cols());
        let mut out = Self::zero(self.ring);
        if k > cols {
            return out;
        }
        for (lam, c) in &self.coeffs {
            for mu in lam.horizontal_strips(k, rows, cols) {
                out.add_term(mu, c.clone());
            }
        }
        out
    }

    /// Multiplication by e_k = sigma_(1^k) (Pieri rule, vertical strips).
    pub fn mul_e(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let (rows, cols) = (self.ring.rows(), self.ring.cols());
        let mut out = Self::zero(self.ring);
        if k > rows {
            return out;
        }
        for (lam, c) in &self.coeffs {
            for mu in lam.vertical_strips(k, rows, cols) {
                out.add_term(mu, c.clone());
            }
        }
        out
    }

    /// Multiplication by a single Schubert class, via the smaller of the
    /// two Jacobi-Trudi expansions of sigma_mu.
    pub fn mul_class(&self, mu: &Partition) -> Self {
        if mu.is_empty() {
            return self.clone();
        }
        let use_h = mu.len() as u32 <= mu.part(0);
        let (size, row_parts): (usize, Vec<u32>) = if use_h {
            (mu.len(), mu.parts().to_vec())
        } else {
            let conj = mu.conjugate();
            (conj.len(), conj.parts().to_vec())
        };
        let max_special = if use_h { self.ring.cols() } else { self.ring.rows() };

        let mut out = Self::zero(self.ring);
        let mut perm: Vec<usize> = (0..size).collect();
        permute_signed(&mut perm, &mut |perm, sign| {
            // term: prod_i special_{mu_i + perm(i) - i}
            let mut ks = Vec::with_capacity(size);
            for (i, &pi) in perm.iter().enumerate() {
                let idx = row_parts[i] as i64 + pi as i64 - i as i64;
                if idx < 0 {
                    return;
                }
                let idx = idx as u32;
                if idx > max_special {
                    // special class vanishes in the ring
                    return;
                }
                ks.push(idx);
            }
            let mut acc = self.clone();
            for &k in &ks {
                acc = if use_h { acc.mul_h(k) } else { acc.mul_e(k) };
                if acc.is_zero() {
                    return;
                }
            }
            if sign < 0 {
                acc = acc.neg();
            }
            out = out.add(&acc);
        });
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        // expand through the factor with fewer terms
        let (base, expand) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(self.ring);
        for (mu, c) in &expand.coeffs {
            out = out.add(&base.mul_class(mu).scale(c));
        }
        out
    }

    /// Coefficient of the point class (the full rectangle); zero on classes
    /// of deficient degree.
    pub fn integrate(&self) -> C {
        self.coeff(&self.ring.top())
    }

    /// Splits into homogeneous graded pieces, indexed by degree.
    pub fn graded(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (lam, c) in &self.coeffs {
            out.entry(lam.weight())
                .or_insert_with(|| Self::zero(self.ring))
                .add_term(lam.clone(), c.clone());
        }
        out
    }

    pub fn degree_part(&self, d: u32) -> Self {
        let mut out = Self::zero(self.ring);
        for (lam, c) in &self.coeffs {
            if lam.weight() == d {
                out.add_term(lam.clone(), c.clone());
            }
        }
        out
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.coeffs.keys().all(|lam| lam.weight() == d)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Schubert<D> {
        let mut out = Schubert::zero(self.ring);
        for (lam, c) in &self.coeffs {
            let d = f(c);
            if !d.is_zero() {
                out.coeffs.insert(lam.clone(), d);
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Debug for Schubert<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(lam, c)| format!("{c} * s{lam:?}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<C: Coeff> fmt::Display for Schubert<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Heap's algorithm, calling `visit(perm, sign)` on every permutation.
fn permute_signed(perm: &mut Vec<usize>, visit: &mut impl FnMut(&[usize], i32)) {
    fn heap(perm: &mut Vec<usize>, k: usize, sign: &mut i32, visit: &mut impl FnMut(&[usize], i32)) {
        if k <= 1 {
            visit(perm, *sign);
            return;
        }
        for i in 0..k {
            heap(perm, k - 1, sign, visit);
            if i < k - 1 {
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
                *sign = -*sign;
            }
        }
    }
    let mut sign = 1;
    let k = perm.len();
    heap(perm, k, &mut sign, visit);
}
