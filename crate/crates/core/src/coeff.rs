//! Coefficient rings for Chow classes: exact integers for the public ring
//! types, exact rationals for the Riemann-Roch internals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Minimal commutative-ring interface the Schubert/tower arithmetic needs.
pub trait Coeff:
    Clone + PartialEq + Eq + std::fmt::Display + Send + Sync + 'static + Zero + One
{
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_int(v: &Int) -> Self;
}

impl Coeff for Int {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_int(v: &Int) -> Self {
        v.clone()
    }
}

impl Coeff for Rat {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_int(v: &Int) -> Self {
        BigRational::from_integer(v.clone())
    }
}

/// Exact binomial coefficient; zero for k > n. `n` may be negative via the
/// usual falling-factorial extension when needed by callers that pass i64.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut num = Int::one();
    let mut den = Int::one();
    for i in 0..k {
        num *= Int::from(n - i);
        den *= Int::from(i + 1);
    }
    num / den
}

/// Binomial with integer (possibly negative) upper index: binom(n, k) for
/// k >= 0 as the polynomial n(n-1)...(n-k+1)/k!.
pub fn binomial_int(n: i64, k: u64) -> Int {
    let mut num = Int::one();
    for i in 0..k {
        num *= Int::from(n - i as i64);
    }
    let mut den = Int::one();
    for i in 1..=k {
        den *= Int::from(i);
    }
    num / den
}

/// Converts a rational known to be integral; returns None otherwise.
pub fn rat_to_int(r: &Rat) -> Option<Int> {
    if r.denom().abs() == Int::one() {
        Some(r.to_integer())
    } else {
        None
    }
}
