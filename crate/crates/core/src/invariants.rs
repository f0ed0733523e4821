//! Numerical invariants of the dual linear sections X_L and Y_L: degrees,
//! canonical classes, Euler pairings, topological Euler characteristics,
//! curve genus, and the intersection-number scan that separates the two
//! sides up to isomorphism.
//!
//! Sections are modeled through their class H^c on the smooth tower: a
//! c-codimensional linear section on side X is cut by c divisors in |H|,
//! the dual section on side Y by mn - c. Sheaf Euler characteristics
//! restrict through the Koszul alternating sum, topological ones through
//! adjunction on the Chern class.

use crate::coeff::{binomial, binomial_int, Int, Rat};
use crate::error::{CoreError, Result};
use crate::tower::{self, Side, Tower, TowerElement, TowerRing};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// The defining quadruple plus the side the computation lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Hash)]
pub struct HPDParams {
    pub m: u32,
    pub n: u32,
    pub r: u32,
    pub c: u32,
    pub side: Side,
}

impl HPDParams {
    pub fn new(m: u32, n: u32, r: u32, c: u32, side: Side) -> Result<Self> {
        if n < m {
            return Err(CoreError::InvalidParams(format!(
                "need n >= m, got m={m}, n={n}"
            )));
        }
        if r == 0 || r >= m {
            return Err(CoreError::InvalidParams(format!(
                "need 0 < r < m, got r={r}, m={m}"
            )));
        }
        if c > m * n {
            return Err(CoreError::InvalidParams(format!(
                "need c <= mn, got c={c}, mn={}",
                m * n
            )));
        }
        Ok(HPDParams { m, n, r, c, side })
    }

    pub fn with_side(self, side: Side) -> Self {
        HPDParams { side, ..self }
    }

    pub fn nr(&self) -> u32 {
        self.n * self.r
    }

    /// dim X_L = r(n+m-r) - c - 1
    pub fn dim_xl(&self) -> i64 {
        self.r as i64 * (self.n + self.m - self.r) as i64 - self.c as i64 - 1
    }

    /// dim Y_L = r(m-n-r) + c - 1
    pub fn dim_yl(&self) -> i64 {
        self.r as i64 * (self.m as i64 - self.n as i64 - self.r as i64) + self.c as i64 - 1
    }

    pub fn section_dim(&self) -> i64 {
        match self.side {
            Side::X => self.dim_xl(),
            Side::Y => self.dim_yl(),
        }
    }

    /// Number of |H| hyperplane cuts defining the section on this side.
    pub fn fold(&self) -> u32 {
        match self.side {
            Side::X => self.c,
            Side::Y => self.m * self.n - self.c,
        }
    }
}

/// An integer divisor class a*H + b*(pullback of sigma_1); the second
/// generator is called P on side X and Q on side Y.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DivisorClass {
    pub h: i64,
    pub p: i64,
}

/// omega of the section: (c - nr) H + (n - m) P on side X,
/// (nr - c) H + (n - m) Q on side Y.
pub fn canonical_class(params: &HPDParams) -> DivisorClass {
    let nr = params.nr() as i64;
    let c = params.c as i64;
    let nm = params.n as i64 - params.m as i64;
    match params.side {
        Side::X => DivisorClass { h: c - nr, p: nm },
        Side::Y => DivisorClass { h: nr - c, p: nm },
    }
}

/// Shared tower data with lazily computed Todd and tangent Chern classes.
pub struct TowerCtx {
    ring: TowerRing,
    td: OnceLock<Tower<Rat>>,
    ctan: OnceLock<TowerElement>,
}

impl TowerCtx {
    pub fn new(m: u32, n: u32, r: u32, side: Side) -> Result<Self> {
        Ok(TowerCtx {
            ring: TowerRing::new(m, n, r, side)?,
            td: OnceLock::new(),
            ctan: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &TowerRing {
        &self.ring
    }

    pub fn todd(&self) -> Result<Tower<Rat>> {
        if let Some(t) = self.td.get() {
            return Ok(t.clone());
        }
        let t = tower::todd_tangent(&self.ring)?;
        let _ = self.td.set(t.clone());
        Ok(t)
    }

    pub fn chern_tangent(&self) -> Result<TowerElement> {
        if let Some(t) = self.ctan.get() {
            return Ok(t.clone());
        }
        let t = tower::chern_tangent(&self.ring)?;
        let _ = self.ctan.set(t.clone());
        Ok(t)
    }
}

/// Geometry of one linear section, carrying its tower context.
pub struct SectionGeometry {
    pub params: HPDParams,
    ctx: TowerCtx,
}

impl SectionGeometry {
    pub fn new(params: HPDParams) -> Result<Self> {
        let ctx = TowerCtx::new(params.m, params.n, params.r, params.side)?;
        Ok(SectionGeometry { params, ctx })
    }

    pub fn from_ctx(params: HPDParams, ctx: TowerCtx) -> Self {
        SectionGeometry { params, ctx }
    }

    pub fn ring(&self) -> &TowerRing {
        self.ctx.ring()
    }

    pub fn dim(&self) -> i64 {
        self.params.section_dim()
    }

    /// chi of O(a H + b sigma_1) restricted to the section, by the Koszul
    /// alternating sum over the fold-many cutting divisors.
    pub fn chi_line(&self, a: i64, b: i64) -> Result<Int> {
        let td = self.ctx.todd()?;
        let fold = self.params.fold() as i64;
        let mut total = Int::zero();
        for j in 0..=fold {
            let term = tower::chi_line_bundle(self.ctx.ring(), &td, a - j, b)?;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += term * binomial(fold as u64, j as u64) * Int::from(sign);
        }
        Ok(total)
    }

    /// Topological Euler characteristic of a smooth section of expected
    /// dimension, via adjunction: integrate the degree-(dim) part of
    /// c(T_tower) / (1+H)^fold against the section class H^fold.
    pub fn chi_top(&self) -> Result<Int> {
        let d = self.dim();
        if d < 0 {
            return Err(CoreError::DimensionMismatch(format!(
                "empty section: expected dimension {d} < 0"
            )));
        }
        let ring = self.ctx.ring();
        let fold = self.params.fold();
        let ct = self.ctx.chern_tangent()?;
        // (1+H)^{-fold} = sum_k binom(-fold, k) H^k
        let h = TowerElement::h(ring);
        let mut inv = Tower::zero(ring);
        let mut hk = Tower::one(ring);
        for k in 0..=ring.dim() {
            let b = binomial_int(-(fold as i64), k as u64);
            if !b.is_zero() {
                inv = inv.add(&hk.scale(&b));
            }
            if k < ring.dim() {
                hk = hk.mul(&h);
            }
        }
        let class = ct.mul(&inv).degree_part(d as u32);
        let cut = h.pow(fold);
        Ok(class.mul(&cut).integrate())
    }
}

/// Degree of the section in its ambient projective space; equals the degree
/// of the full tower image and is independent of c.
pub fn degree_section(params: &HPDParams) -> Result<Int> {
    if params.section_dim() < 0 {
        return Err(CoreError::DimensionMismatch(format!(
            "negative expected dimension {}",
            params.section_dim()
        )));
    }
    let ring = TowerRing::new(params.m, params.n, params.r, params.side)?;
    Ok(TowerElement::h(&ring).pow(ring.dim()).integrate())
}

/// chi(E_1^dual (x) E_2) on the section for E_i = O(a_i H + b_i P).
pub fn euler_pairing(
    params: &HPDParams,
    a1: i64,
    b1: i64,
    a2: i64,
    b2: i64,
) -> Result<Int> {
    SectionGeometry::new(*params)?.chi_line(a2 - a1, b2 - b1)
}

/// Topological Euler characteristic of a smooth section.
pub fn euler_char_top(params: &HPDParams) -> Result<Int> {
    SectionGeometry::new(*params)?.chi_top()
}

/// Genus of a one-dimensional section: g = 1 - chi(O), cross-checked
/// against the degree of the canonical divisor.
pub fn curve_genus(params: &HPDParams) -> Result<Int> {
    if params.section_dim() != 1 {
        return Err(CoreError::DimensionMismatch(format!(
            "section dimension {} != 1",
            params.section_dim()
        )));
    }
    let geom = SectionGeometry::new(*params)?;
    let chi = geom.chi_line(0, 0)?;
    let g = Int::from(1) - chi;

    let k = canonical_class(params);
    let ring = geom.ring();
    let divisor = TowerElement::divisor(ring, k.h, k.p);
    let cut = TowerElement::h(ring).pow(params.fold());
    let deg_k = divisor.mul(&cut).integrate();
    if deg_k != Int::from(2) * &g - Int::from(2) {
        return Err(CoreError::Inconsistency(format!(
            "2g - 2 = {} but deg K = {deg_k}",
            Int::from(2) * &g - Int::from(2)
        )));
    }
    Ok(g)
}

/// Result of the non-isomorphism intersection-number scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonisoReport {
    pub m: u32,
    pub n: u32,
    pub r: u32,
    pub c: u32,
    pub dim: u32,
    /// f(a) = sum f_j a^j = integral over X_L of (H + aP)^dim
    #[serde(with = "crate::intstr::vec")]
    pub coeffs: Vec<Int>,
    /// degree of Y_L, the value f must hit
    #[serde(with = "crate::intstr")]
    pub target: Int,
    pub a_range: (i64, i64),
    pub integer_solutions: Vec<i64>,
    /// all integer roots of f(a) - target lie in [-root_bound, root_bound]
    #[serde(with = "crate::intstr")]
    pub root_bound: Int,
    /// true when a_range covers [-root_bound, root_bound], so the scan is a
    /// complete certificate
    pub certificate_complete: bool,
}

/// Evaluates f(a) = integral over X_L of (H + aP)^D as an exact integer
/// polynomial and searches for integer solutions of f(a) = deg Y_L.
pub fn nonisomorphism_scan(
    m: u32,
    n: u32,
    r: u32,
    c: u32,
    a_range: (i64, i64),
) -> Result<NonisoReport> {
    let px = HPDParams::new(m, n, r, c, Side::X)?;
    let py = px.with_side(Side::Y);
    let dx = px.dim_xl();
    let dy = py.dim_yl();
    if dx != dy {
        return Err(CoreError::DimensionMismatch(format!(
            "dim X_L = {dx} != dim Y_L = {dy}"
        )));
    }
    if dx < 0 {
        return Err(CoreError::DimensionMismatch(format!(
            "empty sections: dimension {dx}"
        )));
    }
    let d = dx as u32;

    let ring = TowerRing::new(m, n, r, Side::X)?;
    let h = TowerElement::h(&ring);
    let sigma = TowerElement::sigma1(&ring);
    // f_j = binom(D, j) * integral_X H^{D-j+c} P^j
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        let v = h
            .pow(d - j + c)
            .mul(&sigma.pow(j))
            .integrate();
        coeffs.push(v * binomial(d as u64, j as u64));
    }
    let target = degree_section(&py)?;

    // integer roots of g(a) = f(a) - target
    let mut g = coeffs.clone();
    g[0] -= &target;
    while g.len() > 1 && g.last().map(Zero::is_zero).unwrap_or(false) {
        g.pop();
    }
    let root_bound = if g.len() <= 1 {
        Int::zero()
    } else {
        let lead = g.last().unwrap().abs();
        let max_low = g[..g.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Int::zero);
        // Cauchy bound, rounded up
        Int::from(1) + (&max_low + &lead - Int::from(1)) / &lead
    };

    let (lo, hi) = a_range;
    let mut integer_solutions = Vec::new();
    for a in lo..=hi {
        let mut val = Int::zero();
        let aa = Int::from(a);
        for fj in coeffs.iter().rev() {
            val = val * &aa + fj;
        }
        if val == target {
            integer_solutions.push(a);
        }
    }
    let bound_i64 = root_bound.to_i64().unwrap_or(i64::MAX);
    let certificate_complete = lo <= -bound_i64 && hi >= bound_i64;

    Ok(NonisoReport {
        m,
        n,
        r,
        c,
        dim: d,
        coeffs,
        target,
        a_range,
        integer_solutions,
        root_bound,
        certificate_complete,
    })
}
