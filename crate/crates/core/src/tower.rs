//! Chow rings of the projective-bundle towers over the Grassmannian: the
//! resolution side X = P(V (x) Q) and the dual side Y = P(Vdual (x) Udual).
//!
//! Elements are polynomials in the relative hyperplane class H with
//! coefficients in Chow(G), reduced modulo the rank-e bundle relation
//! H^e = c_1(E) H^{e-1} - c_2(E) H^{e-2} + ... Pushforward along the bundle
//! projection sends H^{e-1+k} to the degree-k part of the truncated
//! inverse of sum_i (-1)^i c_i(E).

use crate::bundle::{self, BundleTag};
use crate::coeff::{rat_to_int, Coeff, Int, Rat};
use crate::error::{CoreError, Result};
use crate::partition::Partition;
use crate::schubert::{GrassRing, Schubert, SchubertElement};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Hash)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Y,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::X => write!(f, "X"),
            Side::Y => write!(f, "Y"),
        }
    }
}

struct TowerData {
    m: u32,
    n: u32,
    r: u32,
    side: Side,
    e: u32,
    grass: GrassRing,
    /// c_i(E), i = 0..=dim G (higher classes vanish)
    chern_e: Vec<SchubertElement>,
    /// s_k(E) = pushforward of H^{e-1+k}, k = 0..=dim G
    segre: Vec<SchubertElement>,
}

/// Ring handle for one side of the tower; cheap to clone.
#[derive(Clone)]
pub struct TowerRing(Arc<TowerData>);

impl PartialEq for TowerRing {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.0, &other.0);
        (a.m, a.n, a.r, a.side) == (b.m, b.n, b.r, b.side)
    }
}
impl Eq for TowerRing {}

impl fmt::Debug for TowerRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TowerRing({}, m={}, n={}, r={})",
            self.0.side, self.0.m, self.0.n, self.0.r
        )
    }
}

impl TowerRing {
    pub fn new(m: u32, n: u32, r: u32, side: Side) -> Result<Self> {
        if n < m {
            return Err(CoreError::InvalidParams(format!(
                "tower requires n >= m, got m={m}, n={n}"
            )));
        }
        let grass = GrassRing::new(m, r)?;
        let e = match side {
            Side::X => n * r,
            Side::Y => n * (m - r),
        };
        let base = match side {
            Side::X => bundle::chern_q(grass),
            Side::Y => bundle::dualize(&bundle::inverse_total(&bundle::chern_q(grass))),
        };
        let mut total = Schubert::one(grass);
        for _ in 0..n {
            total = total.mul(&base);
        }
        let chern_e = (0..=grass.dim()).map(|d| total.degree_part(d)).collect();
        let segre_total = bundle::inverse_total(&bundle::dualize(&total));
        let segre = (0..=grass.dim())
            .map(|d| segre_total.degree_part(d))
            .collect();
        Ok(TowerRing(Arc::new(TowerData {
            m,
            n,
            r,
            side,
            e,
            grass,
            chern_e,
            segre,
        })))
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }
    pub fn n(&self) -> u32 {
        self.0.n
    }
    pub fn r(&self) -> u32 {
        self.0.r
    }
    pub fn side(&self) -> Side {
        self.0.side
    }
    pub fn grass(&self) -> GrassRing {
        self.0.grass
    }

    /// Rank of the projectivized bundle E.
    pub fn bundle_rank(&self) -> u32 {
        self.0.e
    }

    pub fn dim(&self) -> u32 {
        self.0.grass.dim() + self.0.e - 1
    }

    pub fn chern_e(&self, i: u32) -> SchubertElement {
        self.0
            .chern_e
            .get(i as usize)
            .cloned()
            .unwrap_or_else(|| Schubert::zero(self.0.grass))
    }

    /// Pushforward class of H^{e-1+k}.
    pub fn segre_class(&self, k: u32) -> SchubertElement {
        self.0
            .segre
            .get(k as usize)
            .cloned()
            .unwrap_or_else(|| Schubert::zero(self.0.grass))
    }
}

/// An element of the tower Chow ring: coefficients of H^0 .. H^{e-1}.
#[derive(Clone, PartialEq, Eq)]
pub struct Tower<C: Coeff> {
    ring: TowerRing,
    coeffs: Vec<Schubert<C>>,
}

pub type TowerElement = Tower<Int>;

impl<C: Coeff> Tower<C> {
    pub fn zero(ring: &TowerRing) -> Self {
        let coeffs = (0..ring.0.e)
            .map(|_| Schubert::zero(ring.0.grass))
            .collect();
        Tower {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn one(ring: &TowerRing) -> Self {
        let mut t = Self::zero(ring);
        t.coeffs[0] = Schubert::one(ring.0.grass);
        t
    }

    /// Pullback of a Grassmannian class.
    pub fn from_grass(ring: &TowerRing, x: Schubert<C>) -> Self {
        assert_eq!(x.ring(), ring.0.grass, "ring mismatch");
        let mut t = Self::zero(ring);
        t.coeffs[0] = x;
        t
    }

    /// The relative hyperplane class H.
    pub fn h(ring: &TowerRing) -> Self {
        let g = ring.0.grass;
        Self::reduce(ring, vec![Schubert::zero(g), Schubert::one(g)])
    }

    /// The pullback of sigma_1 (the class called P on side X, Q on side Y).
    pub fn sigma1(ring: &TowerRing) -> Self {
        Self::from_grass(ring, Schubert::class(ring.0.grass, Partition::new([1])))
    }

    /// The divisor class a*H + b*sigma_1.
    pub fn divisor(ring: &TowerRing, a: i64, b: i64) -> Self {
        Self::h(ring)
            .scale(&C::from_i64(a))
            .add(&Self::sigma1(ring).scale(&C::from_i64(b)))
    }

    pub fn ring(&self) -> &TowerRing {
        &self.ring
    }

    pub fn coeff(&self, k: usize) -> &Schubert<C> {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rewrites an H-polynomial of arbitrary degree into the module basis
    /// H^0 .. H^{e-1} via H^e = c_1 H^{e-1} - c_2 H^{e-2} + ...
    pub fn reduce(ring: &TowerRing, mut raw: Vec<Schubert<C>>) -> Self {
        let e = ring.0.e as usize;
        let g = ring.0.grass;
        while raw.len() > e {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = raw.len() - e; // H^{len} = H^{base} * H^e
            for i in 1..=e {
                let ci = ring.chern_e(i as u32);
                if ci.is_zero() {
                    continue;
                }
                let ci: Schubert<C> = ci.map_coeffs(C::from_int);
                let term = top.mul(&ci);
                let term = if i % 2 == 0 { term.neg() } else { term };
                let idx = base + e - i;
                raw[idx] = raw[idx].add(&term);
            }
        }
        while raw.len() < e {
            raw.push(Schubert::zero(g));
        }
        Tower {
            ring: ring.clone(),
            coeffs: raw,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Tower {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Tower {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Tower {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let e = self.ring.0.e as usize;
        let g = self.ring.0.grass;
        let dim = self.ring.dim();
        let mut raw = vec![Schubert::zero(g); 2 * e - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] = raw[i + j].add(&a.mul(b));
            }
        }
        // classes of total degree beyond dim integrate to zero and the
        // relation preserves total degree, so truncate early
        for (k, c) in raw.iter_mut().enumerate() {
            let cap = dim.saturating_sub(k as u32);
            let mut kept = Schubert::zero(g);
            for (lam, v) in c.terms() {
                if lam.weight() <= cap {
                    kept.add_term(lam.clone(), v.clone());
                }
            }
            *c = kept;
        }
        Self::reduce(&self.ring, raw)
    }

    /// Multiplication by H (one reduction step).
    pub fn mul_h(&self) -> Self {
        let g = self.ring.0.grass;
        let mut raw = vec![Schubert::zero(g)];
        raw.extend(self.coeffs.iter().cloned());
        Self::reduce(&self.ring, raw)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Pushforward to Chow(G): sum_k coeff_k * s_{k-(e-1)}(E); only the top
    /// module coefficient survives on reduced elements.
    pub fn pushforward(&self) -> Schubert<C> {
        let e = self.ring.0.e as usize;
        self.coeffs[e - 1].clone()
    }

    /// Integration over the tower: pushforward, then the coefficient of the
    /// point class of G.
    pub fn integrate(&self) -> C {
        self.pushforward().integrate()
    }

    /// Splits by total degree (H-power plus Schubert weight).
    pub fn degree_part(&self, d: u32) -> Self {
        let g = self.ring.0.grass;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if d >= k as u32 {
                    c.degree_part(d - k as u32)
                } else {
                    Schubert::zero(g)
                }
            })
            .collect();
        Tower {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Truncated inverse of an element with constant term 1.
    pub fn inverse(&self) -> Self {
        let dim = self.ring.dim();
        assert!(
            self.degree_part(0) == Self::one(&self.ring),
            "inverse requires constant term 1"
        );
        let mut parts: Vec<Self> = vec![Self::one(&self.ring)];
        for d in 1..=dim {
            let mut acc = Self::zero(&self.ring);
            for i in 1..=d {
                let ci = self.degree_part(i);
                if ci.is_zero() {
                    continue;
                }
                acc = acc.add(&ci.mul(&parts[(d - i) as usize]));
            }
            parts.push(acc.neg());
        }
        parts
            .into_iter()
            .fold(Self::zero(&self.ring), |acc, p| acc.add(&p))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Tower<D> {
        Tower {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.map_coeffs(&f)).collect(),
        }
    }
}

impl Tower<Rat> {
    /// exp of a class with no constant term.
    pub fn exp(&self) -> Self {
        assert!(self.degree_part(0).is_zero(), "exp needs positive degree");
        let dim = self.ring.dim();
        let mut out = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        for k in 1..=dim as i64 {
            term = term.mul(self).scale(&(Rat::one() / Rat::from_i64(k)));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        out
    }

    /// Todd class of a (virtual) bundle given by its Chern character:
    /// exp(sum_k l_k p_k) with p_k = k! ch_k.
    pub fn todd_from_ch(ch: &Self) -> Self {
        let dim = ch.ring.dim();
        let l = bundle::todd_log_coefficients(dim as usize);
        let mut arg = Self::zero(&ch.ring);
        let mut fact = Rat::one();
        for k in 1..=dim {
            fact = fact * Rat::from_i64(k as i64);
            let part = ch.degree_part(k);
            if part.is_zero() || l[k as usize].is_zero() {
                continue;
            }
            arg = arg.add(&part.scale(&(l[k as usize].clone() * fact.clone())));
        }
        arg.exp()
    }

    pub fn integrate_int(&self, what: &str) -> Result<Int> {
        let v = self.integrate();
        rat_to_int(&v).ok_or_else(|| CoreError::NonIntegralChi(format!("{what}: {v}")))
    }
}

impl TowerElement {
    pub fn to_rat(&self) -> Tower<Rat> {
        self.map_coeffs(|c| Rat::from_integer(c.clone()))
    }
}

impl<C: Coeff> fmt::Debug for Tower<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for (lam, v) in c.terms() {
                lines.push(format!("{v} * s{lam:?} * H^{k}"));
            }
        }
        if lines.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", lines.join("\n"))
    }
}

impl<C: Coeff> fmt::Display for Tower<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// ch(E^dual) as a rational Grassmannian class: n * ch(Qdual) on side X,
/// n * ch(U) on side Y.
fn ch_e_dual(ring: &TowerRing) -> Schubert<Rat> {
    let g = ring.grass();
    let q_rat = bundle::to_rat(&bundle::chern_q(g));
    let ch_q = bundle::ch_from_chern(ring.r(), &q_rat);
    let scale_n = Rat::from_i64(ring.n() as i64);
    match ring.side() {
        Side::X => bundle::dualize(&ch_q).scale(&scale_n),
        Side::Y => {
            let ch_u = Schubert::one(g)
                .scale(&Rat::from_i64(ring.m() as i64))
                .sub(&ch_q);
            ch_u.scale(&scale_n)
        }
    }
}

/// Todd class of the tower tangent bundle, via the relative Euler sequence
/// 0 -> O -> pi* E^dual (H) -> T_rel -> 0 and multiplicativity.
pub fn todd_tangent(ring: &TowerRing) -> Result<Tower<Rat>> {
    let ch_rel_bundle = Tower::from_grass(ring, ch_e_dual(ring)).mul(&exp_h(ring));
    let ch_t_rel = ch_rel_bundle.sub(&Tower::one(ring));
    let td_rel = Tower::todd_from_ch(&ch_t_rel);

    let t_g = bundle::chern(BundleTag::TangentG, ring.m(), ring.r())?;
    let ch_t_g = bundle::ch_from_chern(t_g.rank, &bundle::to_rat(&t_g.total()));
    let td_g = Tower::todd_from_ch(&Tower::from_grass(ring, ch_t_g));
    Ok(td_rel.mul(&td_g))
}

/// Total Chern class of the tower tangent bundle, exact integers.
pub fn chern_tangent(ring: &TowerRing) -> Result<TowerElement> {
    // c(T_rel) = c(pi* E^dual (H)): twist formula
    // c_k(F (x) L) = sum_j binom(rank - j, k - j) c_j(F) t^{k-j}
    let e = ring.bundle_rank();
    let g = ring.grass();
    let mut c_e_dual = Schubert::zero(g);
    for d in 0..=g.dim() {
        let part = ring.chern_e(d);
        let part = if d % 2 == 1 { part.neg() } else { part };
        c_e_dual = c_e_dual.add(&part);
    }
    let h = Tower::<Int>::h(ring);
    let mut c_rel = Tower::zero(ring);
    let dim = ring.dim();
    for k in 0..=dim.min(e) {
        let mut term = Tower::zero(ring);
        for j in 0..=k.min(g.dim()) {
            let cj = c_e_dual.degree_part(j);
            if cj.is_zero() {
                continue;
            }
            let b = crate::coeff::binomial((e - j) as u64, (k - j) as u64);
            if b == Int::from(0) {
                continue;
            }
            term = term.add(
                &Tower::from_grass(ring, cj.scale(&b)).mul(&h.pow(k - j)),
            );
        }
        c_rel = c_rel.add(&term);
    }
    let t_g = bundle::chern(BundleTag::TangentG, ring.m(), ring.r())?;
    let c_g = Tower::from_grass(ring, t_g.total());
    Ok(c_rel.mul(&c_g))
}

fn exp_h(ring: &TowerRing) -> Tower<Rat> {
    Tower::<Rat>::h(ring).exp()
}

/// exp(a H + b sigma_1) over the rationals.
pub fn exp_divisor(ring: &TowerRing, a: i64, b: i64) -> Tower<Rat> {
    Tower::<Rat>::divisor(ring, a, b).exp()
}

/// Euler characteristic chi(O(a H + b sigma_1)) on the full tower.
pub fn chi_line_bundle(ring: &TowerRing, td: &Tower<Rat>, a: i64, b: i64) -> Result<Int> {
    exp_divisor(ring, a, b)
        .mul(td)
        .integrate_int(&format!("chi(O({a}H + {b}s1)) on {ring:?}"))
}
