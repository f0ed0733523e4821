//! Chern classes and Chern characters of the tautological bundles on the
//! Grassmannian, plus series utilities (Newton identities, Todd series)
//! shared with the tower rings.

use crate::coeff::{Coeff, Int, Rat};
use crate::error::{CoreError, Result};
use crate::partition::Partition;
use crate::schubert::{GrassRing, Schubert, SchubertElement};
use num_traits::{One, Zero};

/// Tautological bundle tags on G(m, r).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BundleTag {
    Q,
    U,
    Qdual,
    Udual,
    TangentG,
}

/// A total Chern class, stored as the graded list c_0, c_1, ..., together
/// with the rank of the bundle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleChern {
    pub rank: u32,
    pub classes: Vec<SchubertElement>,
}

impl BundleChern {
    pub fn total(&self) -> SchubertElement {
        let ring = self.classes[0].ring();
        self.classes
            .iter()
            .fold(Schubert::zero(ring), |acc, c| acc.add(c))
    }

    pub fn class(&self, i: usize) -> SchubertElement {
        self.classes
            .get(i)
            .cloned()
            .unwrap_or_else(|| Schubert::zero(self.classes[0].ring()))
    }
}

fn graded_list<C: Coeff>(total: &Schubert<C>, up_to: u32) -> Vec<Schubert<C>> {
    (0..=up_to).map(|d| total.degree_part(d)).collect()
}

/// c(Q) = sum of the column classes sigma_{1^i}.
pub fn chern_q(ring: GrassRing) -> SchubertElement {
    let mut total = Schubert::zero(ring);
    for i in 0..=ring.rows() {
        total = total.add(&Schubert::class(ring, Partition::new(vec![1; i as usize])));
    }
    total
}

/// Truncated inverse of a total class with constant term 1.
pub fn inverse_total<C: Coeff>(total: &Schubert<C>) -> Schubert<C> {
    let ring = total.ring();
    let dim = ring.dim();
    assert!(
        total.degree_part(0) == Schubert::one(ring),
        "inverse requires constant term 1"
    );
    let mut inv_parts: Vec<Schubert<C>> = vec![Schubert::one(ring)];
    for d in 1..=dim {
        let mut acc = Schubert::zero(ring);
        for i in 1..=d {
            let ci = total.degree_part(i);
            if ci.is_zero() {
                continue;
            }
            acc = acc.add(&ci.mul(&inv_parts[(d - i) as usize]));
        }
        inv_parts.push(acc.neg());
    }
    inv_parts
        .into_iter()
        .fold(Schubert::zero(ring), |acc, p| acc.add(&p))
}

/// Dual bundle: negate the odd-degree parts of the total class.
pub fn dualize<C: Coeff>(total: &Schubert<C>) -> Schubert<C> {
    let ring = total.ring();
    let mut out = Schubert::zero(ring);
    for (d, part) in total.graded() {
        out = out.add(&if d % 2 == 1 { part.neg() } else { part });
    }
    out
}

/// Power sums p_1..p_max from elementary classes via Newton's identities
/// (e_k = degree-k part of the total class).
pub fn power_sums(total: &Schubert<Rat>, max: u32) -> Vec<Schubert<Rat>> {
    let ring = total.ring();
    let e: Vec<Schubert<Rat>> = (0..=max).map(|d| total.degree_part(d)).collect();
    let mut p: Vec<Schubert<Rat>> = vec![Schubert::zero(ring)]; // p_0 unused
    for k in 1..=max {
        // p_k = (-1)^{k-1} k e_k + sum_{i=1}^{k-1} (-1)^{k-1-i} e_{k-i} p_i
        let mut acc = e[k as usize].scale(&Rat::from_i64(if k % 2 == 1 {
            k as i64
        } else {
            -(k as i64)
        }));
        for i in 1..k {
            let sign = if (k - 1 - i) % 2 == 0 { 1 } else { -1 };
            let term = e[(k - i) as usize].mul(&p[i as usize]).scale(&Rat::from_i64(sign));
            acc = acc.add(&term);
        }
        p.push(acc);
    }
    p
}

/// Elementary classes e_1..e_max from power sums (inverse Newton).
pub fn elementary_from_power_sums(
    ring: GrassRing,
    p: &[Schubert<Rat>],
    max: u32,
) -> Vec<Schubert<Rat>> {
    let mut e: Vec<Schubert<Rat>> = vec![Schubert::one(ring)];
    for k in 1..=max as usize {
        // e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
        let mut acc = Schubert::zero(ring);
        for i in 1..=k {
            if i >= p.len() {
                break;
            }
            let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
            acc = acc.add(&e[k - i].mul(&p[i]).scale(&Rat::from_i64(sign)));
        }
        let inv_k = Rat::new(Int::one(), Int::from(k as i64));
        e.push(acc.scale(&inv_k));
    }
    e
}

/// Chern character of a bundle given its total Chern class: rank + sum of
/// p_k / k!.
pub fn ch_from_chern(rank: u32, total: &Schubert<Rat>) -> Schubert<Rat> {
    let ring = total.ring();
    let dim = ring.dim();
    let p = power_sums(total, dim);
    let mut out = Schubert::one(ring).scale(&Rat::from_i64(rank as i64));
    let mut fact = Rat::one();
    for k in 1..=dim {
        fact = fact * Rat::from_i64(k as i64);
        out = out.add(&p[k as usize].scale(&(Rat::one() / fact.clone())));
    }
    out
}

/// Coefficients l_k of log(x / (1 - e^{-x})) up to degree `max`; the Todd
/// class of a bundle is exp(sum_k l_k p_k).
pub fn todd_log_coefficients(max: usize) -> Vec<Rat> {
    // a(x) = (1 - e^{-x})/x = sum_{k>=0} (-1)^k x^k / (k+1)!
    let mut a = Vec::with_capacity(max + 1);
    let mut f = Rat::one();
    for k in 0..=max {
        f = f * Rat::from_i64((k + 1) as i64); // (k+1)!
        let term = Rat::one() / f.clone();
        a.push(if k % 2 == 0 { term } else { -term });
    }
    // log a(x) = sum_{j>=1} (-1)^{j-1} u^j / j with u = a - 1, then negate.
    let mut u = a.clone();
    u[0] = Rat::zero();
    let mut log_a = vec![Rat::zero(); max + 1];
    let mut upow = vec![Rat::zero(); max + 1];
    upow[0] = Rat::one(); // u^0
    for j in 1..=max {
        // upow = upow * u, truncated
        let mut next = vec![Rat::zero(); max + 1];
        for (i, ci) in upow.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (l, ul) in u.iter().enumerate() {
                if i + l > max {
                    break;
                }
                if ul.is_zero() {
                    continue;
                }
                next[i + l] = next[i + l].clone() + ci.clone() * ul.clone();
            }
        }
        upow = next;
        let sign = if j % 2 == 1 { Rat::one() } else { -Rat::one() };
        let jr = Rat::from_i64(j as i64);
        for k in 0..=max {
            log_a[k] = log_a[k].clone() + sign.clone() * upow[k].clone() / jr.clone();
        }
    }
    log_a.into_iter().map(|c| -c).collect()
}

/// Total Chern class of a named tautological bundle over G(m, r). All
/// outputs have integer coefficients; TangentG goes through rational Chern
/// characters and is checked for integrality.
pub fn chern(tag: BundleTag, m: u32, r: u32) -> Result<BundleChern> {
    let ring = GrassRing::new(m, r)?;
    let dim = ring.dim();
    let (rank, total): (u32, SchubertElement) = match tag {
        BundleTag::Q => (r, chern_q(ring)),
        BundleTag::Qdual => (r, dualize(&chern_q(ring))),
        BundleTag::U => (m - r, inverse_total(&chern_q(ring))),
        BundleTag::Udual => (m - r, dualize(&inverse_total(&chern_q(ring)))),
        BundleTag::TangentG => {
            // T_G = Udual tensor Q; ch(T_G) = ch(Udual) * ch(Q), Chern
            // classes recovered through inverse Newton.
            let q_rat = chern_q(ring).map_coeffs(|c: &Int| Rat::from_integer(c.clone()));
            let ch_q = ch_from_chern(r, &q_rat);
            let ch_u = Schubert::one(ring)
                .scale(&Rat::from_i64(m as i64))
                .sub(&ch_q);
            let ch_udual = dualize(&ch_u);
            let ch_t = ch_udual.mul(&ch_q);
            let rank = r * (m - r);
            // p_k = k! ch_k
            let mut p: Vec<Schubert<Rat>> = vec![Schubert::zero(ring)];
            let mut fact = Rat::one();
            for k in 1..=dim {
                fact = fact * Rat::from_i64(k as i64);
                p.push(ch_t.degree_part(k).scale(&fact));
            }
            let e = elementary_from_power_sums(ring, &p, dim);
            let total_rat = e
                .into_iter()
                .fold(Schubert::zero(ring), |acc, x| acc.add(&x));
            let total = try_int(&total_rat).ok_or_else(|| {
                CoreError::NonIntegralChi(format!("c(T_G) on G({m},{r}) not integral"))
            })?;
            return Ok(BundleChern {
                rank,
                classes: graded_list(&total, dim),
            });
        }
    };
    Ok(BundleChern {
        rank,
        classes: graded_list(&total, dim),
    })
}

/// Converts a rational class with integral coefficients; None otherwise.
pub fn try_int(x: &Schubert<Rat>) -> Option<SchubertElement> {
    let mut out = Schubert::zero(x.ring());
    for (lam, c) in x.terms() {
        let i = crate::coeff::rat_to_int(c)?;
        out.add_term(lam.clone(), i);
    }
    Some(out)
}

pub fn to_rat(x: &SchubertElement) -> Schubert<Rat> {
    x.map_coeffs(|c| Rat::from_integer(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_sequence_inverse() {
        // c(U) c(Q) = 1 for all 2 <= m <= 7, 0 < r < m
        for m in 2..=7u32 {
            for r in 1..m {
                let ring = GrassRing::new(m, r).unwrap();
                let q = chern(BundleTag::Q, m, r).unwrap().total();
                let u = chern(BundleTag::U, m, r).unwrap().total();
                assert_eq!(u.mul(&q), Schubert::one(ring), "c(U)c(Q) != 1 on G({m},{r})");
            }
        }
    }

    #[test]
    fn projective_space_quotient() {
        // G(m,1): c(Q) = 1 + hyperplane class
        let ring = GrassRing::new(4, 1).unwrap();
        let q = chern(BundleTag::Q, 4, 1).unwrap();
        assert_eq!(q.rank, 1);
        assert_eq!(q.class(1), Schubert::class(ring, Partition::new([1])));
        assert!(q.class(2).is_zero());
    }

    #[test]
    fn tangent_euler_characteristic() {
        // integral of c_top(T_G(4,2)) = chi_top = binom(4,2) = 6
        let t = chern(BundleTag::TangentG, 4, 2).unwrap();
        let dim = GrassRing::new(4, 2).unwrap().dim();
        assert_eq!(t.rank, 4);
        assert_eq!(t.class(dim as usize).integrate(), Int::from(6));
        // same on G(5,2): binom(5,2) = 10
        let t = chern(BundleTag::TangentG, 5, 2).unwrap();
        assert_eq!(t.class(6).integrate(), Int::from(10));
    }

    #[test]
    fn tangent_first_chern_is_m_sigma1() {
        // c_1(T_G) = m sigma_1
        for (m, r) in [(3u32, 1u32), (4, 2), (5, 3)] {
            let ring = GrassRing::new(m, r).unwrap();
            let t = chern(BundleTag::TangentG, m, r).unwrap();
            let expected =
                Schubert::class(ring, Partition::new([1])).scale(&Int::from(m as i64));
            assert_eq!(t.class(1), expected);
        }
    }

    #[test]
    fn todd_log_series() {
        let l = todd_log_coefficients(6);
        // log td(L) = x/2 - x^2/24 + x^4/2880 - x^6/181440 ...
        assert_eq!(l[1], Rat::new(Int::from(1), Int::from(2)));
        assert_eq!(l[2], Rat::new(Int::from(-1), Int::from(24)));
        assert!(l[3].is_zero());
        assert_eq!(l[4], Rat::new(Int::from(1), Int::from(2880)));
        assert!(l[5].is_zero());
        assert_eq!(l[6], Rat::new(Int::from(-1), Int::from(181440)));
    }

    #[test]
    fn todd_log_exponentiates_correctly() {
        // exp(l_1 x + l_2 x^2) must start 1 + x/2 + x^2/12 (line-bundle Todd)
        let l = todd_log_coefficients(2);
        let deg2 = l[2].clone() + l[1].clone() * l[1].clone() / Rat::from_i64(2);
        assert_eq!(deg2, Rat::new(Int::from(1), Int::from(12)));
    }
}
