//! Symbolic bookkeeping for the semiorthogonal decompositions: Lefschetz
//! ledgers of the towers and their sections, Euler-pairing Gram matrices of
//! line-bundle collections, K-theoretic mutations, and the additivity check
//! tying the duality to computable Euler characteristics.

use crate::coeff::{binomial, Int};
use crate::error::{CoreError, Result};
use crate::invariants::{DivisorClass, HPDParams, SectionGeometry};
use crate::tower::Side;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LedgerBlock {
    pub label: String,
    pub generator_count: u64,
    pub twist: DivisorClass,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Ledger {
    pub blocks: Vec<LedgerBlock>,
}

impl Ledger {
    pub fn total(&self) -> u64 {
        self.blocks.iter().map(|b| b.generator_count).sum()
    }
}

/// Rectangular Lefschetz ledger of the full tower: nr blocks A, A(H), ...
/// on side X; n(m-r) blocks B(((r-m)n+1)H), ..., B on side Y, each of size
/// binom(m, r).
pub fn lefschetz_ledger(m: u32, n: u32, r: u32, side: Side) -> Result<Ledger> {
    let _ = HPDParams::new(m, n, r, 1.min(m * n), side)?;
    let size = binomial(m as u64, r as u64)
        .to_u64()
        .expect("block size fits u64");
    let blocks = match side {
        Side::X => (0..n * r as i64 as u32)
            .map(|j| LedgerBlock {
                label: if j == 0 {
                    "A".to_string()
                } else {
                    format!("A({j}H)")
                },
                generator_count: size,
                twist: DivisorClass { h: j as i64, p: 0 },
            })
            .collect(),
        Side::Y => {
            let lo = (r as i64 - m as i64) * n as i64 + 1;
            (lo..=0)
                .map(|j| LedgerBlock {
                    label: if j == 0 {
                        "B".to_string()
                    } else {
                        format!("B({j}H)")
                    },
                    generator_count: size,
                    twist: DivisorClass { h: j, p: 0 },
                })
                .collect()
        }
    };
    Ok(Ledger { blocks })
}

/// Ledgers of the two dual sections, sharing a block labeled C_L. The side
/// with the larger Lefschetz chain keeps |c - nr| extra blocks of size
/// binom(m, r).
pub fn hpd_section_ledger(m: u32, n: u32, r: u32, c: u32) -> Result<(Ledger, Ledger)> {
    let _ = HPDParams::new(m, n, r, c, Side::X)?;
    let size = binomial(m as u64, r as u64)
        .to_u64()
        .expect("block size fits u64");
    let nr = (n * r) as i64;
    let c = c as i64;
    let shared = LedgerBlock {
        label: "C_L".to_string(),
        generator_count: 1,
        twist: DivisorClass { h: 0, p: 0 },
    };
    let mut x_blocks = vec![shared.clone()];
    if nr > c {
        for j in 1..=(nr - c) {
            x_blocks.push(LedgerBlock {
                label: format!("A({j}H)"),
                generator_count: size,
                twist: DivisorClass { h: j, p: 0 },
            });
        }
    }
    let mut y_blocks = Vec::new();
    if c > nr {
        for j in (1..=(c - nr)).rev() {
            y_blocks.push(LedgerBlock {
                label: format!("B({}H)", -j),
                generator_count: size,
                twist: DivisorClass { h: -j, p: 0 },
            });
        }
    }
    y_blocks.push(shared);
    Ok((Ledger { blocks: x_blocks }, Ledger { blocks: y_blocks }))
}

/// Euler-pairing matrix of a collection of line-bundle twists on a section,
/// with class vectors tracked for K-theoretic mutation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GramMatrix {
    pub labels: Vec<String>,
    /// entries[i][j] = chi(E_i, E_j)
    #[serde(with = "crate::intstr::vec2")]
    pub entries: Vec<Vec<Int>>,
    /// rows: current objects as integer combinations of the original basis
    #[serde(with = "crate::intstr::vec2")]
    pub classes: Vec<Vec<Int>>,
    /// Euler form of the original collection
    #[serde(with = "crate::intstr::vec2")]
    pub base: Vec<Vec<Int>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MutationDirection {
    Left,
    Right,
}

impl GramMatrix {
    /// Wraps a raw square Euler-form matrix, treating its rows as the
    /// original basis.
    pub fn from_entries(labels: Vec<String>, entries: Vec<Vec<Int>>) -> Result<Self> {
        let n = labels.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(CoreError::InvalidParams(
                "entries must be square and match the labels".into(),
            ));
        }
        let classes = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        Ok(GramMatrix {
            labels,
            base: entries.clone(),
            entries,
            classes,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_unitriangular(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            self.entries[i][i] == Int::one()
                && (0..i).all(|j| self.entries[i][j].is_zero())
        })
    }

    /// chi(x, y) for K-classes written in the original basis.
    fn pair(&self, x: &[Int], y: &[Int]) -> Int {
        let mut acc = Int::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                acc += xi * &self.base[i][j] * yj;
            }
        }
        acc
    }

    fn recompute_entries(&mut self) {
        let n = self.size();
        let mut entries = vec![vec![Int::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                entries[i][j] = self.pair(&self.classes[i], &self.classes[j]);
            }
        }
        self.entries = entries;
    }

    pub fn determinant_sign_preserved(&self) -> bool {
        // unitriangular matrices have determinant 1; mutations act by a
        // determinant +-1 base change, so unitriangularity certifies it
        self.is_unitriangular()
    }
}

fn twist_label(h: i64, p: i64) -> String {
    format!("O({h}H{p:+}P)")
}

/// Gram matrix of line bundles O(a_i H + b_i sigma_1) on the section.
pub fn gram_matrix(params: &HPDParams, collection: &[(i64, i64)]) -> Result<GramMatrix> {
    if collection.is_empty() {
        return Err(CoreError::InvalidParams("empty collection".into()));
    }
    let geom = SectionGeometry::new(*params)?;
    let n = collection.len();
    let mut entries = vec![vec![Int::zero(); n]; n];
    for (i, &(a1, b1)) in collection.iter().enumerate() {
        for (j, &(a2, b2)) in collection.iter().enumerate() {
            entries[i][j] = geom.chi_line(a2 - a1, b2 - b1)?;
        }
    }
    let classes = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    Ok(GramMatrix {
        labels: collection.iter().map(|&(a, b)| twist_label(a, b)).collect(),
        base: entries.clone(),
        entries,
        classes,
    })
}

/// One left or right mutation of the adjacent pair (E_i, E_{i+1}),
/// performed K-theoretically:
///   right: (E_i, E_{i+1}) -> (E_{i+1}, R E_i),    [R E_i] = chi [E_{i+1}] - [E_i]
///   left:  (E_i, E_{i+1}) -> (L E_{i+1}, E_i),    [L E_{i+1}] = chi [E_i] - [E_{i+1}]
/// with chi = chi(E_i, E_{i+1}).
pub fn mutate(g: &GramMatrix, i: usize, direction: MutationDirection) -> Result<GramMatrix> {
    let n = g.size();
    if i + 1 >= n {
        return Err(CoreError::InvalidParams(format!(
            "mutation index {i} out of range for collection of size {n}"
        )));
    }
    if !g.is_unitriangular() {
        return Err(CoreError::InvalidParams(
            "mutation requires a unitriangular Gram matrix".into(),
        ));
    }
    let chi = g.entries[i][i + 1].clone();
    let mut out = g.clone();
    let (ci, cj) = (g.classes[i].clone(), g.classes[i + 1].clone());
    let (li, lj) = (g.labels[i].clone(), g.labels[i + 1].clone());
    match direction {
        MutationDirection::Right => {
            let new = combine(&cj, &chi, &ci);
            out.classes[i] = cj;
            out.classes[i + 1] = new;
            out.labels[i] = lj;
            out.labels[i + 1] = format!("R({li})");
        }
        MutationDirection::Left => {
            let new = combine(&ci, &chi, &cj);
            out.classes[i] = new;
            out.classes[i + 1] = ci;
            out.labels[i] = format!("L({lj})");
            out.labels[i + 1] = li;
        }
    }
    out.recompute_entries();
    if !out.is_unitriangular() {
        return Err(CoreError::Inconsistency(
            "mutation left the Gram matrix non-unitriangular".into(),
        ));
    }
    Ok(out)
}

/// chi * kept - dropped, coordinatewise.
fn combine(kept: &[Int], chi: &Int, dropped: &[Int]) -> Vec<Int> {
    kept.iter()
        .zip(dropped)
        .map(|(k, d)| chi * k - d)
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AdditivityReport {
    pub m: u32,
    pub n: u32,
    pub r: u32,
    pub c: u32,
    #[serde(with = "crate::intstr")]
    pub chi_top_xl: Int,
    #[serde(with = "crate::intstr")]
    pub chi_top_yl: Int,
    /// chi_top(Y_L) - chi_top(X_L)
    #[serde(with = "crate::intstr")]
    pub lhs: Int,
    /// (c - nr) * binom(m, r)
    #[serde(with = "crate::intstr")]
    pub rhs: Int,
    pub pass: bool,
}

/// Checks chi_top(Y_L) - chi_top(X_L) = (c - nr) binom(m, r), the Euler
/// shadow of the shared component C_L plus the exceptional complement.
pub fn hh_additivity_check(m: u32, n: u32, r: u32, c: u32) -> Result<AdditivityReport> {
    let px = HPDParams::new(m, n, r, c, Side::X)?;
    let py = px.with_side(Side::Y);
    if px.dim_xl() < 0 || py.dim_yl() < 0 {
        return Err(CoreError::DimensionMismatch(format!(
            "empty section: dims ({}, {})",
            px.dim_xl(),
            py.dim_yl()
        )));
    }
    let chi_top_xl = SectionGeometry::new(px)?.chi_top()?;
    let chi_top_yl = SectionGeometry::new(py)?.chi_top()?;
    let lhs = &chi_top_yl - &chi_top_xl;
    let rhs = Int::from(c as i64 - (n * r) as i64) * binomial(m as u64, r as u64);
    Ok(AdditivityReport {
        m,
        n,
        r,
        c,
        chi_top_xl,
        chi_top_yl,
        pass: lhs == rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_ledgers() {
        // P^1 x P^1: 2 blocks of size 2
        let l = lefschetz_ledger(2, 2, 1, Side::X).unwrap();
        assert_eq!(l.blocks.len(), 2);
        assert_eq!(l.total(), 4);

        let l = lefschetz_ledger(5, 7, 3, Side::X).unwrap();
        assert_eq!(l.blocks.len(), 21);
        assert_eq!(l.total(), 210);
        assert_eq!(l.blocks[0].label, "A");
        assert_eq!(l.blocks[20].twist, DivisorClass { h: 20, p: 0 });

        let l = lefschetz_ledger(5, 7, 3, Side::Y).unwrap();
        assert_eq!(l.blocks.len(), 14);
        assert_eq!(l.total(), 140);
        assert_eq!(l.blocks[0].twist, DivisorClass { h: -13, p: 0 });
        assert_eq!(l.blocks[13].label, "B");
    }

    #[test]
    fn ledger_totals_match_bundle_rank() {
        for (m, n) in [(2u32, 2u32), (3, 4), (4, 5)] {
            for r in 1..m {
                for side in [Side::X, Side::Y] {
                    let e = match side {
                        Side::X => n * r,
                        Side::Y => n * (m - r),
                    };
                    let l = lefschetz_ledger(m, n, r, side).unwrap();
                    let expected =
                        e as u64 * binomial(m as u64, r as u64).to_u64().unwrap();
                    assert_eq!(l.total(), expected);
                }
            }
        }
    }

    #[test]
    fn section_ledgers() {
        // equivalence: single shared block on both sides
        let (x, y) = hpd_section_ledger(5, 7, 3, 21).unwrap();
        assert_eq!(x.blocks.len(), 1);
        assert_eq!(y.blocks.len(), 1);
        assert_eq!(x.blocks[0].label, "C_L");

        // plane-curve side: d x d with c = k+1 > d leaves k+1-d blocks of
        // size d on the Y side
        let (x, y) = hpd_section_ledger(4, 4, 1, 3).unwrap();
        assert_eq!(x.blocks.len(), 1 + 1); // nr - c = 1 extra block
        assert_eq!(y.blocks.len(), 1);
        assert_eq!(x.total() - y.total(), 4);

        let (x, y) = hpd_section_ledger(3, 3, 1, 5).unwrap();
        assert_eq!(y.blocks.len(), 1 + 2); // c - nr = 2
        assert_eq!(y.blocks[0].twist, DivisorClass { h: -2, p: 0 });
        assert_eq!(y.blocks[1].twist, DivisorClass { h: -1, p: 0 });
        assert_eq!(y.total() - x.total(), 2 * 3);
    }

    #[test]
    fn section_ledger_matches_complement_count() {
        for (m, n, r, c) in [(3u32, 4u32, 1u32, 2u32), (4, 4, 2, 5), (4, 4, 2, 11), (5, 7, 3, 21)] {
            let (x, y) = hpd_section_ledger(m, n, r, c).unwrap();
            let rep = crate::classify::classify(m, n, r, c).unwrap();
            let diff = x.total().abs_diff(y.total());
            assert_eq!(diff, rep.complement_count);
        }
    }

    #[test]
    fn gram_on_p1xp1_kunneth() {
        // product twists (0,0), (1,0), (0,1), (1,1) translate to
        // (H, P) coordinates (x, y-x)
        let params = HPDParams::new(2, 2, 1, 0, Side::X).unwrap();
        let twists: Vec<(i64, i64)> = [(0i64, 0i64), (1, 0), (0, 1), (1, 1)]
            .iter()
            .map(|&(x, y)| (x, y - x))
            .collect();
        let g = gram_matrix(&params, &twists).unwrap();
        assert!(g.is_unitriangular());
        for (i, &(x1, y1)) in [(0i64, 0i64), (1, 0), (0, 1), (1, 1)].iter().enumerate() {
            for (j, &(x2, y2)) in [(0i64, 0i64), (1, 0), (0, 1), (1, 1)].iter().enumerate() {
                let expected = Int::from((x2 - x1 + 1) * (y2 - y1 + 1));
                assert_eq!(g.entries[i][j], expected, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn gram_single_structure_sheaf() {
        let params = HPDParams::new(3, 3, 1, 3, Side::Y).unwrap();
        let g = gram_matrix(&params, &[(0, 0)]).unwrap();
        assert_eq!(g.entries, vec![vec![Int::zero()]]); // chi(O) = 0, elliptic
        // on the genus-26 curve: [chi(O)] = [-25]
        let params = HPDParams::new(5, 6, 1, 4, Side::Y).unwrap();
        let g = gram_matrix(&params, &[(0, 0)]).unwrap();
        assert_eq!(g.entries, vec![vec![Int::from(-25)]]);
    }

    #[test]
    fn mutation_involution() {
        let params = HPDParams::new(2, 2, 1, 0, Side::X).unwrap();
        let twists = [(0i64, 0i64), (1, -1), (1, 0)];
        let g = gram_matrix(&params, &twists).unwrap();
        let right = mutate(&g, 1, MutationDirection::Right).unwrap();
        let back = mutate(&right, 1, MutationDirection::Left).unwrap();
        assert_eq!(back.entries, g.entries);
        assert_eq!(back.classes, g.classes);
        let left = mutate(&g, 0, MutationDirection::Left).unwrap();
        let back = mutate(&left, 0, MutationDirection::Right).unwrap();
        assert_eq!(back.entries, g.entries);
    }

    #[test]
    fn mutation_of_orthogonal_pair_swaps() {
        // chi(E_i, E_{i+1}) = 0: mutation is a swap with a sign on the class
        let params = HPDParams::new(2, 2, 1, 0, Side::X).unwrap();
        // product twists (1,0) and (0,1) are orthogonal on P^1 x P^1
        let twists = [(1i64, -1i64), (0, 1)];
        let g = gram_matrix(&params, &twists).unwrap();
        assert!(g.entries[0][1].is_zero());
        let r = mutate(&g, 0, MutationDirection::Right).unwrap();
        assert_eq!(r.classes[0], g.classes[1]);
        assert_eq!(
            r.classes[1],
            g.classes[0].iter().map(|v| -v).collect::<Vec<_>>()
        );
    }

    #[test]
    fn mutation_rejects_bad_input() {
        let params = HPDParams::new(2, 2, 1, 0, Side::X).unwrap();
        let g = gram_matrix(&params, &[(0, 0), (1, 0)]).unwrap();
        assert!(mutate(&g, 1, MutationDirection::Right).is_err());
        let mut bad = g.clone();
        bad.entries[1][0] = Int::from(7);
        assert!(mutate(&bad, 0, MutationDirection::Right).is_err());
    }

    #[test]
    fn additivity_small_cases() {
        // c = nr: difference 0
        let rep = hh_additivity_check(4, 4, 2, 8).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.lhs, Int::zero());

        // (3,3,1,c=2): chi_top(X_L) - chi_top(Y_L) = 3
        let rep = hh_additivity_check(3, 3, 1, 2).unwrap();
        assert!(rep.pass);
        assert_eq!(&rep.chi_top_xl - &rep.chi_top_yl, Int::from(3));

        // (5,6,1,4): chi_top(Y_L) - chi_top(X_L) = (4 - 6) * 5 = -10
        let rep = hh_additivity_check(5, 6, 1, 4).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.lhs, Int::from(-10));

        assert!(hh_additivity_check(3, 3, 1, 8).is_err(), "empty X_L");
    }

    #[test]
    fn exceptional_chain_unitriangular() {
        // the Lefschetz chains surviving on the sections: O(H)..O((nr-c)H)
        // on X_L when c < nr, O(-(c-nr)H)..O(-H) on Y_L when c > nr
        for (m, n, r, c) in [(4u32, 4u32, 1u32, 2u32), (3, 4, 1, 1), (4, 4, 2, 5)] {
            let params = HPDParams::new(m, n, r, c, Side::X).unwrap();
            let twists: Vec<(i64, i64)> =
                (1..=(n * r - c) as i64).map(|j| (j, 0)).collect();
            let g = gram_matrix(&params, &twists).unwrap();
            assert!(
                g.is_unitriangular(),
                "X_L chain not unitriangular on ({m},{n},{r},{c})"
            );
        }
        for (m, n, r, c) in [(3u32, 3u32, 1u32, 5u32), (4, 4, 1, 7), (3, 4, 2, 11)] {
            let params = HPDParams::new(m, n, r, c, Side::Y).unwrap();
            let twists: Vec<(i64, i64)> = (1..=(c - n * r) as i64)
                .rev()
                .map(|j| (-j, 0))
                .collect();
            let g = gram_matrix(&params, &twists).unwrap();
            assert!(
                g.is_unitriangular(),
                "Y_L chain not unitriangular on ({m},{n},{r},{c})"
            );
        }
    }

    #[test]
    fn replay_of_rightward_mutation_normal_form() {
        // determinantal cubic threefold: d = 3, k = 4, Y side of
        // (3,3,1,5). Initial blocks O(t,t)...O(t,t+d-1) for t = -1, 0 in
        // (Q, H) coordinates; mutate non-diagonal objects rightward until
        // the diagonal twists lead.
        let (d, k) = (3u32, 4u32);
        let params = HPDParams::new(d, d, 1, k + 1, Side::Y).unwrap();
        // block t is O(tH + (t+s)Q), s = 0..d-1: the H-twist is constant
        // inside each Lefschetz block
        let mut twists: Vec<(i64, i64)> = Vec::new();
        let lo = -((k - d) as i64);
        for t in lo..=0 {
            for s in 0..d as i64 {
                twists.push((t, t + s));
            }
        }
        let g = gram_matrix(&params, &twists).unwrap();
        assert!(g.is_unitriangular(), "initial collection not exceptional");

        // move each diagonal object left past the preceding non-diagonals
        let diag_count = (k - d + 1) as usize;
        let mut g2 = g.clone();
        for target in 0..diag_count {
            // diagonal labels are O(tH+tP) with t = lo + target
            let t = lo + target as i64;
            let label = twist_label(t, t);
            let pos = g2
                .labels
                .iter()
                .position(|l| *l == label)
                .expect("diagonal twist present");
            for q in (target..pos).rev() {
                g2 = mutate(&g2, q, MutationDirection::Right).unwrap();
            }
        }
        for (idx, t) in (lo..=0).enumerate() {
            assert_eq!(g2.labels[idx], twist_label(t, t));
        }
        assert!(g2.is_unitriangular());

        // oracle: the leading corner must equal the directly computed Gram
        // of the diagonal collection
        let diag: Vec<(i64, i64)> = (lo..=0).map(|t| (t, t)).collect();
        let direct = gram_matrix(&params, &diag).unwrap();
        for i in 0..diag_count {
            for j in 0..diag_count {
                assert_eq!(g2.entries[i][j], direct.entries[i][j]);
            }
            // untouched diagonal objects keep their original unit classes
            let orig_pos = twists
                .iter()
                .position(|&(h, p)| (h, p) == diag[i])
                .unwrap();
            assert!(g2.classes[i]
                .iter()
                .enumerate()
                .all(|(l, v)| (l == orig_pos) == (*v == Int::one())
                    && ((l != orig_pos) == v.is_zero())));
        }
        // total object count: d(k-d+1), residual after the diagonal block:
        // (d-1)(k-d+1), matching the residual report
        let rep = crate::classify::residual_counts(d, k).unwrap();
        assert_eq!(g2.size() as u64, rep.total_exceptional);
        assert_eq!(
            (g2.size() - diag_count) as u64,
            rep.residual_exceptional
        );
    }

    #[test]
    fn gram_json_roundtrip() {
        let params = HPDParams::new(2, 2, 1, 0, Side::X).unwrap();
        let g = gram_matrix(&params, &[(0, 0), (1, 0)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: GramMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
    }
}
