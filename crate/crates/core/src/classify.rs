//! The (m, n, r, c) decision surface: functor direction, exceptional
//! budgets, Calabi-Yau / Fano / rationality flags, the r = 1 regime table,
//! and residual-category counts for determinantal Fano hypersurfaces.

use crate::coeff::{binomial, Int};
use crate::error::{CoreError, Result};
use crate::invariants::{canonical_class, degree_section, DivisorClass, HPDParams};
use crate::tower::Side;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctorDirection {
    YToX,
    Equivalence,
    XToY,
}

impl std::fmt::Display for FunctorDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FunctorDirection::YToX => write!(f, "D(Y_L) -> D(X_L)"),
            FunctorDirection::Equivalence => write!(f, "equivalence"),
            FunctorDirection::XToY => write!(f, "D(X_L) -> D(Y_L)"),
        }
    }
}

/// The r = 1 column of the classification (Segre-determinantal duality).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegreRegime {
    CLtM,
    MLeCLtN,
    CEqN,
    NLtC,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SegreReport {
    pub regime: SegreRegime,
    /// X_L is Fano iff c < m (unconditional for r = 1)
    pub fano_x: bool,
    /// Y_L side is a Fano visitor for c < m (curve/variety in P^{c-1})
    pub fano_visitor_y: bool,
    /// X_L is a Fano visitor when n = m and n < c
    pub fano_visitor_x: bool,
    /// Y_L is Fano when n = m and n < c
    pub fano_y: bool,
    /// generic Z^L is smooth iff c < 2n - 2m + 5
    pub smooth_zl_generic: bool,
    /// c = n: the two sections are birational (m-2)-folds
    pub birational_pair: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Degrees {
    #[serde(with = "crate::intstr")]
    pub x: Int,
    #[serde(with = "crate::intstr")]
    pub y: Int,
}

/// One classification row. Serialized field order is the report schema.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SectionReport {
    pub schema_version: u32,
    pub m: u32,
    pub n: u32,
    pub r: u32,
    pub c: u32,
    pub dim_xl: i64,
    pub dim_yl: i64,
    pub empty_x: bool,
    pub empty_y: bool,
    pub canonical_x: DivisorClass,
    pub canonical_y: DivisorClass,
    pub functor_direction: FunctorDirection,
    pub complement_blocks: u64,
    pub complement_count: u64,
    /// exceptional budget of the full tower D(X): nr * binom(m, r)
    pub tower_budget_x: u64,
    /// exceptional budget of the full tower D(Y): n(m-r) * binom(m, r)
    pub tower_budget_y: u64,
    pub cy: bool,
    pub rational_x: bool,
    pub rational_y: bool,
    pub nef_canonical_x: bool,
    pub nef_canonical_y: bool,
    /// numeric trigger of the weak-Fano-visitor statement: n = m and the
    /// side sits on the complement side of the duality
    pub weakly_fano_visitor_x: bool,
    pub weakly_fano_visitor_y: bool,
    /// Fano trigger for r > 1 requires the extra unverified hypothesis that
    /// the deeper rank stratum of the section is empty
    pub fano_candidate_x: bool,
    pub fano_candidate_y: bool,
    pub segre: Option<SegreReport>,
    pub degrees: Option<Degrees>,
}

pub const SCHEMA_VERSION: u32 = 1;

fn segre_report(m: u32, n: u32, c: u32) -> SegreReport {
    let regime = if c < m {
        SegreRegime::CLtM
    } else if c < n {
        SegreRegime::MLeCLtN
    } else if c == n {
        SegreRegime::CEqN
    } else {
        SegreRegime::NLtC
    };
    SegreReport {
        regime,
        fano_x: c < m,
        fano_visitor_y: c < m,
        fano_visitor_x: n == m && n < c,
        fano_y: n == m && n < c,
        smooth_zl_generic: (c as i64) < 2 * n as i64 - 2 * m as i64 + 5,
        birational_pair: c == n,
    }
}

/// Full classification of the pair of dual linear sections.
pub fn classify(m: u32, n: u32, r: u32, c: u32) -> Result<SectionReport> {
    if c == 0 {
        return Err(CoreError::InvalidParams("need 1 <= c <= mn".into()));
    }
    let px = HPDParams::new(m, n, r, c, Side::X)?;
    let py = px.with_side(Side::Y);
    let nr = n * r;
    let functor_direction = match c.cmp(&nr) {
        std::cmp::Ordering::Less => FunctorDirection::YToX,
        std::cmp::Ordering::Equal => FunctorDirection::Equivalence,
        std::cmp::Ordering::Greater => FunctorDirection::XToY,
    };
    let blocks = (c as i64 - nr as i64).unsigned_abs();
    let binom_mr = binomial(m as u64, r as u64)
        .to_u64()
        .expect("binomial fits u64 at desk scale");
    let cy = m == n && c == nr;
    Ok(SectionReport {
        schema_version: SCHEMA_VERSION,
        m,
        n,
        r,
        c,
        dim_xl: px.dim_xl(),
        dim_yl: py.dim_yl(),
        empty_x: px.dim_xl() < 0,
        empty_y: py.dim_yl() < 0,
        canonical_x: canonical_class(&px),
        canonical_y: canonical_class(&py),
        functor_direction,
        complement_blocks: blocks,
        complement_count: blocks * binom_mr,
        tower_budget_x: nr as u64 * binom_mr,
        tower_budget_y: (n * (m - r)) as u64 * binom_mr,
        cy,
        rational_x: nr > c,
        rational_y: c > nr,
        nef_canonical_x: c >= nr,
        nef_canonical_y: c <= nr,
        weakly_fano_visitor_x: m == n && c > nr,
        weakly_fano_visitor_y: m == n && c < nr,
        fano_candidate_x: m == n && c < nr,
        fano_candidate_y: m == n && c > nr,
        segre: (r == 1).then(|| segre_report(m, n, c)),
        degrees: None,
    })
}

/// Attaches exact section degrees (both sides) to a report; empty sides get
/// skipped.
pub fn with_degrees(mut report: SectionReport) -> Result<SectionReport> {
    let px = HPDParams::new(report.m, report.n, report.r, report.c, Side::X)?;
    if report.empty_x || report.empty_y {
        return Ok(report);
    }
    let x = degree_section(&px)?;
    let y = degree_section(&px.with_side(Side::Y))?;
    report.degrees = Some(Degrees { x, y });
    Ok(report)
}

/// The r = 1 classification row on its own.
pub fn segre_row(m: u32, n: u32, c: u32) -> Result<SectionReport> {
    classify(m, n, 1, c)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepFilter {
    All,
    Cy,
    Equivalence,
    FanoCandidate,
    Curve,
}

impl std::str::FromStr for SweepFilter {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "all" => Ok(SweepFilter::All),
            "cy" => Ok(SweepFilter::Cy),
            "equivalence" => Ok(SweepFilter::Equivalence),
            "fano_candidate" | "fano-candidate" => Ok(SweepFilter::FanoCandidate),
            "curve" => Ok(SweepFilter::Curve),
            other => Err(format!("unknown filter '{other}'")),
        }
    }
}

fn matches_filter(report: &SectionReport, filter: SweepFilter) -> bool {
    match filter {
        SweepFilter::All => true,
        SweepFilter::Cy => report.cy,
        SweepFilter::Equivalence => {
            report.functor_direction == FunctorDirection::Equivalence
        }
        SweepFilter::FanoCandidate => {
            report.fano_candidate_x
                || report.fano_candidate_y
                || report.segre.as_ref().map(|s| s.fano_x).unwrap_or(false)
        }
        SweepFilter::Curve => report.dim_xl == 1 || report.dim_yl == 1,
    }
}

/// Classifies every admissible tuple in the given inclusive ranges, in
/// lexicographic (m, n, r, c) order. Out-of-range r and c are skipped, not
/// errors, so the sweep can traverse a full parameter box.
pub fn sweep(
    m_range: (u32, u32),
    n_range: (u32, u32),
    r_range: (u32, u32),
    c_range: (u32, u32),
    filter: SweepFilter,
) -> Vec<SectionReport> {
    let mut tuples = Vec::new();
    for m in m_range.0..=m_range.1 {
        for n in n_range.0.max(m)..=n_range.1 {
            for r in r_range.0.max(1)..=r_range.1.min(m.saturating_sub(1)) {
                for c in c_range.0.max(1)..=c_range.1.min(m * n) {
                    tuples.push((m, n, r, c));
                }
            }
        }
    }
    let mut out: Vec<SectionReport> = tuples
        .into_par_iter()
        .filter_map(|(m, n, r, c)| classify(m, n, r, c).ok())
        .filter(|rep| matches_filter(rep, filter))
        .collect();
    out.sort_by_key(|r| (r.m, r.n, r.r, r.c));
    out
}

/// Counts for the residual category of a degree-d determinantal
/// hypersurface in P^k.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ResidualReport {
    pub d: u32,
    pub k: u32,
    /// Fano index of the hypersurface
    pub index: u32,
    /// d(k-d+1) exceptional objects generate the resolution together with
    /// the dual section
    pub total_exceptional: u64,
    /// (d-1)(k-d+1) of them remain after splitting off the pulled-back
    /// O(-k+d) ... O chain
    pub residual_exceptional: u64,
    /// the dual Segre section parameters (X side of m = n = d, c = k+1)
    pub dual_section: HPDParams,
    pub dual_section_empty: bool,
    pub cubic_note: Option<String>,
}

/// Residual-category counts; requires the Fano range 3 <= d < k.
pub fn residual_counts(d: u32, k: u32) -> Result<ResidualReport> {
    if d < 3 {
        return Err(CoreError::InvalidParams(format!(
            "degree d = {d} < 3: no residual decomposition tabulated"
        )));
    }
    if d >= k {
        return Err(CoreError::InvalidParams(format!(
            "degree d = {d} >= k = {k}: outside the Fano range (index k - d would not be positive)"
        )));
    }
    if k + 1 > d * d {
        return Err(CoreError::InvalidParams(format!(
            "k + 1 = {} exceeds d^2 = {}: no generic d x d determinantal hypersurface in P^{k}",
            k + 1,
            d * d
        )));
    }
    let copies = (k - d + 1) as u64;
    let dual_section = HPDParams::new(d, d, 1, k + 1, Side::X)?;
    let cubic_note = (d == 3 && (k == 4 || k == 5)).then(|| {
        format!(
            "determinantal cubic {}: residual category resolved by {} exceptional objects",
            if k == 4 { "threefold" } else { "fourfold" },
            (d as u64 - 1) * copies
        )
    });
    Ok(ResidualReport {
        d,
        k,
        index: k - d,
        total_exceptional: d as u64 * copies,
        residual_exceptional: (d as u64 - 1) * copies,
        dual_section_empty: dual_section.dim_xl() < 0,
        dual_section,
        cubic_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equivalence_rows() {
        let r = classify(4, 4, 2, 8).unwrap();
        assert_eq!(r.functor_direction, FunctorDirection::Equivalence);
        assert_eq!((r.dim_xl, r.dim_yl), (3, 3));
        assert!(r.cy);
        assert_eq!(r.complement_count, 0);

        let r = classify(5, 7, 3, 21).unwrap();
        assert_eq!(r.functor_direction, FunctorDirection::Equivalence);
        assert_eq!((r.dim_xl, r.dim_yl), (5, 5));
        assert!(!r.cy);
        assert_eq!((r.canonical_x.h, r.canonical_x.p), (0, 2));
    }

    #[test]
    fn plane_curve_row() {
        // d x d determinant with c = 3: Y -> X functor, complement
        // (d-3) * d for d = 4... complement_blocks = nr - c = 1, each of
        // size binom(4,1) = 4
        let r = classify(4, 4, 1, 3).unwrap();
        assert_eq!(r.functor_direction, FunctorDirection::YToX);
        assert_eq!(r.complement_blocks, 1);
        assert_eq!(r.complement_count, 4);
        assert!(r.weakly_fano_visitor_y);
        assert!(!r.weakly_fano_visitor_x);
    }

    #[test]
    fn tower_budgets() {
        let r = classify(5, 7, 3, 21).unwrap();
        assert_eq!(r.tower_budget_x, 210);
        assert_eq!(r.tower_budget_y, 140);
    }

    #[test]
    fn duality_of_reports() {
        // classify(m,n,r,c) and classify(m,n,m-r,mn-c) swap the two sides
        for (m, n, r, c) in [(4u32, 4u32, 1u32, 5u32), (4, 5, 2, 7), (5, 7, 3, 12)] {
            let a = classify(m, n, r, c).unwrap();
            let b = classify(m, n, m - r, m * n - c).unwrap();
            assert_eq!(a.dim_xl, b.dim_yl);
            assert_eq!(a.dim_yl, b.dim_xl);
            assert_eq!(a.canonical_x.h, b.canonical_y.h);
            assert_eq!(a.canonical_x.p, b.canonical_y.p);
            assert_eq!(a.complement_count, b.complement_count);
            assert_eq!(a.rational_x, b.rational_y);
        }
    }

    #[test]
    fn cy_iff_square_and_critical() {
        for m in 2..=5u32 {
            for n in m..=5 {
                for r in 1..m {
                    for c in 1..=m * n {
                        let rep = classify(m, n, r, c).unwrap();
                        assert_eq!(rep.cy, m == n && c == n * r);
                        assert_eq!(
                            rep.complement_count == 0,
                            rep.functor_direction == FunctorDirection::Equivalence
                        );
                        assert_eq!(rep.dim_xl - rep.dim_yl, 2 * (rep.n as i64 * rep.r as i64 - rep.c as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn segre_rows() {
        // (5,6,4): c < m regime, X rational Fano, Y-side Fano visitor
        let r = segre_row(5, 6, 4).unwrap();
        let s = r.segre.clone().unwrap();
        assert_eq!(s.regime, SegreRegime::CLtM);
        assert!(s.fano_x && r.rational_x && s.fano_visitor_y);

        // (3,3,3): c = n = m, CY elliptic pair
        let r = segre_row(3, 3, 3).unwrap();
        let s = r.segre.clone().unwrap();
        assert_eq!(s.regime, SegreRegime::CEqN);
        assert!(r.cy && s.birational_pair);

        // (4,4,5): n < c with m = n: X Fano visitor, Y rational Fano
        let r = segre_row(4, 4, 5).unwrap();
        let s = r.segre.clone().unwrap();
        assert_eq!(s.regime, SegreRegime::NLtC);
        assert!(s.fano_visitor_x && s.fano_y && r.rational_y);
    }

    #[test]
    fn segre_agrees_with_classify() {
        for m in 2..=4u32 {
            for n in m..=5 {
                for c in 1..=m * n {
                    assert_eq!(segre_row(m, n, c).unwrap(), classify(m, n, 1, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn sweep_filters() {
        let rows = sweep((2, 4), (2, 4), (1, 3), (1, 16), SweepFilter::Cy);
        assert!(!rows.is_empty());
        for row in &rows {
            assert!(row.cy);
            assert_eq!(row.m, row.n);
            assert_eq!(row.c, row.n * row.r);
        }
        // deterministic lexicographic order
        let again = sweep((2, 4), (2, 4), (1, 3), (1, 16), SweepFilter::Cy);
        assert_eq!(rows, again);

        let curves = sweep((3, 5), (3, 7), (1, 1), (1, 20), SweepFilter::Curve);
        assert!(curves
            .iter()
            .any(|r| (r.m, r.n, r.r, r.c) == (5, 6, 1, 4)));

        let empty = sweep((3, 2), (2, 2), (1, 1), (1, 1), SweepFilter::All);
        assert!(empty.is_empty());
    }

    #[test]
    fn sweep_includes_noniso_example() {
        let rows = sweep((5, 5), (7, 7), (3, 3), (1, 35), SweepFilter::Equivalence);
        assert!(rows.iter().any(|r| r.c == 21));
    }

    #[test]
    fn residuals() {
        let r = residual_counts(3, 4).unwrap();
        assert_eq!(r.residual_exceptional, 4);
        assert_eq!(r.total_exceptional, 6);
        assert!(r.dual_section_empty);
        assert!(r.cubic_note.is_some());

        let r = residual_counts(3, 5).unwrap();
        assert_eq!(r.residual_exceptional, 6);

        let r = residual_counts(4, 5).unwrap();
        assert_eq!(r.total_exceptional, 8);
        assert_eq!(r.residual_exceptional, 6);
        assert!(r.cubic_note.is_none());

        // totals minus residuals = k - d + 1 across the Fano range
        for k in 4..=10u32 {
            for d in 3..k {
                if k + 1 > d * d {
                    continue;
                }
                let r = residual_counts(d, k).unwrap();
                assert_eq!(
                    r.total_exceptional - r.residual_exceptional,
                    (k - d + 1) as u64
                );
            }
        }

        assert!(residual_counts(2, 5).is_err());
        assert!(residual_counts(5, 5).is_err());
        assert!(residual_counts(3, 9).is_err(), "no cubic determinantal in P^9");
    }

    #[test]
    fn degrees_attach() {
        let r = with_degrees(classify(5, 7, 3, 21).unwrap()).unwrap();
        let d = r.degrees.unwrap();
        assert_eq!(d.x, Int::from(490));
        assert_eq!(d.y, Int::from(1176));
    }

    #[test]
    fn empty_sections_flagged_not_errors() {
        // determinantal cubic threefold: dual Segre section is empty
        let r = classify(3, 3, 1, 5).unwrap();
        assert!(r.empty_x);
        assert!(!r.empty_y);
    }

    #[test]
    fn report_json_roundtrip() {
        let r = with_degrees(classify(5, 7, 3, 21).unwrap()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: SectionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(r, back);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["degrees"]["x"], "490");
        assert_eq!(v["canonical_x"]["p"], 2);
    }
}
