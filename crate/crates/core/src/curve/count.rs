use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{build_gk, build_gk_hom, check_k};
use crate::absfactor::{abs_irr_verdict, VerdictClass};
use crate::error::{Error, Result};
use crate::field::{enumerable_field, FieldCtx};
use crate::poly::bivar::BiPoly;
use crate::poly::MPoly;

/// Projective GF(2^e)-points of the curve h = 0. `h` is either affine in
/// (x, y) or homogeneous in (x, y, z). The affine part is handled one x at
/// a time by root counting in y; the line at infinity through the top form.
pub fn count_points(h: &MPoly, e: u32) -> Result<u64> {
    let ctx = enumerable_field(e)?;
    let hom = if h.nvars() == 3 {
        if !h.is_homogeneous() {
            return Err(Error::InvalidParameter("trivariate input must be homogeneous".into()));
        }
        h.clone()
    } else {
        h.homogenize()
    };
    let hom = hom.embed(&ctx)?;
    let affine = BiPoly::from_mpoly(&hom.dehomogenize(2));
    let q = ctx.order();
    let affine_count: u64 =
        (0..q as u32).into_par_iter().map(|x0| affine.eval_x(x0).count_distinct_roots() as u64).sum();

    let top = MPoly::from_terms(ctx, 2, hom.terms().filter(|(m, _)| m.0[2] == 0).map(|(m, c)| (m.0, *c)));
    let at_infinity = if top.is_zero() {
        q + 1
    } else {
        let b = BiPoly::from_mpoly(&top);
        // (x : 1 : 0) from roots of top(x, 1); (1 : 0 : 0) when top(1, 0) = 0
        let on_y1 = b.eval_y(1).count_distinct_roots() as u64;
        let at_x_axis = u64::from(b.eval_x(1).coeff(0) == 0);
        on_y1 + at_x_axis
    };
    Ok(affine_count + at_infinity)
}

fn normalize(ctx: &FieldCtx, p: [u32; 3]) -> [u32; 3] {
    let lead = *p.iter().find(|&&c| c != 0).expect("projective point");
    let inv = ctx.inv(lead).unwrap();
    p.map(|c| ctx.mul(c, inv))
}

/// Projective zeros of g_k(x, y, z) over GF(2^e) with coordinates not all
/// distinct, i.e. on one of the lines x = y, x = z, y = z.
pub fn degenerate_points(k: u64, e: u32) -> Result<Vec<[u32; 3]>> {
    let ctx = enumerable_field(e)?;
    let g = build_gk_hom(k)?.embed(&ctx)?;
    let q = ctx.order() as u32;
    let mut pts = BTreeSet::new();
    let mut candidates = vec![[0, 0, 1], [0, 1, 0], [1, 0, 0]];
    for c in 0..q {
        candidates.extend([[1, 1, c], [1, c, 1], [c, 1, 1]]);
    }
    for p in candidates {
        let p = normalize(&ctx, p);
        let distinct = p[0] != p[1] && p[0] != p[2] && p[1] != p[2];
        if !distinct && g.eval(&p) == 0 {
            pts.insert(p);
        }
    }
    Ok(pts.into_iter().collect())
}

pub fn degenerate_count(k: u64, e: u32) -> Result<u64> {
    Ok(degenerate_points(k, e)?.len() as u64)
}

/// |n - 2^e| < (d-1)(d-2) 2^{e/2} + d^2, decided over the integers.
fn weil_bound_holds(n: u64, e: u32, d: u64) -> bool {
    let q = 1i128 << e;
    let dev = (n as i128 - q).abs();
    let d = d as i128;
    let c = (d - 1) * (d - 2);
    let slack = dev - d * d;
    if slack < 0 {
        return true;
    }
    slack * slack < c * c * q
}

/// Least e0 with 2^e - (d-1)(d-2) 2^{e/2} - d^2 > 3k - 2 for every e >= e0,
/// scanning e = 1..=60 with integer arithmetic.
pub fn weil_e0(k: u64, d: u64) -> Option<u32> {
    let d = d as i128;
    let c = (d - 1) * (d - 2);
    let slack = 3 * k as i128 - 2;
    let holds = |e: u32| {
        let q = 1i128 << e;
        let l = q - d * d - slack;
        l > 0 && l * l > c * c * q
    };
    let mut e0 = None;
    for e in 1..=60 {
        match (holds(e), e0) {
            (true, None) => e0 = Some(e),
            (false, _) => e0 = None,
            _ => {}
        }
    }
    e0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilRow {
    pub e: u32,
    /// Points on g_k.
    pub n_e: u64,
    /// Points on the certified factor when it is a proper factor of g_k.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_factor: Option<u64>,
    /// `None` when no absolutely irreducible GF(2)-factor is certified.
    pub bound_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilReport {
    pub k: u64,
    pub verdict: VerdictClass,
    /// Degree of the certified absolutely irreducible GF(2)-factor.
    pub certified_degree: Option<u64>,
    pub counts: Vec<WeilRow>,
    pub degenerate_max: u64,
    /// Threshold from the certified factor's degree.
    pub e0: Option<u32>,
    /// Threshold from the full degree k-2.
    pub e0_full_degree: Option<u32>,
    pub note: Option<String>,
}

pub fn weil_report(k: u64, e_max: u32) -> Result<WeilReport> {
    check_k(k)?;
    if e_max > 20 {
        return Err(Error::InvalidParameter(format!("e_max = {e_max} above 20")));
    }
    let verdict = abs_irr_verdict(k)?;
    let gk = build_gk(k)?;
    let certified = verdict.tree.certified_factor();
    let proper = certified.filter(|f| f.total_degree() != gk.total_degree());
    let certified_degree = certified.and_then(|f| f.total_degree()).map(u64::from);
    let mut counts = Vec::new();
    for e in 1..=e_max {
        let n_e = count_points(&gk, e)?;
        let n_factor = match proper {
            Some(f) => Some(count_points(f, e)?),
            None => None,
        };
        let bound_ok = certified_degree.map(|d| weil_bound_holds(n_factor.unwrap_or(n_e), e, d));
        counts.push(WeilRow { e, n_e, n_factor, bound_ok });
    }
    let note = match certified_degree {
        None => Some("no absolutely irreducible factor over GF(2); bound not asserted".to_string()),
        Some(d) if d < k - 2 => Some(format!("bound applied to a factor of degree {d}")),
        _ => None,
    };
    Ok(WeilReport {
        k,
        verdict: verdict.class,
        certified_degree,
        counts,
        degenerate_max: 3 * k - 2,
        e0: certified_degree.and_then(|d| weil_e0(k, d)),
        e0_full_degree: weil_e0(k, k - 2),
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Projective points by brute force over all (x : y : z).
    fn brute_count(h: &MPoly, e: u32) -> u64 {
        let ctx = crate::field::make_field(e).unwrap();
        let hom = if h.nvars() == 3 { h.clone() } else { h.homogenize() }.embed(&ctx).unwrap();
        let q = ctx.order() as u32;
        let mut n = 0;
        for x in 0..q {
            for y in 0..q {
                if hom.eval(&[x, y, 1]) == 0 {
                    n += 1;
                }
            }
        }
        for x in 0..q {
            if hom.eval(&[x, 1, 0]) == 0 {
                n += 1;
            }
        }
        if hom.eval(&[1, 0, 0]) == 0 {
            n += 1;
        }
        n
    }

    #[test]
    fn g4_counts() {
        let g4 = build_gk(4).unwrap();
        assert_eq!(count_points(&g4, 1).unwrap(), 1);
        assert_eq!(count_points(&g4, 2).unwrap(), 9);
        assert_eq!(brute_count(&g4, 2), 9);
    }

    #[test]
    fn counts_match_brute_force() {
        for k in [6u64, 8, 10, 12] {
            let g = build_gk(k).unwrap();
            for e in 1..=4 {
                assert_eq!(count_points(&g, e).unwrap(), brute_count(&g, e), "k={k} e={e}");
            }
        }
    }

    #[test]
    fn k8_line_union() {
        let g = build_gk(8).unwrap();
        for e in 1..=6u32 {
            let want = if e % 3 == 0 { 6 * (1u64 << e) + 1 } else { 1 };
            assert_eq!(count_points(&g, e).unwrap(), want);
        }
    }

    #[test]
    fn degenerate_bound() {
        for e in 1..=10 {
            assert!(degenerate_count(6, e).unwrap() <= 16);
        }
        // only (1, 1, 1) over GF(2) for k = 4
        assert_eq!(degenerate_points(4, 1).unwrap(), vec![[1, 1, 1]]);
    }

    #[test]
    fn e0_for_k10() {
        assert_eq!(weil_e0(10, 8), Some(11));
        // by hand: e = 10 fails, e = 11 holds
        let f = |e: u32| (1i128 << e) as f64 - 42.0 * 2f64.powf(e as f64 / 2.0) - 64.0 > 28.0;
        assert!(!f(10) && f(11) && f(20));
    }
}
