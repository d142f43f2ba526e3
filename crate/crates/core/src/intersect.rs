//! Intersection multiplicities of plane curves by Fulton's reduction, and
//! Bezout audits over the common points of factor pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::absfactor::factor_tree;
use crate::curve::{singular_points, CurveParams, PointType};
use crate::error::{internal, Error, Result};
use crate::field::{lcm, FFElem, FieldCtx};
use crate::poly::bivar::BiPoly;
use crate::poly::taylor::shift;
use crate::poly::ufactor;
use crate::poly::upoly::UPoly;
use crate::poly::{poly_gcd, MPoly};

fn bivariate(f: &MPoly) -> Result<MPoly> {
    if f.nvars() == 3 && f.degree_in(2).unwrap_or(0) > 0 {
        return Err(Error::VariableCount { expected: 2, found: 3 });
    }
    Ok(MPoly::from_terms(f.ctx(), 2, f.terms().map(|(m, c)| (m.0, *c))))
}

/// I(P, u, v) for P = (alpha, beta). Errors with
/// [`Error::InfiniteIntersection`] when u and v share a component through P.
pub fn intersection_number(u: &MPoly, v: &MPoly, alpha: &FFElem, beta: &FFElem) -> Result<u64> {
    let ctx = u.ctx().compositum(&v.ctx())?.compositum(&alpha.ctx())?.compositum(&beta.ctx())?;
    let (a, b) = (alpha.embed(&ctx)?.bits(), beta.embed(&ctx)?.bits());
    let mut f = bivariate(u)?.embed(&ctx)?;
    let mut g = bivariate(v)?.embed(&ctx)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::InfiniteIntersection);
    }
    let common = poly_gcd(&f, &g)?;
    if !common.is_constant() {
        if common.eval(&[a, b]) == 0 {
            return Err(Error::InfiniteIntersection);
        }
        f = f.exact_divide(&common)?;
        g = g.exact_divide(&common)?;
    }
    let cap = 4 * (f.total_degree().unwrap_or(0) as u64 + 1) * (g.total_degree().unwrap_or(0) as u64 + 1);
    at_origin(BiPoly::from_mpoly(&shift(&f, a, b)), BiPoly::from_mpoly(&shift(&g, a, b)), cap)
}

/// Fulton's reduction at (0, 0): lower the degree of one restriction to
/// y = 0 against the other, and split off y once a restriction vanishes.
fn at_origin(mut f: BiPoly, mut g: BiPoly, cap: u64) -> Result<u64> {
    let ctx = f.ctx();
    let mut total = 0u64;
    let mut splits = 0u64;
    loop {
        let (f0, g0) = (f.row(0), g.row(0));
        if f0.coeff(0) != 0 || g0.coeff(0) != 0 {
            return Ok(total);
        }
        match (f0.is_zero(), g0.is_zero()) {
            (true, true) => return Err(Error::InfiniteIntersection),
            (true, false) | (false, true) => {
                if f0.is_zero() {
                    std::mem::swap(&mut f, &mut g);
                }
                // g = y g1: I(f, y) is the order of f(x, 0) at 0
                total += f.row(0).valuation().unwrap_or(0) as u64;
                g = BiPoly::from_rows(ctx, g.rows()[1..].to_vec());
                splits += 1;
                if splits > cap {
                    return Err(internal("intersection reduction exceeded its depth cap"));
                }
            }
            (false, false) => {
                let (r, s) = (f0.deg0(), g0.deg0());
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                }
                let (f0, g0) = (f.row(0), g.row(0));
                let (r, s) = (f0.deg0(), g0.deg0());
                let mono = UPoly::monomial(ctx, g0.lc(), s - r);
                g = g.scale_x(&UPoly::constant(ctx, f0.lc())).add(&f.scale_x(&mono));
            }
        }
    }
}

/// Projective point with its first nonzero coordinate equal to 1.
pub type ProjPoint = [FFElem; 3];

fn normalize(ctx: &FieldCtx, p: [u32; 3]) -> [u32; 3] {
    let lead = *p.iter().find(|&&c| c != 0).expect("projective point");
    let inv = ctx.inv(lead).unwrap();
    p.map(|c| ctx.mul(c, inv))
}

fn split_degree(polys: &[UPoly]) -> u64 {
    let mut d = 1;
    for p in polys {
        if p.degree().unwrap_or(0) > 0 {
            for (f, _) in ufactor::factor(p).factors {
                d = lcm(d, f.deg0() as u64);
            }
        }
    }
    d
}

fn top_form(f: &MPoly) -> MPoly {
    f.homogeneous_part(f.total_degree().unwrap_or(0))
}

/// All common projective points of two coprime curves, with coordinates in
/// the least extension containing them.
pub fn common_points(u: &MPoly, v: &MPoly) -> Result<(FieldCtx, Vec<ProjPoint>)> {
    let base = u.ctx().compositum(&v.ctx())?;
    let f = bivariate(u)?.embed(&base)?;
    let g = bivariate(v)?.embed(&base)?;
    if !poly_gcd(&f, &g)?.is_constant() {
        return Err(Error::InfiniteIntersection);
    }
    let (bf, bg) = (BiPoly::from_mpoly(&f), BiPoly::from_mpoly(&g));
    let rx = bf.resultant_y(&bg);
    let ry = bf.transpose().resultant_y(&bg.transpose());
    if rx.is_zero() || ry.is_zero() {
        return Err(Error::InfiniteIntersection);
    }
    let at_inf = poly_gcd(&top_form(&f), &top_form(&g))?;
    let hx = BiPoly::from_mpoly(&at_inf).eval_y(1);
    let m = split_degree(&[rx.clone(), ry.clone(), hx.clone()]);
    let target = base.degree() as u64 * m;
    if target > 32 {
        return Err(Error::SplittingFieldTooLarge { needed: target });
    }
    let ctx = FieldCtx::new(target as u32)?;
    let (fe, ge) = (f.embed(&ctx)?, g.embed(&ctx)?);
    let mut pts = Vec::new();
    let xs = ufactor::roots(&rx.embed(&ctx)?);
    let ys = ufactor::roots(&ry.embed(&ctx)?);
    for &a in &xs {
        for &b in &ys {
            if fe.eval(&[a, b]) == 0 && ge.eval(&[a, b]) == 0 {
                pts.push([a, b, 1]);
            }
        }
    }
    for t in ufactor::roots(&hx.embed(&ctx)?) {
        pts.push(normalize(&ctx, [t, 1, 0]));
    }
    if at_inf.total_degree().unwrap_or(0) as usize > hx.degree().unwrap_or(0) {
        pts.push([1, 0, 0]);
    }
    pts.sort_unstable();
    pts.dedup();
    Ok((ctx, pts.into_iter().map(|p| p.map(|c| ctx.wrap(c))).collect()))
}

/// I at a projective point, through the affine chart that contains it.
pub fn intersection_at(u: &MPoly, v: &MPoly, p: &ProjPoint) -> Result<u64> {
    let ctx = p[0].ctx();
    if !p[2].is_zero() {
        let inv = p[2].inverse()?;
        let a = p[0].try_mul(&inv)?;
        let b = p[1].try_mul(&inv)?;
        return intersection_number(u, v, &a, &b);
    }
    let (uh, vh) = (bivariate(u)?.homogenize(), bivariate(v)?.homogenize());
    if !p[0].is_zero() {
        // chart x = 1, coordinates (y, z)
        let t = p[1].try_mul(&p[0].inverse()?)?;
        intersection_number(&uh.dehomogenize(0), &vh.dehomogenize(0), &t, &ctx.zero())
    } else {
        // chart y = 1, coordinates (x, z)
        intersection_number(&uh.dehomogenize(1), &vh.dehomogenize(1), &ctx.zero(), &ctx.zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCurve {
    pub id: usize,
    /// Curves sharing a group are absolute factors of one GF(2)-factor.
    pub group: usize,
    pub poly: MPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionRecord {
    pub point: ProjPoint,
    pub u_id: usize,
    pub v_id: usize,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairAudit {
    pub u_id: usize,
    pub v_id: usize,
    pub same_group: bool,
    pub records: Vec<IntersectionRecord>,
    pub total: u64,
    pub degree_product: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutAudit {
    pub pairs: Vec<PairAudit>,
    /// Sums over pairs inside one group and across groups.
    pub within_total: u64,
    pub cross_total: u64,
    pub ok: bool,
}

fn audit_pair(u: &AuditCurve, v: &AuditCurve) -> Result<PairAudit> {
    let (_, pts) = common_points(&u.poly, &v.poly)?;
    let mut records = Vec::new();
    for p in pts {
        let value = intersection_at(&u.poly, &v.poly, &p)?;
        records.push(IntersectionRecord { point: p, u_id: u.id, v_id: v.id, value });
    }
    let total = records.iter().map(|r| r.value).sum();
    let degree_product = (u.poly.total_degree().unwrap_or(0) * v.poly.total_degree().unwrap_or(0)) as u64;
    Ok(PairAudit {
        u_id: u.id,
        v_id: v.id,
        same_group: u.group == v.group,
        records,
        total,
        degree_product,
        ok: total == degree_product,
    })
}

pub fn bezout_audit(curves: &[AuditCurve]) -> Result<BezoutAudit> {
    let pairs: Vec<(usize, usize)> =
        (0..curves.len()).flat_map(|i| (i + 1..curves.len()).map(move |j| (i, j))).collect();
    let pairs = pairs.par_iter().map(|&(i, j)| audit_pair(&curves[i], &curves[j])).collect::<Result<Vec<_>>>()?;
    let within_total = pairs.iter().filter(|p| p.same_group).map(|p| p.total).sum();
    let cross_total = pairs.iter().filter(|p| !p.same_group).map(|p| p.total).sum();
    let ok = pairs.iter().all(|p| p.ok);
    Ok(BezoutAudit { pairs, within_total, cross_total, ok })
}

/// The absolute factors of g_k, grouped by their GF(2)-factor.
pub fn absolute_curves(k: u64) -> Result<Vec<AuditCurve>> {
    let tree = factor_tree(k)?;
    let mut out = Vec::new();
    for (j, b) in tree.base_factors.iter().enumerate() {
        for f in &b.abs_factors {
            for _ in 0..b.multiplicity {
                out.push(AuditCurve { id: out.len(), group: j, poly: f.clone() });
            }
        }
    }
    Ok(out)
}

pub fn bezout_for_k(k: u64) -> Result<BezoutAudit> {
    bezout_audit(&absolute_curves(k)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeRecord {
    pub alpha: FFElem,
    pub beta: FFElem,
    pub ptype: PointType,
    pub u_id: usize,
    pub v_id: usize,
    pub value: u64,
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeLemmaReport {
    pub k: u64,
    pub curves: usize,
    /// Type I bound (2^{i-1} - 1)^2 and the Type III value 2^i.
    pub type_one_bound: u64,
    pub type_three_value: u64,
    pub records: Vec<TypeRecord>,
    pub violations: Vec<TypeRecord>,
    /// True when g_k has a single absolute factor and no pair exists.
    pub vacuous: bool,
}

pub fn type_lemma_checks(k: u64) -> Result<TypeLemmaReport> {
    let params = CurveParams::new(k)?;
    let curves = absolute_curves(k)?;
    let two_i = params.two_i();
    let type_one_bound = (two_i / 2).saturating_sub(1).pow(2);
    let mut records = Vec::new();
    if curves.len() >= 2 {
        let points = singular_points(k)?;
        let n = curves.len();
        let jobs: Vec<(usize, usize, usize)> =
            (0..points.len()).flat_map(|p| (0..n).flat_map(move |i| (i + 1..n).map(move |j| (p, i, j)))).collect();
        records = jobs
            .par_iter()
            .map(|&(p, i, j)| {
                let pt = &points[p];
                let value = intersection_number(&curves[i].poly, &curves[j].poly, &pt.alpha, &pt.beta)?;
                let admissible = match pt.ptype {
                    PointType::I => value <= type_one_bound,
                    PointType::II => value == 0,
                    PointType::III => value == 0 || value == two_i,
                };
                Ok(TypeRecord { alpha: pt.alpha, beta: pt.beta, ptype: pt.ptype, u_id: i, v_id: j, value, admissible })
            })
            .collect::<Result<Vec<_>>>()?;
    }
    let violations = records.iter().filter(|r| !r.admissible).cloned().collect();
    Ok(TypeLemmaReport {
        k,
        curves: curves.len(),
        type_one_bound,
        type_three_value: two_i,
        records,
        violations,
        vacuous: curves.len() < 2,
    })
}
