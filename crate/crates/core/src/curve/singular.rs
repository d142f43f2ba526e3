use serde::Serialize;

use super::{build_fk, build_fk_hom, build_gk, build_gk_hom, CurveParams};
use crate::error::{internal, Error, Result};
use crate::field::{FFElem, FieldCtx};
use crate::poly::taylor::{binary_form_factor_split, multiplicity_at, shift};
use crate::poly::{poly_gcd, MPoly};

const MAX_SPLIT: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PointType {
    I,
    II,
    III,
}

impl PointType {
    pub fn classify(alpha: u32, beta: u32) -> PointType {
        if alpha == 1 && beta == 1 {
            PointType::I
        } else if alpha == 1 || beta == 1 || alpha == beta {
            PointType::II
        } else {
            PointType::III
        }
    }

    /// Multiplicities on (f_k, g_k) at a point of this type.
    pub fn expected_multiplicities(&self, two_i: u64) -> (u64, u64) {
        match self {
            PointType::I => (two_i + 1, two_i - 2),
            PointType::II => (two_i, two_i - 1),
            PointType::III => (two_i, two_i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingPoint {
    pub alpha: FFElem,
    pub beta: FFElem,
    pub ptype: PointType,
    pub m_f: u64,
    pub m_g: u64,
    pub sigma: FFElem,
    pub tau: FFElem,
    /// F_{2^i} = (sigma x + tau y)^(2^i) checked by expansion.
    pub repeated_line_ok: bool,
    /// F_{2^i+1} equals alpha^(-2^i) x^(2^i) y + beta^(-2^i) y^(2^i) x.
    pub next_form_ok: bool,
    pub tangent_squarefree: bool,
    /// Distinct linear factors of F_{2^i+1} over its splitting field.
    pub tangent_lines: usize,
    pub tangent_field_degree: u32,
}

impl SingPoint {
    pub fn singular_on_g(&self) -> bool {
        self.m_g >= 2
    }
}

fn splitting_ctx(p: &CurveParams) -> Result<FieldCtx> {
    if p.m_split > MAX_SPLIT {
        return Err(Error::SplittingFieldTooLarge { needed: p.m_split as u64 });
    }
    FieldCtx::new(p.m_split)
}

/// All ell^2 singular points of f_k with their measured multiplicities on f_k
/// and g_k, in canonical (alpha, beta) order. Tangent fields are left at
/// their defaults; see [`tangent_data`].
pub fn singular_points(k: u64) -> Result<Vec<SingPoint>> {
    let params = CurveParams::new(k)?;
    let ctx = splitting_ctx(&params)?;
    let f = build_fk(k)?.embed(&ctx)?;
    let g = build_gk(k)?.embed(&ctx)?;
    let roots = ctx.ell_th_roots(params.ell)?;
    let mut out = Vec::with_capacity(roots.len() * roots.len());
    for a in &roots {
        for b in &roots {
            let (ab, bb) = (a.bits(), b.bits());
            let m_f = multiplicity_at(&f, ab, bb) as u64;
            let m_g = multiplicity_at(&g, ab, bb) as u64;
            out.push(SingPoint {
                alpha: *a,
                beta: *b,
                ptype: PointType::classify(ab, bb),
                m_f,
                m_g,
                sigma: ctx.zero(),
                tau: ctx.zero(),
                repeated_line_ok: false,
                next_form_ok: false,
                tangent_squarefree: false,
                tangent_lines: 0,
                tangent_field_degree: 0,
            });
        }
    }
    Ok(out)
}

/// Closed-form sigma, tau and the tangent checks at a singular point.
pub fn tangent_data(p: &SingPoint, k: u64) -> Result<SingPoint> {
    let params = CurveParams::new(k)?;
    let ctx = p.alpha.ctx();
    let (a, b) = (p.alpha.bits(), p.beta.bits());
    let i = params.i;
    let two_i = params.two_i();
    let e_big = two_i * (params.ell - 1);
    let sigma = ctx.root_2pow(ctx.mul(ctx.pow(a, e_big), b ^ 1), i);
    let tau = ctx.root_2pow(ctx.mul(ctx.pow(b, e_big), a ^ 1), i);

    let f = build_fk(k)?.embed(&ctx)?;
    let shifted = shift(&f, a, b);
    let low = shifted.homogeneous_part(two_i as u32);
    let next = shifted.homogeneous_part(two_i as u32 + 1);

    let line = MPoly::from_terms(ctx, 2, [([1, 0, 0], sigma), ([0, 1, 0], tau)]);
    let repeated_line_ok = low == line.pow(two_i);

    let ai = ctx.inv(ctx.pow(a, two_i)).ok_or(Error::InverseOfZero)?;
    let bi = ctx.inv(ctx.pow(b, two_i)).ok_or(Error::InverseOfZero)?;
    let t = two_i as u32;
    let closed = MPoly::from_terms(ctx, 2, [([t, 1, 0], ai), ([1, t, 0], bi)]);
    let next_form_ok = next == closed;

    let (split_ctx, bf) = binary_form_factor_split(&next)?;
    Ok(SingPoint {
        sigma: ctx.wrap(sigma),
        tau: ctx.wrap(tau),
        repeated_line_ok,
        next_form_ok,
        tangent_squarefree: bf.squarefree,
        tangent_lines: bf.distinct(),
        tangent_field_degree: split_ctx.degree(),
        ..p.clone()
    })
}

/// Comparison of measured data with the type table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub counts: [u64; 3],
    pub expected_counts: [u64; 3],
    pub multiplicity_mismatches: Vec<(FFElem, FFElem)>,
    /// F_1 vanishes identically at every point.
    pub first_order_ok: bool,
    pub ok: bool,
}

pub fn table_check(k: u64, points: &[SingPoint]) -> Result<TableCheck> {
    let params = CurveParams::new(k)?;
    let l = params.ell;
    let mut counts = [0u64; 3];
    let mut mismatches = Vec::new();
    let mut first_order_ok = true;
    let f = build_fk(k)?;
    for p in points {
        counts[p.ptype as usize] += 1;
        if (p.m_f, p.m_g) != p.ptype.expected_multiplicities(params.two_i()) {
            mismatches.push((p.alpha, p.beta));
        }
        let fe = f.embed(&p.alpha.ctx())?;
        let s = shift(&fe, p.alpha.bits(), p.beta.bits());
        if !s.homogeneous_part(1).is_zero() || !s.homogeneous_part(0).is_zero() {
            first_order_ok = false;
        }
    }
    let expected_counts = [1, 3 * (l - 1), (l - 1) * l.saturating_sub(2)];
    let ok = counts == expected_counts && mismatches.is_empty() && first_order_ok;
    Ok(TableCheck { counts, expected_counts, multiplicity_mismatches: mismatches, first_order_ok, ok })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinityCheck {
    /// Degree of gcd(F, F_x, F_y, F_z) restricted to z = 0, for f_k and g_k.
    pub f_gcd_degree: u32,
    pub g_gcd_degree: u32,
    pub no_singular_points_at_infinity: bool,
}

/// Binary forms h(x, y, 0) for h and its three partials; a common projective
/// zero exists iff their gcd is nonconstant.
fn singular_at_infinity_degree(h: &MPoly) -> Result<u32> {
    let at_z0 =
        |p: &MPoly| MPoly::from_terms(p.ctx(), 2, p.terms().filter(|(m, _)| m.0[2] == 0).map(|(m, c)| (m.0, *c)));
    let forms = [h.clone(), h.partial(0), h.partial(1), h.partial(2)].map(|p| at_z0(&p));
    let mut g = MPoly::zero(h.ctx(), 2);
    for form in &forms {
        if g.is_zero() && form.is_zero() {
            continue;
        }
        g = poly_gcd(&g, form)?;
    }
    if g.is_zero() {
        return Err(internal("every form vanishes on the line at infinity"));
    }
    Ok(g.total_degree().unwrap_or(0))
}

pub fn infinity_check(k: u64) -> Result<InfinityCheck> {
    let f_gcd_degree = singular_at_infinity_degree(&build_fk_hom(k)?)?;
    let g_gcd_degree = singular_at_infinity_degree(&build_gk_hom(k)?)?;
    Ok(InfinityCheck {
        f_gcd_degree,
        g_gcd_degree,
        no_singular_points_at_infinity: f_gcd_degree == 0 && g_gcd_degree == 0,
    })
}
