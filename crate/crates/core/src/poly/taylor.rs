//! Taylor shifts into homogeneous components, tangent-cone factoring of
//! binary forms, and polynomial gcds.

use serde::Serialize;

use super::bivar::BiPoly;
use super::mpoly::MPoly;
use super::ufactor;
use crate::error::{Error, Result};
use crate::field::{lcm, FFElem, FieldCtx};

/// Homogeneous parts of h(x + α, y + β).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComponents {
    pub alpha: FFElem,
    pub beta: FFElem,
    /// `parts[d]` is zero or homogeneous of degree d.
    pub parts: Vec<MPoly>,
}

impl HomComponents {
    /// Least index with a nonzero part; `None` when the polynomial is zero.
    pub fn multiplicity(&self) -> Option<usize> {
        self.parts.iter().position(|p| !p.is_zero())
    }

    pub fn part(&self, d: usize) -> MPoly {
        self.parts.get(d).cloned().unwrap_or_else(|| MPoly::zero(self.alpha.ctx(), 2))
    }

    /// Lowest nonzero part (the tangent cone).
    pub fn lowest(&self) -> Option<&MPoly> {
        self.multiplicity().map(|m| &self.parts[m])
    }

    pub fn sum(&self) -> MPoly {
        let mut acc = MPoly::zero(self.alpha.ctx(), 2);
        for p in &self.parts {
            acc = acc.add(p);
        }
        acc
    }
}

/// h(x + a, y + b) for raw elements of h's field. Binomial coefficients are
/// read off by Lucas' theorem.
pub fn shift(h: &MPoly, a: u32, b: u32) -> MPoly {
    let ctx = h.ctx();
    let mut terms = Vec::new();
    for (m, &c) in h.terms() {
        let (i, j) = (m.0[0], m.0[1]);
        let mut sa = i;
        loop {
            let ca = ctx.mul(c, ctx.pow(a, (i - sa) as u64));
            if ca != 0 {
                let mut sb = j;
                loop {
                    let cb = ctx.mul(ca, ctx.pow(b, (j - sb) as u64));
                    terms.push(([sa, sb, 0], cb));
                    if sb == 0 {
                        break;
                    }
                    sb = (sb - 1) & j;
                }
            }
            if sa == 0 {
                break;
            }
            sa = (sa - 1) & i;
        }
    }
    MPoly::from_terms(ctx, h.nvars().max(2), terms)
}

/// Taylor components of `f` at (α, β). The point may live in an extension
/// of f's field; f is moved to the compositum.
pub fn taylor_shift(f: &MPoly, alpha: &FFElem, beta: &FFElem) -> Result<HomComponents> {
    if f.nvars() > 2 && f.degree_in(2).unwrap_or(0) > 0 {
        return Err(Error::VariableCount { expected: 2, found: 3 });
    }
    let target = f.ctx().compositum(&alpha.ctx())?.compositum(&beta.ctx())?;
    let fe = f.embed(&target)?;
    let a = alpha.embed(&target)?;
    let b = beta.embed(&target)?;
    let s = shift(&fe, a.bits(), b.bits());
    let deg = s.total_degree().map_or(0, |d| d as usize + 1);
    let parts = (0..deg).map(|d| s.homogeneous_part(d as u32)).collect();
    Ok(HomComponents { alpha: a, beta: b, parts })
}

/// m_P(f) at a point of f's field (0 when f does not vanish there).
pub fn multiplicity_at(f: &MPoly, a: u32, b: u32) -> usize {
    let s = shift(f, a, b);
    s.terms().map(|(m, _)| m.degree() as usize).min().unwrap_or(usize::MAX)
}

/// The linear form σx + τy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinearForm {
    #[serde(serialize_with = "ser_bits")]
    pub sigma: u32,
    #[serde(serialize_with = "ser_bits")]
    pub tau: u32,
}

fn ser_bits<S: serde::Serializer>(b: &u32, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("0b{:b}", b))
}

impl LinearForm {
    pub fn to_mpoly(&self, ctx: FieldCtx) -> MPoly {
        MPoly::from_terms(ctx, 2, [([1, 0, 0], self.sigma), ([0, 1, 0], self.tau)])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFormFactorization {
    pub ctx: FieldCtx,
    pub unit: u32,
    /// Forms x + r·y (and y itself), with multiplicities.
    pub forms: Vec<(LinearForm, u32)>,
    pub squarefree: bool,
}

impl BinaryFormFactorization {
    pub fn expand(&self) -> MPoly {
        let mut acc = MPoly::constant(self.ctx, 2, self.unit);
        for (l, m) in &self.forms {
            acc = acc.mul(&l.to_mpoly(self.ctx).pow(*m as u64));
        }
        acc
    }

    pub fn distinct(&self) -> usize {
        self.forms.len()
    }
}

/// Splits a nonzero binary form into linear factors over its own field.
pub fn binary_form_factor(h: &MPoly) -> Result<BinaryFormFactorization> {
    let ctx = h.ctx();
    let m = h.total_degree().ok_or_else(|| Error::InvalidParameter("zero form".into()))?;
    if !h.is_homogeneous() || h.degree_in(2).unwrap_or(0) > 0 {
        return Err(Error::InvalidParameter("not a binary form".into()));
    }
    // H(x, 1) and the power of y lost by dehomogenizing
    let hx = BiPoly::from_mpoly(h).eval_y(1);
    let d = hx.deg0() as u32;
    let fac = ufactor::factor(&hx);
    let mut forms = Vec::new();
    for (g, mult) in &fac.factors {
        if g.deg0() != 1 {
            return Err(Error::SplittingFieldTooSmall { e: ctx.degree() });
        }
        forms.push((LinearForm { sigma: 1, tau: g.coeff(0) }, *mult));
    }
    if m > d {
        forms.push((LinearForm { sigma: 0, tau: 1 }, m - d));
    }
    forms.sort();
    let squarefree = forms.iter().all(|(_, k)| *k == 1);
    Ok(BinaryFormFactorization { ctx, unit: fac.unit, forms, squarefree })
}

/// Extends the field until the form splits, then factors it there.
pub fn binary_form_factor_split(h: &MPoly) -> Result<(FieldCtx, BinaryFormFactorization)> {
    let ctx = h.ctx();
    let hx = BiPoly::from_mpoly(h).eval_y(1);
    let mut d = 1u64;
    if hx.deg0() > 1 {
        for (g, _) in ufactor::factor(&hx).factors {
            d = lcm(d, g.deg0() as u64);
        }
    }
    let target = ctx.degree() as u64 * d;
    if target > 32 {
        return Err(Error::SplittingFieldTooLarge { needed: target });
    }
    let ext = FieldCtx::new(target as u32)?;
    let bf = binary_form_factor(&h.embed(&ext)?)?;
    Ok((ext, bf))
}

/// Normalized gcd of two polynomials in at most two variables.
pub fn poly_gcd(u: &MPoly, v: &MPoly) -> Result<MPoly> {
    if u.is_zero() && v.is_zero() {
        return Err(Error::ZeroGcd);
    }
    if u.ctx() != v.ctx() {
        return Err(Error::ContextMismatch { left: u.ctx().degree(), right: v.ctx().degree() });
    }
    let g = BiPoly::from_mpoly(u).gcd(&BiPoly::from_mpoly(v)).to_mpoly();
    let mut g = g.monic();
    if u.nvars() == 1 && v.nvars() == 1 {
        g = g.dehomogenize(2);
        g = MPoly::from_univariate(&g.to_univariate(0)?, 1, 0);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn p(ctx: FieldCtx, s: &str) -> MPoly {
        MPoly::parse(ctx, 2, s).unwrap()
    }

    #[test]
    fn identity_shift_gives_homogeneous_pieces() {
        let g = FieldCtx::gf2();
        let f = p(g, "x^3+x*y+y+1");
        let hc = taylor_shift(&f, &g.zero(), &g.zero()).unwrap();
        assert_eq!(hc.parts[3], p(g, "x^3"));
        assert_eq!(hc.parts[2], p(g, "x*y"));
        assert_eq!(hc.parts[1], p(g, "y"));
        assert_eq!(hc.parts[0], p(g, "1"));
        assert_eq!(hc.sum(), f);
    }

    #[test]
    fn shift_back_recovers() {
        let ctx = make_field(3).unwrap();
        let f = p(ctx, "x^4*y+0b11*x^2*y^3+0b101*y+x+1");
        let s = shift(&f, 0b110, 0b011);
        assert_eq!(shift(&s, 0b110, 0b011), f);
    }

    #[test]
    fn binary_forms() {
        let g4 = FieldCtx::gf4();
        let bf = binary_form_factor(&p(g4, "x^2+x*y+y^2")).unwrap();
        assert!(bf.squarefree);
        assert_eq!(bf.forms, vec![(LinearForm { sigma: 1, tau: 2 }, 1), (LinearForm { sigma: 1, tau: 3 }, 1)]);
        let bf = binary_form_factor(&p(g4, "x^4*y+x*y^4")).unwrap();
        assert!(bf.squarefree);
        assert_eq!(bf.distinct(), 5);
        assert_eq!(bf.expand(), p(g4, "x^4*y+x*y^4"));
        let bf = binary_form_factor(&p(FieldCtx::gf2(), "x^2+y^2")).unwrap();
        assert!(!bf.squarefree);
        assert_eq!(bf.forms, vec![(LinearForm { sigma: 1, tau: 1 }, 2)]);
        assert_eq!(binary_form_factor(&p(FieldCtx::gf2(), "x^2+x*y+y^2")), Err(Error::SplittingFieldTooSmall { e: 1 }));
    }

    #[test]
    fn gcds() {
        let g = FieldCtx::gf2();
        let u = MPoly::parse(g, 1, "x^2+1").unwrap();
        let v = MPoly::parse(g, 1, "x+1").unwrap();
        assert_eq!(poly_gcd(&u, &v).unwrap(), v);
        let z = MPoly::zero(g, 1);
        assert_eq!(poly_gcd(&u, &z).unwrap(), u);
        assert_eq!(poly_gcd(&z, &z), Err(Error::ZeroGcd));
    }
}
