//! Factorization of g_k over GF(2) and its extensions, absolute
//! factorizations of the GF(2)-factors, and the irreducibility verdicts.

mod bifactor;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{build_gk, check_k};
use crate::error::{internal, Error, Result};
use crate::field::{factor_u64, FieldCtx};
use crate::poly::bivar::BiPoly;
use crate::poly::MPoly;
use bifactor::{irreducible_factors, Need};

/// Complete factorization `unit * prod f^m` with monic, pairwise distinct
/// irreducible factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(skip)]
    pub ctx: FieldCtx,
    pub field_degree: u32,
    #[serde(serialize_with = "ser_bits")]
    pub unit: u32,
    pub factors: Vec<(MPoly, u32)>,
    /// Degree of the extension used when the field had no good
    /// specialization; 1 otherwise.
    pub extension_used: u32,
}

fn ser_bits<S: serde::Serializer>(b: &u32, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("0b{:b}", b))
}

impl Factorization {
    pub fn expand(&self) -> MPoly {
        let mut acc = MPoly::constant(self.ctx, 2, self.unit);
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Total degree first, then the graded-lex term list from the top.
fn canonical_key(f: &MPoly) -> (u32, Vec<([u32; 3], u32)>) {
    (f.total_degree().unwrap_or(0), f.terms().rev().map(|(m, c)| (m.0, *c)).collect())
}

fn as_bivariate(g: &MPoly) -> Result<MPoly> {
    match g.nvars() {
        1 | 2 => Ok(MPoly::from_terms(g.ctx(), 2, g.terms().map(|(m, c)| (m.0, *c)))),
        _ if g.degree_in(2).unwrap_or(0) == 0 => Ok(MPoly::from_terms(g.ctx(), 2, g.terms().map(|(m, c)| (m.0, *c)))),
        _ => Err(Error::VariableCount { expected: 2, found: 3 }),
    }
}

/// Irreducible factors over `ctx` of a polynomial whose coefficients lie in
/// a subfield of `ctx`.
pub fn factor_over(g: &MPoly, ctx: &FieldCtx) -> Result<Factorization> {
    if g.is_zero() {
        return Err(Error::InvalidParameter("cannot factor zero".into()));
    }
    let g = as_bivariate(g)?.embed(ctx)?;
    let b = BiPoly::from_mpoly(&g);
    let (irr, extension_used) = match irreducible_factors(&b) {
        Ok(v) => (v, 1),
        Err(Need::Failed(e)) => return Err(e),
        Err(Need::Extension) => factor_via_extension(&b, ctx)?,
    };
    let mut factors = Vec::new();
    let mut rest = g.clone();
    for p in irr {
        let p = p.to_mpoly().monic();
        let mut m = 0;
        while p.divides(&rest) {
            rest = rest.exact_divide(&p)?;
            m += 1;
        }
        if m == 0 {
            return Err(internal("factor does not divide its input"));
        }
        factors.push((p, m));
    }
    if !rest.is_constant() {
        return Err(internal("cofactor left after factoring"));
    }
    factors.sort_by_key(|(f, _)| canonical_key(f));
    let unit = g.leading().map(|(_, c)| c).unwrap_or(0);
    Ok(Factorization { ctx: *ctx, field_degree: ctx.degree(), unit, factors, extension_used })
}

/// Factors over the least extension with a good specialization, then
/// multiplies Frobenius orbits back down to `ctx`.
fn factor_via_extension(b: &BiPoly, ctx: &FieldCtx) -> Result<(Vec<BiPoly>, u32)> {
    let e = ctx.degree();
    for m in 2..=32 / e {
        let ext = FieldCtx::new(e * m)?;
        let be = BiPoly::from_mpoly(&b.to_mpoly().embed(&ext)?);
        let irr = match irreducible_factors(&be) {
            Ok(v) => v,
            Err(Need::Extension) => continue,
            Err(Need::Failed(err)) => return Err(err),
        };
        let mut used = vec![false; irr.len()];
        let mut out = Vec::new();
        for s in 0..irr.len() {
            if used[s] {
                continue;
            }
            used[s] = true;
            let mut prod = irr[s].clone();
            let mut cur = irr[s].to_mpoly();
            loop {
                cur = cur.frobenius(e);
                let next = BiPoly::from_mpoly(&cur).normalize();
                let Some(t) = irr.iter().position(|p| *p == next) else {
                    return Err(internal("Frobenius image is not a factor"));
                };
                if t == s {
                    break;
                }
                used[t] = true;
                prod = prod.mul(&next);
            }
            let down = prod
                .normalize()
                .to_mpoly()
                .restrict(ctx)?
                .ok_or_else(|| internal("orbit product outside the base field"))?;
            out.push(BiPoly::from_mpoly(&down));
        }
        return Ok((out, m));
    }
    Err(Error::SplittingFieldTooLarge { needed: 2 * e as u64 })
}

/// Absolute factorization of a GF(2)-irreducible polynomial: the least r
/// with r conjugate absolutely irreducible factors over GF(2^r).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsFactorization {
    pub r: u32,
    pub factors: Vec<MPoly>,
    /// Number of pieces over GF(2^m) for each prime power m tested.
    pub pieces: Vec<(u32, u32)>,
}

/// Over GF(2^m) a GF(2)-irreducible f with r absolute factors splits into
/// gcd(m, r) pieces, so r is assembled from prime-power probes.
pub fn absolute_factorization(f: &MPoly) -> Result<AbsFactorization> {
    let f = as_bivariate(f)?;
    if f.ctx().degree() != 1 {
        return Err(Error::InvalidParameter("input must have GF(2) coefficients".into()));
    }
    let t = f.total_degree().unwrap_or(0) as u64;
    if t <= 1 {
        return Ok(AbsFactorization { r: 1, factors: vec![f.monic()], pieces: vec![] });
    }
    let probes: Vec<Result<(u64, Vec<(u32, u32)>)>> = factor_u64(t)
        .into_par_iter()
        .map(|(p, a_max)| {
            let mut good = 1u64;
            let mut seen = Vec::new();
            for a in 1..=a_max {
                let m = p.pow(a);
                if m > 32 {
                    return Err(Error::SplittingFieldTooLarge { needed: m });
                }
                let n = factor_over(&f, &FieldCtx::new(m as u32)?)?.len() as u64;
                seen.push((m as u32, n as u32));
                if n != m {
                    break;
                }
                good = m;
            }
            Ok((good, seen))
        })
        .collect();
    let mut r = 1u64;
    let mut pieces = Vec::new();
    for probe in probes {
        let (good, seen) = probe?;
        r *= good;
        pieces.extend(seen);
    }
    if r == 1 {
        return Ok(AbsFactorization { r: 1, factors: vec![f.monic()], pieces });
    }
    if r > 32 {
        return Err(Error::SplittingFieldTooLarge { needed: r });
    }
    let fac = factor_over(&f, &FieldCtx::new(r as u32)?)?;
    let factors: Vec<MPoly> = fac.factors.into_iter().map(|(p, _)| p).collect();
    if factors.len() as u64 != r || factors.iter().any(|p| p.total_degree() != Some((t / r) as u32)) {
        return Err(internal("absolute factors do not form r conjugates of equal degree"));
    }
    Ok(AbsFactorization { r: r as u32, factors, pieces })
}

/// Frobenius maps the set of absolute factors to itself.
pub fn galois_consistent(abs: &[MPoly]) -> bool {
    abs.iter().all(|p| abs.contains(&p.frobenius(1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseFactor {
    pub poly: MPoly,
    pub multiplicity: u32,
    pub degree: u32,
    /// Least extension degree over which the absolute factors are defined.
    pub r: u32,
    /// Number of absolute factors (equal to r).
    pub n: u32,
    pub abs_factors: Vec<MPoly>,
    pub galois_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorTree {
    pub k: u64,
    #[serde(serialize_with = "ser_bits")]
    pub unit: u32,
    pub base_factors: Vec<BaseFactor>,
}

impl FactorTree {
    /// The absolutely irreducible GF(2)-factor of largest degree.
    pub fn certified_factor(&self) -> Option<&MPoly> {
        self.base_factors.iter().filter(|b| b.r == 1).max_by_key(|b| b.degree).map(|b| &b.poly)
    }

    pub fn expand(&self) -> MPoly {
        let mut acc = MPoly::constant(FieldCtx::gf2(), 2, self.unit);
        for b in &self.base_factors {
            acc = acc.mul(&b.poly.pow(b.multiplicity as u64));
        }
        acc
    }

    pub fn degree_sum(&self) -> u32 {
        self.base_factors.iter().map(|b| b.degree * b.multiplicity).sum()
    }
}

pub fn factor_tree(k: u64) -> Result<FactorTree> {
    check_k(k)?;
    let g = build_gk(k)?;
    let fac = factor_over(&g, &FieldCtx::gf2())?;
    let base_factors = fac
        .factors
        .par_iter()
        .map(|(p, m)| {
            let abs = absolute_factorization(p)?;
            Ok(BaseFactor {
                poly: p.clone(),
                multiplicity: *m,
                degree: p.total_degree().unwrap_or(0),
                r: abs.r,
                n: abs.factors.len() as u32,
                galois_consistent: galois_consistent(&abs.factors),
                abs_factors: abs.factors,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactorTree { k, unit: fac.unit, base_factors })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VerdictClass {
    /// g_k is absolutely irreducible.
    A,
    /// g_k has an absolutely irreducible factor defined over GF(2).
    B,
    /// No absolutely irreducible factor over GF(2).
    C,
}

/// sum deg(f_j)^2 / n_j against deg(g_k)^2 / 2, as num/den against half.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CotaCheck {
    pub sum_num: u64,
    pub sum_den: u64,
    pub deg_sq: u64,
    pub strict: bool,
    pub weak: bool,
}

pub fn cota_check(tree: &FactorTree, deg: u64) -> CotaCheck {
    let den = tree.base_factors.iter().fold(1u64, |acc, b| crate::field::lcm(acc, b.n as u64));
    let num: u64 =
        tree.base_factors.iter().map(|b| (b.degree as u64).pow(2) * b.multiplicity as u64 * (den / b.n as u64)).sum();
    // num / den < deg^2 / 2
    let lhs = 2 * num;
    let rhs = deg * deg * den;
    CotaCheck { sum_num: num, sum_den: den, deg_sq: deg * deg, strict: lhs < rhs, weak: lhs <= rhs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsVerdict {
    pub k: u64,
    pub class: VerdictClass,
    pub tree: FactorTree,
    /// Present in class C only.
    pub cota: Option<CotaCheck>,
}

pub fn abs_irr_verdict(k: u64) -> Result<AbsVerdict> {
    if !(4..=40).contains(&k) || k % 2 == 1 {
        return Err(Error::InvalidParameter(format!("k = {k} outside even 4..=40")));
    }
    let tree = factor_tree(k)?;
    let class = match tree.base_factors.as_slice() {
        [b] if b.multiplicity == 1 && b.r == 1 => VerdictClass::A,
        bs if bs.iter().any(|b| b.r == 1) => VerdictClass::B,
        _ => VerdictClass::C,
    };
    let cota = (class == VerdictClass::C).then(|| cota_check(&tree, k - 2));
    Ok(AbsVerdict { k, class, tree, cota })
}

/// Closed-form factors of g_k: the lines x + γy + γ + 1 over GF(2^i) for
/// k = 2^i, and the two conics over GF(4) for k = 6.
pub fn segre_factors(k: u64) -> Result<(FieldCtx, Vec<MPoly>)> {
    if k == 6 {
        let ctx = FieldCtx::gf4();
        let w = 0b10;
        let a = MPoly::from_terms(
            ctx,
            2,
            [([0, 0, 0], 1), ([1, 0, 0], w), ([2, 0, 0], 1), ([0, 1, 0], w), ([1, 1, 0], w), ([0, 2, 0], 1)],
        );
        let b = a.frobenius(1);
        return Ok((ctx, vec![a, b]));
    }
    if k >= 4 && k.is_power_of_two() && k <= 1 << 20 {
        let ctx = FieldCtx::new(k.trailing_zeros())?;
        let lines = (2..ctx.order() as u32)
            .map(|c| MPoly::from_terms(ctx, 2, [([1, 0, 0], 1), ([0, 1, 0], c), ([0, 0, 0], c ^ 1)]))
            .collect();
        return Ok((ctx, lines));
    }
    Err(Error::NotSpecialShape(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegreCheck {
    pub k: u64,
    pub field_degree: u32,
    pub factors: Vec<MPoly>,
    /// The closed-form product equals g_k bit for bit.
    pub product_matches: bool,
    /// The factorization algorithm returns exactly the closed-form factors.
    pub factors_match: bool,
}

impl SegreCheck {
    pub fn ok(&self) -> bool {
        self.product_matches && self.factors_match
    }
}

pub fn segre_check(k: u64) -> Result<SegreCheck> {
    let (ctx, factors) = segre_factors(k)?;
    let g = build_gk(k)?.embed(&ctx)?;
    let product = factors.iter().fold(MPoly::one(ctx, 2), |acc, f| acc.mul(f));
    let product_matches = product == g;
    let computed = factor_over(&g, &ctx)?;
    let mut want: Vec<MPoly> = factors.iter().map(|f| f.monic()).collect();
    want.sort_by_key(canonical_key);
    let got: Vec<MPoly> = computed.factors.iter().filter(|(_, m)| *m == 1).map(|(f, _)| f.clone()).collect();
    let factors_match = computed.unit == 1 && got.len() == computed.len() && got == want;
    Ok(SegreCheck { k, field_degree: ctx.degree(), factors, product_matches, factors_match })
}

pub fn verify_segre_factorizations(k: u64) -> Result<bool> {
    Ok(segre_check(k)?.ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn p(ctx: FieldCtx, s: &str) -> MPoly {
        MPoly::parse(ctx, 2, s).unwrap()
    }

    #[test]
    fn two_lines_over_gf2() {
        let g = FieldCtx::gf2();
        let f = p(g, "x+y").mul(&p(g, "x+y+1"));
        let fac = factor_over(&f, &g).unwrap();
        assert_eq!(fac.factors, vec![(p(g, "x+y"), 1), (p(g, "x+y+1"), 1)]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn g6_irreducible_then_splits() {
        let g6 = build_gk(6).unwrap();
        let fac = factor_over(&g6, &FieldCtx::gf2()).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac.factors[0].0.total_degree(), Some(4));
        let g4 = FieldCtx::gf4();
        let fac = factor_over(&g6, &g4).unwrap();
        assert_eq!(fac.len(), 2);
        assert_eq!(fac.factors[0].0, p(g4, "x^2+0b10*x*y+y^2+0b10*x+0b10*y+1"));
    }

    #[test]
    fn small_field_uses_extension() {
        // x^2 y + x y^2 + 1 has no monic shear over GF(2)
        let g = FieldCtx::gf2();
        let a = p(g, "x^2*y+x*y^2+1");
        let b = p(g, "x^2*y+x*y^2+x+1");
        let f = a.mul(&b);
        let fac = factor_over(&f, &g).unwrap();
        assert!(fac.extension_used > 1);
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.len(), 2);
    }

    #[test]
    fn multiplicities_recovered() {
        let ctx = make_field(2).unwrap();
        let a = p(ctx, "x^2+x*y+0b10");
        let b = p(ctx, "y^2+x+1");
        let f = a.pow(3).mul(&b.pow(2)).scale(0b11);
        let fac = factor_over(&f, &ctx).unwrap();
        assert_eq!(fac.expand(), f);
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults.iter().sum::<u32>(), 5);
    }

    #[test]
    fn absolute_factorizations() {
        let g4 = build_gk(4).unwrap();
        let abs = absolute_factorization(&g4).unwrap();
        assert_eq!(abs.r, 2);
        let w = FieldCtx::gf4();
        assert_eq!(abs.factors, vec![p(w, "x+0b10*y+0b11"), p(w, "x+0b11*y+0b10")]);
        assert!(galois_consistent(&abs.factors));
        assert_eq!(absolute_factorization(&build_gk(6).unwrap()).unwrap().r, 2);
        assert_eq!(absolute_factorization(&build_gk(10).unwrap()).unwrap().r, 1);
    }

    #[test]
    fn segre_shapes() {
        for k in [4, 8, 16, 6] {
            let c = segre_check(k).unwrap();
            assert!(c.product_matches && c.factors_match, "k={k}");
        }
        assert_eq!(verify_segre_factorizations(10), Err(Error::NotSpecialShape(10)));
        let (_, f4) = segre_factors(4).unwrap();
        let prod = f4[0].mul(&f4[1]);
        assert_eq!(format!("{prod}"), "x^2+x*y+y^2+x+y+1");
    }

    #[test]
    fn small_verdicts() {
        let v = abs_irr_verdict(4).unwrap();
        assert_eq!(v.class, VerdictClass::C);
        let c = v.cota.unwrap();
        assert!(c.weak && !c.strict);
        assert_eq!(abs_irr_verdict(6).unwrap().class, VerdictClass::C);
        assert_eq!(abs_irr_verdict(10).unwrap().class, VerdictClass::A);
        let v8 = abs_irr_verdict(8).unwrap();
        assert_eq!(v8.class, VerdictClass::C);
        assert_eq!(v8.tree.base_factors.len(), 2);
        assert!(v8.tree.base_factors.iter().all(|b| b.r == 3 && b.galois_consistent));
        assert_eq!(v8.tree.expand(), build_gk(8).unwrap());
    }
}
