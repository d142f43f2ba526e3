//! Factorization of univariate polynomials over GF(2^e): squarefree
//! decomposition, distinct-degree splitting, then equal-degree splitting with
//! the trace map.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::upoly::UPoly;

static SEED: AtomicU64 = AtomicU64::new(0);

/// Sets the seed used by randomized splitting steps. Factorizations are
/// unique, so the seed only affects running time, never results.
pub fn set_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

/// Complete factorization of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UFactorization {
    pub unit: u32,
    /// Monic irreducible factors with multiplicity, sorted by degree then
    /// coefficients.
    pub factors: Vec<(UPoly, u32)>,
}

impl UFactorization {
    pub fn expand(&self, ctx: crate::field::FieldCtx) -> UPoly {
        let mut acc = UPoly::constant(ctx, self.unit);
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        acc
    }

    /// Largest factor degree (1 when the polynomial splits).
    pub fn max_degree(&self) -> usize {
        self.factors.iter().map(|(f, _)| f.deg0()).max().unwrap_or(1)
    }
}

pub fn canonical_cmp(a: &UPoly, b: &UPoly) -> std::cmp::Ordering {
    a.deg0().cmp(&b.deg0()).then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Squarefree decomposition of a monic polynomial in characteristic 2.
pub fn squarefree_decomposition(f: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out
}

fn sqf_rec(f: &UPoly, mult: u32, out: &mut Vec<(UPoly, u32)>) {
    if f.deg0() == 0 {
        return;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).unwrap();
        if !fac.is_constant() {
            out.push((fac.monic(), i * mult));
        }
        c = c.exact_div(&y).unwrap();
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        let root = c.sqrt().expect("remaining part is a square");
        sqf_rec(&root.monic(), mult * 2, out);
    }
}

/// Distinct-degree split of a monic squarefree polynomial into
/// (product of all irreducible factors of degree d, d).
pub fn distinct_degree(f: &UPoly) -> Vec<(UPoly, usize)> {
    let ctx = f.ctx();
    let e = ctx.degree() as u64;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = UPoly::x(ctx);
    let mut h = x.rem(&rest).unwrap_or_else(|_| x.clone());
    let mut d = 0usize;
    while rest.deg0() >= 2 * (d + 1) {
        d += 1;
        h = h.frob_pow_mod(e, &rest);
        let g = rest.gcd(&h.add(&x));
        if !g.is_constant() {
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
    }
    if !rest.is_constant() {
        let d = rest.deg0();
        out.push((rest, d));
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
pub fn equal_degree(f: &UPoly, d: usize) -> Vec<UPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ (f.deg0() as u64).wrapping_mul(0x9e37_79b9));
    let mut out = Vec::new();
    edf_rec(f, d, &mut rng, &mut out);
    out
}

fn edf_rec(f: &UPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UPoly>) {
    let n = f.deg0();
    if n == d {
        out.push(f.clone());
        return;
    }
    let ctx = f.ctx();
    let mask = (ctx.order() - 1) as u32;
    let steps = ctx.degree() as usize * d;
    loop {
        let a = UPoly::from_coeffs(ctx, (0..n).map(|_| rng.gen::<u32>() & mask).collect());
        if a.is_constant() {
            continue;
        }
        // absolute trace of a in GF(2^(e d)) componentwise
        let mut t = a.clone();
        let mut acc = a.clone();
        for _ in 1..steps {
            t = t.sqr_mod(f);
            acc.add_assign(&t);
        }
        let g = f.gcd(&acc);
        if !g.is_constant() && g.deg0() < n {
            let other = f.exact_div(&g).unwrap();
            edf_rec(&g, d, rng, out);
            edf_rec(&other, d, rng, out);
            return;
        }
    }
}

/// Complete factorization over the coefficient field.
pub fn factor(u: &UPoly) -> UFactorization {
    assert!(!u.is_zero(), "cannot factor the zero polynomial");
    let unit = u.lc();
    let mut factors = Vec::new();
    for (sq, m) in squarefree_decomposition(u) {
        for (block, d) in distinct_degree(&sq) {
            for f in equal_degree(&block, d) {
                factors.push((f, m));
            }
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| canonical_cmp(a, b).then(ma.cmp(mb)));
    UFactorization { unit, factors }
}

/// Irreducibility via the distinct-degree criterion.
pub fn is_irreducible(f: &UPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let m = f.monic();
    if !m.gcd(&m.derivative()).is_constant() {
        return false;
    }
    let dd = distinct_degree(&m);
    dd.len() == 1 && dd[0].1 == n
}

/// Distinct roots in the coefficient field, ascending by bits.
pub fn roots(u: &UPoly) -> Vec<u32> {
    if u.deg0() == 0 {
        return Vec::new();
    }
    let ctx = u.ctx();
    let m = u.monic();
    let xq = UPoly::x(ctx).frob_pow_mod(ctx.degree() as u64, &m);
    let lin = m.gcd(&xq.add(&UPoly::x(ctx)));
    if lin.is_constant() {
        return Vec::new();
    }
    let mut r: Vec<u32> = equal_degree(&lin, 1).iter().map(|l| l.coeff(0)).collect();
    r.sort_unstable();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, FieldCtx};

    /// Irreducibility oracle: trial division by every monic polynomial of
    /// degree 1..=deg/2.
    pub(crate) fn irreducible_by_trial_division(f: &UPoly) -> bool {
        let ctx = f.ctx();
        let n = f.deg0();
        if n == 0 {
            return false;
        }
        let q = ctx.order();
        for d in 1..=n / 2 {
            let count = q.pow(d as u32);
            for idx in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut t = idx;
                for _ in 0..d {
                    c.push((t % q) as u32);
                    t /= q;
                }
                c.push(1);
                let g = UPoly::from_coeffs(ctx, c);
                if g.divides(f) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn x3_plus_1_over_gf2() {
        let ctx = FieldCtx::gf2();
        let f = UPoly::from_coeffs(ctx, vec![1, 0, 0, 1]);
        let fac = factor(&f);
        assert_eq!(
            fac.factors,
            vec![(UPoly::from_coeffs(ctx, vec![1, 1]), 1), (UPoly::from_coeffs(ctx, vec![1, 1, 1]), 1)]
        );
    }

    #[test]
    fn x2_x_1_over_gf4() {
        let ctx = FieldCtx::gf4();
        let fac = factor(&UPoly::from_coeffs(ctx, vec![1, 1, 1]));
        // (x + w)(x + w^2) with w = 0b10
        assert_eq!(
            fac.factors,
            vec![(UPoly::from_coeffs(ctx, vec![2, 1]), 1), (UPoly::from_coeffs(ctx, vec![3, 1]), 1)]
        );
    }

    #[test]
    fn x4_x_1_irreducible() {
        let f = UPoly::from_coeffs(FieldCtx::gf2(), vec![1, 1, 0, 0, 1]);
        assert!(irreducible_by_trial_division(&f));
        assert!(is_irreducible(&f));
        assert_eq!(factor(&f).factors, vec![(f, 1)]);
    }

    #[test]
    fn squares_and_multiplicities() {
        let ctx = make_field(3).unwrap();
        let a = UPoly::from_coeffs(ctx, vec![3, 1]);
        let b = UPoly::from_coeffs(ctx, vec![1, 1, 1]);
        let f = a.pow(4).mul(&b.pow(3)).scale(5);
        let fac = factor(&f);
        assert_eq!(fac.unit, 5);
        assert_eq!(fac.expand(ctx), f);
        assert!(fac.factors.contains(&(a, 4)));
    }

    #[test]
    fn factors_reproduce_and_are_irreducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for e in [1u32, 2, 3] {
            let ctx = make_field(e).unwrap();
            let mask = (ctx.order() - 1) as u32;
            for _ in 0..40 {
                let n = rng.gen_range(1..=8);
                let mut c: Vec<u32> = (0..=n).map(|_| rng.gen::<u32>() & mask).collect();
                c[n] = c[n].max(1);
                let f = UPoly::from_coeffs(ctx, c);
                let fac = factor(&f);
                assert_eq!(fac.expand(ctx), f);
                for (g, _) in &fac.factors {
                    assert!(irreducible_by_trial_division(g), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn roots_over_gf16() {
        let ctx = make_field(4).unwrap();
        // x^5 - 1 splits over GF(16)
        let f = UPoly::from_coeffs(ctx, vec![1, 0, 0, 0, 0, 1]);
        let r = roots(&f);
        let brute: Vec<u32> = (0..16).filter(|&z| f.eval(z) == 0).collect();
        assert_eq!(r, brute);
    }
}
