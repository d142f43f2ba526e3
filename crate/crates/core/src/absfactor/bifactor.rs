//! Factorization in K[x, y] for K = GF(2^e): squarefree splitting, x-adic
//! Hensel lifting of a univariate specialization, and recombination.

use crate::error::{internal, Error, Result};
use crate::field::FieldCtx;
use crate::poly::bivar::BiPoly;
use crate::poly::ufactor;
use crate::poly::upoly::UPoly;
use crate::poly::MPoly;

/// How many good specialization points are compared before picking the one
/// with the fewest local factors.
const SPECIALIZATION_TRIES: usize = 6;

/// Signals that K is too small for a good specialization or a monic
/// change of coordinates.
#[derive(Debug)]
pub(crate) enum Need {
    Extension,
    Failed(Error),
}

impl From<Error> for Need {
    fn from(e: Error) -> Self {
        Need::Failed(e)
    }
}

type NResult<T> = std::result::Result<T, Need>;

/// Distinct irreducible factors of a nonzero polynomial, normalized with
/// [`BiPoly::normalize`].
pub(crate) fn irreducible_factors(f: &BiPoly) -> NResult<Vec<BiPoly>> {
    let mut out: Vec<BiPoly> = Vec::new();
    collect_irreducibles(f, &mut out)?;
    Ok(out)
}

fn push_unique(out: &mut Vec<BiPoly>, p: BiPoly) {
    let p = p.normalize();
    if !out.contains(&p) {
        out.push(p);
    }
}

fn is_constant(f: &BiPoly) -> bool {
    f.deg_y().unwrap_or(0) == 0 && f.deg_x().unwrap_or(0) == 0
}

fn collect_irreducibles(f: &BiPoly, out: &mut Vec<BiPoly>) -> NResult<()> {
    if is_constant(f) {
        return Ok(());
    }
    let content = f.content_y();
    if !content.is_constant() {
        for (u, _) in ufactor::factor(&content).factors {
            push_unique(out, BiPoly::from_x(u));
        }
    }
    let pp = f.primitive_part();
    if pp.deg_y().unwrap_or(0) == 0 {
        return Ok(());
    }
    let dy = pp.derivative_y();
    let dx = pp.derivative_x();
    if dy.is_zero() && dx.is_zero() {
        return collect_irreducibles(&bi_sqrt(&pp), out);
    }
    let d = if dy.is_zero() { dx } else { dy };
    let g = pp.gcd(&d);
    if !is_constant(&g) {
        collect_irreducibles(&g, out)?;
        let rest = pp.exact_div(&g)?;
        return collect_irreducibles(&rest, out);
    }
    for p in factor_squarefree(&pp)? {
        push_unique(out, p);
    }
    Ok(())
}

/// Square root of a polynomial with only even exponents.
fn bi_sqrt(f: &BiPoly) -> BiPoly {
    let rows = f.rows().iter().step_by(2).map(|r| r.sqrt().expect("even exponents")).collect();
    BiPoly::from_rows(f.ctx(), rows)
}

/// h(x + c y, y); an involution in characteristic 2.
fn shear(f: &BiPoly, c: u32) -> BiPoly {
    if c == 0 {
        return f.clone();
    }
    let ctx = f.ctx();
    let m = f.to_mpoly();
    let s = MPoly::from_terms(ctx, 2, [([1, 0, 0], 1), ([0, 1, 0], c)]);
    BiPoly::from_mpoly(&m.substitute(0, &s).expect("same field"))
}

/// h(x + a, y)
fn shift_x(f: &BiPoly, a: u32) -> BiPoly {
    if a == 0 {
        return f.clone();
    }
    BiPoly::from_rows(f.ctx(), f.rows().iter().map(|r| r.shift_var(a)).collect())
}

fn top_form_at(f: &BiPoly, c: u32) -> u32 {
    // top homogeneous part evaluated at (c, 1)
    let d = f.to_mpoly().total_degree().unwrap_or(0);
    let ctx = f.ctx();
    let mut acc = 0;
    for (j, r) in f.rows().iter().enumerate() {
        let i = d as usize - j.min(d as usize);
        if j <= d as usize && i < r.coeffs().len() {
            acc ^= ctx.mul(r.coeff(i), ctx.pow(c, i as u64));
        }
    }
    acc
}

/// Irreducible factors of a squarefree polynomial, primitive in y of
/// positive y-degree.
fn factor_squarefree(f: &BiPoly) -> NResult<Vec<BiPoly>> {
    let total = f.to_mpoly().total_degree().unwrap_or(0);
    if total <= 1 {
        return Ok(vec![f.clone()]);
    }
    if f.derivative_y().is_zero() {
        // separable in x only
        let mut out = Vec::new();
        collect_irreducibles(&f.transpose(), &mut out)?;
        return Ok(out.iter().map(|p| p.transpose()).collect());
    }
    let ctx = f.ctx();
    let separable = |h: &BiPoly| {
        let d = h.derivative_y();
        !d.is_zero() && is_constant(&h.gcd(&d))
    };
    let (c, h) = (0..=(ctx.order() - 1) as u32)
        .filter(|&c| top_form_at(f, c) != 0)
        .map(|c| (c, shear(f, c)))
        .find(|(_, h)| separable(h))
        .ok_or(Need::Extension)?;
    debug_assert_eq!(h.deg_y(), Some(total as usize));
    let factors = hensel_factor(&h.normalize())?;
    Ok(factors.iter().map(|p| shear(p, c)).collect())
}

/// Power series in x with coefficients in K[y], truncated to a precision.
type Series = Vec<UPoly>;

fn series_mul(a: &Series, b: &Series, n: usize, ctx: FieldCtx) -> Series {
    let mut out = vec![UPoly::zero(ctx); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if !bj.is_zero() {
                out[i + j].add_assign(&ai.mul(bj));
            }
        }
    }
    out
}

/// F monic in y with deg_y F equal to its total degree.
fn hensel_factor(f: &BiPoly) -> NResult<Vec<BiPoly>> {
    let ctx = f.ctx();
    let n = f.deg_y().unwrap();
    // choose a specialization with a squarefree image and few local factors
    let mut best: Option<(u32, Vec<UPoly>)> = None;
    let mut good = 0;
    for x0 in 0..=(ctx.order() - 1) as u32 {
        let u = f.eval_x(x0);
        if u.deg0() != n || !u.gcd(&u.derivative()).is_constant() {
            continue;
        }
        let locals: Vec<UPoly> = ufactor::factor(&u).factors.into_iter().map(|(p, _)| p).collect();
        if best.as_ref().is_none_or(|(_, b)| locals.len() < b.len()) {
            best = Some((x0, locals));
        }
        good += 1;
        if good >= SPECIALIZATION_TRIES || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (x0, locals) = best.ok_or(Need::Extension)?;
    if locals.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let shifted = shift_x(f, x0);
    let dx = shifted.deg_x().unwrap_or(0);
    let prec = 2 * dx + 1;
    let mut series: Series = shifted.transpose().rows().to_vec();
    series.resize(prec, UPoly::zero(ctx));
    let lifted = multi_lift(&series, &locals, prec, ctx)?;
    let found = recombine(&shifted, &lifted, prec, ctx)?;
    Ok(found.iter().map(|p| shift_x(p, x0)).collect())
}

fn multi_lift(f: &Series, locals: &[UPoly], prec: usize, ctx: FieldCtx) -> Result<Vec<Series>> {
    if locals.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let mid = locals.len() / 2;
    let prod = |s: &[UPoly]| s.iter().fold(UPoly::one(ctx), |acc, p| acc.mul(p));
    let (a0, b0) = (prod(&locals[..mid]), prod(&locals[mid..]));
    let (a, b) = lift_two(f, &a0, &b0, prec, ctx)?;
    let mut out = multi_lift(&a, &locals[..mid], prec, ctx)?;
    out.extend(multi_lift(&b, &locals[mid..], prec, ctx)?);
    Ok(out)
}

/// Lifts f = u0 w0 (mod x) to f = U W (mod x^prec) with U, W monic in y and
/// deg_y of their higher coefficients below deg u0, deg w0.
fn lift_two(f: &Series, u0: &UPoly, w0: &UPoly, prec: usize, ctx: FieldCtx) -> Result<(Series, Series)> {
    if f[0] != u0.mul(w0) {
        return Err(internal("specialization does not match the local factors"));
    }
    let (g, s, t) = u0.ext_gcd(w0);
    if !g.is_one() {
        return Err(internal("local factors are not coprime"));
    }
    let _ = s;
    let mut u = vec![u0.clone()];
    let mut w = vec![w0.clone()];
    for j in 1..prec {
        let mut c = f[j].clone();
        for a in 1..j {
            c.add_assign(&u[a].mul(&w[j - a]));
        }
        let uj = c.mul(&t).rem(u0)?;
        let wj = c.add(&uj.mul(w0)).exact_div(u0)?;
        u.push(uj);
        w.push(wj);
    }
    let _ = ctx;
    Ok((u, w))
}

/// Power sums p_1..p_m of the roots of a series monic in y, by Newton's
/// identities in characteristic 2.
fn power_sums(u: &Series, m: usize, prec: usize, ctx: FieldCtx) -> Vec<Vec<u32>> {
    let d = u[0].deg0();
    // a_j(x) = coefficient of y^{d-j}, as a series in x
    let a: Vec<Vec<u32>> = (0..=d).map(|j| (0..prec).map(|t| u[t].coeff(d - j)).collect()).collect();
    let mul = |p: &[u32], q: &[u32]| {
        let mut out = vec![0u32; prec];
        for (i, &pi) in p.iter().enumerate() {
            if pi == 0 {
                continue;
            }
            for (j, &qj) in q.iter().enumerate().take(prec - i) {
                out[i + j] ^= ctx.mul(pi, qj);
            }
        }
        out
    };
    let mut p: Vec<Vec<u32>> = vec![vec![0; prec]];
    for k in 1..=m {
        let mut acc = vec![0u32; prec];
        for j in 1..k.min(d + 1) {
            let t = mul(&a[j], &p[k - j]);
            acc.iter_mut().zip(t).for_each(|(x, y)| *x ^= y);
        }
        if k <= d && k % 2 == 1 {
            acc.iter_mut().zip(&a[k]).for_each(|(x, y)| *x ^= y);
        }
        p.push(acc);
    }
    p
}

/// Bits that must vanish in the subset sum of power sums for any true
/// factor: coefficient of x^t in p_m for t > m.
fn constraint_vector(u: &Series, m: usize, prec: usize, ctx: FieldCtx) -> Vec<u64> {
    let p = power_sums(u, m, prec, ctx);
    let e = ctx.degree() as usize;
    let mut bits = Vec::new();
    for (k, pk) in p.iter().enumerate().skip(1) {
        for &c in &pk[(k + 1).min(prec)..] {
            for b in 0..e {
                bits.push((c >> b) & 1 == 1);
            }
        }
    }
    let mut out = vec![0u64; bits.len().div_ceil(64)];
    for (i, b) in bits.iter().enumerate() {
        if *b {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

/// Kernel of the map GF(2)^r -> GF(2)^C given by the rows, as bitmasks over
/// the r local factors.
fn left_kernel(rows: &[Vec<u64>]) -> Vec<u128> {
    let r = rows.len();
    let mut work: Vec<(Vec<u64>, u128)> = rows.iter().cloned().enumerate().map(|(i, v)| (v, 1u128 << i)).collect();
    let width = rows.first().map_or(0, |v| v.len() * 64);
    let mut pivot_row = 0;
    for col in 0..width {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (pivot_row..r).find(|&i| (work[i].0[w] >> b) & 1 == 1) else {
            continue;
        };
        work.swap(pivot_row, p);
        let (pv, pm) = work[pivot_row].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i != pivot_row && (row.0[w] >> b) & 1 == 1 {
                row.0.iter_mut().zip(&pv).for_each(|(x, y)| *x ^= y);
                row.1 ^= pm;
            }
        }
        pivot_row += 1;
        if pivot_row == r {
            break;
        }
    }
    work[pivot_row..].iter().map(|(_, m)| *m).collect()
}

fn series_to_bipoly(s: &Series, max_x: usize, ctx: FieldCtx) -> Option<BiPoly> {
    if s[max_x + 1..].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(BiPoly::from_rows(ctx, s[..=max_x].to_vec()).transpose())
}

fn recombine(f: &BiPoly, lifted: &[Series], prec: usize, ctx: FieldCtx) -> Result<Vec<BiPoly>> {
    let r = lifted.len();
    if r > 128 {
        return Err(internal("too many local factors"));
    }
    let dx = f.deg_x().unwrap_or(0);
    let n = f.deg_y().unwrap();
    let m = n.min(prec - 1);
    let constraints: Vec<Vec<u64>> = lifted.iter().map(|u| constraint_vector(u, m, prec, ctx)).collect();
    let kernel = left_kernel(&constraints);

    // group local factors by their column in the kernel basis
    let mut groups: Vec<(Vec<bool>, u128)> = Vec::new();
    for i in 0..r {
        let sig: Vec<bool> = kernel.iter().map(|b| (b >> i) & 1 == 1).collect();
        match groups.iter_mut().find(|(s, _)| *s == sig) {
            Some(g) => g.1 |= 1 << i,
            None => groups.push((sig, 1 << i)),
        }
    }
    let product = |mask: u128| -> Series {
        let mut acc: Series = vec![UPoly::zero(ctx); prec];
        acc[0] = UPoly::one(ctx);
        for (i, u) in lifted.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                acc = series_mul(&acc, u, prec, ctx);
            }
        }
        acc
    };

    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut pending: Vec<u128> = Vec::new();
    for (_, mask) in &groups {
        match series_to_bipoly(&product(*mask), dx, ctx) {
            Some(cand) if cand.divides(&rest) => {
                rest = rest.exact_div(&cand)?;
                found.push(cand);
            }
            _ => pending.push(*mask),
        }
    }

    // subset search over the unresolved groups
    while pending.len() > 1 {
        let k = pending.len();
        let mut hit = None;
        'sizes: for size in 1..=k / 2 {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let mask = idx.iter().fold(0u128, |acc, &i| acc | pending[i]);
                if let Some(cand) = series_to_bipoly(&product(mask), dx, ctx) {
                    if cand.divides(&rest) {
                        hit = Some((idx.clone(), cand));
                        break 'sizes;
                    }
                }
                // next combination
                let mut p = size;
                while p > 0 && idx[p - 1] == k - size + p - 1 {
                    p -= 1;
                }
                if p == 0 {
                    break;
                }
                idx[p - 1] += 1;
                for q in p..size {
                    idx[q] = idx[q - 1] + 1;
                }
            }
        }
        match hit {
            Some((idx, cand)) => {
                rest = rest.exact_div(&cand)?;
                found.push(cand);
                let mut i = idx.len();
                while i > 0 {
                    i -= 1;
                    pending.remove(idx[i]);
                }
            }
            None => break,
        }
    }
    if !pending.is_empty() {
        found.push(rest);
    } else if !is_constant(&rest) {
        return Err(internal("recombination left a nonconstant cofactor"));
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn b(ctx: FieldCtx, s: &str) -> BiPoly {
        BiPoly::from_mpoly(&MPoly::parse(ctx, 2, s).unwrap())
    }

    fn sorted(mut v: Vec<BiPoly>) -> Vec<BiPoly> {
        v.sort_by_key(|p| format!("{}", p.to_mpoly()));
        v
    }

    #[test]
    fn two_lines() {
        let g = FieldCtx::gf2();
        let f = b(g, "x+y").mul(&b(g, "x+y+1"));
        let got = sorted(irreducible_factors(&f).unwrap());
        assert_eq!(got, sorted(vec![b(g, "x+y"), b(g, "x+y+1")]));
    }

    #[test]
    fn irreducible_conic_stays() {
        let g = FieldCtx::gf2();
        let f = b(g, "x^2+x*y+y^2+x+y+1");
        assert_eq!(irreducible_factors(&f).unwrap().len(), 1);
    }

    #[test]
    fn conic_splits_over_gf4() {
        let ctx = make_field(2).unwrap();
        let f = b(ctx, "x^2+x*y+y^2+x+y+1");
        let got = irreducible_factors(&f).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].mul(&got[1]).normalize(), f.normalize());
    }

    #[test]
    fn products_with_powers_and_content() {
        let ctx = make_field(3).unwrap();
        let a = b(ctx, "x^2*y+0b10*y^2+x+1");
        let c = b(ctx, "y^3+x*y+0b11");
        let d = b(ctx, "x+0b101");
        let f = a.mul(&a).mul(&c).mul(&d);
        let got = sorted(irreducible_factors(&f).unwrap());
        assert_eq!(got, sorted(vec![a.normalize(), c.normalize(), d.normalize()]));
    }

    #[test]
    fn power_sum_identities() {
        // (y + a)(y + b) with a, b constants in x: p_m = a^m + b^m
        let ctx = make_field(2).unwrap();
        let u: Series = vec![UPoly::from_coeffs(ctx, vec![ctx.mul(2, 3), 2 ^ 3, 1])];
        let p = power_sums(&u, 4, 1, ctx);
        for m in 1..=4u64 {
            assert_eq!(p[m as usize][0], ctx.pow(2, m) ^ ctx.pow(3, m));
        }
    }
}
