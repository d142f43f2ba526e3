//! Sparse polynomials in one to three variables (x, y, z) over GF(2^e).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::field::{FFElem, FieldCtx};

const VAR_NAMES: [char; 3] = ['x', 'y', 'z'];

/// Exponent vector, ordered graded-lexicographically with x > y > z.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u32; 3]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Mono) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    fn sub(&self, other: &Mono) -> Mono {
        Mono([self.0[0] - other.0[0], self.0[1] - other.0[1], self.0[2] - other.0[2]])
    }

    fn add(&self, other: &Mono) -> Mono {
        Mono([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    ctx: FieldCtx,
    nvars: usize,
    terms: BTreeMap<Mono, u32>,
}

impl MPoly {
    pub fn zero(ctx: FieldCtx, nvars: usize) -> Self {
        assert!((1..=3).contains(&nvars), "1 to 3 variables supported");
        Self { ctx, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: FieldCtx, nvars: usize, a: u32) -> Self {
        Self::monomial(ctx, nvars, a, [0, 0, 0])
    }

    pub fn one(ctx: FieldCtx, nvars: usize) -> Self {
        Self::constant(ctx, nvars, 1)
    }

    pub fn monomial(ctx: FieldCtx, nvars: usize, a: u32, exp: [u32; 3]) -> Self {
        let mut p = Self::zero(ctx, nvars);
        assert!(exp[nvars..].iter().all(|&d| d == 0), "exponent on a missing variable");
        if a != 0 {
            p.terms.insert(Mono(exp), a);
        }
        p
    }

    /// The variable with index `v` (0 = x, 1 = y, 2 = z).
    pub fn var(ctx: FieldCtx, nvars: usize, v: usize) -> Self {
        let mut exp = [0; 3];
        exp[v] = 1;
        Self::monomial(ctx, nvars, 1, exp)
    }

    pub fn from_terms<I: IntoIterator<Item = ([u32; 3], u32)>>(ctx: FieldCtx, nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(ctx, nvars);
        for (exp, a) in terms {
            p.add_term(Mono(exp), a);
        }
        p
    }

    /// Places a univariate polynomial in variable `v`.
    pub fn from_univariate(u: &UPoly, nvars: usize, v: usize) -> Self {
        let mut p = Self::zero(u.ctx(), nvars);
        for (i, &a) in u.coeffs().iter().enumerate() {
            let mut exp = [0; 3];
            exp[v] = i as u32;
            p.add_term(Mono(exp), a);
        }
        p
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &u32)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn coeff(&self, exp: [u32; 3]) -> u32 {
        self.terms.get(&Mono(exp)).copied().unwrap_or(0)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn leading(&self) -> Option<(Mono, u32)> {
        self.terms.iter().next_back().map(|(m, a)| (*m, *a))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Mono, a: u32) {
        if a == 0 {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c ^= a;
                if *c == 0 {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, a);
            }
        }
    }

    fn check(&self, other: &MPoly) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch { left: self.ctx.degree(), right: other.ctx.degree() });
        }
        Ok(())
    }

    fn common_nvars(&self, other: &MPoly) -> usize {
        self.nvars.max(other.nvars)
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = self.clone();
        out.nvars = self.common_nvars(other);
        for (m, a) in &other.terms {
            out.add_term(*m, *a);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = MPoly::zero(self.ctx, self.common_nvars(other));
        for (m1, a1) in &self.terms {
            for (m2, a2) in &other.terms {
                out.add_term(m1.add(m2), self.ctx.mul(*a1, *a2));
            }
        }
        Ok(out)
    }

    /// Panics on context mismatch; see [`MPoly::try_add`].
    pub fn add(&self, other: &MPoly) -> MPoly {
        self.try_add(other).expect("context mismatch")
    }

    /// Panics on context mismatch; see [`MPoly::try_mul`].
    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.try_mul(other).expect("context mismatch")
    }

    pub fn scale(&self, a: u32) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        if a != 0 {
            for (m, c) in &self.terms {
                out.terms.insert(*m, self.ctx.mul(*c, a));
            }
        }
        out
    }

    pub fn mul_mono(&self, exp: [u32; 3]) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.add(&Mono(exp)), *c);
        }
        out
    }

    pub fn pow(&self, mut n: u64) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(self.ctx, self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Squaring is coefficientwise in characteristic 2.
    pub fn square(&self) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.add(m), self.ctx.square(*c));
        }
        out
    }

    /// Evaluates at a point given as raw bits in this context.
    pub fn eval(&self, point: &[u32]) -> u32 {
        let ctx = self.ctx;
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for v in 0..self.nvars {
                if m.0[v] > 0 {
                    t = ctx.mul(t, ctx.pow(point[v], m.0[v] as u64));
                }
            }
            acc ^= t;
        }
        acc
    }

    /// Evaluates at field elements, moving to their common field if needed.
    pub fn eval_elems(&self, point: &[FFElem]) -> Result<FFElem> {
        let mut target = self.ctx;
        for z in point {
            target = target.compositum(&z.ctx())?;
        }
        let me = self.embed(&target)?;
        let bits: Vec<u32> = point.iter().map(|z| z.embed(&target).map(|w| w.bits())).collect::<Result<_>>()?;
        Ok(target.wrap(me.eval(&bits)))
    }

    /// Replaces variable `v` by the polynomial `s`.
    pub fn substitute(&self, v: usize, s: &MPoly) -> Result<MPoly> {
        self.check(s)?;
        let nv = self.common_nvars(s);
        let maxd = self.degree_in(v).unwrap_or(0) as usize;
        let mut powers = vec![MPoly::one(self.ctx, nv)];
        for i in 1..=maxd {
            let next = powers[i - 1].mul(s);
            powers.push(next);
        }
        let mut out = MPoly::zero(self.ctx, nv);
        for (m, c) in &self.terms {
            let mut rest = m.0;
            let d = rest[v] as usize;
            rest[v] = 0;
            let t = powers[d].mul_mono(rest).scale(*c);
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Exact division, failing with `NonzeroRemainder` when `d` does not
    /// divide `self`.
    pub fn exact_divide(&self, d: &MPoly) -> Result<MPoly> {
        self.check(d)?;
        let (ld, lc) = d.leading().ok_or(Error::DivisionByZero)?;
        let lc_inv = self.ctx.inv(lc).ok_or(Error::InverseOfZero)?;
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.ctx, self.common_nvars(d));
        while let Some((lm, a)) = rem.leading() {
            if !ld.divides(&lm) {
                return Err(Error::NonzeroRemainder);
            }
            let m = lm.sub(&ld);
            let c = self.ctx.mul(a, lc_inv);
            q.add_term(m, c);
            for (dm, dc) in &d.terms {
                rem.add_term(dm.add(&m), self.ctx.mul(*dc, c));
            }
        }
        Ok(q)
    }

    pub fn divides(&self, f: &MPoly) -> bool {
        self.exact_divide_rev(f)
    }

    fn exact_divide_rev(&self, f: &MPoly) -> bool {
        !self.is_zero() && f.exact_divide(self).is_ok()
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] % 2 == 1 {
                let mut e = m.0;
                e[v] -= 1;
                out.add_term(Mono(e), *c);
            }
        }
        out
    }

    /// Homogenizes a polynomial in x, y (and possibly z) with z as the new
    /// variable, to the given total degree (defaults to the total degree).
    pub fn homogenize(&self) -> MPoly {
        let d = self.total_degree().unwrap_or(0);
        let mut out = MPoly::zero(self.ctx, 3);
        for (m, c) in &self.terms {
            let mut e = m.0;
            e[2] += d - m.degree();
            out.add_term(Mono(e), *c);
        }
        out
    }

    /// Sets variable `v` to 1 and drops it.
    pub fn dehomogenize(&self, v: usize) -> MPoly {
        let mut out = MPoly::zero(self.ctx, if self.nvars == 3 { 2 } else { self.nvars });
        for (m, c) in &self.terms {
            let mut e = m.0;
            e[v] = 0;
            // close the gap so the remaining variables are x, y
            let packed = match v {
                0 => [e[1], e[2], 0],
                1 => [e[0], e[2], 0],
                _ => [e[0], e[1], 0],
            };
            out.add_term(Mono(packed), *c);
        }
        if self.nvars < 3 {
            out.nvars = self.nvars;
        }
        out
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(*m, *c);
            }
        }
        out
    }

    /// Exchanges variables `a` and `b`.
    pub fn swap_vars(&self, a: usize, b: usize) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0;
            e.swap(a, b);
            out.terms.insert(Mono(e), *c);
        }
        out
    }

    pub fn embed(&self, target: &FieldCtx) -> Result<MPoly> {
        let mut out = MPoly::zero(*target, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(*m, target.embed_bits(*c, &self.ctx)?);
        }
        Ok(out)
    }

    /// Coefficients in the subfield `sub`, or `None` when some coefficient is
    /// outside it.
    pub fn restrict(&self, sub: &FieldCtx) -> Result<Option<MPoly>> {
        let mut out = MPoly::zero(*sub, self.nvars);
        for (m, c) in &self.terms {
            match self.ctx.restrict_bits(*c, sub)? {
                Some(b) => {
                    out.terms.insert(*m, b);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// Coefficientwise a -> a^(2^j).
    pub fn frobenius(&self, j: u32) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(*m, self.ctx.frobenius(*c, j));
        }
        out
    }

    /// Scales so the leading coefficient (graded lex) is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => self.scale(self.ctx.inv(lc).unwrap()),
        }
    }

    /// Views a polynomial without variable `v`'s complement as univariate in
    /// `v`; errors when another variable occurs.
    pub fn to_univariate(&self, v: usize) -> Result<UPoly> {
        let mut c = vec![0u32; self.degree_in(v).unwrap_or(0) as usize + 1];
        for (m, a) in &self.terms {
            if (0..3).any(|w| w != v && m.0[w] != 0) {
                return Err(Error::InvalidParameter("polynomial is not univariate".into()));
            }
            c[m.0[v] as usize] = *a;
        }
        Ok(UPoly::from_coeffs(self.ctx, c))
    }

    /// Converts to the dense representation y-major with coefficients in
    /// K[x]: result[j] is the coefficient of y^j.
    pub fn to_y_major(&self) -> Vec<UPoly> {
        let dy = self.degree_in(1).unwrap_or(0) as usize;
        let dx = self.degree_in(0).unwrap_or(0) as usize;
        let mut rows = vec![vec![0u32; dx + 1]; dy + 1];
        for (m, a) in &self.terms {
            debug_assert_eq!(m.0[2], 0);
            rows[m.0[1] as usize][m.0[0] as usize] = *a;
        }
        rows.into_iter().map(|r| UPoly::from_coeffs(self.ctx, r)).collect()
    }

    pub fn from_y_major(ctx: FieldCtx, rows: &[UPoly]) -> MPoly {
        let mut out = MPoly::zero(ctx, 2);
        for (j, r) in rows.iter().enumerate() {
            for (i, &a) in r.coeffs().iter().enumerate() {
                if a != 0 {
                    out.terms.insert(Mono([i as u32, j as u32, 0]), a);
                }
            }
        }
        out
    }

    /// Parses the text form, e.g. `x^2+x*y+0b10*y^2+1`. Numeric factors are
    /// field elements given in binary (`0b...`) or decimal bit notation.
    pub fn parse(ctx: FieldCtx, nvars: usize, s: &str) -> Result<MPoly> {
        let bad = |m: &str| Error::InvalidParameter(format!("cannot parse polynomial: {m}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = MPoly::zero(ctx, nvars);
        for term in cleaned.split('+') {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = 1u32;
            let mut exp = [0u32; 3];
            for factor in term.split('*') {
                let (base, power) = match factor.split_once('^') {
                    Some((b, p)) => (b, p.parse::<u32>().map_err(|_| bad(factor))?),
                    None => (factor, 1),
                };
                if let Some(v) = VAR_NAMES.iter().position(|&n| base.len() == 1 && base.starts_with(n)) {
                    if v >= nvars {
                        return Err(bad(factor));
                    }
                    exp[v] += power;
                } else {
                    let bits = if let Some(b) = base.strip_prefix("0b") {
                        u64::from_str_radix(b, 2).map_err(|_| bad(factor))?
                    } else {
                        base.parse::<u64>().map_err(|_| bad(factor))?
                    };
                    let a = ctx.elem(bits)?.bits();
                    coeff = ctx.mul(coeff, ctx.pow(a, power as u64));
                }
            }
            out.add_term(Mono(exp), coeff);
        }
        Ok(out)
    }

    /// JSON term list, highest graded-lex term first.
    pub fn json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| JsonTerm { exp: m.0[..self.nvars].to_vec(), coeff: format!("0b{:b}", c) })
            .collect()
    }

    pub fn from_json_terms(ctx: FieldCtx, nvars: usize, terms: &[JsonTerm]) -> Result<MPoly> {
        let mut out = MPoly::zero(ctx, nvars);
        for t in terms {
            if t.exp.len() != nvars {
                return Err(Error::VariableCount { expected: nvars, found: t.exp.len() });
            }
            let mut exp = [0u32; 3];
            exp[..nvars].copy_from_slice(&t.exp);
            let a = ctx.parse_elem(&t.coeff)?.bits();
            out.add_term(Mono(exp), a);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exp: Vec<u32>,
    pub coeff: String,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.json_terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for t in &terms {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mut parts = Vec::new();
            if *c != 1 || m.degree() == 0 {
                parts.push(if *c == 1 { "1".to_string() } else { format!("0b{:b}", c) });
            }
            for v in 0..3 {
                match m.0[v] {
                    0 => {}
                    1 => parts.push(VAR_NAMES[v].to_string()),
                    d => parts.push(format!("{}^{}", VAR_NAMES[v], d)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[GF(2^{})]({})", self.ctx.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn p(ctx: FieldCtx, s: &str) -> MPoly {
        MPoly::parse(ctx, 2, s).unwrap()
    }

    #[test]
    fn char2_square() {
        let g = FieldCtx::gf2();
        let s = p(g, "x+y");
        assert_eq!(s.mul(&s), p(g, "x^2+y^2"));
    }

    #[test]
    fn eval_over_gf4() {
        let g = FieldCtx::gf4();
        // x^2 + xy + y^2 at (w, w^2): w^2 + 1 + w = 0
        assert_eq!(p(g, "x^2+x*y+y^2").eval(&[0b10, 0b11]), 0);
    }

    #[test]
    fn substitute_z() {
        let g = FieldCtx::gf2();
        let xz = MPoly::parse(g, 3, "x*z").unwrap();
        let s = MPoly::parse(g, 3, "x+y").unwrap();
        assert_eq!(xz.substitute(2, &s).unwrap(), MPoly::parse(g, 3, "x^2+x*y").unwrap());
    }

    #[test]
    fn exact_division() {
        let g = FieldCtx::gf2();
        assert_eq!(p(g, "x^2+1").exact_divide(&p(g, "x+1")).unwrap(), p(g, "x+1"));
        assert_eq!(p(g, "x^2+x+1").exact_divide(&p(g, "x+1")), Err(Error::NonzeroRemainder));
        assert!(p(g, "x").exact_divide(&MPoly::zero(g, 2)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let ctx = make_field(3).unwrap();
        let f = p(ctx, "x^3+0b101*x*y+y^2+0b11");
        assert_eq!(f.to_string(), "x^3+0b101*x*y+y^2+0b11");
        assert_eq!(p(ctx, &f.to_string()), f);
        assert_eq!(p(ctx, "x^2+x*y+y^2").to_string(), "x^2+x*y+y^2");
    }

    #[test]
    fn json_round_trip() {
        let ctx = make_field(2).unwrap();
        let f = p(ctx, "0b10*x^2*y+y+1");
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"[{"exp":[2,1],"coeff":"0b10"},{"exp":[0,1],"coeff":"0b1"},{"exp":[0,0],"coeff":"0b1"}]"#);
        let back: Vec<JsonTerm> = serde_json::from_str(&js).unwrap();
        assert_eq!(MPoly::from_json_terms(ctx, 2, &back).unwrap(), f);
    }

    #[test]
    fn homogenize_dehomogenize() {
        let g = FieldCtx::gf2();
        let f = p(g, "x^2+y+1");
        let h = f.homogenize();
        assert_eq!(h, MPoly::parse(g, 3, "x^2+y*z+z^2").unwrap());
        assert_eq!(h.dehomogenize(2), f);
    }

    #[test]
    fn partials() {
        let g = FieldCtx::gf2();
        let f = p(g, "x^3*y^2+x^2*y+x*y^3");
        assert_eq!(f.partial(0), p(g, "x^2*y^2+y^3"));
        assert_eq!(f.partial(1), p(g, "x^2+x*y^2"));
    }
}
