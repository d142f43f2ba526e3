//! Dense univariate polynomials over GF(2^e).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FFElem, FieldCtx};

/// Coefficients stored low degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    ctx: FieldCtx,
    c: Vec<u32>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly[{}]{:?}", self.ctx.degree(), self.c)
    }
}

impl UPoly {
    pub fn zero(ctx: FieldCtx) -> Self {
        Self { ctx, c: Vec::new() }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self { ctx, c: vec![1] }
    }

    pub fn constant(ctx: FieldCtx, a: u32) -> Self {
        Self::from_coeffs(ctx, vec![a])
    }

    /// a * x^n
    pub fn monomial(ctx: FieldCtx, a: u32, n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[n] = a;
        Self::from_coeffs(ctx, c)
    }

    pub fn x(ctx: FieldCtx) -> Self {
        Self::monomial(ctx, 1, 1)
    }

    /// x + a
    pub fn linear(ctx: FieldCtx, a: u32) -> Self {
        Self::from_coeffs(ctx, vec![a, 1])
    }

    pub fn from_coeffs(ctx: FieldCtx, mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { ctx, c }
    }

    pub fn from_elems(ctx: FieldCtx, elems: &[FFElem]) -> Result<Self> {
        let mut c = Vec::with_capacity(elems.len());
        for z in elems {
            c.push(z.embed(&ctx)?.bits());
        }
        Ok(Self::from_coeffs(ctx, c))
    }

    #[inline]
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.c
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    #[inline]
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    #[inline]
    pub fn deg0(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn lc(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|&a| a != 0)
    }

    fn same_ctx(&self, other: &UPoly) {
        assert_eq!(self.ctx, other.ctx, "polynomial context mismatch");
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        self.same_ctx(other);
        let (long, short) = if self.c.len() >= other.c.len() { (&self.c, &other.c) } else { (&other.c, &self.c) };
        let mut c = long.clone();
        for (a, b) in c.iter_mut().zip(short) {
            *a ^= b;
        }
        UPoly::from_coeffs(self.ctx, c)
    }

    pub fn add_assign(&mut self, other: &UPoly) {
        self.same_ctx(other);
        if self.c.len() < other.c.len() {
            self.c.resize(other.c.len(), 0);
        }
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a ^= b;
        }
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    /// self += a * x^shift * other
    pub fn add_scaled_shifted(&mut self, other: &UPoly, a: u32, shift: usize) {
        if a == 0 || other.is_zero() {
            return;
        }
        let need = other.c.len() + shift;
        if self.c.len() < need {
            self.c.resize(need, 0);
        }
        for (i, &b) in other.c.iter().enumerate() {
            if b != 0 {
                self.c[i + shift] ^= self.ctx.mul(a, b);
            }
        }
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        self.same_ctx(other);
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(self.ctx);
        }
        let mut c = vec![0u32; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                if b != 0 {
                    c[i + j] ^= self.ctx.mul(a, b);
                }
            }
        }
        UPoly::from_coeffs(self.ctx, c)
    }

    pub fn scale(&self, a: u32) -> UPoly {
        if a == 0 {
            return UPoly::zero(self.ctx);
        }
        UPoly::from_coeffs(self.ctx, self.c.iter().map(|&b| self.ctx.mul(a, b)).collect())
    }

    pub fn shift(&self, n: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; n];
        c.extend_from_slice(&self.c);
        UPoly { ctx: self.ctx, c }
    }

    /// Drops all coefficients of degree >= n.
    pub fn truncate(&self, n: usize) -> UPoly {
        UPoly::from_coeffs(self.ctx, self.c.iter().take(n).copied().collect())
    }

    pub fn pow(&self, mut n: u64) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one(self.ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> UPoly {
        match self.ctx.inv(self.lc()) {
            Some(inv) if self.lc() != 1 => self.scale(inv),
            _ => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        self.same_ctx(d);
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.c.len() <= dd {
            return Ok((UPoly::zero(self.ctx), self.clone()));
        }
        let inv = self.ctx.inv(d.lc()).unwrap();
        let mut r = self.c.clone();
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let t = r[i];
            if t == 0 {
                continue;
            }
            let f = self.ctx.mul(t, inv);
            q[i - dd] = f;
            for (j, &b) in d.c.iter().enumerate() {
                if b != 0 {
                    r[i - dd + j] ^= self.ctx.mul(f, b);
                }
            }
        }
        r.truncate(dd);
        Ok((UPoly::from_coeffs(self.ctx, q), UPoly::from_coeffs(self.ctx, r)))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly> {
        Ok(self.divrem(d)?.1)
    }

    pub fn exact_div(&self, d: &UPoly) -> Result<UPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::NonzeroRemainder);
        }
        Ok(q)
    }

    pub fn divides(&self, f: &UPoly) -> bool {
        f.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        self.same_ctx(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        self.same_ctx(other);
        let ctx = self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(ctx), UPoly::zero(ctx));
        let (mut t0, mut t1) = (UPoly::zero(ctx), UPoly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            let s2 = s0.add(&q.mul(&s1));
            let t2 = t0.add(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = ctx.inv(r0.lc()).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> UPoly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| if i % 2 == 1 { a } else { 0 }).collect();
        UPoly::from_coeffs(self.ctx, c)
    }

    pub fn eval(&self, z: u32) -> u32 {
        let mut acc = 0u32;
        for &a in self.c.iter().rev() {
            acc = self.ctx.mul(acc, z) ^ a;
        }
        acc
    }

    pub fn eval_elem(&self, z: &FFElem) -> Result<FFElem> {
        if z.ctx() == self.ctx {
            return Ok(self.ctx.wrap(self.eval(z.bits())));
        }
        let big = z.ctx();
        let lifted = self.embed(&big)?;
        Ok(big.wrap(lifted.eval(z.bits())))
    }

    /// self(g)
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero(self.ctx);
        for &a in self.c.iter().rev() {
            acc = acc.mul(g);
            acc.add_assign(&UPoly::constant(self.ctx, a));
        }
        acc
    }

    /// self(x + a)
    pub fn shift_var(&self, a: u32) -> UPoly {
        self.compose(&UPoly::linear(self.ctx, a))
    }

    pub fn embed(&self, target: &FieldCtx) -> Result<UPoly> {
        if *target == self.ctx {
            return Ok(self.clone());
        }
        if !target.degree().is_multiple_of(self.ctx.degree()) {
            return Err(Error::NotASubfield { from: self.ctx.degree(), to: target.degree() });
        }
        let mut c = Vec::with_capacity(self.c.len());
        for &a in &self.c {
            c.push(target.embed_bits(a, &self.ctx)?);
        }
        Ok(UPoly { ctx: *target, c })
    }

    /// Coefficients pulled back into `sub`, when they all lie there.
    pub fn restrict(&self, sub: &FieldCtx) -> Result<Option<UPoly>> {
        let mut c = Vec::with_capacity(self.c.len());
        for &a in &self.c {
            match self.ctx.restrict_bits(a, sub)? {
                Some(b) => c.push(b),
                None => return Ok(None),
            }
        }
        Ok(Some(UPoly { ctx: *sub, c }))
    }

    /// Coefficient-wise a -> a^(2^j).
    pub fn frobenius(&self, j: u32) -> UPoly {
        UPoly { ctx: self.ctx, c: self.c.iter().map(|&a| self.ctx.frobenius(a, j)).collect() }
    }

    /// Square root of a polynomial whose odd coefficients vanish.
    pub fn sqrt(&self) -> Option<UPoly> {
        if self.c.iter().skip(1).step_by(2).any(|&a| a != 0) {
            return None;
        }
        let c = self.c.iter().step_by(2).map(|&a| self.ctx.root_2pow(a, 1)).collect();
        Some(UPoly::from_coeffs(self.ctx, c))
    }

    pub fn mul_mod(&self, other: &UPoly, m: &UPoly) -> UPoly {
        self.mul(other).rem(m).unwrap()
    }

    /// self^2 mod m using the linearity of squaring in characteristic 2.
    pub fn sqr_mod(&self, m: &UPoly) -> UPoly {
        let mut c = vec![0u32; self.c.len() * 2];
        for (i, &a) in self.c.iter().enumerate() {
            c[2 * i] = self.ctx.square(a);
        }
        UPoly::from_coeffs(self.ctx, c).rem(m).unwrap()
    }

    pub fn pow_mod(&self, mut n: u64, m: &UPoly) -> UPoly {
        let mut base = self.rem(m).unwrap();
        let mut acc = UPoly::one(self.ctx).rem(m).unwrap();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr_mod(m);
            }
        }
        acc
    }

    /// self^(2^j) mod m.
    pub fn frob_pow_mod(&self, j: u64, m: &UPoly) -> UPoly {
        let mut x = self.rem(m).unwrap();
        for _ in 0..j {
            x = x.sqr_mod(m);
        }
        x
    }

    /// Number of distinct roots in the coefficient field.
    pub fn count_distinct_roots(&self) -> usize {
        match self.degree() {
            None => self.ctx.order() as usize,
            Some(0) => 0,
            Some(1) => 1,
            Some(_) => {
                let m = self.monic();
                let xq = UPoly::x(self.ctx).frob_pow_mod(self.ctx.degree() as u64, &m);
                let h = xq.add(&UPoly::x(self.ctx));
                m.gcd(&h).deg0()
            }
        }
    }

    pub fn elems(&self) -> Vec<FFElem> {
        self.c.iter().map(|&a| self.ctx.wrap(a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn gf2(bits: &[u32]) -> UPoly {
        UPoly::from_coeffs(FieldCtx::gf2(), bits.to_vec())
    }

    #[test]
    fn divrem_and_exact() {
        let f = gf2(&[1, 0, 1]);
        let d = gf2(&[1, 1]);
        assert_eq!(f.exact_div(&d).unwrap(), gf2(&[1, 1]));
        assert_eq!(gf2(&[1, 1, 1]).exact_div(&d), Err(Error::NonzeroRemainder));
        assert_eq!(f.divrem(&UPoly::zero(FieldCtx::gf2())), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gf2(&[1, 0, 1]).gcd(&gf2(&[1, 1])), gf2(&[1, 1]));
        let ctx = make_field(3).unwrap();
        let f = UPoly::from_coeffs(ctx, vec![3, 5, 2]);
        assert_eq!(f.gcd(&UPoly::zero(ctx)), f.monic());
        let (g, s, t) = f.ext_gcd(&UPoly::from_coeffs(ctx, vec![1, 1]));
        assert_eq!(s.mul(&f).add(&t.mul(&UPoly::from_coeffs(ctx, vec![1, 1]))), g);
    }

    #[test]
    fn roots_counted() {
        // x^2 + x + 1 has no roots over GF(2), two over GF(4)
        assert_eq!(gf2(&[1, 1, 1]).count_distinct_roots(), 0);
        let gf4 = FieldCtx::gf4();
        assert_eq!(UPoly::from_coeffs(gf4, vec![1, 1, 1]).count_distinct_roots(), 2);
        // x^4 + x over GF(4) has all four elements as roots
        assert_eq!(UPoly::from_coeffs(gf4, vec![0, 1, 0, 0, 1]).count_distinct_roots(), 4);
    }

    #[test]
    fn sqrt_in_char_two() {
        let ctx = make_field(4).unwrap();
        let f = UPoly::from_coeffs(ctx, vec![7, 3, 9]);
        let sq = f.mul(&f);
        assert_eq!(sq.sqrt().unwrap(), f);
        assert!(f.sqrt().is_none());
    }
}
