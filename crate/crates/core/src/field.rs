//! Arithmetic in GF(2^e), 1 <= e <= 32, in the polynomial basis.
//!
//! Each degree has one canonical modulus: the irreducible polynomial of that
//! degree with the least bit value. Elements are `e`-bit words. Hot loops work
//! on raw `u32` words through [`FieldCtx`]; [`FFElem`] is the checked,
//! context-carrying element type used at API boundaries.
//!
//! Embeddings between subfields form a compatible system: for `a | c | b` the
//! composite `GF(2^a) -> GF(2^c) -> GF(2^b)` equals the direct embedding.

use std::fmt;
use std::ops::{Add, Mul};
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 32;

/// Least-bit-value irreducible polynomial of each degree 1..=32 (index e-1).
///
/// Degree 1 uses `x`, so GF(2) reduces to plain bit arithmetic.
const MODULI: [u64; 32] = [
    0x2,
    0x7,
    0xb,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11b,
    0x203,
    0x409,
    0x805,
    0x1009,
    0x201b,
    0x4021,
    0x8003,
    0x1002b,
    0x20009,
    0x40009,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x100001b,
    0x2000009,
    0x400001b,
    0x8000027,
    0x10000003,
    0x20000005,
    0x40000003,
    0x80000009,
    0x10000008d,
];

/// Immutable description of GF(2^e). Cheap to copy and share across threads.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldCtx {
    e: u32,
    modulus: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.e)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.e)
    }
}

/// Returns the canonical context for GF(2^e).
pub fn make_field(e: u32) -> Result<FieldCtx> {
    FieldCtx::new(e)
}

/// Degree of a GF(2)[x] polynomial stored as bits; `None` for zero.
/// Largest field degree for which exhaustive element loops are allowed.
pub const MAX_ENUM_DEGREE: u32 = 28;

/// [`make_field`] for callers that enumerate every element.
pub(crate) fn enumerable_field(e: u32) -> Result<FieldCtx> {
    if e > MAX_ENUM_DEGREE {
        return Err(Error::InvalidParameter(format!("e = {e} too large to enumerate")));
    }
    make_field(e)
}

pub(crate) fn bit_degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = bit_degree(b).expect("division by zero polynomial");
    while let Some(da) = bit_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible_gf2(p: u64) -> bool {
    let Some(d) = bit_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let half = d / 2;
    for deg in 1..=half {
        for low in 0..(1u64 << deg) {
            let divisor = (1u64 << deg) | low;
            if gf2_rem(p, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

fn verified_modulus(e: u32) -> u64 {
    static CHECKED: [OnceLock<bool>; 32] = [const { OnceLock::new() }; 32];
    let m = MODULI[(e - 1) as usize];
    let ok = *CHECKED[(e - 1) as usize].get_or_init(|| is_irreducible_gf2(m));
    assert!(ok, "modulus table entry for e={e} is reducible");
    m
}

impl FieldCtx {
    pub fn new(e: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&e) {
            return Err(Error::DegreeOutOfRange(e));
        }
        Ok(Self { e, modulus: verified_modulus(e) })
    }

    pub fn gf2() -> Self {
        Self { e: 1, modulus: 0x2 }
    }

    /// GF(4) = {0, 1, w, w^2}, with w the class of x.
    pub fn gf4() -> Self {
        Self { e: 2, modulus: 0x7 }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, 2^e.
    #[inline]
    pub fn order(&self) -> u64 {
        1u64 << self.e
    }

    #[inline]
    pub fn contains_bits(&self, bits: u64) -> bool {
        bits < self.order()
    }

    pub fn elem(&self, bits: u64) -> Result<FFElem> {
        if !self.contains_bits(bits) {
            return Err(Error::ElementOutOfRange { bits, e: self.e });
        }
        Ok(FFElem { bits: bits as u32, ctx: *self })
    }

    #[inline]
    pub fn zero(&self) -> FFElem {
        FFElem { bits: 0, ctx: *self }
    }

    #[inline]
    pub fn one(&self) -> FFElem {
        FFElem { bits: 1, ctx: *self }
    }

    /// Wraps raw bits without a range check. Callers guarantee `bits < 2^e`.
    #[inline]
    pub fn wrap(&self, bits: u32) -> FFElem {
        debug_assert!(self.contains_bits(bits as u64));
        FFElem { bits, ctx: *self }
    }

    /// All elements in ascending bit order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.order()).map(move |b| self.wrap(b as u32))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let e = self.e;
        let (mut a, mut b) = (a as u64, b as u64);
        if a < b {
            std::mem::swap(&mut a, &mut b);
        }
        let mut prod = 0u64;
        while b != 0 {
            let tz = b.trailing_zeros();
            prod ^= a << tz;
            b &= b - 1;
        }
        if prod >> e == 0 {
            return prod as u32;
        }
        let m = self.modulus;
        let mut top = 63 - prod.leading_zeros();
        while top >= e {
            prod ^= m << (top - e);
            if prod == 0 {
                break;
            }
            top = 63 - prod.leading_zeros();
        }
        prod as u32
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            n >>= 1;
        }
        acc
    }

    /// Inverse through the extended Euclidean algorithm in GF(2)[x].
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.e == 1 {
            return Some(1);
        }
        let (mut r0, mut r1) = (self.modulus, a as u64);
        let (mut s0, mut s1) = (0u64, 1u64);
        while r1 != 1 {
            let d0 = bit_degree(r0).unwrap();
            let d1 = bit_degree(r1).unwrap();
            if d0 < d1 {
                std::mem::swap(&mut r0, &mut r1);
                std::mem::swap(&mut s0, &mut s1);
                continue;
            }
            let shift = d0 - d1;
            r0 ^= r1 << shift;
            s0 ^= s1 << shift;
            if r0 == 0 {
                return None;
            }
        }
        Some(gf2_rem(s1, self.modulus) as u32)
    }

    /// a^(2^j); `j` is taken mod e.
    pub fn frobenius(&self, a: u32, j: u32) -> u32 {
        let mut x = a;
        for _ in 0..(j % self.e) {
            x = self.square(x);
        }
        x
    }

    /// The unique b with b^(2^j) = a.
    pub fn root_2pow(&self, a: u32, j: u32) -> u32 {
        let j = j % self.e;
        self.frobenius(a, (self.e - j) % self.e)
    }

    /// Absolute trace GF(2^e) -> GF(2).
    pub fn trace(&self, a: u32) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.e {
            t ^= x;
            x = self.square(x);
        }
        t
    }

    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = self.order() - 1;
        let mut ord = n;
        for (p, _) in factor_u64(n) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == 1 {
                ord /= p;
            }
        }
        Some(ord)
    }

    /// Least-bit-value generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        static CACHE: [OnceLock<u32>; 32] = [const { OnceLock::new() }; 32];
        *CACHE[(self.e - 1) as usize].get_or_init(|| {
            let n = self.order() - 1;
            (1..=n as u32).find(|&a| self.multiplicative_order(a) == Some(n)).expect("multiplicative group is cyclic")
        })
    }

    /// True when GF(2^sub) is a subfield of this field.
    pub fn has_subfield(&self, sub: u32) -> bool {
        sub >= 1 && self.e.is_multiple_of(sub)
    }

    /// Smallest field containing both.
    pub fn compositum(&self, other: &FieldCtx) -> Result<FieldCtx> {
        let l = lcm(self.e as u64, other.e as u64);
        if l > MAX_DEGREE as u64 {
            return Err(Error::SplittingFieldTooLarge { needed: l });
        }
        FieldCtx::new(l as u32)
    }

    /// Embeds raw bits of GF(2^from) into this field.
    pub fn embed_bits(&self, bits: u32, from: &FieldCtx) -> Result<u32> {
        if from.e == self.e {
            return Ok(bits);
        }
        let images = embedding_basis(from.e, self.e)?;
        Ok(apply_basis(images, bits))
    }

    /// Preimage of `bits` under the embedding of `sub`, if `bits` lies in it.
    pub fn restrict_bits(&self, bits: u32, sub: &FieldCtx) -> Result<Option<u32>> {
        if sub.e == self.e {
            return Ok(Some(bits));
        }
        let images = embedding_basis(sub.e, self.e)?;
        Ok(solve_gf2_linear(images, bits))
    }

    /// The `ell`-th roots of unity, sorted by bit value.
    pub fn ell_th_roots(&self, ell: u64) -> Result<Vec<FFElem>> {
        ell_th_roots(ell, self)
    }

    /// Builds an element from its bits in a `0b...` string.
    pub fn parse_elem(&self, s: &str) -> Result<FFElem> {
        let t = s.trim();
        let digits = t.strip_prefix("0b").unwrap_or(t);
        let bits = u64::from_str_radix(digits, 2)
            .map_err(|_| Error::InvalidParameter(format!("not a binary literal: {s}")))?;
        self.elem(bits)
    }
}

fn apply_basis(images: &[u32], mut bits: u32) -> u32 {
    let mut acc = 0;
    while bits != 0 {
        let j = bits.trailing_zeros();
        acc ^= images[j as usize];
        bits &= bits - 1;
    }
    acc
}

/// Solves sum_j c_j * images[j] = target over GF(2), returning the bits c.
fn solve_gf2_linear(images: &[u32], target: u32) -> Option<u32> {
    // Rows carry (vector, combination); eliminate on the leading bit.
    let mut rows: Vec<(u32, u32)> = images.iter().enumerate().map(|(j, &v)| (v, 1u32 << j)).collect();
    let mut basis: Vec<(u32, u32)> = Vec::new();
    for (mut v, mut c) in rows.drain(..) {
        for &(bv, bc) in &basis {
            if v & (1 << (31 - bv.leading_zeros())) != 0 {
                v ^= bv;
                c ^= bc;
            }
        }
        if v != 0 {
            basis.push((v, c));
            basis.sort_by(|a, b| b.0.cmp(&a.0));
        }
    }
    let (mut t, mut c) = (target, 0u32);
    for &(bv, bc) in &basis {
        if t & (1 << (31 - bv.leading_zeros())) != 0 {
            t ^= bv;
            c ^= bc;
        }
    }
    (t == 0).then_some(c)
}

/// Images of 1, x, ..., x^(a-1) of GF(2^a) inside GF(2^b).
fn embedding_basis(a: u32, b: u32) -> Result<&'static [u32]> {
    if a == 0 || b == 0 || b > MAX_DEGREE || !b.is_multiple_of(a) {
        return Err(Error::NotASubfield { from: a, to: b });
    }
    let table = embedding_table(b);
    Ok(table
        .iter()
        .find(|(sub, _)| *sub == a)
        .map(|(_, imgs)| imgs.as_slice())
        .expect("every divisor has an embedding"))
}

/// For target degree `b`: basis images for every divisor `a` of `b`.
///
/// Roots of the source modulus are chosen greedily (largest divisor first,
/// least bit value among roots that agree with already-fixed sub-embeddings),
/// which makes the whole lattice of embeddings compatible.
fn embedding_table(b: u32) -> &'static Vec<(u32, Vec<u32>)> {
    static TABLES: [OnceLock<Vec<(u32, Vec<u32>)>>; 32] = [const { OnceLock::new() }; 32];
    TABLES[(b - 1) as usize].get_or_init(|| {
        let target = FieldCtx::new(b).expect("b in range");
        let mut divisors: Vec<u32> = (1..b).filter(|a| b.is_multiple_of(*a)).collect();
        divisors.reverse();
        // image of the class of x of GF(2^a), once fixed
        let mut fixed: Vec<(u32, u32)> = Vec::new();
        let mut out: Vec<(u32, Vec<u32>)> = vec![(b, (0..b).map(|j| 1u32 << j).collect())];
        for &c in &divisors {
            if c == 1 {
                out.push((1, vec![1]));
                continue;
            }
            let src = FieldCtx::new(c).unwrap();
            let mut roots = subfield_roots_of_modulus(&target, &src);
            roots.sort_unstable();
            let sub_of_c: Vec<u32> = (2..c).filter(|d| c % d == 0).collect();
            let preset = fixed.iter().find(|(d, _)| *d == c).map(|&(_, r)| r);
            let chosen = roots
                .into_iter()
                .filter(|&rho| preset.is_none_or(|p| p == rho))
                .find(|&rho| {
                    let imgs = powers(&target, rho, c);
                    sub_of_c.iter().all(|&d| match fixed.iter().find(|(dd, _)| *dd == d) {
                        None => true,
                        Some(&(_, want)) => {
                            let gen_d_in_c = embedding_basis(d, c).unwrap()[1];
                            apply_basis(&imgs, gen_d_in_c) == want
                        }
                    })
                })
                .expect("compatible embedding exists for cyclic Galois groups");
            let imgs = powers(&target, chosen, c);
            if !fixed.iter().any(|(d, _)| *d == c) {
                fixed.push((c, chosen));
            }
            for &d in &sub_of_c {
                if !fixed.iter().any(|(dd, _)| *dd == d) {
                    let gen_d_in_c = embedding_basis(d, c).unwrap()[1];
                    fixed.push((d, apply_basis(&imgs, gen_d_in_c)));
                }
            }
            out.push((c, imgs));
        }
        out
    })
}

fn powers(ctx: &FieldCtx, rho: u32, n: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(n as usize);
    let mut x = 1u32;
    for _ in 0..n {
        v.push(x);
        x = ctx.mul(x, rho);
    }
    v
}

fn eval_gf2_poly(ctx: &FieldCtx, poly: u64, z: u32) -> u32 {
    let d = bit_degree(poly).unwrap();
    let mut acc = 0u32;
    for j in (0..=d).rev() {
        acc = ctx.mul(acc, z);
        if poly >> j & 1 == 1 {
            acc ^= 1;
        }
    }
    acc
}

/// All roots of `src.modulus` in `target`, where `src.e | target.e`.
fn subfield_roots_of_modulus(target: &FieldCtx, src: &FieldCtx) -> Vec<u32> {
    let c = src.e;
    let n = target.order() - 1;
    let g = target.primitive_element();
    let h = target.pow(g, n / ((1u64 << c) - 1));
    let mut z = 1u32;
    let mut first = None;
    for _ in 0..((1u64 << c) - 1) {
        if eval_gf2_poly(target, src.modulus, z) == 0 {
            first = Some(z);
            break;
        }
        z = target.mul(z, h);
    }
    let rho = first.expect("irreducible modulus has a root in the extension");
    (0..c).map(|j| target.frobenius(rho, j)).collect()
}

/// Field element with its context. Arithmetic operators panic on a context
/// mismatch; the `try_*` methods report it instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    bits: u32,
    ctx: FieldCtx,
}

impl FFElem {
    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    fn check(&self, other: &FFElem) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch { left: self.ctx.e, right: other.ctx.e });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(self.ctx.wrap(self.bits ^ other.bits))
    }

    pub fn try_mul(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(self.ctx.wrap(self.ctx.mul(self.bits, other.bits)))
    }

    pub fn inverse(&self) -> Result<FFElem> {
        self.ctx.inv(self.bits).map(|b| self.ctx.wrap(b)).ok_or(Error::InverseOfZero)
    }

    pub fn pow(&self, n: u64) -> FFElem {
        self.ctx.wrap(self.ctx.pow(self.bits, n))
    }

    /// self^(2^j).
    pub fn frobenius(&self, j: u32) -> FFElem {
        self.ctx.wrap(self.ctx.frobenius(self.bits, j))
    }

    /// The unique 2^j-th root.
    pub fn root_2pow(&self, j: u32) -> FFElem {
        self.ctx.wrap(self.ctx.root_2pow(self.bits, j))
    }

    pub fn multiplicative_order(&self) -> Option<u64> {
        self.ctx.multiplicative_order(self.bits)
    }

    /// Image under the canonical embedding into `target`.
    pub fn embed(&self, target: &FieldCtx) -> Result<FFElem> {
        if !target.e.is_multiple_of(self.ctx.e) {
            return Err(Error::NotASubfield { from: self.ctx.e, to: target.e });
        }
        Ok(target.wrap(target.embed_bits(self.bits, &self.ctx)?))
    }

    /// Preimage in `sub`, when this element lies in the embedded copy of it.
    pub fn restrict(&self, sub: &FieldCtx) -> Result<Option<FFElem>> {
        Ok(self.ctx.restrict_bits(self.bits, sub)?.map(|b| sub.wrap(b)))
    }

    /// Smallest subfield degree containing this element.
    pub fn field_degree(&self) -> u32 {
        (1..=self.ctx.e)
            .filter(|d| self.ctx.e.is_multiple_of(*d))
            .find(|&d| self.frobenius(d) == *self)
            .unwrap_or(self.ctx.e)
    }
}

pub fn embed(a: &FFElem, target: &FieldCtx) -> Result<FFElem> {
    a.embed(target)
}

pub fn field_mul(a: &FFElem, b: &FFElem) -> Result<FFElem> {
    a.try_mul(b)
}

pub fn field_add(a: &FFElem, b: &FFElem) -> Result<FFElem> {
    a.try_add(b)
}

impl Add for FFElem {
    type Output = FFElem;
    fn add(self, rhs: FFElem) -> FFElem {
        self.try_add(&rhs).expect("field context mismatch")
    }
}

impl Mul for FFElem {
    type Output = FFElem;
    fn mul(self, rhs: FFElem) -> FFElem {
        self.try_mul(&rhs).expect("field context mismatch")
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}@{}", self.bits, self.ctx.e)
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.bits)
    }
}

impl Serialize for FFElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:#b}", self.bits))
    }
}

/// Multiplicative order of 2 modulo an odd `ell` (1 for ell = 1).
pub fn order_of_two(ell: u64) -> u64 {
    assert!(ell % 2 == 1, "ell must be odd");
    if ell == 1 {
        return 1;
    }
    let mut x = 2 % ell;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % ell;
        k += 1;
    }
    k
}

/// The `ell`-th roots of unity in `ctx`, sorted by bit value.
pub fn ell_th_roots(ell: u64, ctx: &FieldCtx) -> Result<Vec<FFElem>> {
    if ell == 0 || ell.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("ell = {ell} must be odd")));
    }
    let needed = order_of_two(ell);
    if !(ctx.e as u64).is_multiple_of(needed) {
        return Err(Error::RootsNotInField { ell, needed: needed as u32, e: ctx.e });
    }
    let n = ctx.order() - 1;
    let zeta = ctx.pow(ctx.primitive_element(), n / ell);
    let mut roots: Vec<FFElem> = Vec::with_capacity(ell as usize);
    let mut z = 1u32;
    for _ in 0..ell {
        roots.push(ctx.wrap(z));
        z = ctx.mul(z, zeta);
    }
    roots.sort_unstable_by_key(|r| r.bits);
    Ok(roots)
}

/// Trial-division factorization of a u64 into (prime, exponent).
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// The modulus table as `(e, "0b...")` rows.
pub fn modulus_table() -> Vec<(u32, String)> {
    (1..=MAX_DEGREE).map(|e| (e, format!("{:#b}", MODULI[(e - 1) as usize]))).collect()
}
