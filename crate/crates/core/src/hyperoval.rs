//! Hyperoval tests for the monomial sets D(x^k) in PG(2, 2^e).

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{enumerable_field, gcd, FFElem, FieldCtx};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[serde(rename = "det")]
    Determinant,
    #[serde(rename = "perm")]
    Permutation,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "det" | "determinant" => Ok(Method::Determinant),
            "perm" | "permutation" => Ok(Method::Permutation),
            _ => Err(Error::InvalidParameter(format!("unknown method {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperovalVerdict {
    pub k: u64,
    pub e: u32,
    #[serde(rename = "hyperoval")]
    pub is_hyperoval: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[FFElem; 3]>,
    pub method: Method,
}

/// det [[1,1,1],[x,y,z],[x^k,y^k,z^k]] in characteristic 2.
pub fn determinant(ctx: &FieldCtx, k: u64, x: u32, y: u32, z: u32) -> u32 {
    let (xk, yk, zk) = (ctx.pow(x, k), ctx.pow(y, k), ctx.pow(z, k));
    ctx.mul(xk, y ^ z) ^ ctx.mul(yk, x ^ z) ^ ctx.mul(zk, x ^ y)
}

fn check_k(k: u64) -> Result<()> {
    if k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} must be at least 2")));
    }
    Ok(())
}

/// Exhaustive determinant test over ordered triples x < y < z; the witness
/// is the lexicographically least vanishing triple.
pub fn determinant_test(k: u64, e: u32) -> Result<HyperovalVerdict> {
    check_k(k)?;
    let ctx = enumerable_field(e)?;
    let q = ctx.order() as u32;
    let powk: Vec<u32> = (0..q).map(|a| ctx.pow(a, k)).collect();
    let mut witness = None;
    'outer: for x in 0..q {
        for y in x + 1..q {
            // det = x^k (y+z) + y^k (x+z) + z^k (x+y); linear part in z's
            // terms precomputed per (x, y)
            let xy = x ^ y;
            let c0 = ctx.mul(powk[x as usize], y) ^ ctx.mul(powk[y as usize], x);
            let c1 = powk[x as usize] ^ powk[y as usize];
            for z in y + 1..q {
                let d = c0 ^ ctx.mul(c1, z) ^ ctx.mul(powk[z as usize], xy);
                if d == 0 {
                    witness = Some([ctx.wrap(x), ctx.wrap(y), ctx.wrap(z)]);
                    break 'outer;
                }
            }
        }
    }
    Ok(HyperovalVerdict { k, e, is_hyperoval: witness.is_none(), witness, method: Method::Determinant })
}

/// s(x) = 1 + x + ... + x^(k-1) by Horner.
pub fn s_poly(ctx: &FieldCtx, k: u64, x: u32) -> u32 {
    let mut acc = 0u32;
    for _ in 0..k {
        acc = ctx.mul(acc, x) ^ 1;
    }
    acc
}

/// Permutation test for s(x); a collision is converted into a vanishing
/// determinant triple.
pub fn perm_poly_test(k: u64, e: u32) -> Result<HyperovalVerdict> {
    check_k(k)?;
    let ctx = enumerable_field(e)?;
    let q = ctx.order();
    let mut seen = vec![0u64; (q as usize).div_ceil(64)];
    let mut collision = None;
    for a in 0..q as u32 {
        let s = s_poly(&ctx, k, a);
        let (w, b) = ((s / 64) as usize, s % 64);
        if seen[w] >> b & 1 == 1 {
            let earlier = (0..a).find(|&c| s_poly(&ctx, k, c) == s).unwrap();
            collision = Some((earlier, a));
            break;
        }
        seen[w] |= 1 << b;
    }
    let witness = collision.map(|(a, b)| witness_from_collision(&ctx, k, a, b));
    Ok(HyperovalVerdict { k, e, is_hyperoval: witness.is_none(), witness, method: Method::Permutation })
}

/// With x = 1 the determinant vanishes iff s(y) = s(z), so a collision away
/// from 1 gives (1, a, b). A collision with 1 means b^k = 1, and a third k-th
/// root of unity completes a horizontal line.
fn witness_from_collision(ctx: &FieldCtx, k: u64, a: u32, b: u32) -> [FFElem; 3] {
    let mut t = if a != 1 && b != 1 {
        [1, a, b]
    } else {
        let other = if a == 1 { b } else { a };
        let c = (2..ctx.order() as u32)
            .find(|&c| c != other && ctx.pow(c, k) == 1)
            .expect("k-th roots of unity come in groups of odd size");
        [1, other, c]
    };
    t.sort_unstable();
    debug_assert_eq!(determinant(ctx, k, t[0], t[1], t[2]), 0);
    t.map(|z| ctx.wrap(z))
}

pub fn hyperoval_test(k: u64, e: u32, method: Method) -> Result<HyperovalVerdict> {
    match method {
        Method::Determinant => determinant_test(k, e),
        Method::Permutation => perm_poly_test(k, e),
    }
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i128) as u64)
}

/// The exponents k, 1/k, 1-k, 1/(1-k), (k-1)/k, k/(k-1) modulo 2^e - 1.
pub fn equivalence_orbit(k: u64, e: u32) -> Result<BTreeSet<u64>> {
    if !(1..=32).contains(&e) {
        return Err(Error::DegreeOutOfRange(e));
    }
    let n = (1u64 << e) - 1;
    if k == 0 || (n > 1 && (gcd(k % n, n) != 1 || gcd((k - 1) % n, n) != 1)) {
        return Err(Error::NotHyperovalCandidate { k, e });
    }
    if n == 1 {
        return Ok(BTreeSet::from([0]));
    }
    let km = k % n;
    let one_minus = (1 + n - km) % n;
    let inv_k = mod_inverse(km, n).ok_or(Error::NotHyperovalCandidate { k, e })?;
    let inv_1mk = mod_inverse(one_minus, n).ok_or(Error::NotHyperovalCandidate { k, e })?;
    let km1 = (km + n - 1) % n;
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    Ok(BTreeSet::from([
        km,
        inv_k,
        one_minus,
        inv_1mk,
        mul(km1, inv_k),
        // k/(k-1) = -k/(1-k)
        (n - mul(km, inv_1mk)) % n,
    ]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub k: u64,
    pub e: u32,
    #[serde(rename = "hyperoval")]
    pub is_hyperoval: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Verdict grid over the given exponents and every e in 1..=e_max, computed
/// in parallel and returned in (k, e) order. Odd k gives a rejected row.
pub fn scan_exponents(ks: &[u64], e_max: u32) -> Vec<ScanRow> {
    let cells: Vec<(u64, u32)> = ks.iter().flat_map(|&k| (1..=e_max).map(move |e| (k, e))).collect();
    cells
        .par_iter()
        .map(|&(k, e)| match perm_poly_test(k, e) {
            Ok(v) => ScanRow { k, e, is_hyperoval: Some(v.is_hyperoval), note: None },
            Err(err) => ScanRow { k, e, is_hyperoval: None, note: Some(err.to_string()) },
        })
        .collect()
}

/// Even k in 2..=k_max, e in 1..=e_max.
pub fn scan(k_max: u64, e_max: u32) -> Vec<ScanRow> {
    let ks: Vec<u64> = (2..=k_max).step_by(2).collect();
    scan_exponents(&ks, e_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn segre_examples() {
        assert!(determinant_test(6, 3).unwrap().is_hyperoval);
        assert!(perm_poly_test(6, 3).unwrap().is_hyperoval);
        assert!(perm_poly_test(2, 5).unwrap().is_hyperoval);
        assert!(!determinant_test(4, 2).unwrap().is_hyperoval);
        assert!(!perm_poly_test(10, 7).unwrap().is_hyperoval);
    }

    #[test]
    fn witness_for_6_over_gf4_is_least() {
        let v = determinant_test(6, 2).unwrap();
        assert!(!v.is_hyperoval);
        let w = v.witness.unwrap().map(|z| z.bits());
        assert_eq!(w, [1, 2, 3]);
        // oracle: scan in the same order with the plain determinant
        let ctx = make_field(2).unwrap();
        let mut first = None;
        'o: for x in 0..4 {
            for y in x + 1..4 {
                for z in y + 1..4 {
                    if determinant(&ctx, 6, x, y, z) == 0 {
                        first = Some([x, y, z]);
                        break 'o;
                    }
                }
            }
        }
        assert_eq!(first, Some(w));
    }

    #[test]
    fn perm_witness_vanishes() {
        for (k, e) in [(4, 2), (6, 4), (10, 7), (12, 5), (8, 6)] {
            let v = perm_poly_test(k, e).unwrap();
            let ctx = make_field(e).unwrap();
            let w = v.witness.expect("not a hyperoval").map(|z| z.bits());
            assert!(w[0] < w[1] && w[1] < w[2]);
            assert_eq!(determinant(&ctx, k, w[0], w[1], w[2]), 0);
        }
    }

    #[test]
    fn odd_k_rejected() {
        assert_eq!(determinant_test(3, 2), Err(Error::OddK(3)));
        let rows = scan_exponents(&[3], 1);
        assert_eq!(rows[0].is_hyperoval, None);
    }

    #[test]
    fn orbits() {
        assert_eq!(equivalence_orbit(2, 2).unwrap(), BTreeSet::from([2]));
        let o = equivalence_orbit(6, 5).unwrap();
        assert!(o.contains(&6) && o.contains(&26));
        assert!(equivalence_orbit(2, 3).unwrap().contains(&4));
        assert!(equivalence_orbit(4, 2).is_err());
    }
}
