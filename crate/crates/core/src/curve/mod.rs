//! The curves f_k and g_k: construction, singular locus, point counts and
//! the counting inequalities.

mod count;
mod inequalities;
mod singular;

pub use count::{count_points, degenerate_count, degenerate_points, weil_e0, weil_report, WeilReport, WeilRow};
pub use inequalities::{counting_inequalities, inequality_scan, IneqCheck, InequalityRow, InequalityScan};
pub use singular::{
    infinity_check, singular_points, table_check, tangent_data, InfinityCheck, PointType, SingPoint, TableCheck,
};

use serde::Serialize;

use crate::error::{internal, Error, Result};
use crate::field::{order_of_two, FieldCtx};
use crate::poly::MPoly;

/// k = 2^i * ell with ell odd; the singular locus lives in GF(2^m_split).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveParams {
    pub k: u64,
    pub i: u32,
    pub ell: u64,
    pub m_split: u32,
}

impl CurveParams {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 || k % 2 == 1 {
            return Err(Error::OddK(k));
        }
        let i = k.trailing_zeros();
        let ell = k >> i;
        Ok(Self { k, i, ell, m_split: order_of_two(ell) as u32 })
    }

    pub fn two_i(&self) -> u64 {
        1 << self.i
    }

    pub fn degree(&self) -> u64 {
        self.k - 2
    }
}

const MAX_K: u64 = 128;

pub(crate) fn check_k(k: u64) -> Result<()> {
    if k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::InvalidParameter(format!("k = {k} outside 2..={MAX_K}")));
    }
    Ok(())
}

/// f_k(x, y) = x y^k + y x^k + x^k + y^k + x + y over GF(2).
pub fn build_fk(k: u64) -> Result<MPoly> {
    check_k(k)?;
    let k = k as u32;
    Ok(MPoly::from_terms(
        FieldCtx::gf2(),
        2,
        [([1, k, 0], 1), ([k, 1, 0], 1), ([k, 0, 0], 1), ([0, k, 0], 1), ([1, 0, 0], 1), ([0, 1, 0], 1)],
    ))
}

/// Homogeneous f_k(x, y, z).
pub fn build_fk_hom(k: u64) -> Result<MPoly> {
    check_k(k)?;
    let k = k as u32;
    Ok(MPoly::from_terms(
        FieldCtx::gf2(),
        3,
        [([1, k, 0], 1), ([k, 1, 0], 1), ([1, 0, k], 1), ([k, 0, 1], 1), ([0, 1, k], 1), ([0, k, 1], 1)],
    ))
}

fn divide_chain(mut f: MPoly, divisors: &[MPoly]) -> Result<MPoly> {
    for d in divisors {
        f = f.exact_divide(d).map_err(|_| internal("f_k is not divisible by the line product"))?;
    }
    Ok(f)
}

/// g_k(x, y) = f_k / ((x+y)(x+1)(y+1)).
pub fn build_gk(k: u64) -> Result<MPoly> {
    let g = FieldCtx::gf2();
    let lines = ["x+y", "x+1", "y+1"].map(|s| MPoly::parse(g, 2, s).unwrap());
    divide_chain(build_fk(k)?, &lines)
}

/// g_k(x, y, z) = f_k(x, y, z) / ((x+y)(x+z)(y+z)), homogeneous of degree k-2.
pub fn build_gk_hom(k: u64) -> Result<MPoly> {
    let g = FieldCtx::gf2();
    let lines = ["x+y", "x+z", "y+z"].map(|s| MPoly::parse(g, 3, s).unwrap());
    divide_chain(build_fk_hom(k)?, &lines)
}

/// (x+y)(x+1)(y+1)
pub fn line_product() -> MPoly {
    MPoly::parse(FieldCtx::gf2(), 2, "x^2*y+x*y^2+x^2+y^2+x+y").unwrap()
}

/// p(x, y, V) = g_k(x, y, x + V) with V in the third slot, and
/// q(x, W) = p(x, x + W, 0) with W in the second slot.
#[derive(Clone, Debug)]
pub struct ReductionPolys {
    pub p: MPoly,
    pub q: MPoly,
}

pub fn reduction_polys(k: u64) -> Result<ReductionPolys> {
    let g = FieldCtx::gf2();
    let gk = build_gk_hom(k)?;
    let x_plus_v = MPoly::parse(g, 3, "x+z").unwrap();
    let p = gk.substitute(2, &x_plus_v)?;
    let zero = MPoly::zero(g, 3);
    let p0 = p.substitute(2, &zero)?;
    let x_plus_w = MPoly::parse(g, 3, "x+y").unwrap();
    let q = p0.substitute(1, &x_plus_w)?;
    let q = MPoly::from_terms(g, 2, q.terms().map(|(m, c)| (m.0, *c)));

    // p(x, y, 0) (x+y)^2 = x^k + y^k
    let kk = k as u32;
    let xy2 = MPoly::parse(g, 3, "x^2+y^2").unwrap();
    let target = MPoly::from_terms(g, 3, [([kk, 0, 0], 1), ([0, kk, 0], 1)]);
    if p0.mul(&xy2) != target {
        return Err(internal("p(x, y, 0) (x+y)^2 != x^k + y^k"));
    }
    // q(x, 1) = x^k + (x+1)^k
    let q1 = q.substitute(1, &MPoly::one(g, 2))?;
    let x1 = MPoly::parse(g, 2, "x+1").unwrap();
    let expect = MPoly::from_terms(g, 2, [([kk, 0, 0], 1)]).add(&x1.pow(k));
    if q1 != expect {
        return Err(internal("q(x, 1) != x^k + (x+1)^k"));
    }
    Ok(ReductionPolys { p, q })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Schoolbook long division by each line in turn, written against raw
    /// coefficient grids so it shares no code with `exact_divide`.
    fn grid_divide_by_lines(k: usize) -> Vec<Vec<u8>> {
        let n = k + 1;
        let mut f = vec![vec![0u8; n + 1]; n + 1];
        for (i, j) in [(1, k), (k, 1), (k, 0), (0, k), (1, 0), (0, 1)] {
            f[i][j] ^= 1;
        }
        // divide by (x + c y + d) style lines: (x+y), (x+1), then (y+1)
        let div_x_plus = |f: &Vec<Vec<u8>>, y_coef: u8, c: u8| -> Vec<Vec<u8>> {
            // divide by x + y_coef*y + c, eliminating the highest x power
            let mut r = f.clone();
            let mut q = vec![vec![0u8; n + 1]; n + 1];
            for i in (1..=n).rev() {
                for j in (0..=n).rev() {
                    if r[i][j] == 1 {
                        q[i - 1][j] ^= 1;
                        r[i][j] ^= 1;
                        if y_coef == 1 {
                            r[i - 1][j + 1] ^= 1;
                        }
                        if c == 1 {
                            r[i - 1][j] ^= 1;
                        }
                    }
                }
            }
            assert!(r.iter().flatten().all(|&b| b == 0));
            q
        };
        let a = div_x_plus(&f, 1, 0);
        let b = div_x_plus(&a, 0, 1);
        // (y+1): transpose, divide, transpose back
        let t: Vec<Vec<u8>> = (0..=n).map(|j| (0..=n).map(|i| b[i][j]).collect()).collect();
        let c = div_x_plus(&t, 0, 1);
        (0..=n).map(|i| (0..=n).map(|j| c[j][i]).collect()).collect()
    }

    fn grid_of(p: &MPoly, n: usize) -> Vec<Vec<u8>> {
        let mut g = vec![vec![0u8; n + 1]; n + 1];
        for (m, _) in p.terms() {
            g[m.0[0] as usize][m.0[1] as usize] = 1;
        }
        g
    }

    #[test]
    fn g4_is_the_conic() {
        let g = FieldCtx::gf2();
        assert_eq!(build_gk(4).unwrap(), MPoly::parse(g, 2, "x^2+y^2+x*y+x+y+1").unwrap());
        assert_eq!(grid_of(&build_gk(4).unwrap(), 5), grid_divide_by_lines(4));
    }

    #[test]
    fn g6_matches_displayed_form() {
        let g = FieldCtx::gf2();
        let want = MPoly::parse(g, 2, "y^4+y^3+x*y^3+y^2+x*y^2+x^2*y^2+y+x*y+x^2*y+x^3*y+1+x+x^2+x^3+x^4").unwrap();
        assert_eq!(build_gk(6).unwrap(), want);
    }

    #[test]
    fn degrees_and_long_division_oracle() {
        for k in (4..=20).step_by(2) {
            let gk = build_gk(k).unwrap();
            assert_eq!(gk.total_degree(), Some(k as u32 - 2));
            assert_eq!(grid_of(&gk, k as usize + 1), grid_divide_by_lines(k as usize));
            assert_eq!(gk.swap_vars(0, 1), gk);
        }
    }

    #[test]
    fn homogeneous_matches_affine() {
        for k in [4u64, 6, 10, 12] {
            assert_eq!(build_gk_hom(k).unwrap().dehomogenize(2), build_gk(k).unwrap());
            assert!(build_gk_hom(k).unwrap().is_homogeneous());
        }
    }

    #[test]
    fn reductions() {
        let g = FieldCtx::gf2();
        let r = reduction_polys(4).unwrap();
        let p0 = r.p.substitute(2, &MPoly::zero(g, 3)).unwrap();
        assert_eq!(p0, MPoly::parse(g, 3, "x^2+y^2").unwrap());
        let q1 = r.q.substitute(1, &MPoly::one(g, 2)).unwrap();
        assert_eq!(q1, MPoly::one(g, 2));
        let r6 = reduction_polys(6).unwrap();
        let q1 = r6.q.substitute(1, &MPoly::one(g, 2)).unwrap();
        assert!(q1.total_degree().unwrap() <= 5);
    }

    #[test]
    fn params() {
        let p = CurveParams::new(12).unwrap();
        assert_eq!((p.i, p.ell, p.m_split), (2, 3, 2));
        let p = CurveParams::new(20).unwrap();
        assert_eq!((p.i, p.ell, p.m_split), (2, 5, 4));
        assert_eq!(CurveParams::new(7), Err(Error::OddK(7)));
        assert!(build_gk(3).is_err());
    }
}
