//! Dense bivariate polynomials viewed as elements of K[x][y]: content,
//! gcd, exact division and resultants.

use super::mpoly::MPoly;
use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// `rows[j]` is the coefficient of y^j, a polynomial in x. No trailing zero
/// rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiPoly {
    ctx: FieldCtx,
    rows: Vec<UPoly>,
}

impl BiPoly {
    pub fn zero(ctx: FieldCtx) -> Self {
        Self { ctx, rows: Vec::new() }
    }

    pub fn from_rows(ctx: FieldCtx, mut rows: Vec<UPoly>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        Self { ctx, rows }
    }

    pub fn from_mpoly(f: &MPoly) -> Self {
        Self::from_rows(f.ctx(), f.to_y_major())
    }

    pub fn to_mpoly(&self) -> MPoly {
        MPoly::from_y_major(self.ctx, &self.rows)
    }

    /// Constant in y.
    pub fn from_x(u: UPoly) -> Self {
        let ctx = u.ctx();
        Self::from_rows(ctx, vec![u])
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn rows(&self) -> &[UPoly] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.degree()).max()
    }

    pub fn row(&self, j: usize) -> UPoly {
        self.rows.get(j).cloned().unwrap_or_else(|| UPoly::zero(self.ctx))
    }

    /// Leading coefficient in y.
    pub fn lc_y(&self) -> UPoly {
        self.rows.last().cloned().unwrap_or_else(|| UPoly::zero(self.ctx))
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(other.rows.len());
        let rows = (0..n).map(|j| self.row(j).add(&other.row(j))).collect();
        BiPoly::from_rows(self.ctx, rows)
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(self.ctx);
        }
        let mut rows = vec![UPoly::zero(self.ctx); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                rows[i + j].add_assign(&a.mul(b));
            }
        }
        BiPoly::from_rows(self.ctx, rows)
    }

    pub fn scale_x(&self, u: &UPoly) -> BiPoly {
        BiPoly::from_rows(self.ctx, self.rows.iter().map(|r| r.mul(u)).collect())
    }

    /// Multiplies by y^n.
    pub fn shift_y(&self, n: usize) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut rows = vec![UPoly::zero(self.ctx); n];
        rows.extend(self.rows.iter().cloned());
        BiPoly::from_rows(self.ctx, rows)
    }

    /// Specializes x to a value, giving a polynomial in y.
    pub fn eval_x(&self, a: u32) -> UPoly {
        UPoly::from_coeffs(self.ctx, self.rows.iter().map(|r| r.eval(a)).collect())
    }

    /// Specializes y to a value, giving a polynomial in x.
    pub fn eval_y(&self, b: u32) -> UPoly {
        let mut acc = UPoly::zero(self.ctx);
        for r in self.rows.iter().rev() {
            acc = acc.scale(b);
            acc.add_assign(r);
        }
        acc
    }

    pub fn derivative_y(&self) -> BiPoly {
        let rows = (0..self.rows.len())
            .map(|j| if j % 2 == 1 { self.rows[j].clone() } else { UPoly::zero(self.ctx) })
            .skip(1)
            .collect();
        BiPoly::from_rows(self.ctx, rows)
    }

    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::from_rows(self.ctx, self.rows.iter().map(|r| r.derivative()).collect())
    }

    /// Exchanges the roles of x and y.
    pub fn transpose(&self) -> BiPoly {
        let dx = self.deg_x().map_or(0, |d| d + 1);
        let mut out = vec![vec![0u32; self.rows.len()]; dx];
        for (j, r) in self.rows.iter().enumerate() {
            for (i, &a) in r.coeffs().iter().enumerate() {
                out[i][j] = a;
            }
        }
        BiPoly::from_rows(self.ctx, out.into_iter().map(|c| UPoly::from_coeffs(self.ctx, c)).collect())
    }

    /// Monic gcd of the y-coefficients (zero for the zero polynomial).
    pub fn content_y(&self) -> UPoly {
        let mut g = UPoly::zero(self.ctx);
        for r in &self.rows {
            g = g.gcd(r);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by a polynomial in x that divides all of
    /// them.
    pub fn div_x(&self, u: &UPoly) -> Result<BiPoly> {
        let rows = self.rows.iter().map(|r| r.exact_div(u)).collect::<Result<Vec<_>>>()?;
        Ok(BiPoly::from_rows(self.ctx, rows))
    }

    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.div_x(&self.content_y()).expect("content divides")
    }

    /// Pseudo-remainder lc(b)^(da-db+1) * a mod b in K[x][y].
    pub fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_y().expect("division by zero");
        let lb = b.lc_y();
        let mut r = self.clone();
        while let Some(dr) = r.deg_y() {
            if dr < db {
                break;
            }
            let lr = r.lc_y();
            let t = b.scale_x(&lr).shift_y(dr - db);
            r = r.scale_x(&lb).add(&t);
        }
        r
    }

    /// Exact quotient self / d in K[x][y].
    pub fn exact_div(&self, d: &BiPoly) -> Result<BiPoly> {
        let dd = d.deg_y().ok_or(Error::DivisionByZero)?;
        let ld = d.lc_y();
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(self.ctx); self.rows.len().saturating_sub(dd)];
        while let Some(dr) = r.deg_y() {
            if dr < dd {
                return Err(Error::NonzeroRemainder);
            }
            let c = r.lc_y().exact_div(&ld)?;
            let t = d.scale_x(&c).shift_y(dr - dd);
            r = r.add(&t);
            q[dr - dd] = c;
        }
        Ok(BiPoly::from_rows(self.ctx, q))
    }

    pub fn divides(&self, f: &BiPoly) -> bool {
        !self.is_zero() && f.exact_div(self).is_ok()
    }

    /// Normalizes so the leading coefficient in y has a monic leading
    /// coefficient in x.
    pub fn normalize(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc_y().lc();
        let inv = self.ctx.inv(lc).unwrap();
        BiPoly::from_rows(self.ctx, self.rows.iter().map(|r| r.scale(inv)).collect())
    }

    /// Greatest common divisor in K[x, y], normalized.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalize();
        }
        if other.is_zero() {
            return self.normalize();
        }
        let c = self.content_y().gcd(&other.content_y());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg_y() == Some(0) {
                a = BiPoly::from_x(UPoly::one(self.ctx));
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale_x(&c).normalize()
    }

    /// Res_y(self, other) as a polynomial in x, by fraction-free elimination
    /// on the Sylvester matrix.
    pub fn resultant_y(&self, other: &BiPoly) -> UPoly {
        let ctx = self.ctx;
        let (m, n) = match (self.deg_y(), other.deg_y()) {
            (Some(m), Some(n)) => (m, n),
            _ => return UPoly::zero(ctx),
        };
        if m == 0 && n == 0 {
            return UPoly::one(ctx);
        }
        if m == 0 {
            return self.rows[0].pow(n as u64);
        }
        if n == 0 {
            return other.rows[0].pow(m as u64);
        }
        let size = m + n;
        let mut mat = vec![vec![UPoly::zero(ctx); size]; size];
        for r in 0..n {
            for j in 0..=m {
                mat[r][r + m - j] = self.rows[j].clone();
            }
        }
        for r in 0..m {
            for j in 0..=n {
                mat[n + r][r + n - j] = other.rows[j].clone();
            }
        }
        bareiss_det(mat, ctx)
    }
}

/// Determinant over K[x] by Bareiss elimination (signs are irrelevant in
/// characteristic 2).
pub fn bareiss_det(mut mat: Vec<Vec<UPoly>>, ctx: FieldCtx) -> UPoly {
    let n = mat.len();
    let mut prev = UPoly::one(ctx);
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => mat.swap(k, r),
                None => return UPoly::zero(ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = mat[i][j].mul(&mat[k][k]).add(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = UPoly::zero(ctx);
        }
        prev = mat[k][k].clone();
    }
    mat[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn b(ctx: FieldCtx, s: &str) -> BiPoly {
        BiPoly::from_mpoly(&MPoly::parse(ctx, 2, s).unwrap())
    }

    #[test]
    fn gcd_of_products() {
        let g = FieldCtx::gf2();
        let a = b(g, "x+y+1");
        let u = b(g, "x^2+x*y+y^3");
        let v = b(g, "x*y+1");
        let got = a.mul(&u).gcd(&a.mul(&v));
        assert_eq!(got, a.normalize());
        assert_eq!(u.gcd(&v).deg_y(), Some(0));
    }

    #[test]
    fn gcd_with_x_content() {
        let g = FieldCtx::gf2();
        let f = b(g, "x^2*y+x*y+x^2+x");
        let h = b(g, "x*y^2+x+y^2+1");
        // x(x+1)(y+1) and (x+1)(y+1)^2
        assert_eq!(f.gcd(&h), b(g, "x*y+x+y+1"));
    }

    #[test]
    fn resultant_matches_common_root() {
        let ctx = make_field(2).unwrap();
        let u = b(ctx, "y+x");
        let v = b(ctx, "y^2+y+x");
        // substitute y = x: x^2 + x + x = x^2
        assert_eq!(u.resultant_y(&v), UPoly::from_coeffs(ctx, vec![0, 0, 1]));
    }

    #[test]
    fn exact_div_roundtrip() {
        let ctx = make_field(3).unwrap();
        let f = b(ctx, "x^2*y^2+0b11*x*y+y+1");
        let d = b(ctx, "x*y+0b101");
        assert_eq!(f.mul(&d).exact_div(&d).unwrap(), f);
        assert!(f.exact_div(&d).is_err());
    }
}
