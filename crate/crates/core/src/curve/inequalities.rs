//! Exact evaluation of the Bezout counting inequalities. Every quantity is
//! scaled by 4 so all sides are integers, including the i = 0 rows.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IneqCheck {
    pub lhs_x4: i128,
    pub rhs_x4: i128,
    pub holds: bool,
}

impl IneqCheck {
    fn gt(lhs_x4: i128, rhs_x4: i128) -> Self {
        Self { lhs_x4, rhs_x4, holds: lhs_x4 > rhs_x4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityRow {
    pub i: u32,
    pub ell: u64,
    pub k: u64,
    /// (2^{2i-2} - 2^i)(ell^2 - 1) + 2^{i+1}(ell - 1), times 4.
    pub equal_degree_x4: i128,
    pub equal_degree_positive: bool,
    /// deg(g_k)^2 / 4 against the type-point bound.
    pub bezout: IneqCheck,
    /// 2^{2i-2}(ell^2 - 2) > 2^i (ell-1)^2 - 3 * 2^{i-1} as displayed.
    pub bezout_simplified: IneqCheck,
    /// For ell = 1: 2^{i-2} < 3/2.
    pub ell_one_branch: Option<bool>,
}

fn p2(n: i64) -> i128 {
    // 4 * 2^n for n >= -2
    1i128 << (n + 2)
}

pub fn counting_inequalities(i: u32, ell: u64) -> InequalityRow {
    let l = ell as i128;
    let ii = i as i64;
    let k = (1u64 << i) * ell;

    let equal_degree_x4 = (p2(2 * ii - 2) - p2(ii)) * (l * l - 1) + p2(ii + 1) * (l - 1);

    // deg = 2^i ell - 2; (deg^2 / 4) * 4 = deg^2
    let deg = (1i128 << i) * l - 2;
    let lhs = deg * deg;
    // 4 (2^{i-1} - 1)(2^i - 3) = 2 (2^i - 2)(2^i - 3)
    let t = 1i128 << i;
    let rhs = 2 * (t - 2) * (t - 3) + 4 * t * (l - 1) * (l - 2);
    let bezout = IneqCheck::gt(lhs, rhs);

    let s_lhs = p2(2 * ii - 2) * (l * l - 2);
    let s_rhs = 4 * t * (l - 1) * (l - 1) - 3 * p2(ii - 1);
    let bezout_simplified = IneqCheck::gt(s_lhs, s_rhs);

    // 2^{i-2} < 3/2  <=>  2^i < 6
    let ell_one_branch = (ell == 1).then_some(t < 6);

    InequalityRow {
        i,
        ell,
        k,
        equal_degree_x4,
        equal_degree_positive: equal_degree_x4 > 0,
        bezout,
        bezout_simplified,
        ell_one_branch,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityScan {
    pub rows: Vec<InequalityRow>,
    /// i = 0 rows, reported without interpretation.
    pub i_zero_rows: Vec<InequalityRow>,
    /// (i, ell) with the equal-degree expression not positive.
    pub non_positive: Vec<(u32, u64)>,
    /// i with the ell = 1 branch holding.
    pub ell_one_holds: Vec<u32>,
}

pub fn inequality_scan(i_max: u32, ell_max: u64) -> InequalityScan {
    let ells: Vec<u64> = (1..=ell_max).step_by(2).collect();
    let rows: Vec<InequalityRow> =
        (1..=i_max).flat_map(|i| ells.iter().map(move |&l| counting_inequalities(i, l))).collect();
    let i_zero_rows = ells.iter().map(|&l| counting_inequalities(0, l)).collect();
    let non_positive = rows.iter().filter(|r| !r.equal_degree_positive).map(|r| (r.i, r.ell)).collect();
    let ell_one_holds = rows.iter().filter(|r| r.ell_one_branch == Some(true)).map(|r| r.i).collect();
    InequalityScan { rows, i_zero_rows, non_positive, ell_one_holds }
}
