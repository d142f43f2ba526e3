use std::fmt::Write as _;

use anyhow::{bail, Result};
use serde_json::{json, Value};

use hyperoval_core::absfactor::{abs_irr_verdict, factor_over, segre_check, AbsVerdict};
use hyperoval_core::curve::{
    build_gk, inequality_scan, infinity_check, reduction_polys, singular_points, table_check, tangent_data,
    weil_report, CurveParams, PointType,
};
use hyperoval_core::field::{make_field, modulus_table};
use hyperoval_core::hyperoval::{equivalence_orbit, hyperoval_test, scan, Method};
use hyperoval_core::intersect::{absolute_curves, bezout_audit, type_lemma_checks};
use hyperoval_core::verify::{run_all, VerifyConfig};
use hyperoval_core::FieldCtx;

use crate::output::{opt, text_table, Report, Table};
use crate::UsageError;

const DUMP_MAX_E: u32 = 12;

pub fn fields(e_max: u32, dump: Option<u32>) -> Result<Report> {
    if let Some(e) = dump {
        return field_dump(e);
    }
    if !(1..=32).contains(&e_max) {
        bail!(UsageError(format!("--e-max {e_max} outside 1..=32")));
    }
    let moduli = modulus_table();
    let mut rows = Vec::new();
    let mut table = Table::new(&["e", "modulus", "primitive"]);
    for (e, modulus) in moduli.into_iter().take(e_max as usize) {
        let g = make_field(e)?.primitive_element();
        rows.push(json!({"e": e, "modulus": modulus, "primitive": format!("{g:#b}")}));
        table.push([e.to_string(), modulus, format!("{g:#b}")]);
    }
    let mut r = Report::new("fields", json!({ "fields": rows }));
    r.text = text_table(&table.header, &table.rows);
    r.table = table;
    Ok(r)
}

/// Every element of GF(2^e) with its discrete log to the primitive element.
fn field_dump(e: u32) -> Result<Report> {
    if !(1..=DUMP_MAX_E).contains(&e) {
        bail!(UsageError(format!("--dump needs --e in 1..={DUMP_MAX_E}")));
    }
    let ctx = make_field(e)?;
    let g = ctx.primitive_element();
    let mut log = vec![None; ctx.order() as usize];
    let mut a = 1u32;
    for n in 0..ctx.order() - 1 {
        log[a as usize] = Some(n);
        a = ctx.mul(a, g);
    }
    let mut table = Table::new(&["element", "log"]);
    for (bits, l) in log.iter().enumerate() {
        table.push([format!("{bits:#b}"), opt(*l)]);
    }
    let elements: Vec<Value> =
        log.iter().enumerate().map(|(bits, l)| json!({"element": format!("{bits:#b}"), "log": l})).collect();
    let mut r = Report::new(
        "fields",
        json!({"e": e, "modulus": format!("{:#b}", ctx.modulus()), "primitive": format!("{g:#b}"), "elements": elements}),
    );
    r.text =
        format!("{ctx} modulus {:#b}, primitive {g:#b}\n", ctx.modulus()) + &text_table(&table.header, &table.rows);
    r.table = table;
    Ok(r)
}

pub fn hyperoval(k: u64, e: u32, method: Method) -> Result<Report> {
    let v = hyperoval_test(k, e, method)?;
    let orbit: Option<Vec<u64>> = equivalence_orbit(k, e).ok().map(|o| o.into_iter().collect());
    let mut body = serde_json::to_value(&v)?;
    body["orbit"] = json!(orbit);
    let witness = v.witness.map(|w| w.map(|z| z.to_string()).join(" "));
    let mut r = Report::new("hyperoval", body);
    r.table = Table::new(&["k", "e", "method", "hyperoval", "witness"]);
    r.table.push([
        k.to_string(),
        e.to_string(),
        method_name(method).into(),
        v.is_hyperoval.to_string(),
        opt(witness.clone()),
    ]);
    r.text = match witness {
        None => format!("D(x^{k}) is a hyperoval in PG(2, 2^{e})\n"),
        Some(w) => format!("D(x^{k}) is not a hyperoval in PG(2, 2^{e}): determinant vanishes at ({w})\n"),
    };
    Ok(r)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Determinant => "det",
        Method::Permutation => "perm",
    }
}

pub fn scan_grid(k_max: u64, e_max: u32) -> Result<Report> {
    if k_max < 2 || !(1..=28).contains(&e_max) {
        bail!(UsageError("scan needs --k-max >= 2 and --e-max in 1..=28".into()));
    }
    let rows = scan(k_max, e_max);
    let mut table = Table::new(&["k", "e", "hyperoval", "note"]);
    for row in &rows {
        table.push([row.k.to_string(), row.e.to_string(), opt(row.is_hyperoval), opt(row.note.clone())]);
    }
    // one line per k, one column per e
    let header: Vec<String> = std::iter::once("k".to_string()).chain((1..=e_max).map(|e| e.to_string())).collect();
    let grid: Vec<Vec<String>> = rows
        .chunks(e_max as usize)
        .map(|c| {
            std::iter::once(c[0].k.to_string())
                .chain(c.iter().map(|r| match r.is_hyperoval {
                    Some(true) => "H".to_string(),
                    Some(false) => ".".to_string(),
                    None => "-".to_string(),
                }))
                .collect()
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut r = Report::new("scan", json!({ "k_max": k_max, "e_max": e_max, "rows": rows }));
    r.text = text_table(&header, &grid);
    r.table = table;
    Ok(r)
}

pub fn curve_report(k: u64) -> Result<Report> {
    let params = CurveParams::new(k)?;
    let gk = build_gk(k)?;
    reduction_polys(k)?;
    let points = singular_points(k)?.iter().map(|p| tangent_data(p, k)).collect::<hyperoval_core::Result<Vec<_>>>()?;
    let check = table_check(k, &points)?;
    let infinity = infinity_check(k)?;

    let mut table = Table::new(&[
        "alpha",
        "beta",
        "type",
        "m_f",
        "m_g",
        "sigma",
        "tau",
        "repeated_line",
        "next_form",
        "tangent_squarefree",
        "tangent_lines",
    ]);
    for p in &points {
        table.push([
            p.alpha.to_string(),
            p.beta.to_string(),
            format!("{:?}", p.ptype),
            p.m_f.to_string(),
            p.m_g.to_string(),
            p.sigma.to_string(),
            p.tau.to_string(),
            p.repeated_line_ok.to_string(),
            p.next_form_ok.to_string(),
            p.tangent_squarefree.to_string(),
            p.tangent_lines.to_string(),
        ]);
    }

    let two_i = params.two_i();
    let summary: Vec<Vec<String>> = [PointType::I, PointType::II, PointType::III]
        .iter()
        .map(|t| {
            let (mf, mg) = t.expected_multiplicities(two_i);
            let n = check.counts[*t as usize];
            vec![
                format!("{t:?}"),
                n.to_string(),
                check.expected_counts[*t as usize].to_string(),
                mf.to_string(),
                mg.to_string(),
            ]
        })
        .collect();
    let mut text = format!(
        "k = {k} = 2^{} * {}; g_k has degree {}; singular points in GF(2^{})\n\n",
        params.i,
        params.ell,
        params.degree(),
        params.m_split
    );
    text += &text_table(&["Type", "Number of Points", "expected", "m(f_k)", "m(g_k)"], &summary);
    let _ = writeln!(
        text,
        "\nfirst-order terms vanish: {}\nsingular points at infinity: {}",
        check.first_order_ok, !infinity.no_singular_points_at_infinity
    );

    let tangents_ok = points
        .iter()
        .all(|p| p.repeated_line_ok && p.next_form_ok && p.tangent_squarefree && p.tangent_lines as u64 == two_i + 1);
    let mut r = Report::new(
        "curve-report",
        json!({
            "k": k,
            "params": params,
            "g_k": gk,
            "singular_points": points,
            "table": check,
            "infinity": infinity,
            "tangents_ok": tangents_ok,
        }),
    );
    r.failure = if !check.ok {
        Some(format!("k = {k}: singular point table mismatch {:?}", check.multiplicity_mismatches))
    } else if !infinity.no_singular_points_at_infinity {
        Some(format!("k = {k}: singular point at infinity"))
    } else {
        points
            .iter()
            .find(|p| !(p.repeated_line_ok && p.next_form_ok && p.tangent_squarefree))
            .map(|p| format!("k = {k}: tangent lemma fails at ({}, {})", p.alpha, p.beta))
    };
    r.text = text;
    r.table = table;
    Ok(r)
}

pub fn weil(k: u64, e_max: u32) -> Result<Report> {
    let w = weil_report(k, e_max)?;
    let mut table = Table::new(&["e", "n_e", "n_factor", "bound_ok"]);
    for row in &w.counts {
        table.push([row.e.to_string(), row.n_e.to_string(), opt(row.n_factor), opt(row.bound_ok)]);
    }
    let mut text = format!(
        "k = {k}, verdict {:?}, certified degree {}, e0 = {}, e0 (degree k-2) = {}\n",
        w.verdict,
        opt(w.certified_degree),
        opt(w.e0),
        opt(w.e0_full_degree)
    );
    if let Some(n) = &w.note {
        let _ = writeln!(text, "{n}");
    }
    text += &text_table(&table.header, &table.rows);
    let failure = w
        .counts
        .iter()
        .find(|r| r.bound_ok == Some(false))
        .map(|r| format!("k = {k}, e = {}: N_e = {} violates the Weil bound", r.e, r.n_e));
    let mut r = Report::new("weil", serde_json::to_value(&w)?);
    r.text = text;
    r.table = table;
    r.failure = failure;
    Ok(r)
}

pub fn bezout(k: u64) -> Result<Report> {
    let curves = absolute_curves(k)?;
    let audit = bezout_audit(&curves)?;
    let types = type_lemma_checks(k)?;
    let mut table = Table::new(&["u", "v", "point", "value"]);
    for p in &audit.pairs {
        for rec in &p.records {
            table.push([rec.u_id.to_string(), rec.v_id.to_string(), point_string(&rec.point), rec.value.to_string()]);
        }
    }
    let mut text = String::new();
    for c in &curves {
        let _ = writeln!(text, "u{} (group {}): {}", c.id, c.group, c.poly);
    }
    let pairs: Vec<Vec<String>> = audit
        .pairs
        .iter()
        .map(|p| {
            vec![
                format!("u{}", p.u_id),
                format!("u{}", p.v_id),
                p.records.len().to_string(),
                p.total.to_string(),
                p.degree_product.to_string(),
            ]
        })
        .collect();
    text += &text_table(&["u", "v", "points", "total", "deg product"], &pairs);
    let _ = writeln!(
        text,
        "within groups {}, across groups {}; type lemma violations {}{}",
        audit.within_total,
        audit.cross_total,
        types.violations.len(),
        if types.vacuous { " (single absolute factor)" } else { "" }
    );
    let failure = if let Some(p) = audit.pairs.iter().find(|p| !p.ok) {
        Some(format!("k = {k}: u{} . u{} totals {} != {}", p.u_id, p.v_id, p.total, p.degree_product))
    } else {
        types.violations.first().map(|v| {
            format!(
                "k = {k}: {:?} point ({}, {}) gives I = {} for u{}, u{}",
                v.ptype, v.alpha, v.beta, v.value, v.u_id, v.v_id
            )
        })
    };
    let mut r = Report::new("bezout", json!({"k": k, "curves": curves, "audit": audit, "type_lemmas": types}));
    r.text = text;
    r.table = table;
    r.failure = failure;
    Ok(r)
}

fn point_string(p: &[hyperoval_core::FFElem; 3]) -> String {
    format!("({} : {} : {})", p[0], p[1], p[2])
}

pub fn factor(k: u64, ext: Option<u32>) -> Result<Report> {
    match ext {
        Some(m) => factor_over_ext(k, m),
        None => verdict(k),
    }
}

fn factor_over_ext(k: u64, m: u32) -> Result<Report> {
    let ctx = FieldCtx::new(m)?;
    let g = build_gk(k)?.embed(&ctx)?;
    let fac = factor_over(&g, &ctx)?;
    let mut table = Table::new(&["factor", "multiplicity", "degree"]);
    for (f, mult) in &fac.factors {
        table.push([f.to_string(), mult.to_string(), opt(f.total_degree())]);
    }
    let mut text = format!("g_{k} over {ctx}: {} irreducible factors\n", fac.len());
    for (f, mult) in &fac.factors {
        let _ = writeln!(text, "  ({f})^{mult}");
    }
    let mut r = Report::new("factor", json!({"k": k, "factorization": fac}));
    if fac.expand() != g {
        r.failure = Some(format!("k = {k}: product of factors over {ctx} differs from g_k"));
    }
    r.text = text;
    r.table = table;
    Ok(r)
}

fn verdict(k: u64) -> Result<Report> {
    let v: AbsVerdict = abs_irr_verdict(k)?;
    let mut table = Table::new(&["factor", "multiplicity", "degree", "r", "absolute_factors"]);
    let mut text = format!("g_{k}: class {:?}\n", v.class);
    for b in &v.tree.base_factors {
        let abs: Vec<String> = b.abs_factors.iter().map(|f| f.to_string()).collect();
        table.push([
            b.poly.to_string(),
            b.multiplicity.to_string(),
            b.degree.to_string(),
            b.r.to_string(),
            abs.join("; "),
        ]);
        let _ = writeln!(
            text,
            "  ({})^{}  degree {}, splits into {} over GF(2^{})",
            b.poly, b.multiplicity, b.degree, b.n, b.r
        );
        if b.r > 1 {
            for a in &abs {
                let _ = writeln!(text, "    {a}");
            }
        }
    }
    if let Some(c) = &v.cota {
        let _ = writeln!(
            text,
            "sum deg^2/n = {}/{} against deg(g_k)^2/2 = {}/2: strict {}, weak {}",
            c.sum_num, c.sum_den, c.deg_sq, c.strict, c.weak
        );
    }
    let failure = if v.tree.base_factors.iter().any(|b| !b.galois_consistent) {
        Some(format!("k = {k}: absolute factors not closed under Frobenius"))
    } else if v.tree.degree_sum() as u64 != k - 2 {
        Some(format!("k = {k}: factor degrees do not sum to k - 2"))
    } else {
        v.cota.filter(|c| !c.weak).map(|c| format!("k = {k}: 2 * {}/{} > {}", c.sum_num, c.sum_den, c.deg_sq))
    };
    let mut r = Report::new("factor", serde_json::to_value(&v)?);
    r.text = text;
    r.table = table;
    r.failure = failure;
    Ok(r)
}

pub fn verify_segre(k: u64) -> Result<Report> {
    let c = segre_check(k)?;
    let mut table = Table::new(&["factor"]);
    for f in &c.factors {
        table.push([f.to_string()]);
    }
    let mut text =
        format!("g_{k} over GF(2^{}) as a product of {} closed-form factors\n", c.field_degree, c.factors.len());
    for f in &c.factors {
        let _ = writeln!(text, "  {f}");
    }
    let _ = writeln!(text, "product matches: {}\nfactorization matches: {}", c.product_matches, c.factors_match);
    let mut r = Report::new("verify-segre", serde_json::to_value(&c)?);
    if !c.ok() {
        r.failure = Some(format!("k = {k}: closed-form factorization does not match"));
    }
    r.text = text;
    r.table = table;
    Ok(r)
}

pub fn inequalities(i_max: u32, ell_max: u64) -> Result<Report> {
    if !(1..=40).contains(&i_max) || ell_max == 0 {
        bail!(UsageError("inequality-scan needs --i-max in 1..=40 and --ell-max >= 1".into()));
    }
    let s = inequality_scan(i_max, ell_max);
    let header =
        ["i", "ell", "k", "equal_degree_x4", "equal_degree_positive", "bezout", "bezout_simplified", "ell_one_branch"];
    let mut table = Table::new(&header);
    for row in s.i_zero_rows.iter().chain(&s.rows) {
        table.push([
            row.i.to_string(),
            row.ell.to_string(),
            row.k.to_string(),
            row.equal_degree_x4.to_string(),
            row.equal_degree_positive.to_string(),
            row.bezout.holds.to_string(),
            row.bezout_simplified.holds.to_string(),
            opt(row.ell_one_branch),
        ]);
    }
    let mut text = text_table(&header, &table.rows);
    let _ = writeln!(text, "\nnot positive at (i, ell): {:?}", s.non_positive);
    let _ = writeln!(text, "ell = 1 branch holds for i in {:?}", s.ell_one_holds);
    let mut r = Report::new("inequality-scan", serde_json::to_value(&s)?);
    r.text = text;
    r.table = table;
    Ok(r)
}

pub fn verify_paper(cfg: &VerifyConfig) -> Result<Report> {
    let results = run_all(cfg);
    let mut table = Table::new(&["criterion", "name", "passed", "detail"]);
    let mut text = String::new();
    for c in &results {
        table.push([c.id.to_string(), c.name.to_string(), c.passed.to_string(), c.detail.clone()]);
        let _ = writeln!(text, "{:>2} {:<36} {}  {}", c.id, c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail);
    }
    let failed: Vec<u32> = results.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    let mut r = Report::new("verify-paper", json!({"config": cfg, "criteria": results, "failed": failed}));
    r.failure = results.iter().find(|c| !c.passed).map(|c| format!("criterion {} ({}): {}", c.id, c.name, c.detail));
    r.text = text;
    r.table = table;
    Ok(r)
}
