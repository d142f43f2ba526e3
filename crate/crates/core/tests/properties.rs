use proptest::prelude::*;

use hyperoval_core::absfactor::{abs_irr_verdict, factor_over, factor_tree, VerdictClass};
use hyperoval_core::curve::{build_fk, build_gk, degenerate_count, line_product, singular_points, table_check};
use hyperoval_core::field::{ell_th_roots, make_field, order_of_two, FieldCtx};
use hyperoval_core::hyperoval::{determinant, determinant_test, equivalence_orbit, perm_poly_test};
use hyperoval_core::poly::taylor::shift;
use hyperoval_core::poly::{binary_form_factor, taylor_shift, univariate_factor, MPoly, UPoly};
use hyperoval_core::verify::intersection_property_suite;

fn small_poly(ctx: FieldCtx, terms: &[(u32, u32, u32)]) -> MPoly {
    let q = ctx.order() as u32;
    MPoly::from_terms(ctx, 2, terms.iter().map(|&(i, j, c)| ([i, j, 0], c % q)))
}

fn terms_strategy(max_deg: u32) -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, any::<u32>()), 1..5)
}

/// Every monic polynomial of degree 1..=d/2 over a small field, by brute force.
fn has_small_divisor(f: &UPoly) -> bool {
    let ctx = f.ctx();
    let q = ctx.order();
    let d = f.deg0();
    for deg in 1..=d / 2 {
        for idx in 0..q.pow(deg as u32) {
            let mut c: Vec<u32> = (0..deg).map(|i| ((idx / q.pow(i as u32)) % q) as u32).collect();
            c.push(1);
            if UPoly::from_coeffs(ctx, c).divides(f) {
                return true;
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fermat_in_unit_group(e in 1u32..=32, raw in any::<u64>()) {
        let ctx = make_field(e).unwrap();
        let a = (raw % (ctx.order() - 1)) as u32 + 1;
        prop_assert_eq!(ctx.pow(a, ctx.order() - 1), 1);
    }

    #[test]
    fn frobenius_is_field_automorphism(e in 1u32..=32, ra in any::<u64>(), rb in any::<u64>(), j in 0u32..32) {
        let ctx = make_field(e).unwrap();
        let a = (ra % ctx.order()) as u32;
        let b = (rb % ctx.order()) as u32;
        prop_assert_eq!(ctx.frobenius(a, e), a);
        prop_assert_eq!(ctx.frobenius(a ^ b, j), ctx.frobenius(a, j) ^ ctx.frobenius(b, j));
        prop_assert_eq!(ctx.frobenius(ctx.mul(a, b), j), ctx.mul(ctx.frobenius(a, j), ctx.frobenius(b, j)));
    }

    #[test]
    fn embed_is_homomorphism(pair in prop::sample::select(vec![(1u32, 4u32), (2, 4), (2, 6), (3, 6), (4, 8), (3, 12), (4, 12), (5, 10), (8, 16), (16, 32)]),
                             ra in any::<u64>(), rb in any::<u64>()) {
        let (s, t) = pair;
        let small = make_field(s).unwrap();
        let big = make_field(t).unwrap();
        let a = small.wrap((ra % small.order()) as u32);
        let b = small.wrap((rb % small.order()) as u32);
        let ea = a.embed(&big).unwrap();
        let eb = b.embed(&big).unwrap();
        prop_assert_eq!((a + b).embed(&big).unwrap(), ea + eb);
        prop_assert_eq!((a * b).embed(&big).unwrap(), ea * eb);
        prop_assert_eq!(a.multiplicative_order(), ea.multiplicative_order());
    }

    #[test]
    fn ell_th_roots_form_a_group(ell in (0u64..40).prop_map(|t| 2 * t + 1)) {
        let m = order_of_two(ell) as u32;
        prop_assume!(m <= 20);
        let ctx = make_field(m).unwrap();
        let roots = ell_th_roots(ell, &ctx).unwrap();
        prop_assert_eq!(roots.len() as u64, ell);
        for a in &roots {
            prop_assert!(a.pow(ell).is_one());
            for b in &roots {
                prop_assert!(roots.contains(&(*a * *b)));
            }
        }
    }

    #[test]
    fn exact_divide_round_trip(e in 1u32..=4, f in terms_strategy(4), d in terms_strategy(3)) {
        let ctx = make_field(e).unwrap();
        let (f, d) = (small_poly(ctx, &f), small_poly(ctx, &d));
        prop_assume!(!d.is_zero());
        prop_assert_eq!(f.mul(&d).exact_divide(&d).unwrap(), f);
    }

    #[test]
    fn shift_twice_is_identity(e in 1u32..=6, f in terms_strategy(6), ra in any::<u32>(), rb in any::<u32>()) {
        let ctx = make_field(e).unwrap();
        let f = small_poly(ctx, &f);
        let (a, b) = (ra % ctx.order() as u32, rb % ctx.order() as u32);
        let comps = taylor_shift(&f, &ctx.wrap(a), &ctx.wrap(b)).unwrap();
        let moved = comps.sum();
        prop_assert_eq!(&moved, &shift(&f, a, b));
        prop_assert_eq!(shift(&moved, a, b), f);
    }

    #[test]
    fn univariate_factors_are_irreducible(e in 1u32..=2, raw in prop::collection::vec(any::<u32>(), 2..=9)) {
        let ctx = make_field(e).unwrap();
        let q = ctx.order() as u32;
        let u = UPoly::from_coeffs(ctx, raw.iter().map(|c| c % q).collect());
        prop_assume!(u.degree().unwrap_or(0) >= 1);
        let fac = univariate_factor(&u);
        prop_assert_eq!(fac.expand(ctx), u);
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(!has_small_divisor(g));
        }
    }

    #[test]
    fn binary_forms_re_expand(e in 1u32..=3, roots in prop::collection::vec(any::<u32>(), 1..6), ypow in 0u32..3, unit in any::<u32>()) {
        let ctx = make_field(e).unwrap();
        let q = ctx.order() as u32;
        let mut h = MPoly::constant(ctx, 2, unit % (q - 1) + 1).mul_mono([0, ypow, 0]);
        for r in &roots {
            h = h.mul(&MPoly::from_terms(ctx, 2, [([1, 0, 0], 1), ([0, 1, 0], r % q)]));
        }
        let bf = binary_form_factor(&h).unwrap();
        prop_assert_eq!(bf.expand(), h.clone());
        let hx = h.substitute(1, &MPoly::one(ctx, 2)).unwrap().to_univariate(0).unwrap();
        let separable = hx.gcd(&hx.derivative()).is_one();
        prop_assert_eq!(bf.squarefree, separable && ypow <= 1);
    }

    #[test]
    fn hyperoval_methods_agree(k in (1u64..=6).prop_map(|t| 2 * t), e in 1u32..=5) {
        prop_assert_eq!(determinant_test(k, e).unwrap().is_hyperoval, perm_poly_test(k, e).unwrap().is_hyperoval);
    }

    #[test]
    fn orbit_preserves_hyperovals(k in (1u64..=60).prop_map(|t| 2 * t), e in 1u32..=9) {
        let Ok(orbit) = equivalence_orbit(k, e) else { return Ok(()); };
        let n = (1u64 << e) - 1;
        let here = perm_poly_test(k, e).unwrap().is_hyperoval;
        for m in orbit {
            // the class of m contains an even representative below 2n
            let even = if m % 2 == 0 { m } else { m + n };
            prop_assume!(even >= 2);
            prop_assert_eq!(perm_poly_test(even, e).unwrap().is_hyperoval, here, "k = {}, m = {}", k, even);
        }
    }

    #[test]
    fn determinant_is_antisymmetric(e in 1u32..=8, k in (1u64..=20).prop_map(|t| 2 * t), rx in any::<u32>(), ry in any::<u32>(), rz in any::<u32>()) {
        let ctx = make_field(e).unwrap();
        let q = ctx.order() as u32;
        let (x, y, z) = (rx % q, ry % q, rz % q);
        let d = determinant(&ctx, k, x, y, z);
        // -d = d in characteristic 2
        prop_assert_eq!(determinant(&ctx, k, y, x, z), d);
        prop_assert_eq!(determinant(&ctx, k, x, z, y), d);
        prop_assert_eq!(determinant(&ctx, k, z, y, x), d);
    }

    #[test]
    fn intersection_axioms(seed in any::<u64>()) {
        let s = intersection_property_suite(seed, 4).unwrap();
        prop_assert!(s.violations.is_empty(), "{:?}", s.violations);
    }

    #[test]
    fn factorization_round_trip(e in 1u32..=2, parts in prop::collection::vec(terms_strategy(2), 1..4), unit in any::<u32>()) {
        let ctx = make_field(e).unwrap();
        let q = ctx.order() as u32;
        let mut f = MPoly::constant(ctx, 2, unit % (q - 1) + 1);
        for p in &parts {
            let p = small_poly(ctx, p);
            if !p.is_zero() {
                f = f.mul(&p);
            }
        }
        let fac = factor_over(&f, &ctx).unwrap();
        prop_assert_eq!(fac.expand(), f);
    }
}

#[test]
fn curve_construction_identity() {
    for k in (4..=40).step_by(2) {
        assert_eq!(line_product().mul(&build_gk(k).unwrap()), build_fk(k).unwrap(), "k = {k}");
        assert_eq!(build_gk(k).unwrap().swap_vars(0, 1), build_gk(k).unwrap());
    }
}

#[test]
fn singular_type_counts() {
    for k in [6u64, 10, 12, 14, 18, 20, 24, 28] {
        let pts = singular_points(k).unwrap();
        let t = table_check(k, &pts).unwrap();
        let ell = k >> k.trailing_zeros();
        assert_eq!(t.counts.iter().sum::<u64>(), ell * ell, "k = {k}");
        assert!(t.ok && t.first_order_ok, "k = {k}");
        for p in &pts {
            assert!(p.alpha.pow(ell).is_one() && p.beta.pow(ell).is_one());
        }
    }
}

#[test]
fn degenerate_points_bounded() {
    for k in (4..=16).step_by(2) {
        for e in 1..=8 {
            assert!(degenerate_count(k, e).unwrap() <= 3 * k - 2, "k = {k}, e = {e}");
        }
    }
}

#[test]
fn factor_trees_are_consistent() {
    for k in (4..=40).step_by(2) {
        let tree = factor_tree(k).unwrap();
        assert_eq!(tree.expand(), build_gk(k).unwrap(), "k = {k}");
        assert_eq!(tree.degree_sum() as u64, k - 2, "k = {k}");
        for b in &tree.base_factors {
            assert!(b.galois_consistent, "k = {k}");
            assert_eq!(b.abs_factors.len() as u32, b.n);
            for a in &b.abs_factors {
                assert_eq!(a.total_degree(), Some(b.degree / b.n), "k = {k}");
            }
        }
    }
}

#[test]
fn verdict_classes() {
    for k in (4..=40).step_by(2) {
        let v = abs_irr_verdict(k).unwrap();
        if v.class == VerdictClass::C {
            assert!(v.cota.unwrap().weak, "k = {k}");
        }
        if k % 4 == 2 && k > 6 && k <= 38 {
            assert_eq!(v.class, VerdictClass::A, "k = {k}");
        }
    }
}
