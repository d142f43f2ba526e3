//! Shared inputs for the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperoval_core::absfactor::segre_factors;
use hyperoval_core::poly::MPoly;
use hyperoval_core::{make_field, FFElem, FieldCtx};

/// `n` seeded operand pairs in GF(2^e).
pub fn operand_pairs(e: u32, n: usize) -> (FieldCtx, Vec<(u32, u32)>) {
    let ctx = make_field(e).expect("e in range");
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(e));
    let top = ctx.order();
    let pairs = (0..n).map(|_| (rng.gen_range(0..top) as u32, rng.gen_range(0..top) as u32)).collect();
    (ctx, pairs)
}

/// The two conics of g_6 over GF(4) and one of their common points,
/// where they meet with multiplicity 2.
pub fn conic_pair() -> (MPoly, MPoly, FFElem, FFElem) {
    let (ctx, f) = segre_factors(6).expect("k = 6 has closed-form factors");
    let w = ctx.wrap(2);
    (f[0].clone(), f[1].clone(), w, w * w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperoval_core::intersect::intersection_number;

    #[test]
    fn conics_meet_twice() {
        let (u, v, a, b) = conic_pair();
        assert_eq!(intersection_number(&u, &v, &a, &b).unwrap(), 2);
    }

    #[test]
    fn operands_fit_the_field() {
        let (ctx, pairs) = operand_pairs(13, 50);
        assert!(pairs.iter().all(|&(a, b)| u64::from(a.max(b)) < ctx.order()));
    }
}
