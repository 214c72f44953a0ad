//! Seeded point sampling. ChaCha8 keeps streams identical across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::Expr;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` points drawn uniformly from the box `[lo, hi]^dim`.
pub fn uniform_points(seed: u64, count: usize, dim: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| (0..dim).map(|_| r.gen_range(lo..=hi)).collect())
        .collect()
}

/// A polynomial of degree at most 2 in `x^1..x^n` with coefficients uniform in `[−1, 1]`.
pub fn random_quadratic(r: &mut impl Rng, n: usize) -> Expr {
    let mut terms = vec![Expr::constant(r.gen_range(-1.0..=1.0))];
    for a in 0..n {
        terms.push(Expr::constant(r.gen_range(-1.0..=1.0)).mul(&Expr::var(a)));
        for b in a..n {
            let c = Expr::constant(r.gen_range(-1.0..=1.0));
            terms.push(c.mul(&Expr::var(a)).mul(&Expr::var(b)));
        }
    }
    Expr::sum(&terms)
}
