//! Seeded randomness for generic specializations.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{Polynomial, Rational, Support};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with numerator in `[-bound, bound]` and denominator in `[1, den_bound]`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64, den_bound: i64) -> Rational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            let d = rng.gen_range(1..=den_bound.max(1));
            return Rational::new(BigInt::from(n), BigInt::from(d));
        }
    }
}

/// Polynomial with the given support and random nonzero coefficients.
pub fn random_polynomial<R: Rng>(rng: &mut R, support: &Support, bound: i64, den_bound: i64) -> Polynomial {
    Polynomial::from_terms(
        support.dim(),
        support.points().iter().map(|p| (p.clone().into(), random_rational(rng, bound, den_bound))),
    )
}

/// Random subset of the box `[lo, hi]^k` with `size` distinct points.
pub fn random_support<R: Rng>(rng: &mut R, k: usize, size: usize, lo: i64, hi: i64) -> Support {
    let cap = ((hi - lo + 1) as usize).pow(k as u32);
    let size = size.min(cap);
    let mut pts: Vec<Vec<i64>> = Vec::new();
    while pts.len() < size {
        let p: Vec<i64> = (0..k).map(|_| rng.gen_range(lo..=hi)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    Support::new(k, pts)
}
