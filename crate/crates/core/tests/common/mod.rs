#![allow(dead_code)]

use gammasphere::arith::{int, rat};
use gammasphere::orthopath::WeightScheme;
use gammasphere::{Int, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

/// Positive rational with numerator and denominator in 1..=9.
pub fn pos_rat(r: &mut ChaCha8Rng) -> Rat {
    rat(r.random_range(1..=9), r.random_range(1..=9))
}

pub fn random_scheme(r: &mut ChaCha8Rng, n: usize) -> WeightScheme {
    let b = (0..=n).map(|_| pos_rat(r)).collect();
    let lam = (0..n.max(1)).map(|_| pos_rat(r)).collect();
    WeightScheme::new(b, lam)
}

/// Palindromic h of length d+1 with h_0 = 1 and other entries in [-20, 200].
pub fn random_palindromic_h(r: &mut ChaCha8Rng, d: usize) -> Vec<Int> {
    let mut h = vec![int(0); d + 1];
    h[0] = int(1);
    h[d] = int(1);
    for i in 1..=d / 2 {
        let v = int(r.random_range(-20..=200));
        h[i] = v.clone();
        h[d - i] = v;
    }
    h
}
