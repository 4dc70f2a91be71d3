//! Integer and rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

/// Binomial coefficient C(n, k) for arbitrary integer n and machine k; zero when k < 0.
/// Negative n uses the polynomial extension n(n-1)...(n-k+1)/k!.
pub fn binom(n: &Int, k: i64) -> Int {
    if k < 0 {
        return Int::zero();
    }
    if !n.is_negative() && *n < Int::from(k) {
        return Int::zero();
    }
    let mut num = Int::one();
    let mut den = Int::one();
    for j in 0..k {
        num *= n - j;
        den *= j + 1;
    }
    num / den
}

/// C(n, k) with small arguments; zero outside 0 <= k <= n.
pub fn binom_u(n: i64, k: i64) -> Int {
    if k < 0 || n < 0 || k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, j| acc * j)
}

pub fn pow2(e: u64) -> Int {
    Int::one() << e
}

/// Exact rational power of two, negative exponents allowed.
pub fn pow2_rat(e: i64) -> Rat {
    if e >= 0 {
        rat_int(&pow2(e as u64))
    } else {
        Rat::new(Int::one(), pow2((-e) as u64))
    }
}

/// Floor of a rational.
pub fn floor_rat(r: &Rat) -> Int {
    r.numer().div_floor(r.denom())
}

/// Ceiling of a rational.
pub fn ceil_rat(r: &Rat) -> Int {
    -((-r.numer()).div_floor(r.denom()))
}

/// Returns the integer value when the rational is integral.
pub fn as_integer(r: &Rat) -> Option<Int> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// Lossy conversion for reporting only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge operands before dividing
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift = (nb.max(db) - 900).max(0) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Decimal rendering of a rational as "p" or "p/q".
pub fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p", "p/q" or a finite decimal such as "0.25".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().ok()?;
        let q: Int = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = whole.starts_with('-');
        let w: Int = if whole.is_empty() || whole == "-" {
            Int::zero()
        } else {
            whole.parse().ok()?
        };
        let f: Int = frac.parse().ok()?;
        let scale = num_traits::pow(Int::from(10), frac.len());
        let mag = w.abs() * &scale + f;
        let v = Rat::new(if neg { -mag } else { mag }, scale);
        return Some(v);
    }
    s.parse::<Int>().ok().map(Rat::from_integer)
}
