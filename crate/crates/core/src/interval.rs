//! Rational-endpoint interval arithmetic with outward rounding.
//!
//! Irrational quantities (fractional powers, binomial roots) are enclosed in
//! dyadic intervals at a requested bit precision. Comparisons are three-valued
//! and refined on demand by [`decide_le`].

use crate::arith::{factorial, pow2, rat_int, rat_to_f64, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Precision schedule for on-demand refinement.
pub const START_BITS: u32 = 128;
pub const MAX_BITS: u32 = 4096;

/// Closed interval [lo, hi] with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

/// Three-valued verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Unknown,
        }
    }
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Interval {
    pub fn point(v: Rat) -> Self {
        Interval { lo: v.clone(), hi: v }
    }
    pub fn from_int(v: &Int) -> Self {
        Self::point(rat_int(v))
    }
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
    pub fn mid_f64(&self) -> f64 {
        (rat_to_f64(&self.lo) + rat_to_f64(&self.hi)) / 2.0
    }
    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }
    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
    pub fn scale(&self, c: &Rat) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }
    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
    /// Certainly <= other.
    pub fn le(&self, o: &Interval) -> Verdict {
        if self.hi <= o.lo {
            Verdict::True
        } else if self.lo > o.hi {
            Verdict::False
        } else {
            Verdict::Unknown
        }
    }
    /// Certainly < other.
    pub fn lt(&self, o: &Interval) -> Verdict {
        if self.hi < o.lo {
            Verdict::True
        } else if self.lo >= o.hi {
            Verdict::False
        } else {
            Verdict::Unknown
        }
    }
}

fn perfect_root(v: &Int, n: u32) -> Option<Int> {
    if v.is_negative() {
        return None;
    }
    let r = v.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *v {
        Some(r)
    } else {
        None
    }
}

/// Encloses y^(1/n) for y >= 0 with dyadic endpoints of `bits` fractional bits.
/// Exact when y is a perfect n-th power of a rational.
pub fn nth_root(y: &Rat, n: u32, bits: u32) -> Interval {
    assert!(!y.is_negative(), "nth_root of a negative value");
    assert!(n >= 1);
    if n == 1 || y.is_zero() {
        return Interval::point(y.clone());
    }
    if let (Some(a), Some(b)) = (perfect_root(y.numer(), n), perfect_root(y.denom(), n)) {
        return Interval::point(Rat::new(a, b));
    }
    let shift = (bits as u64) * (n as u64);
    let scaled = (y.numer() << shift) / y.denom();
    let s = scaled.nth_root(n);
    let den = pow2(bits as u64);
    Interval::new(Rat::new(s.clone(), den.clone()), Rat::new(s + 1, den))
}

/// Encloses x^(m/n) for x >= 0.
pub fn pow_frac(x: &Rat, m: u32, n: u32, bits: u32) -> Interval {
    let xm = num_traits::pow(x.clone(), m as usize);
    nth_root(&xm, n, bits)
}

/// Encloses I^(m/n) for an interval with nonnegative lower end.
pub fn pow_frac_interval(x: &Interval, m: u32, n: u32, bits: u32) -> Interval {
    assert!(!x.lo.is_negative());
    if x.is_point() {
        return pow_frac(&x.lo, m, n, bits);
    }
    let lo = pow_frac(&x.lo, m, n, bits).lo;
    let hi = pow_frac(&x.hi, m, n, bits).hi;
    Interval::new(lo, hi)
}

/// Integer power of an interval with nonnegative lower end.
pub fn pow_int_interval(x: &Interval, e: u32) -> Interval {
    assert!(!x.lo.is_negative());
    Interval::new(
        num_traits::pow(x.lo.clone(), e as usize),
        num_traits::pow(x.hi.clone(), e as usize),
    )
}

/// Falling-factorial polynomial X(X-u)(X-2u)...(X-(k-1)u) with u = 2^bits, minus k!·a·u^k.
fn scaled_residual(x: &Int, k: u32, unit: &Int, target: &Int) -> Int {
    let mut prod = Int::one();
    for j in 0..k {
        prod *= x - unit * j;
    }
    prod - target
}

fn scaled_derivative(x: &Int, k: u32, unit: &Int) -> Int {
    let mut total = Int::zero();
    for i in 0..k {
        let mut prod = Int::one();
        for j in 0..k {
            if j != i {
                prod *= x - unit * j;
            }
        }
        total += prod;
    }
    total
}

/// Largest n with C(n, k) <= a, for a >= 1.
pub fn binom_floor_top(a: &Int, k: u32) -> Int {
    // exponential search then bisection on n in [k, ...]
    let k64 = k as i64;
    let c = |n: &Int| crate::arith::binom(n, k64);
    let mut lo = Int::from(k);
    debug_assert!(c(&lo) <= *a);
    let mut step = Int::one();
    let mut hi = &lo + &step;
    while c(&hi) <= *a {
        lo = hi.clone();
        step <<= 1;
        hi = &lo + &step;
    }
    // invariant: C(lo) <= a < C(hi)
    while &hi - &lo > Int::one() {
        let mid: Int = (&lo + &hi) >> 1;
        if c(&mid) <= *a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Encloses the real root x >= k-1 of C(x, k) = a (a >= 1, k >= 1).
/// Returns a point when x is an integer.
pub fn binomial_root(a: &Int, k: u32, bits: u32) -> Interval {
    assert!(a >= &Int::one() && k >= 1);
    if k == 1 {
        return Interval::from_int(a);
    }
    let n = binom_floor_top(a, k);
    if binom_u_big(&n, k) == *a {
        return Interval::from_int(&n);
    }
    let unit = pow2(bits as u64);
    let target = factorial(k as u64) * a * num_traits::pow(unit.clone(), k as usize);
    // Newton from the right: the residual is increasing and convex past k-1.
    let mut x: Int = (&n + 1) * &unit;
    loop {
        let r = scaled_residual(&x, k, &unit, &target);
        if r.is_zero() {
            return Interval::point(Rat::new(x, unit));
        }
        let dr = scaled_derivative(&x, k, &unit);
        let step = &r / &dr;
        if step.is_zero() {
            break;
        }
        x -= step;
    }
    // x is within a couple of units of the root; settle the bracket exactly
    while scaled_residual(&x, k, &unit, &target).is_positive() {
        x -= 1;
    }
    loop {
        let next: Int = &x + 1;
        let r = scaled_residual(&next, k, &unit, &target);
        if r.is_positive() {
            break;
        }
        if r.is_zero() {
            return Interval::point(Rat::new(next, unit));
        }
        x = next;
    }
    Interval::new(Rat::new(x.clone(), unit.clone()), Rat::new(x + 1, unit))
}

fn binom_u_big(n: &Int, k: u32) -> Int {
    crate::arith::binom(n, k as i64)
}

/// Encloses C(x, k) for an interval x with lo >= k-1 (monotone there).
pub fn binom_interval(x: &Interval, k: u32) -> Interval {
    // Π (p - jq) / (q^k k!) for v = p/q: one normalization per endpoint.
    let eval = |v: &Rat| {
        let (p, q) = (v.numer(), v.denom());
        let mut prod = Int::one();
        for j in 0..k {
            prod *= p - q * j;
        }
        Rat::new(prod, num_traits::pow(q.clone(), k as usize) * factorial(k as u64))
    };
    Interval::new(eval(&x.lo), eval(&x.hi))
}

/// Decides lhs <= rhs where both sides are produced at a given precision.
/// Refines until resolved, the precision cap is hit, or both widths drop
/// below 1e-30 while still overlapping.
pub fn decide_le<F>(mut sides: F) -> Verdict
where
    F: FnMut(u32) -> (Interval, Interval),
{
    decide_with(&mut sides, |l, r| l.le(r))
}

/// Decides lhs < rhs.
pub fn decide_lt<F>(mut sides: F) -> Verdict
where
    F: FnMut(u32) -> (Interval, Interval),
{
    decide_with(&mut sides, |l, r| l.lt(r))
}

fn decide_with<F, C>(sides: &mut F, cmp: C) -> Verdict
where
    F: FnMut(u32) -> (Interval, Interval),
    C: Fn(&Interval, &Interval) -> Verdict,
{
    let floor = Rat::new(Int::one(), num_traits::pow(Int::from(10), 30));
    let mut bits = START_BITS;
    loop {
        let (l, r) = sides(bits);
        let v = cmp(&l, &r);
        if v != Verdict::Unknown {
            return v;
        }
        if l.is_point() && r.is_point() {
            return v;
        }
        let tiny = l.width() < floor && r.width() < floor;
        if tiny || bits >= MAX_BITS {
            return Verdict::Unknown;
        }
        bits *= 2;
    }
}

/// The constant (k!)^(1/k)/(k+1).
pub fn c_const(k: u32, bits: u32) -> Interval {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(k, bits)) {
        return v.clone();
    }
    let f = rat_int(&factorial(k as u64));
    let v = nth_root(&f, k, bits).scale(&Rat::new(Int::one(), Int::from(k + 1)));
    cache.lock().unwrap().insert((k, bits), v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn roots_exact_and_enclosing() {
        assert_eq!(nth_root(&rat(27, 8), 3, 128), Interval::point(rat(3, 2)));
        let r = nth_root(&rat(2, 1), 2, 64);
        assert!(r.lo < r.hi);
        assert!(&r.lo * &r.lo <= rat(2, 1) && &r.hi * &r.hi >= rat(2, 1));
    }

    #[test]
    fn binomial_root_values() {
        assert_eq!(binomial_root(&Int::from(6), 2, 128), Interval::point(rat(4, 1)));
        assert_eq!(binomial_root(&Int::from(1), 3, 128), Interval::point(rat(3, 1)));
        let x = binomial_root(&Int::from(7), 2, 128);
        assert!(x.lo > rat(4, 1) && x.hi < rat(5, 1));
        // C(x,2) = 7 -> x = (1 + sqrt(57))/2
        assert!((x.mid_f64() - (1.0 + 57f64.sqrt()) / 2.0).abs() < 1e-12);
        let c = binom_interval(&x, 2);
        assert!(c.contains(&rat(7, 1)));
        assert_eq!(binom_floor_top(&Int::from(7), 2), Int::from(4));
        assert_eq!(crate::arith::binom_u(5, 2), Int::from(10));
    }

    #[test]
    fn decide_resolves_and_reports_unknown() {
        // sqrt(2) < 1.5
        assert_eq!(
            decide_le(|b| (nth_root(&rat(2, 1), 2, b), Interval::point(rat(3, 2)))),
            Verdict::True
        );
        // exact equality of perfect powers is decided exactly
        assert_eq!(
            decide_le(|b| (pow_frac(&rat(8, 1), 2, 3, b), Interval::point(rat(4, 1)))),
            Verdict::True
        );
        // sqrt(2) <= sqrt(2) via distinct enclosures cannot be separated
        assert_eq!(
            decide_lt(|b| (nth_root(&rat(2, 1), 2, b), nth_root(&rat(8, 4), 2, b))),
            Verdict::Unknown
        );
    }
}
