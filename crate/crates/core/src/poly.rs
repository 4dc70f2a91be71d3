//! Dense univariate polynomials over exact rationals.

use crate::arith::{rat_int, Int, Rat};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Ascending coefficients with trailing zeros trimmed. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
    pub fn from_ints(v: &[Int]) -> Self {
        Self::new(v.iter().map(rat_int).collect())
    }
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }
    pub fn one() -> Self {
        Self::constant(Rat::one())
    }
    /// x
    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }
    /// a + b x
    pub fn linear(a: Rat, b: Rat) -> Self {
        Self::new(vec![a, b])
    }
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }
    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }
    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
    /// self(q(x))
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }
    /// Exact division by a monic-or-not divisor; returns (quotient, remainder).
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd] / &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        (Poly::new(q), Poly::new(rem))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Chebyshev polynomials of the first kind T_0..T_n.
pub fn chebyshev_t(n: usize) -> Vec<Poly> {
    let mut t = vec![Poly::one()];
    if n >= 1 {
        t.push(Poly::x());
    }
    let two_x = Poly::x().scale(&Rat::from_integer(Int::from(2)));
    for m in 2..=n {
        let next = &(&two_x * &t[m - 1]) - &t[m - 2];
        t.push(next);
    }
    t
}

/// Linear map x^m -> T_m(x).
pub fn chebyshev_map(p: &Poly) -> Poly {
    let deg = match p.degree() {
        None => return Poly::zero(),
        Some(d) => d,
    };
    let t = chebyshev_t(deg);
    let mut acc = Poly::zero();
    for (m, c) in p.coeffs().iter().enumerate() {
        acc = &acc + &t[m].scale(c);
    }
    acc
}
