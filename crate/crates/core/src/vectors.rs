//! Transforms among f-, h-, g- and gamma vectors.

use crate::arith::{binom_u, rat_int, rat_to_f64, Int, Rat};
use crate::error::{Error, Result};
use crate::poly::{chebyshev_t, Poly};
use num_traits::{One, Signed, Zero};

/// Which vector a [`CountVector`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    F,
    H,
    GTrunc,
    GExt,
    Gamma,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::F => "f",
            Kind::H => "h",
            Kind::GTrunc => "g_trunc",
            Kind::GExt => "g_ext",
            Kind::Gamma => "gamma",
        }
    }
    /// Expected length for ambient parameter d.
    pub fn expected_len(self, d: usize) -> usize {
        match self {
            Kind::F => d,
            Kind::H | Kind::GExt => d + 1,
            Kind::GTrunc | Kind::Gamma => d / 2 + 1,
        }
    }
}

/// Integer vector tagged with its kind and ambient parameter d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    pub kind: Kind,
    pub d: usize,
    pub entries: Vec<Int>,
}

impl CountVector {
    pub fn new(kind: Kind, d: usize, entries: Vec<Int>) -> Result<Self> {
        let want = kind.expected_len(d);
        if entries.len() != want {
            return Err(Error::Shape(format!(
                "{} vector for d = {d} needs {want} entries, got {}",
                kind.as_str(),
                entries.len()
            )));
        }
        Ok(CountVector { kind, d, entries })
    }

    /// JSON form with entries as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.as_str(),
            "d": self.d,
            "entries": self.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// h_j = Σ_{i<=j} (-1)^{j-i} C(d-i, j-i) f_{i-1}, with f_{-1} = 1.
pub fn f_to_h(f: &[Int], d: usize) -> Result<Vec<Int>> {
    if f.len() != d {
        return Err(Error::Shape(format!("f has {} entries, d = {d}", f.len())));
    }
    let fm = |i: usize| if i == 0 { Int::one() } else { f[i - 1].clone() };
    let d = d as i64;
    Ok((0..=d)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let t = binom_u(d - i, j - i) * fm(i as usize);
                    if (j - i) % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        })
        .collect())
}

/// f_{j-1} = Σ_{i<=j} C(d-i, j-i) h_i for j = 1..d.
pub fn h_to_f(h: &[Int]) -> Result<Vec<Int>> {
    if h.is_empty() {
        return Err(Error::Shape("empty h-vector".into()));
    }
    let d = (h.len() - 1) as i64;
    Ok((1..=d)
        .map(|j| (0..=j).map(|i| binom_u(d - i, j - i) * &h[i as usize]).sum())
        .collect())
}

/// g-vector mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GMode {
    /// Indices 0..=⌊d/2⌋.
    Trunc,
    /// Indices 0..=d.
    Ext,
}

/// g_k = h_k - h_{k-1} (h_{-1} = 0).
pub fn h_to_g(h: &[Int], mode: GMode) -> Vec<Int> {
    let d = h.len().saturating_sub(1);
    let top = match mode {
        GMode::Trunc => d / 2,
        GMode::Ext => d,
    };
    (0..=top.min(h.len().saturating_sub(1)))
        .map(|k| g_ext_at(h, k as i64))
        .collect()
}

/// h_m - h_{m-1} for any integer m, zero-extended outside 0..=d.
pub fn g_ext_at(h: &[Int], m: i64) -> Int {
    let at = |i: i64| {
        if i < 0 || i as usize >= h.len() {
            Int::zero()
        } else {
            h[i as usize].clone()
        }
    };
    at(m) - at(m - 1)
}

/// Palindromic h with h_i = h_{d-i}.
pub fn dehn_sommerville_check(h: &[Int]) -> bool {
    h.iter().eq(h.iter().rev())
}

/// Rebuilds a palindromic h of length d+1 from g_trunc.
pub fn g_to_h(g: &[Int], d: usize) -> Result<Vec<Int>> {
    if g.len() != d / 2 + 1 {
        return Err(Error::Shape(format!("g_trunc for d = {d} needs {} entries", d / 2 + 1)));
    }
    let mut half = Vec::with_capacity(g.len());
    let mut acc = Int::zero();
    for x in g {
        acc += x;
        half.push(acc.clone());
    }
    Ok(mirror_half(&half, d))
}

/// Extends (h_0..h_{⌊d/2⌋}) palindromically to length d+1.
pub fn mirror_half(half: &[Int], d: usize) -> Vec<Int> {
    (0..=d).map(|i| half[i.min(d - i)].clone()).collect()
}

/// Which gamma transform matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixName {
    A,
    B,
}

/// Lower-triangular (⌊d/2⌋+1)-square transform matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformMatrix {
    pub name: MatrixName,
    pub d: usize,
    pub entries: Vec<Vec<Int>>,
}

/// a_{i,j} = C(d-2j, i-j).
pub fn a_coef(d: usize, i: usize, j: usize) -> Int {
    let n = d as i64 - 2 * j as i64;
    binom_u(n, i as i64 - j as i64)
}

/// b_{i,j} = C(d-2j, i-j) - C(d-2j, i-j-1).
pub fn b_coef(d: usize, i: usize, j: usize) -> Int {
    let n = d as i64 - 2 * j as i64;
    let k = i as i64 - j as i64;
    binom_u(n, k) - binom_u(n, k - 1)
}

pub fn transform_matrix(name: MatrixName, d: usize) -> TransformMatrix {
    let n = d / 2 + 1;
    let coef = match name {
        MatrixName::A => a_coef,
        MatrixName::B => b_coef,
    };
    let entries = (0..n)
        .map(|i| (0..n).map(|j| if j <= i { coef(d, i, j) } else { Int::zero() }).collect())
        .collect();
    TransformMatrix { name, d, entries }
}

fn check_half_len(v: &[Int], d: usize, what: &str) -> Result<()> {
    if v.len() != d / 2 + 1 {
        return Err(Error::Shape(format!(
            "{what} for d = {d} needs {} entries, got {}",
            d / 2 + 1,
            v.len()
        )));
    }
    Ok(())
}

fn lower_apply(coef: fn(usize, usize, usize) -> Int, d: usize, x: &[Int]) -> Vec<Int> {
    (0..x.len())
        .map(|i| (0..=i).map(|j| coef(d, i, j) * &x[j]).sum())
        .collect()
}

fn lower_solve(coef: fn(usize, usize, usize) -> Int, d: usize, y: &[Int]) -> Vec<Int> {
    let mut x: Vec<Int> = Vec::with_capacity(y.len());
    for i in 0..y.len() {
        let s: Int = (0..i).map(|j| coef(d, i, j) * &x[j]).sum();
        x.push(&y[i] - s);
    }
    x
}

/// Aγ = (h_0, ..., h_{⌊d/2⌋}).
pub fn gamma_to_h(gamma: &[Int], d: usize) -> Result<Vec<Int>> {
    check_half_len(gamma, d, "gamma")?;
    Ok(lower_apply(a_coef, d, gamma))
}

/// Bγ = (g_0, ..., g_{⌊d/2⌋}).
pub fn gamma_to_g(gamma: &[Int], d: usize) -> Result<Vec<Int>> {
    check_half_len(gamma, d, "gamma")?;
    Ok(lower_apply(b_coef, d, gamma))
}

/// Forward substitution against A.
pub fn h_half_to_gamma(h_half: &[Int], d: usize) -> Result<Vec<Int>> {
    check_half_len(h_half, d, "h-half")?;
    Ok(lower_solve(a_coef, d, h_half))
}

/// Forward substitution against B.
pub fn g_to_gamma(g: &[Int], d: usize) -> Result<Vec<Int>> {
    check_half_len(g, d, "g_trunc")?;
    Ok(lower_solve(b_coef, d, g))
}

/// Full h from h(t) = Σ γ_i t^i (1+t)^{d-2i}.
pub fn gamma_to_full_h(gamma: &[Int], d: usize) -> Result<Vec<Int>> {
    check_half_len(gamma, d, "gamma")?;
    let mut h = vec![Int::zero(); d + 1];
    for (i, g) in gamma.iter().enumerate() {
        let n = d - 2 * i;
        for k in 0..=n {
            h[i + k] += g * binom_u(n as i64, k as i64);
        }
    }
    Ok(h)
}

/// Gamma vector of a full palindromic h via the Chebyshev expansion.
/// Odd d is reduced through h(t) = (1+t) r(t).
pub fn gamma_via_chebyshev(h: &[Int]) -> Result<Vec<Int>> {
    if h.is_empty() {
        return Err(Error::Shape("empty h-vector".into()));
    }
    if !dehn_sommerville_check(h) {
        return Err(Error::NotReciprocal);
    }
    let d = h.len() - 1;
    if d % 2 == 1 {
        let (q, r) = Poly::from_ints(h).div_rem(&Poly::linear(Rat::one(), Rat::one()));
        if !r.is_zero() {
            return Err(Error::Divisibility);
        }
        let quotient: Vec<Int> = (0..d)
            .map(|i| {
                let c = q.coeff(i);
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        return gamma_via_chebyshev(&quotient);
    }
    let n = d / 2;
    let t = chebyshev_t(n);
    let half_u = Poly::linear(Rat::zero(), Rat::new(Int::one(), Int::from(2)));
    // g(u) = h_n + 2 Σ_{j>=1} h_{n-j} T_j(u/2)
    let mut g = Poly::constant(rat_int(&h[n]));
    for j in 1..=n {
        let tj = t[j].compose(&half_u);
        g = &g + &tj.scale(&(rat_int(&h[n - j]) * Rat::from_integer(Int::from(2))));
    }
    // γ(u) = Σ_m c_m u^{n-m} (1-2u)^m
    let one_minus_2u = Poly::linear(Rat::one(), Rat::from_integer(Int::from(-2)));
    let mut gamma = Poly::zero();
    for (m, c) in g.coeffs().iter().enumerate() {
        let term = &Poly::x().pow(n - m) * &one_minus_2u.pow(m);
        gamma = &gamma + &term.scale(c);
    }
    (0..=n)
        .map(|i| {
            let c = gamma.coeff(i);
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegral(format!("gamma_{i} = {c}")))
            }
        })
        .collect()
}

/// Extremes of consecutive coefficient ratios of A and B.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioDiagnostics {
    pub d: usize,
    pub a_min: Rat,
    pub a_max: Rat,
    pub b_min: Rat,
    pub b_max: Rat,
    /// 1 + 2/d <= a-ratio <= d for every pair.
    pub a_within: bool,
    /// 1/3 < b-ratio < d + 1 for every pair.
    pub b_within: bool,
}

/// Exhaustive ratios a_{r,s}/a_{r-1,s} and b_{r,s}/b_{r-1,s} over 0 <= s < r <= ⌊d/2⌋.
pub fn coefficient_ratio_diagnostics(d: usize) -> Result<RatioDiagnostics> {
    if d < 2 {
        return Err(Error::Range("ratio diagnostics need d >= 2".into()));
    }
    let dr = Rat::from_integer(Int::from(d));
    let a_lo = Rat::one() + Rat::new(Int::from(2), Int::from(d));
    let b_lo = Rat::new(Int::one(), Int::from(3));
    let b_hi = &dr + Rat::one();
    let mut a_ratios = Vec::new();
    let mut b_ratios = Vec::new();
    for r in 1..=d / 2 {
        for s in 0..r {
            a_ratios.push(Rat::new(a_coef(d, r, s), a_coef(d, r - 1, s)));
            b_ratios.push(Rat::new(b_coef(d, r, s), b_coef(d, r - 1, s)));
        }
    }
    let a_min = a_ratios.iter().min().unwrap().clone();
    let a_max = a_ratios.iter().max().unwrap().clone();
    let b_min = b_ratios.iter().min().unwrap().clone();
    let b_max = b_ratios.iter().max().unwrap().clone();
    Ok(RatioDiagnostics {
        d,
        a_within: a_min >= a_lo && a_max <= dr,
        b_within: b_min > b_lo && b_max < b_hi,
        a_min,
        a_max,
        b_min,
        b_max,
    })
}

/// One index of [`gamma_ratio_restrictions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRestriction {
    pub ell: usize,
    /// 3 g_{ℓ+1} > g_ℓ
    pub ratio_ok: bool,
    /// max(0, g_{ℓ+1} - (d+1) g_ℓ), a lower bound on γ_{ℓ+1}
    pub gamma_lower: Int,
}

/// Necessary conditions on g_trunc for γ >= 0.
pub fn gamma_ratio_restrictions(g: &[Int], d: usize) -> Vec<RatioRestriction> {
    (0..g.len().saturating_sub(1))
        .map(|l| {
            let next = &g[l + 1];
            let lower = next - Int::from(d + 1) * &g[l];
            RatioRestriction {
                ell: l,
                ratio_ok: Int::from(3) * next > g[l],
                gamma_lower: if lower.is_negative() { Int::zero() } else { lower },
            }
        })
        .collect()
}

/// Reporting helper: ratio as f64.
pub fn ratio_f64(r: &Rat) -> f64 {
    rat_to_f64(r)
}
