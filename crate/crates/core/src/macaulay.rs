//! Macaulay representations, pseudopowers and the M-sequence tests.

use crate::arith::{binom, rat_int, Int, Rat};
use crate::error::{Error, Result};
use crate::interval::{
    self, binom_interval, binomial_root as root_enclosure, decide_le, pow_frac, Interval, Verdict,
};
use crate::vectors::{dehn_sommerville_check, h_to_g, GMode};
use num_traits::{One, Signed, Zero};

/// a = Σ C(n_i, i) with n_k > n_{k-1} > ... > n_j >= j >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayRep {
    pub a: Int,
    pub k: u32,
    /// (n_i, i) with i descending from k.
    pub terms: Vec<(Int, u32)>,
}

impl MacaulayRep {
    pub fn value(&self) -> Int {
        self.terms.iter().map(|(n, i)| binom(n, *i as i64)).sum()
    }
    /// Strict descent n_k > ... > n_j >= j >= 1 with consecutive indices.
    pub fn is_valid(&self) -> bool {
        let mut prev: Option<&Int> = None;
        for (idx, (n, i)) in self.terms.iter().enumerate() {
            if *i as usize + idx != self.k as usize || *i < 1 || n < &Int::from(*i) {
                return false;
            }
            if let Some(p) = prev {
                if n >= p {
                    return false;
                }
            }
            prev = Some(n);
        }
        true
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.a.to_string(),
            "k": self.k,
            "terms": self.terms.iter().map(|(n, i)| serde_json::json!([n.to_string(), i])).collect::<Vec<_>>(),
            "pseudopower": pseudopower(&self.a, self.k).to_string(),
        })
    }
}

/// Greedy Macaulay representation of a >= 1 at index k >= 1.
pub fn macaulay_rep(a: &Int, k: u32) -> Result<MacaulayRep> {
    if !a.is_positive() {
        return Err(Error::Range(format!("macaulay_rep needs a >= 1, got {a}")));
    }
    if k == 0 {
        return Err(Error::Range("macaulay_rep needs k >= 1".into()));
    }
    let mut rest = a.clone();
    let mut terms = Vec::new();
    let mut i = k;
    while rest.is_positive() {
        debug_assert!(i >= 1);
        let n = interval::binom_floor_top(&rest, i);
        rest -= binom(&n, i as i64);
        terms.push((n, i));
        i -= 1;
    }
    Ok(MacaulayRep { a: a.clone(), k, terms })
}

/// a^{<k>}: shift every term (n, i) to (n+1, i+1). 0^{<k>} = 0.
pub fn pseudopower(a: &Int, k: u32) -> Int {
    assert!(k >= 1, "pseudopower index must be positive");
    if a.is_zero() {
        return Int::zero();
    }
    assert!(a.is_positive(), "pseudopower of a negative integer");
    let rep = macaulay_rep(a, k).expect("a >= 1, k >= 1");
    rep.terms
        .iter()
        .map(|(n, i)| binom(&(n + 1), *i as i64 + 1))
        .sum()
}

/// Real root x >= k-1 of C(x, k) = a.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialRoot {
    pub enclosure: Interval,
    pub approx: f64,
    pub floor: Int,
    pub exact: bool,
}

/// Solves C(x, k) = a to 128 bits; exact when x is an integer.
pub fn binomial_root(a: &Int, k: u32) -> Result<BinomialRoot> {
    if !a.is_positive() || k == 0 {
        return Err(Error::Range("binomial_root needs a >= 1 and k >= 1".into()));
    }
    let enc = root_enclosure(a, k, interval::START_BITS);
    let floor = crate::arith::floor_rat(&enc.lo);
    Ok(BinomialRoot {
        approx: enc.mid_f64(),
        exact: enc.is_point(),
        floor,
        enclosure: enc,
    })
}

/// Bounds bracketing a^{<k>}.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudopowerBounds {
    pub a: Int,
    pub k: u32,
    pub value: Int,
    /// C(n_k + 1, k + 1)
    pub lower: Int,
    /// root of C(x, k) = a
    pub x: Interval,
    /// C(x + 1, k + 1)
    pub upper_real: Interval,
    /// a^{(k+1)/k}
    pub power_upper: Interval,
    /// (k!)^{1/k} / (k + 1)
    pub c_k: Interval,
    /// C_k a^{(k+1)/k}
    pub asymptotic: Interval,
    pub lower_ok: bool,
    pub upper_real_ok: Verdict,
    pub power_ok: Verdict,
}

impl PseudopowerBounds {
    pub fn chain(&self) -> Verdict {
        Verdict::from_bool(self.lower_ok)
            .and(self.upper_real_ok)
            .and(self.power_ok)
    }
    /// value / (C_k a^{(k+1)/k}) enclosure.
    pub fn asymptotic_ratio(&self) -> Interval {
        let v = rat_int(&self.value);
        Interval::new(&v / &self.asymptotic.hi, &v / &self.asymptotic.lo)
    }
}

fn upper_real_at(a: &Int, k: u32, bits: u32) -> Interval {
    let x = root_enclosure(a, k, bits);
    binom_interval(&x.add(&Interval::point(Rat::one())), k + 1)
}

/// Evaluates the bracketing chain C(n_k+1,k+1) <= a^{<k>} <= C(x+1,k+1) <= a^{(k+1)/k}.
pub fn pseudopower_bounds(a: &Int, k: u32) -> Result<PseudopowerBounds> {
    let rep = macaulay_rep(a, k)?;
    let value = pseudopower(a, k);
    let lower = binom(&(&rep.terms[0].0 + 1), k as i64 + 1);
    // Coarse first pass; decide_le refines from START_BITS if needed.
    let bits = 64;
    let x = root_enclosure(a, k, bits);
    let upper_real = binom_interval(&x.add(&Interval::point(Rat::one())), k + 1);
    let power_upper = pow_frac(&rat_int(a), k + 1, k, bits);
    let c_k = interval::c_const(k, bits);
    let asymptotic = c_k.mul(&power_upper);
    // Refine only when the starting enclosures overlap.
    let value_iv = Interval::from_int(&value);
    let upper_real_ok = match value_iv.le(&upper_real) {
        Verdict::Unknown => decide_le(|b| (value_iv.clone(), upper_real_at(a, k, b))),
        v => v,
    };
    let power_ok = match upper_real.le(&power_upper) {
        Verdict::Unknown => decide_le(|b| (upper_real_at(a, k, b), pow_frac(&rat_int(a), k + 1, k, b))),
        v => v,
    };
    Ok(PseudopowerBounds {
        a: a.clone(),
        k,
        lower_ok: lower <= value,
        value,
        lower,
        x,
        upper_real,
        power_upper,
        c_k,
        asymptotic,
        upper_real_ok,
        power_ok,
    })
}

/// (βa)^{<k>} / (β^{(k+1)/k} a^{<k>}), for βa a positive integer.
pub fn pseudopower_scaling_ratio(a: &Int, beta: &Rat, k: u32, bits: u32) -> Result<Interval> {
    let ba = beta * rat_int(a);
    if !ba.is_integer() || !ba.is_positive() || !a.is_positive() {
        return Err(Error::NonIntegral("beta * a must be a positive integer".into()));
    }
    let num = rat_int(&pseudopower(&ba.to_integer(), k));
    let den = pow_frac(beta, k + 1, k, bits).scale(&rat_int(&pseudopower(a, k)));
    Ok(Interval::new(&num / &den.hi, &num / &den.lo))
}

/// Σ a_i^{m/n} <= (Σ a_i)^{m/n} for nonnegative rationals.
pub fn power_sum_check(values: &[Rat], m: u32, n: u32) -> Verdict {
    let total: Rat = values.iter().sum();
    // With at most one nonzero term both sides coincide; enclosures cannot separate equal reals.
    if values.iter().filter(|v| !v.is_zero()).count() <= 1 {
        return Verdict::True;
    }
    decide_le(|bits| {
        let lhs = values
            .iter()
            .map(|v| pow_frac(v, m, n, bits))
            .fold(Interval::point(Rat::zero()), |acc, x| acc.add(&x));
        (lhs, pow_frac(&total, m, n, bits))
    })
}

/// Outcome of an M-sequence style test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCheck {
    pub holds: bool,
    /// First index whose inequality fails.
    pub failing_index: Option<usize>,
    pub reason: Option<String>,
    pub note: Option<String>,
}

impl MCheck {
    fn pass() -> Self {
        MCheck { holds: true, failing_index: None, reason: None, note: None }
    }
    fn fail(i: usize, reason: String) -> Self {
        MCheck { holds: false, failing_index: Some(i), reason: Some(reason), note: None }
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "holds": self.holds,
            "failing_index": self.failing_index,
            "reason": self.reason,
            "note": self.note,
        })
    }
}

/// 0 <= s_{i+1} <= s_i^{<i>} for i in `from..len-1`.
fn m_chain(s: &[Int], from: usize) -> MCheck {
    for i in from..s.len().saturating_sub(1) {
        let next = &s[i + 1];
        if next.is_negative() {
            return MCheck::fail(i + 1, format!("entry {i_1} is negative", i_1 = i + 1));
        }
        if s[i].is_negative() {
            return MCheck::fail(i, format!("entry {i} is negative"));
        }
        let cap = pseudopower(&s[i], i as u32);
        if next > &cap {
            return MCheck::fail(i + 1, format!("{next} > {}^<{i}> = {cap}", s[i]));
        }
    }
    MCheck::pass()
}

/// Kruskal-Katona: 0 < f_{i+1} <= f_i^{<i+1>}.
/// Interior zeros are rejected; trailing zeros are trimmed and noted.
pub fn check_f_vector(f: &[Int]) -> MCheck {
    let mut end = f.len();
    while end > 0 && f[end - 1].is_zero() {
        end -= 1;
    }
    let trimmed = f.len() - end;
    let f = &f[..end];
    let note = (trimmed > 0).then(|| format!("trimmed {trimmed} trailing zero entries"));
    let with_note = |mut c: MCheck| {
        c.note = note.clone();
        c
    };
    for (i, x) in f.iter().enumerate() {
        if !x.is_positive() {
            return with_note(MCheck::fail(i, format!("f_{i} = {x} is not positive")));
        }
    }
    for i in 0..f.len().saturating_sub(1) {
        let cap = pseudopower(&f[i], i as u32 + 1);
        if f[i + 1] > cap {
            return with_note(MCheck::fail(
                i + 1,
                format!("f_{} = {} > {}^<{}> = {cap}", i + 1, f[i + 1], f[i], i + 1),
            ));
        }
    }
    with_note(MCheck::pass())
}

/// Cohen-Macaulay h-vector test: h_0 = 1, h_1 >= 0, 0 <= h_{i+1} <= h_i^{<i>}.
pub fn check_cm_h(h: &[Int]) -> MCheck {
    if h.is_empty() || !h[0].is_one() {
        return MCheck::fail(0, "h_0 must be 1".into());
    }
    if h.len() > 1 && h[1].is_negative() {
        return MCheck::fail(1, "h_1 is negative".into());
    }
    m_chain(h, 1)
}

/// Sphere test: palindromic, h_0 = 1, g_1 >= 0 and 0 <= g_{i+1} <= g_i^{<i>} on g_trunc.
pub fn check_sphere_g(h: &[Int]) -> MCheck {
    if !dehn_sommerville_check(h) {
        return MCheck::fail(0, "h is not palindromic".into());
    }
    if h.is_empty() || !h[0].is_one() {
        return MCheck::fail(0, "h_0 must be 1".into());
    }
    let g = h_to_g(h, GMode::Trunc);
    if g.len() > 1 && g[1].is_negative() {
        return MCheck::fail(1, "g_1 is negative".into());
    }
    m_chain(&g, 1)
}

/// M-chain on a g_trunc vector directly (g_0 = 1 required).
pub fn check_m_vector(g: &[Int]) -> MCheck {
    if g.is_empty() || !g[0].is_one() {
        return MCheck::fail(0, "g_0 must be 1".into());
    }
    if g.len() > 1 && g[1].is_negative() {
        return MCheck::fail(1, "g_1 is negative".into());
    }
    m_chain(g, 1)
}

/// q h_q <= h_1 (h_0 + ... + h_{q-1}).
pub fn avgh_bound_check(h: &[Int], q: usize) -> Result<bool> {
    if q < 1 || q >= h.len() {
        return Err(Error::Range(format!("q must satisfy 1 <= q < {}", h.len())));
    }
    let lhs = Int::from(q) * &h[q];
    let rhs = &h[1] * h[..q].iter().sum::<Int>();
    Ok(lhs <= rhs)
}
