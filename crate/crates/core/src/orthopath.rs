//! Unitary orthogonal polynomial families, weighted Motzkin paths,
//! monomer/dimer covers and the formal gamma calculus built on them.
//!
//! Conventions used throughout:
//! * `P[m][i]` is the coefficient of x^i in P_m, so `P` is lower triangular.
//! * `μ[n][k]` is the total valuation of Motzkin paths of length n ending at
//!   level k; the inverse relation reads `M · P = I`, i.e.
//!   x^n = Σ_k μ_{n,k} P_k(x).
//! * Cover positions are 0-based: position p stands for element p+1 of [m].

use crate::arith::{as_integer, pow2_rat, rat, rat_int, rat_string, Int, Rat};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::macaulay::pseudopower;
use crate::par;
use crate::poly::{chebyshev_map, chebyshev_t, Poly};
use crate::realize::Mode;
use crate::vectors::dehn_sommerville_check;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Largest path length accepted by [`mu_bruteforce`].
pub const MU_BRUTEFORCE_MAX: usize = 18;
/// Largest interval accepted by explicit cover enumeration.
pub const COVER_MAX: usize = 24;

/// Recursion coefficients: `b[m] = b_m`, `lam[m-1] = λ_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightScheme {
    pub b: Vec<Rat>,
    pub lam: Vec<Rat>,
}

impl WeightScheme {
    pub fn new(b: Vec<Rat>, lam: Vec<Rat>) -> Self {
        WeightScheme { b, lam }
    }

    /// Translated Chebyshev scheme: b_m = 1, λ_1 = 1/2, λ_m = 1/4 for m ≥ 2.
    pub fn chebyshev(n: usize) -> Self {
        let b = vec![Rat::one(); n + 1];
        let lam = (1..=n).map(|m| if m == 1 { rat(1, 2) } else { rat(1, 4) }).collect();
        WeightScheme { b, lam }
    }

    pub fn b(&self, m: usize) -> &Rat {
        &self.b[m]
    }

    /// λ_m for m ≥ 1.
    pub fn lam(&self, m: usize) -> &Rat {
        &self.lam[m - 1]
    }

    pub fn is_positive(&self) -> bool {
        self.b.iter().chain(&self.lam).all(|x| x.is_positive())
    }

    /// Largest N for which P_0..P_N (equivalently μ up to row N) is defined.
    pub fn max_order(&self) -> usize {
        self.b.len().min(self.lam.len() + 1)
    }

    fn require(&self, n: usize) -> Result<()> {
        if n > self.max_order() {
            return Err(Error::Shape(format!(
                "order {n} needs b_0..b_{} and λ_1..λ_{}; have {} and {}",
                n.saturating_sub(1),
                n.saturating_sub(1),
                self.b.len(),
                self.lam.len()
            )));
        }
        Ok(())
    }

    /// `{"b": ["1", "1/2", ...], "lam": [...]}`; numbers are accepted too.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let seq = |key: &str| -> Result<Vec<Rat>> {
            let arr = v
                .get(key)
                .and_then(|a| a.as_array())
                .ok_or_else(|| Error::Parse(format!("weight scheme needs an array \"{key}\"")))?;
            arr.iter()
                .enumerate()
                .map(|(i, x)| {
                    let s = match x {
                        serde_json::Value::String(s) => s.clone(),
                        serde_json::Value::Number(n) => n.to_string(),
                        _ => return Err(Error::Parse(format!("{key}[{i}] is not a rational"))),
                    };
                    crate::arith::parse_rat(&s)
                        .ok_or_else(|| Error::Parse(format!("{key}[{i}] = {s:?} is not a rational")))
                })
                .collect()
        };
        Ok(WeightScheme { b: seq("b")?, lam: seq("lam")? })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "b": self.b.iter().map(rat_string).collect::<Vec<_>>(),
            "lam": self.lam.iter().map(rat_string).collect::<Vec<_>>(),
        })
    }
}

/// P_0..P_N from P_{m+1} = (x - b_m) P_m - λ_m P_{m-1}.
pub fn unitary_family(w: &WeightScheme, n: usize) -> Result<Vec<Poly>> {
    w.require(n)?;
    let mut p = vec![Poly::one()];
    if n >= 1 {
        p.push(Poly::linear(-w.b(0), Rat::one()));
    }
    for m in 1..n {
        let shifted = &Poly::linear(-w.b(m), Rat::one()) * &p[m];
        let next = &shifted - &p[m - 1].scale(w.lam(m));
        p.push(next);
    }
    Ok(p)
}

/// Lower-triangular coefficient matrix of P_0..P_N.
pub fn coefficient_matrix(w: &WeightScheme, n: usize) -> Result<Vec<Vec<Rat>>> {
    Ok(unitary_family(w, n)?
        .iter()
        .map(|p| (0..=n).map(|i| p.coeff(i)).collect())
        .collect())
}

/// Motzkin path weights μ_{n,k}, 0 ≤ k ≤ n ≤ N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuMatrix {
    pub n: usize,
    rows: Vec<Vec<Rat>>,
}

impl MuMatrix {
    /// μ_{r,k}; zero above the diagonal.
    pub fn get(&self, r: usize, k: usize) -> Rat {
        self.rows[r].get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Square (N+1)x(N+1) form.
    pub fn dense(&self) -> Vec<Vec<Rat>> {
        (0..=self.n).map(|r| (0..=self.n).map(|k| self.get(r, k)).collect()).collect()
    }

    /// μ_{r,s}/μ_{r,s-1} for 1 ≤ s ≤ r; None where the denominator vanishes.
    pub fn ratios(&self) -> Vec<Vec<Option<Rat>>> {
        (0..=self.n)
            .map(|r| {
                (1..=r)
                    .map(|s| {
                        let den = self.get(r, s - 1);
                        (!den.is_zero()).then(|| self.get(r, s) / den)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = (0..=self.n)
            .flat_map(|r| {
                (0..=r).map(move |k| serde_json::json!({"n": r, "k": k, "mu": rat_string(&self.get(r, k))}))
            })
            .collect();
        let ratios: Vec<serde_json::Value> = self
            .ratios()
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                row.iter().enumerate().map(move |(i, q)| {
                    serde_json::json!({"r": r, "s": i + 1, "ratio": q.as_ref().map(rat_string)})
                })
            })
            .collect();
        serde_json::json!({"N": self.n, "entries": entries, "ratios": ratios})
    }
}

/// μ via μ_{n,k} = μ_{n-1,k-1} + b_k μ_{n-1,k} + λ_{k+1} μ_{n-1,k+1}.
pub fn mu_matrix(w: &WeightScheme, n: usize) -> Result<MuMatrix> {
    w.require(n)?;
    let mut rows: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_else(Rat::zero);
        let row = (0..=r)
            .map(|k| {
                let mut v = if k >= 1 { at(k - 1) } else { Rat::zero() };
                if k < r {
                    v += w.b(k) * at(k);
                }
                if k + 1 < r {
                    v += w.lam(k + 1) * at(k + 1);
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Ok(MuMatrix { n, rows })
}

fn walk(w: &WeightScheme, left: usize, level: usize, target: usize, acc: &Rat, out: &mut Rat) {
    if left == 0 {
        if level == target {
            *out += acc;
        }
        return;
    }
    if level.abs_diff(target) > left {
        return;
    }
    walk(w, left - 1, level + 1, target, acc, out);
    let e = acc * w.b(level);
    if !e.is_zero() {
        walk(w, left - 1, level, target, &e, out);
    }
    if level > 0 {
        let s = acc * w.lam(level);
        if !s.is_zero() {
            walk(w, left - 1, level - 1, target, &s, out);
        }
    }
}

/// μ_{N,k} by listing every Motzkin path: NE steps weigh 1, an E step at
/// level j weighs b_j, a SE step leaving level j weighs λ_j.
pub fn mu_bruteforce(w: &WeightScheme, n: usize, k: usize) -> Result<Rat> {
    if n > MU_BRUTEFORCE_MAX {
        return Err(Error::SizeGuard(format!("path length {n} exceeds {MU_BRUTEFORCE_MAX}")));
    }
    w.require(n)?;
    if k > n {
        return Ok(Rat::zero());
    }
    // Split on the first few steps so the tails can run in parallel.
    let split = n.min(4);
    let mut frontier = vec![(0usize, Rat::one())];
    for _ in 0..split {
        let mut next = Vec::new();
        for (lvl, acc) in frontier {
            next.push((lvl + 1, acc.clone()));
            next.push((lvl, &acc * w.b(lvl)));
            if lvl > 0 {
                next.push((lvl - 1, &acc * w.lam(lvl)));
            }
        }
        frontier = next;
    }
    let left = n - split;
    let parts = par::map(&frontier, |(lvl, acc)| {
        let mut out = Rat::zero();
        walk(w, left, *lvl, k, acc, &mut out);
        out
    });
    Ok(parts.into_iter().fold(Rat::zero(), |a, b| a + b))
}

fn matmul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rat::zero(), |s, t| s + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

fn is_identity(m: &[Vec<Rat>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
    })
}

/// Outcome of multiplying the μ-matrix against the coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseCheck {
    pub n: usize,
    /// M · P, which must be the identity.
    pub product: Vec<Vec<Rat>>,
    pub left_identity: bool,
    pub right_identity: bool,
}

impl InverseCheck {
    pub fn holds(&self) -> bool {
        self.left_identity && self.right_identity
    }
}

/// Checks M · P = I and P · M = I exactly.
pub fn inverse_pair_check(w: &WeightScheme, n: usize) -> Result<InverseCheck> {
    let p = coefficient_matrix(w, n)?;
    let m = mu_matrix(w, n)?.dense();
    let product = matmul(&m, &p);
    let left_identity = is_identity(&product);
    let right_identity = is_identity(&matmul(&p, &m));
    Ok(InverseCheck { n, product, left_identity, right_identity })
}

/// A family of partial monomer/dimer covers of an integer interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    /// Interval [0, len-1].
    pub len: usize,
    /// Number of uncovered positions.
    pub missing: usize,
    /// Disallow the dimer {0,1}.
    pub forbid_leading_dimer: bool,
    /// Cover [2, len-1] instead (empty family when len < 2).
    pub excise_leading_pair: bool,
    /// Colors per monomer; 0 means dimers only.
    pub monomer_colors: u32,
    /// Weight each cover by (-1)^{pieces}.
    pub signed: bool,
}

impl CoverSpec {
    fn piece_weights(&self, w: Option<&WeightScheme>) -> (Vec<Option<Rat>>, Vec<Option<Rat>>) {
        let sign = if self.signed { -Rat::one() } else { Rat::one() };
        let mono = (0..self.len)
            .map(|p| {
                (self.monomer_colors > 0).then(|| {
                    let base = Rat::from_integer(Int::from(self.monomer_colors)) * &sign;
                    match w {
                        Some(w) => base * w.b(p),
                        None => base,
                    }
                })
            })
            .collect();
        let dimer = (0..self.len.saturating_sub(1))
            .map(|p| {
                if p == 0 && self.forbid_leading_dimer {
                    return None;
                }
                Some(match w {
                    Some(w) => &sign * w.lam(p + 1),
                    None => sign.clone(),
                })
            })
            .collect();
        (mono, dimer)
    }
}

fn cover_walk(
    p: usize,
    end: usize,
    mono: &[Option<Rat>],
    dimer: &[Option<Rat>],
    acc: &Rat,
    missing: usize,
    out: &mut Vec<Rat>,
) {
    if p >= end {
        out[missing] += acc;
        return;
    }
    cover_walk(p + 1, end, mono, dimer, acc, missing + 1, out);
    if let Some(m) = &mono[p] {
        cover_walk(p + 1, end, mono, dimer, &(acc * m), missing, out);
    }
    if p + 1 < end {
        if let Some(dw) = &dimer[p] {
            cover_walk(p + 2, end, mono, dimer, &(acc * dw), missing, out);
        }
    }
}

/// Weighted cover sums for every missing count, by explicit enumeration.
/// Without weights each piece contributes only its sign and color count.
pub fn cover_sums(spec: &CoverSpec, w: Option<&WeightScheme>) -> Result<Vec<Rat>> {
    if spec.len > COVER_MAX {
        return Err(Error::SizeGuard(format!("interval length {} exceeds {COVER_MAX}", spec.len)));
    }
    if let Some(w) = w {
        w.require(spec.len)?;
    }
    let start = if spec.excise_leading_pair { 2 } else { 0 };
    let size = spec.len.saturating_sub(start);
    let mut out = vec![Rat::zero(); size + 1];
    if spec.excise_leading_pair && spec.len < 2 {
        return Ok(out);
    }
    let (mono, dimer) = spec.piece_weights(w);
    // Enumerate the choices on the first few positions serially, then the tails in parallel.
    let split = (start + 6).min(spec.len);
    let mut frontier: Vec<(usize, Rat, usize)> = Vec::new();
    let mut stack = vec![(start, Rat::one(), 0usize)];
    while let Some((p, acc, miss)) = stack.pop() {
        if p >= split {
            frontier.push((p, acc, miss));
            continue;
        }
        stack.push((p + 1, acc.clone(), miss + 1));
        if let Some(m) = &mono[p] {
            stack.push((p + 1, &acc * m, miss));
        }
        if p + 1 < spec.len {
            if let Some(dw) = &dimer[p] {
                stack.push((p + 2, &acc * dw, miss));
            }
        }
    }
    let parts = par::map(&frontier, |(p, acc, miss)| {
        let mut local = vec![Rat::zero(); size + 1];
        cover_walk(*p, spec.len, &mono, &dimer, acc, *miss, &mut local);
        local
    });
    for part in parts {
        for (o, v) in out.iter_mut().zip(part) {
            *o += v;
        }
    }
    Ok(out)
}

/// Weighted cover sum for the spec's missing count.
pub fn cover_sum(spec: &CoverSpec, w: Option<&WeightScheme>) -> Result<Rat> {
    let sums = cover_sums(spec, w)?;
    Ok(sums.get(spec.missing).cloned().unwrap_or_else(Rat::zero))
}

/// [x^r] P_m as a sum over covers of [m]: monomer {k} weighs -b_{k-1},
/// dimer {k,k+1} weighs -λ_k, uncovered elements contribute x.
pub fn coefficient_via_covers(w: &WeightScheme, m: usize, r: usize) -> Result<Rat> {
    let spec = CoverSpec {
        len: m,
        missing: r,
        forbid_leading_dimer: false,
        excise_leading_pair: false,
        monomer_colors: 1,
        signed: true,
    };
    cover_sum(&spec, Some(w))
}

/// Both sides of 2^m [x^ℓ] T̂_m = 2^ℓ D_{m,ℓ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimerIdentity {
    pub m: usize,
    pub ell: usize,
    /// Dimer covers of [0,m-1] avoiding {0,1} with ℓ uncovered.
    pub a: Int,
    /// Dimer covers of [2,m-1] with ℓ uncovered.
    pub b: Int,
    /// (-1)^{(m-ℓ)/2} (A + 2B).
    pub d: Int,
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
    pub note: Option<String>,
}

fn dimer_count(len: usize, missing: usize, forbid: bool, excise: bool) -> Result<Int> {
    let spec = CoverSpec {
        len,
        missing,
        forbid_leading_dimer: forbid,
        excise_leading_pair: excise,
        monomer_colors: 0,
        signed: false,
    };
    Ok(cover_sum(&spec, None)?.to_integer())
}

pub fn dimer_identity_check(m: usize, ell: usize) -> Result<DimerIdentity> {
    if m < 2 {
        return Err(Error::Range("dimer identity needs m >= 2".into()));
    }
    if ell > m || (m - ell) % 2 == 1 {
        return Ok(DimerIdentity {
            m,
            ell,
            a: Int::zero(),
            b: Int::zero(),
            d: Int::zero(),
            lhs: Rat::zero(),
            rhs: Rat::zero(),
            holds: true,
            note: Some("parity mismatch: both sides vanish".into()),
        });
    }
    let a = dimer_count(m, ell, true, false)?;
    let b = dimer_count(m, ell, false, true)?;
    let mut d = &a + Int::from(2) * &b;
    if ((m - ell) / 2) % 2 == 1 {
        d = -d;
    }
    // T̂_m = T_m / 2^{m-1}
    let t = &chebyshev_t(m)[m];
    let lhs = pow2_rat(m as i64) * t.coeff(ell) * pow2_rat(1 - m as i64);
    let rhs = pow2_rat(ell as i64) * rat_int(&d);
    let holds = lhs == rhs;
    Ok(DimerIdentity { m, ell, a, b, d, lhs, rhs, holds, note: None })
}

/// Gamma vector of a full palindromic h (d even) from signed covers with
/// 2-colored monomers on intervals [0, j-1], weighted by h_{d/2-j}.
pub fn gamma_via_covers(h: &[Int]) -> Result<Vec<Int>> {
    if h.is_empty() {
        return Err(Error::Shape("empty h-vector".into()));
    }
    if !dehn_sommerville_check(h) {
        return Err(Error::NotReciprocal);
    }
    let d = h.len() - 1;
    if d % 2 == 1 {
        return Err(Error::Range("cover expansion needs even d".into()));
    }
    let n = d / 2;
    let spec = |j: usize, excise: bool| CoverSpec {
        len: j,
        missing: 0,
        forbid_leading_dimer: !excise,
        excise_leading_pair: excise,
        monomer_colors: 2,
        signed: true,
    };
    // Per interval length j: A_j(r) - 2 B_j(r) for every missing count r.
    let per_j: Vec<Result<Vec<Rat>>> = par::map_range(0..n + 1, |j| {
        let a = cover_sums(&spec(j, false), None)?;
        let b = if j >= 2 { cover_sums(&spec(j, true), None)? } else { vec![] };
        Ok((0..=j)
            .map(|r| {
                let bv = b.get(r).cloned().unwrap_or_else(Rat::zero);
                &a[r] - Rat::from_integer(Int::from(2)) * bv
            })
            .collect())
    });
    let mut gamma = vec![Int::zero(); n + 1];
    for (j, row) in per_j.into_iter().enumerate() {
        let row = row?;
        for (r, v) in row.iter().enumerate() {
            // r uncovered positions feed γ_{n-r}
            gamma[n - r] += &h[n - j] * v.to_integer();
        }
    }
    Ok(gamma)
}

/// f_S(t) = Σ_{i=0}^{d} f_{i-1} t^i with f_{-1} = 1.
pub fn f_polynomial(k: &SimplicialComplex) -> Poly {
    let mut c = vec![k.f_minus_one()];
    c.extend(k.f_vector());
    Poly::from_ints(&c)
}

/// F_S(x) = f_S((x-1)/2).
pub fn tcheb_f_polynomial(k: &SimplicialComplex) -> Poly {
    f_polynomial(k).compose(&Poly::linear(rat(-1, 2), rat(1, 2)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TchebIdentity {
    /// Chebyshev map applied to F of the input.
    pub lhs: Poly,
    /// F of the subdivision.
    pub rhs: Poly,
    pub subdivision_f: Vec<Int>,
    pub holds: bool,
}

/// Compares T(F_K) with F_{T(K)}.
pub fn tcheb_fpoly_identity_check(k: &SimplicialComplex, edge_order: Option<&[Face]>) -> Result<TchebIdentity> {
    let sub = k.tchebyshev_subdivision(edge_order)?;
    let lhs = chebyshev_map(&tcheb_f_polynomial(k));
    let rhs = tcheb_f_polynomial(&sub);
    let holds = lhs == rhs;
    Ok(TchebIdentity { lhs, rhs, subdivision_f: sub.f_vector(), holds })
}

/// z together with the scheme used to invert it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedGamma {
    pub z: Vec<Rat>,
    pub weights: WeightScheme,
}

impl GeneralizedGamma {
    pub fn n(&self) -> usize {
        self.z.len().saturating_sub(1)
    }

    /// z_m = 2^m γ_{N-m} with Chebyshev weights.
    pub fn from_gamma(gamma: &[Int]) -> Self {
        let n = gamma.len().saturating_sub(1);
        let z = (0..=n).map(|m| pow2_rat(m as i64) * rat_int(&gamma[n - m])).collect();
        GeneralizedGamma { z, weights: WeightScheme::chebyshev(n) }
    }
}

/// q, formal h and formal g of a generalized gamma vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalVectors {
    pub q: Vec<Rat>,
    pub h: Vec<Rat>,
    pub g: Vec<Rat>,
}

impl FormalVectors {
    pub fn to_json(&self) -> serde_json::Value {
        let s = |v: &[Rat]| v.iter().map(rat_string).collect::<Vec<_>>();
        serde_json::json!({"q": s(&self.q), "h": s(&self.h), "g": s(&self.g)})
    }
}

fn q_values(z: &[Rat], mu: &MuMatrix) -> Vec<Rat> {
    let n = z.len() - 1;
    (0..=n)
        .map(|l| (l..=n).fold(Rat::zero(), |s, m| s + &z[m] * mu.get(m, l)))
        .collect()
}

/// q_ℓ = Σ_{m≥ℓ} z_m μ_{m,ℓ}, h_k = 2^{-(N-k)} q_{N-k}, g_k = h_k - h_{k-1}.
pub fn formal_h(gg: &GeneralizedGamma) -> Result<FormalVectors> {
    if gg.z.is_empty() {
        return Err(Error::Shape("empty z".into()));
    }
    let n = gg.n();
    let mu = mu_matrix(&gg.weights, n)?;
    let q = q_values(&gg.z, &mu);
    let h: Vec<Rat> = (0..=n).map(|k| pow2_rat(k as i64 - n as i64) * &q[n - k]).collect();
    let g = (0..=n)
        .map(|k| {
            let next = if k == 0 { Rat::zero() } else { q[n - k + 1].clone() };
            pow2_rat(k as i64 - n as i64 - 1) * (Rat::from_integer(Int::from(2)) * &q[n - k] - next)
        })
        .collect();
    Ok(FormalVectors { q, h, g })
}

/// Row ℓ of the monotonicity test: z_{ℓ-1} ≥ threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodalityRow {
    pub ell: usize,
    pub threshold: Rat,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodalityReport {
    pub rows: Vec<UnimodalityRow>,
    pub monotone: bool,
    /// 2μ_{r-1,s} ≤ μ_{r,s} for all 0 ≤ s < r ≤ N, as literally stated.
    pub literal_sufficient: bool,
    /// 2μ_{m,ℓ-1} - μ_{m,ℓ} ≥ 0 for all m ≥ ℓ ≥ 1: every threshold term is ≤ 0 for z ≥ 0.
    pub coefficient_sufficient: bool,
}

impl UnimodalityReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "ell": r.ell, "threshold": rat_string(&r.threshold), "holds": r.holds,
            })).collect::<Vec<_>>(),
            "monotone": self.monotone,
            "literal_sufficient": self.literal_sufficient,
            "coefficient_sufficient": self.coefficient_sufficient,
        })
    }
}

/// Formal h is weakly increasing iff z_{ℓ-1} ≥ -½ Σ_{m≥ℓ} (2μ_{m,ℓ-1} - μ_{m,ℓ}) z_m for 1 ≤ ℓ ≤ N.
pub fn formal_unimodality_check(gg: &GeneralizedGamma) -> Result<UnimodalityReport> {
    if gg.z.is_empty() {
        return Err(Error::Shape("empty z".into()));
    }
    if gg.z.iter().any(|x| x.is_negative()) {
        return Err(Error::Range("z must be nonnegative".into()));
    }
    let n = gg.n();
    let mu = mu_matrix(&gg.weights, n)?;
    let two = Rat::from_integer(Int::from(2));
    let rows: Vec<UnimodalityRow> = (1..=n)
        .map(|l| {
            let s = (l..=n).fold(Rat::zero(), |s, m| {
                s + (&two * mu.get(m, l - 1) - mu.get(m, l)) * &gg.z[m]
            });
            let threshold = -s / &two;
            let holds = gg.z[l - 1] >= threshold;
            UnimodalityRow { ell: l, threshold, holds }
        })
        .collect();
    let monotone = rows.iter().all(|r| r.holds);
    let literal_sufficient =
        (1..=n).all(|r| (0..r).all(|s| &two * mu.get(r - 1, s) <= mu.get(r, s)));
    let coefficient_sufficient = (1..=n)
        .all(|l| (l..=n).all(|m| &two * mu.get(m, l - 1) >= mu.get(m, l)));
    Ok(UnimodalityReport { rows, monotone, literal_sufficient, coefficient_sufficient })
}

/// Bound on z_{k-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormalBound {
    Unbounded,
    Finite(Rat),
    Infeasible { slack: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalExtensionBound {
    /// Index k-1 of the entry being bounded.
    pub index: usize,
    pub mode: Mode,
    pub bound: FormalBound,
}

impl FormalExtensionBound {
    pub fn to_json(&self) -> serde_json::Value {
        let (upper, slack) = match &self.bound {
            FormalBound::Unbounded => (None, None),
            FormalBound::Finite(u) => (Some(rat_string(u)), Some(rat_string(u))),
            FormalBound::Infeasible { slack } => (None, Some(rat_string(slack))),
        };
        serde_json::json!({"index": self.index, "mode": self.mode.as_str(), "upper": upper, "slack": slack})
    }
}

fn integral(x: &Rat, what: &str) -> Result<Int> {
    as_integer(x).ok_or_else(|| Error::NonIntegral(format!("{what} = {}", rat_string(x))))
}

fn nonneg_pseudopower(x: &Rat, k: usize, what: &str) -> Result<Rat> {
    let a = integral(x, what)?;
    if a.is_negative() {
        return Err(Error::Range(format!("{what} is negative")));
    }
    Ok(rat_int(&pseudopower(&a, k as u32)))
}

/// Upper bound on z_{k-1} from `top = [z_N, z_{N-1}, ..., z_k]` by the
/// M-inequality of the formal vector selected by `mode`.
pub fn formal_extension_bound(
    top: &[Rat],
    n: usize,
    w: &WeightScheme,
    mode: Mode,
) -> Result<FormalExtensionBound> {
    if top.is_empty() || top.len() > n {
        return Err(Error::Range(format!("prefix length must lie in 1..={n}")));
    }
    if top[0] != pow2_rat(n as i64) {
        return Err(Error::Normalization);
    }
    if top.iter().any(|x| x.is_negative()) {
        return Err(Error::Range("z entries must be nonnegative".into()));
    }
    let k = n + 1 - top.len();
    let index = k - 1;
    if k == n {
        return Ok(FormalExtensionBound { index, mode, bound: FormalBound::Unbounded });
    }
    let mu = mu_matrix(w, n)?;
    // z with unknown lower entries set to zero: sums below only touch j ≥ k.
    let mut z = vec![Rat::zero(); n + 1];
    for (t, v) in top.iter().enumerate() {
        z[n - t] = v.clone();
    }
    let q = q_values(&z, &mu);
    let two = Rat::from_integer(Int::from(2));
    let pidx = n - k;
    let slack = match mode {
        Mode::Sphere => {
            let qk1 = if k < n { q[k + 1].clone() } else { Rat::zero() };
            let g = pow2_rat(-(k as i64) - 1) * (&two * &q[k] - qk1);
            let pp = nonneg_pseudopower(&g, pidx, &format!("formal g_{pidx}"))?;
            let lin = (k..=n).fold(Rat::zero(), |s, j| s + (&two * mu.get(j, k - 1) - mu.get(j, k)) * &z[j]);
            (pow2_rat(k as i64) * pp - lin) / &two
        }
        Mode::Cm => {
            let h = pow2_rat(-(k as i64)) * &q[k];
            let pp = nonneg_pseudopower(&h, pidx, &format!("formal h_{pidx}"))?;
            let lin = (k..=n).fold(Rat::zero(), |s, j| s + mu.get(j, k - 1) * &z[j]);
            pow2_rat(k as i64 - 1) * pp - lin
        }
        Mode::FVector => {
            let gam = pow2_rat(-(k as i64)) * &z[k];
            let pp = nonneg_pseudopower(&gam, pidx, &format!("z_{k} / 2^{k}"))?;
            pow2_rat(k as i64 - 1) * pp
        }
    };
    let bound = if slack.is_negative() {
        FormalBound::Infeasible { slack }
    } else {
        FormalBound::Finite(slack)
    };
    Ok(FormalExtensionBound { index, mode, bound })
}

/// Sparse multivariate polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, Int>,
    nvars: usize,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { terms: BTreeMap::new(), nvars }
    }
    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(vec![0; nvars], Int::one());
        p
    }
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Int::one());
        p
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Int> {
        &self.terms
    }
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
    pub fn nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let slot = out.terms.entry(e.clone()).or_insert_with(Int::zero);
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }
    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = out.terms.entry(e).or_insert_with(Int::zero);
                *slot += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
    /// Evaluates at rational values of the variables.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.terms.iter().fold(Rat::zero(), |s, (e, c)| {
            let m = e.iter().zip(x).fold(rat_int(c), |acc, (p, v)| acc * num_traits::pow(v.clone(), *p as usize));
            s + m
        })
    }
}

/// μ_{n,k} as polynomials in b_0..b_{N-1} (variables 0..N) and λ_1..λ_{N-1}
/// (variables N..2N-1, λ_j at N+j-1).
pub fn mu_symbolic(n: usize) -> Vec<Vec<MPoly>> {
    let nv = 2 * n;
    let b = |k: usize| MPoly::var(nv, k);
    let lam = |j: usize| MPoly::var(nv, n + j - 1);
    let mut rows: Vec<Vec<MPoly>> = vec![vec![MPoly::one(nv)]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let row = (0..=r)
            .map(|k| {
                let mut v = if k >= 1 { prev[k - 1].clone() } else { MPoly::zero(nv) };
                if k < r {
                    v = v.add(&b(k).mul(&prev[k]));
                }
                if k + 1 < r {
                    v = v.add(&lam(k + 1).mul(&prev[k + 1]));
                }
                v
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Every μ_{r,k}, r ≤ N, has total degree r-k and nonnegative coefficients.
pub fn symbolic_degree_check(n: usize) -> bool {
    mu_symbolic(n).iter().enumerate().all(|(r, row)| {
        row.iter().enumerate().all(|(k, p)| {
            p.total_degree() == Some((r - k) as u32) && p.nonnegative_coefficients()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn chebyshev_family_is_translated() {
        let p = unitary_family(&WeightScheme::chebyshev(2), 2).unwrap();
        assert_eq!(p[1], Poly::new(vec![rat(-1, 1), rat(1, 1)]));
        assert_eq!(p[2], Poly::new(vec![rat(1, 2), rat(-2, 1), rat(1, 1)]));
        // T̂_2(x - 1)
        let t2hat = chebyshev_t(2)[2].scale(&rat(1, 2));
        assert_eq!(t2hat.compose(&Poly::linear(rat(-1, 1), rat(1, 1))), p[2]);
    }

    #[test]
    fn zero_b_gives_minus_lambda() {
        let w = WeightScheme::new(vec![rat(0, 1); 3], vec![rat(7, 3), rat(5, 1)]);
        let p = unitary_family(&w, 2).unwrap();
        assert_eq!(p[2], Poly::new(vec![rat(-7, 3), rat(0, 1), rat(1, 1)]));
    }

    #[test]
    fn small_mu_entries() {
        let mu = mu_matrix(&WeightScheme::chebyshev(4), 4).unwrap();
        assert_eq!(mu.get(2, 0), rat(3, 2));
        assert_eq!(mu.get(2, 1), rat(2, 1));
        assert_eq!(mu.get(4, 3), rat(4, 1));
        assert_eq!(mu_bruteforce(&WeightScheme::chebyshev(3), 3, 1).unwrap(), mu.get(3, 1));
        assert!(inverse_pair_check(&WeightScheme::chebyshev(0), 0).unwrap().holds());
    }

    #[test]
    fn cover_constant_term() {
        let w = WeightScheme::chebyshev(2);
        assert_eq!(coefficient_via_covers(&w, 2, 0).unwrap(), rat(1, 2));
        assert_eq!(coefficient_via_covers(&w, 2, 2).unwrap(), rat(1, 1));
    }

    #[test]
    fn worked_dimer_case() {
        let r = dimer_identity_check(2, 0).unwrap();
        assert_eq!((r.a.clone(), r.b.clone(), r.d.clone()), (int(0), int(1), int(-2)));
        assert_eq!(r.lhs, rat(-2, 1));
        assert!(r.holds);
        assert!(dimer_identity_check(3, 0).unwrap().note.is_some());
    }

    #[test]
    fn covers_give_gamma() {
        let h: Vec<Int> = [1, 7, 1].iter().map(|&v| int(v)).collect();
        assert_eq!(gamma_via_covers(&h).unwrap(), vec![int(1), int(5)]);
        let h: Vec<Int> = [1, 4, 6, 4, 1].iter().map(|&v| int(v)).collect();
        assert_eq!(gamma_via_covers(&h).unwrap(), vec![int(1), int(0), int(0)]);
    }

    #[test]
    fn three_cycle_fpoly() {
        let r = tcheb_fpoly_identity_check(&SimplicialComplex::cycle(3).unwrap(), None).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, Poly::new(vec![rat(-1, 2), rat(0, 1), rat(3, 2)]));
    }

    #[test]
    fn formal_h_of_d2_example() {
        let gg = GeneralizedGamma::from_gamma(&[int(1), int(2)]);
        assert_eq!(gg.z, vec![rat(2, 1), rat(2, 1)]);
        let f = formal_h(&gg).unwrap();
        assert_eq!(f.h, vec![rat(1, 1), rat(4, 1)]);
        assert_eq!(f.g, vec![rat(1, 1), rat(3, 1)]);
        assert!(formal_unimodality_check(&gg).unwrap().monotone);
    }

    #[test]
    fn symbolic_small() {
        let s = mu_symbolic(2);
        // μ_{2,0} = b_0^2 + λ_1
        let mut expect = MPoly::var(4, 0).mul(&MPoly::var(4, 0));
        expect = expect.add(&MPoly::var(4, 2));
        assert_eq!(s[2][0], expect);
        assert!(symbolic_degree_check(6));
    }

    #[test]
    fn vacuous_top_bound() {
        let w = WeightScheme::chebyshev(1);
        let b = formal_extension_bound(&[rat(2, 1)], 1, &w, Mode::Sphere).unwrap();
        assert_eq!(b.bound, FormalBound::Unbounded);
    }
}
