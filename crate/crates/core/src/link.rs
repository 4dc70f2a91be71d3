//! Local-global sums over vertex and edge links, the contraction law for h,
//! and the inequality and triviality diagnostics built on them.

use crate::arith::{binom_u, rat_int, rat_string, rat_to_f64, Int, Rat};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::interval::{decide_le, nth_root, pow_frac, pow_frac_interval, Interval, Verdict};
use crate::par;
use crate::vectors::{dehn_sommerville_check, g_ext_at, h_to_g, GMode};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

/// Both sides of an exact identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGlobal {
    pub index: usize,
    pub lhs: Int,
    pub rhs: Int,
}

impl LocalGlobal {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
    pub fn to_json(&self) -> Value {
        json!({"index": self.index, "lhs": self.lhs.to_string(), "rhs": self.rhs.to_string(), "equal": self.equal()})
    }
}

fn at(v: &[Int], i: i64) -> Int {
    if i < 0 || i as usize >= v.len() {
        Int::zero()
    } else {
        v[i as usize].clone()
    }
}

fn pad(mut v: Vec<Int>, len: usize) -> Vec<Int> {
    v.resize(len, Int::zero());
    v
}

/// Per-complex cache of link h-vectors.
#[derive(Clone, Debug)]
pub struct LinkData {
    pub d: usize,
    pub h: Vec<Int>,
    pub vertex_link_h: Vec<Vec<Int>>,
    pub edges: Vec<Face>,
    /// h(lk e) padded to length d - 1.
    pub edge_link_h: Vec<Vec<Int>>,
    pub link_condition_violations: Vec<Face>,
}

impl LinkData {
    /// Computes all vertex and edge links; the link condition is recorded, not enforced.
    pub fn compute(k: &SimplicialComplex) -> Result<Self> {
        if k.is_void() || !k.is_pure() {
            return Err(Error::Range("link data needs a nonvoid pure complex".into()));
        }
        let d = k.d();
        let h = k.h_vector();
        let verts = k.vertices();
        let vertex_link_h = par::map(&verts, |v| {
            let l = k.link(&[*v]).expect("vertex present");
            pad(l.h_vector(), d)
        });
        let edges = k.edges();
        let edge_link_h = par::map(&edges, |e| {
            let l = k.link(e).expect("edge present");
            pad(l.h_vector(), d.saturating_sub(1))
        });
        let violations = if d >= 2 {
            k.check_link_condition()?.violations()
        } else {
            vec![]
        };
        Ok(LinkData { d, h, vertex_link_h, edges, edge_link_h, link_condition_violations: violations })
    }

    pub fn link_condition_holds(&self) -> bool {
        self.link_condition_violations.is_empty()
    }

    fn require_link_condition(&self) -> Result<()> {
        match self.link_condition_violations.first() {
            Some(e) => Err(Error::LinkCondition(e.clone())),
            None => Ok(()),
        }
    }

    /// Σ_v h_i(lk v) against (i+1) h_{i+1} + (d-i) h_i.
    pub fn vertex_sum(&self, i: usize) -> LocalGlobal {
        let ii = i as i64;
        let lhs: Int = self.vertex_link_h.iter().map(|lh| at(lh, ii)).sum();
        let rhs = Int::from(i + 1) * at(&self.h, ii + 1) + Int::from(self.d as i64 - ii) * at(&self.h, ii);
        LocalGlobal { index: i, lhs, rhs }
    }

    /// 𝒞_k = Σ_e g_k(lk e) with extended link g-vectors.
    pub fn c_direct(&self, k: usize) -> Int {
        self.edge_link_h.iter().map(|lh| g_ext_at(lh, k as i64)).sum()
    }

    /// 2 Σ_e g_k(lk e) against the closed form in extended global g.
    pub fn edge_sum(&self, k: usize) -> Result<LocalGlobal> {
        self.require_link_condition()?;
        Ok(LocalGlobal { index: k, lhs: Int::from(2) * self.c_direct(k), rhs: two_c_closed(&self.h, k) })
    }

    /// h(lk e) shifted by one and subtracted from h.
    pub fn contraction_formula(&self, edge_index: usize) -> Vec<Int> {
        let lh = &self.edge_link_h[edge_index];
        (0..=self.d as i64).map(|i| at(&self.h, i) - at(lh, i - 1)).collect()
    }
}

/// 2𝒞_k = (k+1)(k+2) g_{k+2} + 2(k+1)(d-k) g_{k+1} + (d-k)(d-k+1) g_k, extended g.
pub fn two_c_closed(h: &[Int], k: usize) -> Int {
    let d = h.len() as i64 - 1;
    let k = k as i64;
    let g = |m: i64| g_ext_at(h, m);
    Int::from((k + 1) * (k + 2)) * g(k + 2)
        + Int::from(2 * (k + 1) * (d - k)) * g(k + 1)
        + Int::from((d - k) * (d - k + 1)) * g(k)
}

/// 𝒞_k from the closed form (may be a half-integer only if the inputs are not from a complex).
pub fn c_closed(h: &[Int], k: usize) -> Rat {
    Rat::new(two_c_closed(h, k), Int::from(2))
}

/// f_1 = C(d+1, 2) + d g_1 + g_2 with extended g.
pub fn f1_from_h(h: &[Int]) -> Int {
    let d = h.len() as i64 - 1;
    binom_u(d + 1, 2) + Int::from(d) * g_ext_at(h, 1) + g_ext_at(h, 2)
}

/// Vertex identity at index i.
pub fn vertex_local_global_check(k: &SimplicialComplex, i: usize) -> Result<LocalGlobal> {
    Ok(LinkData::compute(k)?.vertex_sum(i))
}

/// Edge identity at index k; fails if the link condition fails.
pub fn edge_local_global_check(k: &SimplicialComplex, idx: usize) -> Result<LocalGlobal> {
    LinkData::compute(k)?.edge_sum(idx)
}

/// h of the contraction recomputed and via the formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionCheck {
    pub edge: Face,
    pub recomputed: Vec<Int>,
    pub formula: Vec<Int>,
}

impl ContractionCheck {
    pub fn equal(&self) -> bool {
        self.recomputed == self.formula
    }
}

/// Compares h(Δ̃_e) from a recount with h(Δ) - x h(lk e).
pub fn contraction_h_check(k: &SimplicialComplex, e: &[u32]) -> Result<ContractionCheck> {
    let d = k.d();
    let contracted = k.contract_edge(e)?;
    let mut edge = e.to_vec();
    edge.sort_unstable();
    let (a, b) = (edge[0], edge[1]);
    let la = k.link(&[a])?.face_set();
    let lb = k.link(&[b])?.face_set();
    let le = k.link(&edge)?.face_set();
    let inter = la.intersection(&lb).count();
    if inter != le.len() || le.iter().any(|g| !la.contains(g) || !lb.contains(g)) {
        return Err(Error::LinkCondition(edge));
    }
    let f = pad(contracted.complex.f_vector(), d);
    let recomputed = crate::vectors::f_to_h(&f, d)?;
    let lh = pad(k.link(&edge)?.h_vector(), d.saturating_sub(1));
    let h = k.h_vector();
    let formula = (0..=d as i64).map(|i| at(&h, i) - at(&lh, i - 1)).collect();
    Ok(ContractionCheck { edge, recomputed, formula })
}

/// Whether g(Δ̃_e) >= 0 is known for every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Premise {
    /// Checked on every edge through the contraction law (and a recount when requested).
    Verified,
    /// Only global data was supplied.
    Assumed,
    /// Some contraction has a negative truncated g entry, or the recount disagreed.
    Violated { edge: Face, reason: String },
}

impl Premise {
    pub fn as_str(&self) -> &'static str {
        match self {
            Premise::Verified => "verified",
            Premise::Assumed => "assumed",
            Premise::Violated { .. } => "violated",
        }
    }
}

/// Checks g_trunc(Δ̃_e) >= 0 for every edge; `recount` also recomputes each contraction.
pub fn verify_contraction_premise(k: &SimplicialComplex, data: &LinkData, recount: bool) -> Result<Premise> {
    data.require_link_condition()?;
    let d = data.d;
    let outcomes = par::map_range(0..data.edges.len(), |idx| {
        let formula = data.contraction_formula(idx);
        let e = &data.edges[idx];
        if recount {
            match contraction_h_check(k, e) {
                Ok(c) if c.equal() => {}
                Ok(_) => return Some((e.clone(), "recount disagrees with the contraction law".to_string())),
                Err(err) => return Some((e.clone(), err.to_string())),
            }
        }
        let g = h_to_g(&formula, GMode::Trunc);
        if g.iter().take(d / 2 + 1).any(|x| x.is_negative()) {
            return Some((e.clone(), "negative g entry".to_string()));
        }
        None
    });
    Ok(match outcomes.into_iter().flatten().next() {
        Some((edge, reason)) => Premise::Violated { edge, reason },
        None => Premise::Verified,
    })
}

/// One index of the interlacing report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingRow {
    pub k: usize,
    /// 2(C(d+1,2) - (k+1)(d-k) + d g_1 + g_2) g_{k+1}
    pub part1_lhs: Int,
    /// (k+1)(k+2) g_{k+2} + (d-k)(d-k+1) g_k
    pub part1_rhs: Int,
    pub alpha: Option<Rat>,
    pub beta: Option<Rat>,
    pub lower_ok: Option<bool>,
    pub upper_ok: Option<bool>,
    pub degenerate: bool,
}

impl InterlacingRow {
    pub fn part1_holds(&self) -> bool {
        self.part1_lhs >= self.part1_rhs
    }
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "part1_lhs": self.part1_lhs.to_string(),
            "part1_rhs": self.part1_rhs.to_string(),
            "part1_holds": self.part1_holds(),
            "alpha": self.alpha.as_ref().map(rat_string),
            "beta": self.beta.as_ref().map(rat_string),
            "alpha_le_ratio": self.lower_ok,
            "ratio_le_beta": self.upper_ok,
            "degenerate": self.degenerate,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingReport {
    pub d: usize,
    pub f1: Int,
    pub premise: Premise,
    pub rows: Vec<InterlacingRow>,
}

impl InterlacingReport {
    /// Every part-one inequality and every defined sandwich verdict holds.
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| {
            r.part1_holds() && r.lower_ok.unwrap_or(true) && r.upper_ok.unwrap_or(true)
        })
    }
    /// α_k <= β_k wherever both exist.
    pub fn alpha_le_beta(&self) -> bool {
        self.rows.iter().all(|r| match (&r.alpha, &r.beta) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        })
    }
}

/// α_k and β_k from global data.
pub fn alpha_beta(h: &[Int], k: usize) -> (Option<Rat>, Option<Rat>) {
    let d = h.len() as i64 - 1;
    let k = k as i64;
    let base = binom_u(d + 1, 2) + Int::from(d) * g_ext_at(h, 1) + g_ext_at(h, 2);
    let a_den = Int::from(2) * (&base - Int::from((k + 1) * (d - k)));
    let alpha = (!a_den.is_zero()).then(|| Rat::new(Int::from((d - k) * (d - k + 1)), a_den));
    let b_den = Int::from(k * (k + 1));
    let beta = (!b_den.is_zero())
        .then(|| Rat::new(Int::from(2) * (&base - Int::from(k * (d - k + 1))), b_den));
    (alpha, beta)
}

/// Interlacing inequalities from global h; part one uses extended g, sandwiches truncated g.
pub fn interlacing_from_h(h: &[Int], premise: Premise) -> InterlacingReport {
    let d = h.len() - 1;
    let f1 = f1_from_h(h);
    let gt = h_to_g(h, GMode::Trunc);
    let rows = (0..d / 2)
        .map(|k| {
            let ki = k as i64;
            let di = d as i64;
            let g = |m: i64| g_ext_at(h, m);
            let coeff = Int::from(2) * (&f1 - Int::from((ki + 1) * (di - ki)));
            let part1_lhs = coeff * g(ki + 1);
            let part1_rhs = Int::from((ki + 1) * (ki + 2)) * g(ki + 2)
                + Int::from((di - ki) * (di - ki + 1)) * g(ki);
            let (mut alpha, mut beta) = (None, None);
            let (mut lower_ok, mut upper_ok) = (None, None);
            let mut degenerate = false;
            if k >= 1 {
                let (a, b) = alpha_beta(h, k);
                degenerate = a.is_none() || b.is_none();
                let gk = rat_int(&gt[k]);
                let gk1 = rat_int(&gt[k + 1]);
                lower_ok = a.as_ref().map(|a| a * &gk <= gk1);
                upper_ok = b.as_ref().map(|b| gk1 <= b * &gk);
                alpha = a;
                beta = b;
            }
            InterlacingRow { k, part1_lhs, part1_rhs, alpha, beta, lower_ok, upper_ok, degenerate }
        })
        .collect();
    InterlacingReport { d, f1, premise, rows }
}

/// Interlacing report for a complex; the premise is verified through the contraction law.
pub fn interlacing_bounds(k: &SimplicialComplex) -> Result<InterlacingReport> {
    let data = LinkData::compute(k)?;
    data.require_link_condition()?;
    let premise = verify_contraction_premise(k, &data, false)?;
    Ok(interlacing_from_h(&data.h, premise))
}

/// The two bracketing inequalities and the cushion at index i.
#[derive(Clone, Debug, PartialEq)]
pub struct SandwichRecord {
    pub i: usize,
    pub f1: Int,
    /// i(i+1) g_{i+1} + 2i(d-i+1) g_i + (d-i+1)(d-i+2) g_{i-1} (= 2𝒞_{i-1})
    pub s: Int,
    /// 2𝒞_i
    pub middle: Int,
    /// f_1 g_i - S/2
    pub x: Rat,
    /// 2 f_1 g_{i+1} - 2𝒞_i
    pub cushion: Int,
    pub lower: Option<Interval>,
    pub upper: Option<Interval>,
    pub cushion_cap: Option<Interval>,
    pub lower_ok: Verdict,
    pub upper_ok: Verdict,
    pub cushion_nonneg: bool,
    pub cushion_ok: Verdict,
    pub premise_violation: Option<String>,
}

impl SandwichRecord {
    pub fn all_true(&self) -> bool {
        self.lower_ok.is_true() && self.upper_ok.is_true() && self.cushion_nonneg && self.cushion_ok.is_true()
    }
    pub fn has_unknown(&self) -> bool {
        [self.lower_ok, self.upper_ok, self.cushion_ok].contains(&Verdict::Unknown)
    }
    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "middle": self.middle.to_string(),
            "lower": self.lower.as_ref().map(interval_json),
            "upper": self.upper.as_ref().map(interval_json),
            "cushion": self.cushion.to_string(),
            "cushion_cap": self.cushion_cap.as_ref().map(interval_json),
            "lower_ok": self.lower_ok.as_str(),
            "upper_ok": self.upper_ok.as_str(),
            "cushion_nonneg": self.cushion_nonneg,
            "cushion_ok": self.cushion_ok.as_str(),
            "premise_violation": self.premise_violation,
        })
    }
}

/// Interval as approximate endpoints for reports.
pub fn interval_json(iv: &Interval) -> Value {
    json!({"lo": rat_to_f64(&iv.lo), "hi": rat_to_f64(&iv.hi), "exact": iv.is_point()})
}

/// Rigorous evaluation of the bracketing inequalities at index i (2 <= i <= ⌊d/2⌋-1).
pub fn global_sandwich_from_h(h: &[Int], i: usize) -> Result<SandwichRecord> {
    let d = h.len() - 1;
    if i < 2 || i + 1 > d / 2 {
        return Err(Error::Range(format!("sandwich index must satisfy 2 <= i <= {}", (d / 2).saturating_sub(1))));
    }
    let f1 = f1_from_h(h);
    let s = two_c_closed(h, i - 1);
    let middle = two_c_closed(h, i);
    let gi = g_ext_at(h, i as i64);
    let gi1 = g_ext_at(h, i as i64 + 1);
    let x = rat_int(&(&f1 * &gi)) - Rat::new(s.clone(), Int::from(2));
    let two_f1_g = Int::from(2) * &f1 * &gi1;
    let cushion = &two_f1_g - &middle;
    let mut premise_violation = None;
    if x.is_negative() {
        premise_violation = Some("f1 g_i - 𝒞_{i-1} is negative".to_string());
    }
    if s.is_negative() {
        premise_violation = Some("𝒞_{i-1} is negative".to_string());
    }
    let iu = i as u32;
    let two = Rat::from_integer(Int::from(2));
    let half_s = Rat::new(s.clone(), Int::from(2));
    let lower_at = |bits: u32| {
        Interval::point(rat_int(&two_f1_g)).sub(&pow_frac(&x, iu + 1, iu, bits).scale(&two))
    };
    let upper_at = |bits: u32| pow_frac(&half_s, iu, iu - 1, bits).scale(&two);
    let cap_at = |bits: u32| pow_frac(&x, iu + 1, iu, bits).scale(&two);
    let mid = Interval::from_int(&middle);
    let (lower, upper, cushion_cap, lower_ok, upper_ok, cushion_ok) = if premise_violation.is_some() {
        (None, None, None, Verdict::Unknown, Verdict::Unknown, Verdict::Unknown)
    } else {
        let lo = decide_le(|b| (lower_at(b), mid.clone()));
        let up = decide_le(|b| (mid.clone(), upper_at(b)));
        let cu = decide_le(|b| (Interval::from_int(&cushion), cap_at(b)));
        let bits = crate::interval::START_BITS;
        (Some(lower_at(bits)), Some(upper_at(bits)), Some(cap_at(bits)), lo, up, cu)
    };
    Ok(SandwichRecord {
        i,
        cushion_nonneg: !cushion.is_negative(),
        f1,
        s,
        middle,
        x,
        cushion,
        lower,
        upper,
        cushion_cap,
        lower_ok,
        upper_ok,
        cushion_ok,
        premise_violation,
    })
}

/// Sandwich check on a complex satisfying the link condition.
pub fn global_sandwich_check(k: &SimplicialComplex, i: usize) -> Result<SandwichRecord> {
    if let Some(e) = k.check_link_condition()?.violations().first() {
        return Err(Error::LinkCondition(e.clone()));
    }
    global_sandwich_from_h(&k.h_vector(), i)
}

/// Finite-d thresholds used to place a row in a classification branch.
#[derive(Clone, Debug, PartialEq)]
pub struct Thresholds {
    /// g_1 <= linear_factor · d counts as linear.
    pub linear_factor: u32,
    /// κ_k below this counts as vanishing.
    pub kappa_small: Rat,
    /// τ_k at or above this counts as approaching one.
    pub tau_near_one: Rat,
    /// θ_k at or above this counts as the left side dominating.
    pub theta_large: Rat,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            linear_factor: crate::realize::LINEAR_FACTOR,
            kappa_small: Rat::new(Int::one(), Int::from(10)),
            tau_near_one: Rat::new(Int::from(9), Int::from(10)),
            theta_large: Rat::one(),
        }
    }
}

/// Classification branch of one row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// g_1 linear in d.
    LinearG1,
    /// (g_{k+1}/g_k)/(f_1/d²) small.
    LargeLink,
    /// τ_k bounded away from one.
    RatioBelowOne,
    /// τ_k near one but θ_k large.
    ThetaDominant,
    /// τ_k near one and θ_k small.
    NontrivialCandidate,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::LinearG1 => "linear-g1",
            Branch::LargeLink => "large-link",
            Branch::RatioBelowOne => "ratio-below-one",
            Branch::ThetaDominant => "theta-dominant",
            Branch::NontrivialCandidate => "nontrivial-candidate",
        }
    }
    pub fn is_trivial(self) -> bool {
        self != Branch::NontrivialCandidate
    }
}

/// Finite-d quotients whose limits the asymptotic classification studies.
#[derive(Clone, Debug, PartialEq)]
pub struct Surrogates {
    /// k(k+1)/2 · (g_{k+1}/g_k) / f_1
    pub tau: Rat,
    /// (g_{k+1}/g_k) / (f_1/d²)
    pub kappa: Rat,
    /// (k+1)(k+2)/2 · (g_{k+2}/g_{k+1}) / f_1, when g_{k+1} != 0
    pub sigma: Option<Rat>,
    /// ω_k (1 - τ_k)^{(k+1)/k}, when τ_k <= 1
    pub theta: Option<Interval>,
}

/// One row of the triviality report (1 <= k <= ⌊d/2⌋-1).
#[derive(Clone, Debug, PartialEq)]
pub struct TrivialityRow {
    pub k: usize,
    pub skip: Option<String>,
    pub c_prev: Rat,
    pub c_k: Rat,
    pub c_prev_direct: Option<Int>,
    pub c_k_direct: Option<Int>,
    /// 𝒞_{k-1} / (f_1 g_k)
    pub r_prev: Option<Rat>,
    /// 𝒞_k / (f_1 g_{k+1})
    pub r_k: Option<Rat>,
    pub omega: Option<Interval>,
    /// Lower bound on r_k; None when vacuous.
    pub lower_bound: Option<Interval>,
    pub lower_vacuous: bool,
    pub lower_ok: Verdict,
    /// r_{k-1}^{(k+1)/k}, informational.
    pub simplified_bound: Option<Interval>,
    pub simplified_ok: Verdict,
    /// ω_k (1 - r_{k-1})^{(k+1)/k}
    pub upper_term: Option<Interval>,
    /// upper_term >= 1, so the row holds since 1 - r_k <= 1.
    pub trivial_exact: Verdict,
    pub surrogates: Option<Surrogates>,
    /// Assigned for 1 <= k <= ⌊d/2⌋-2.
    pub branch: Option<Branch>,
}

impl TrivialityRow {
    pub fn in_unit_range(&self) -> Option<bool> {
        self.r_k.as_ref().map(|r| !r.is_negative() && r <= &Rat::one())
    }
    pub fn to_json(&self) -> Value {
        let q = |r: &Option<Rat>| r.as_ref().map(rat_string);
        let iv = |r: &Option<Interval>| r.as_ref().map(interval_json);
        json!({
            "k": self.k,
            "skip": self.skip,
            "C_prev": rat_string(&self.c_prev),
            "C_k": rat_string(&self.c_k),
            "C_prev_direct": self.c_prev_direct.as_ref().map(|c| c.to_string()),
            "C_k_direct": self.c_k_direct.as_ref().map(|c| c.to_string()),
            "r_prev": q(&self.r_prev),
            "r_k": q(&self.r_k),
            "omega": iv(&self.omega),
            "lower_bound": iv(&self.lower_bound),
            "lower_vacuous": self.lower_vacuous,
            "lower_ok": self.lower_ok.as_str(),
            "simplified_bound": iv(&self.simplified_bound),
            "simplified_ok": self.simplified_ok.as_str(),
            "upper_term": iv(&self.upper_term),
            "trivial_exact": self.trivial_exact.as_str(),
            "tau": self.surrogates.as_ref().map(|s| rat_string(&s.tau)),
            "kappa": self.surrogates.as_ref().map(|s| rat_string(&s.kappa)),
            "sigma": self.surrogates.as_ref().and_then(|s| s.sigma.as_ref().map(rat_string)),
            "theta": self.surrogates.as_ref().and_then(|s| s.theta.as_ref().map(interval_json)),
            "branch": self.branch.map(|b| b.as_str()),
        })
    }
}

/// Complex-level tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tags {
    /// Every classified row is trivial, exactly or by its branch.
    pub trivial_by_m_vector: bool,
    /// g_1 < d + 10.
    pub interlacing_active: bool,
    /// Some row is neither exactly trivial nor in a trivial branch.
    pub nontrivial_candidate: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrivialityReport {
    pub d: usize,
    pub f1: Int,
    pub g1_linear: bool,
    pub rows: Vec<TrivialityRow>,
    pub tags: Tags,
}

/// Surrogate quotients at row k from truncated g.
pub fn surrogates(g: &[Int], d: usize, f1: &Int, k: usize) -> Option<Surrogates> {
    if k == 0 || k + 1 >= g.len() || g[k].is_zero() || f1.is_zero() {
        return None;
    }
    let f1r = rat_int(f1);
    let ratio = Rat::new(g[k + 1].clone(), g[k].clone());
    let kk = Rat::from_integer(Int::from(k * (k + 1))) / Rat::from_integer(Int::from(2));
    let tau = &kk * &ratio / &f1r;
    let kappa = &ratio * Rat::from_integer(Int::from(d * d)) / &f1r;
    let sigma = (k + 2 < g.len() && !g[k + 1].is_zero()).then(|| {
        let kk2 = Rat::from_integer(Int::from((k + 1) * (k + 2))) / Rat::from_integer(Int::from(2));
        kk2 * Rat::new(g[k + 2].clone(), g[k + 1].clone()) / &f1r
    });
    let theta = if tau <= Rat::one() && !g[k + 1].is_zero() && g[k].is_positive() && g[k + 1].is_positive() {
        // θ = (f_1 g_k^{k+1} (1-τ)^{k+1})^{1/k} / g_{k+1}
        let one_minus = Rat::one() - &tau;
        let inner = &f1r * num_traits::pow(rat_int(&g[k]), k + 1) * num_traits::pow(one_minus, k + 1);
        let root = nth_root(&inner, k as u32, crate::interval::START_BITS);
        Some(root.scale(&Rat::new(Int::one(), g[k + 1].clone())))
    } else {
        None
    };
    Some(Surrogates { tau, kappa, sigma, theta })
}

fn classify(s: &Surrogates, linear: bool, t: &Thresholds) -> Branch {
    if linear {
        Branch::LinearG1
    } else if s.kappa < t.kappa_small {
        Branch::LargeLink
    } else if s.tau < t.tau_near_one {
        Branch::RatioBelowOne
    } else if s.theta.as_ref().is_some_and(|th| th.lo >= t.theta_large) {
        Branch::ThetaDominant
    } else {
        Branch::NontrivialCandidate
    }
}

/// Triviality diagnostics from a full palindromic h (no complex needed).
pub fn triviality_from_h(h: &[Int], thresholds: &Thresholds) -> Result<TrivialityReport> {
    if !dehn_sommerville_check(h) {
        return Err(Error::NotReciprocal);
    }
    let d = h.len() - 1;
    let f1 = f1_from_h(h);
    let g = h_to_g(h, GMode::Trunc);
    let g1_linear = d >= 1 && g.len() > 1 && g[1] <= Int::from(thresholds.linear_factor as usize * d);
    let f1r = rat_int(&f1);
    let rows: Vec<TrivialityRow> = (1..d / 2)
        .map(|k| {
            let c_prev = c_closed(h, k - 1);
            let c_k = c_closed(h, k);
            let mut row = TrivialityRow {
                k,
                skip: None,
                c_prev: c_prev.clone(),
                c_k: c_k.clone(),
                c_prev_direct: None,
                c_k_direct: None,
                r_prev: None,
                r_k: None,
                omega: None,
                lower_bound: None,
                lower_vacuous: false,
                lower_ok: Verdict::Unknown,
                simplified_bound: None,
                simplified_ok: Verdict::Unknown,
                upper_term: None,
                trivial_exact: Verdict::Unknown,
                surrogates: None,
                branch: None,
            };
            if g[k].is_zero() || g[k + 1].is_zero() || f1.is_zero() {
                row.skip = Some(format!("g_{} or g_{} is zero", k, k + 1));
                return row;
            }
            if g[k].is_negative() || g[k + 1].is_negative() {
                row.skip = Some("negative g entry".into());
                return row;
            }
            let gk = rat_int(&g[k]);
            let gk1 = rat_int(&g[k + 1]);
            let r_prev = &c_prev / (&f1r * &gk);
            let r_k = &c_k / (&f1r * &gk1);
            let ku = k as u32;
            // W = f_1 g_k^{k+1} / g_{k+1}^k, ω = W^{1/k}, ω^{k/(k+1)} = W^{1/(k+1)}
            let w = &f1r * num_traits::pow(gk.clone(), k + 1) / num_traits::pow(gk1.clone(), k);
            row.omega = Some(nth_root(&w, ku, crate::interval::START_BITS));
            let one_minus_prev = Rat::one() - &r_prev;
            if !one_minus_prev.is_negative() {
                let u_arg = &w * num_traits::pow(one_minus_prev.clone(), k + 1);
                row.upper_term = Some(nth_root(&u_arg, ku, crate::interval::START_BITS));
                row.trivial_exact =
                    decide_le(|b| (Interval::point(Rat::one()), nth_root(&u_arg, ku, b)));
                let base_at = |b: u32| {
                    Interval::point(Rat::one()).sub(&nth_root(&w, ku + 1, b).scale(&one_minus_prev))
                };
                let base = base_at(crate::interval::START_BITS);
                if base.hi.is_negative() {
                    row.lower_vacuous = true;
                    row.lower_ok = Verdict::from_bool(!r_k.is_negative());
                } else {
                    let bound_at = |b: u32| {
                        let bs = base_at(b);
                        let clipped = Interval::new(
                            if bs.lo.is_negative() { Rat::zero() } else { bs.lo.clone() },
                            bs.hi.clone(),
                        );
                        pow_frac_interval(&clipped, ku + 1, ku, b)
                    };
                    row.lower_bound = Some(bound_at(crate::interval::START_BITS));
                    row.lower_ok = decide_le(|b| (bound_at(b), Interval::point(r_k.clone())));
                }
            } else {
                row.skip = Some("r_{k-1} exceeds 1".into());
            }
            if !r_prev.is_negative() {
                let sb = |b: u32| pow_frac(&r_prev, ku + 1, ku, b);
                row.simplified_bound = Some(sb(crate::interval::START_BITS));
                row.simplified_ok = decide_le(|b| (sb(b), Interval::point(r_k.clone())));
            }
            row.r_prev = Some(r_prev);
            row.r_k = Some(r_k);
            row.surrogates = surrogates(&g, d, &f1, k);
            if k + 2 <= d / 2 {
                row.branch = row.surrogates.as_ref().map(|s| classify(s, g1_linear, thresholds));
            }
            row
        })
        .collect();
    let classified: Vec<&TrivialityRow> = rows.iter().filter(|r| r.branch.is_some()).collect();
    let row_trivial = |r: &TrivialityRow| r.trivial_exact.is_true() || r.branch.is_some_and(|b| b.is_trivial());
    let tags = Tags {
        trivial_by_m_vector: !classified.is_empty() && classified.iter().all(|r| row_trivial(r)),
        interlacing_active: g.len() > 1 && g[1] < Int::from(d + 10),
        nontrivial_candidate: classified.iter().any(|r| !row_trivial(r)),
    };
    Ok(TrivialityReport { d, f1, g1_linear, rows, tags })
}

/// Full report for a complex satisfying the link condition.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkReport {
    pub d: usize,
    pub f1: Int,
    pub f1_edges: Int,
    pub h: Vec<Int>,
    pub vertex_sums: Vec<LocalGlobal>,
    pub edge_sums: Vec<LocalGlobal>,
    pub contraction_checks: Vec<(Face, bool)>,
    pub interlacing: InterlacingReport,
    pub sandwiches: Vec<SandwichRecord>,
    pub triviality: TrivialityReport,
}

impl LinkReport {
    /// All exact identities: vertex sums, edge sums, direct vs closed 𝒞, f_1 and contractions.
    pub fn identities_hold(&self) -> bool {
        self.f1 == self.f1_edges
            && self.vertex_sums.iter().all(|x| x.equal())
            && self.edge_sums.iter().all(|x| x.equal())
            && self.contraction_checks.iter().all(|(_, ok)| *ok)
            && self.triviality.rows.iter().all(|r| {
                r.c_k_direct.as_ref().is_none_or(|c| rat_int(c) == r.c_k)
                    && r.c_prev_direct.as_ref().is_none_or(|c| rat_int(c) == r.c_prev)
            })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "f1": self.f1.to_string(),
            "f1_edges": self.f1_edges.to_string(),
            "h": self.h.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "identities_hold": self.identities_hold(),
            "vertex_sums": self.vertex_sums.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            "edge_sums": self.edge_sums.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            "contractions_agree": self.contraction_checks.iter().all(|(_, ok)| *ok),
            "premise": self.interlacing.premise.as_str(),
            "interlacing": self.interlacing.rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "sandwiches": self.sandwiches.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "rows": self.triviality.rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "tags": {
                "trivial_by_m_vector": self.triviality.tags.trivial_by_m_vector,
                "interlacing_active": self.triviality.tags.interlacing_active,
                "nontrivial_candidate": self.triviality.tags.nontrivial_candidate,
            },
        })
    }
}

/// Builds the full report; errors with the first violating edge if the link condition fails.
pub fn triviality_diagnostics(k: &SimplicialComplex) -> Result<LinkReport> {
    triviality_diagnostics_with(k, &Thresholds::default())
}

pub fn triviality_diagnostics_with(k: &SimplicialComplex, thresholds: &Thresholds) -> Result<LinkReport> {
    let data = LinkData::compute(k)?;
    data.require_link_condition()?;
    let d = data.d;
    let h = data.h.clone();
    let vertex_sums = (0..=d).map(|i| data.vertex_sum(i)).collect();
    let edge_sums = (0..=d + 1).map(|i| data.edge_sum(i)).collect::<Result<Vec<_>>>()?;
    let contraction_checks = par::map(&data.edges, |e| {
        let ok = contraction_h_check(k, e).map(|c| c.equal()).unwrap_or(false);
        (e.clone(), ok)
    });
    let premise = if contraction_checks.iter().all(|(_, ok)| *ok) {
        verify_contraction_premise(k, &data, false)?
    } else {
        let (edge, _) = contraction_checks.iter().find(|(_, ok)| !ok).cloned().expect("some edge failed");
        Premise::Violated { edge, reason: "recount disagrees with the contraction law".into() }
    };
    let interlacing = interlacing_from_h(&h, premise);
    let sandwiches = (2..d / 2).map(|i| global_sandwich_from_h(&h, i)).collect::<Result<Vec<_>>>()?;
    let mut triviality = triviality_from_h(&h, thresholds)?;
    for row in &mut triviality.rows {
        row.c_prev_direct = Some(data.c_direct(row.k - 1));
        row.c_k_direct = Some(data.c_direct(row.k));
    }
    Ok(LinkReport {
        d,
        f1: f1_from_h(&h),
        f1_edges: Int::from(data.edges.len()),
        h,
        vertex_sums,
        edge_sums,
        contraction_checks,
        interlacing,
        sandwiches,
        triviality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn v(x: &[i64]) -> Vec<Int> {
        x.iter().map(|&a| Int::from(a)).collect()
    }

    #[test]
    fn vertex_sums() {
        let oct = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let r = vertex_local_global_check(&oct, 1).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (Int::from(12), Int::from(12)));
        let c4 = SimplicialComplex::cross_polytope_boundary(4).unwrap();
        let r = vertex_local_global_check(&c4, 0).unwrap();
        assert_eq!(r.lhs, Int::from(8));
        assert!(r.equal());
        let r = vertex_local_global_check(&c4, 4).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (Int::zero(), Int::zero()));
    }

    #[test]
    fn edge_sums() {
        let c4 = SimplicialComplex::cross_polytope_boundary(4).unwrap();
        let data = LinkData::compute(&c4).unwrap();
        let r0 = data.edge_sum(0).unwrap();
        assert_eq!((r0.lhs.clone(), r0.rhs.clone()), (Int::from(48), Int::from(48)));
        let r1 = data.edge_sum(1).unwrap();
        assert_eq!((r1.lhs.clone(), r1.rhs.clone()), (Int::from(48), Int::from(48)));
        let oct = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let r = edge_local_global_check(&oct, 0).unwrap();
        assert_eq!(r.lhs, Int::from(24));
        assert!(r.equal());
        let tet = SimplicialComplex::simplex_boundary(3).unwrap();
        assert!(matches!(edge_local_global_check(&tet, 0), Err(Error::LinkCondition(_))));
    }

    #[test]
    fn contraction_law() {
        let c4 = SimplicialComplex::cross_polytope_boundary(4).unwrap();
        let c = contraction_h_check(&c4, &[0, 2]).unwrap();
        assert_eq!(c.recomputed, v(&[1, 3, 4, 3, 1]));
        assert!(c.equal());
        let oct = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let c = contraction_h_check(&oct, &[0, 2]).unwrap();
        assert_eq!(c.formula, v(&[1, 2, 2, 1]));
        assert!(c.equal());
        let sq = SimplicialComplex::cycle(4).unwrap();
        let c = contraction_h_check(&sq, &[0, 1]).unwrap();
        assert_eq!(c.recomputed, v(&[1, 1, 1]));
        assert!(c.equal());
    }

    #[test]
    fn interlacing_cross6() {
        let c6 = SimplicialComplex::cross_polytope_boundary(6).unwrap();
        let r = interlacing_bounds(&c6).unwrap();
        assert_eq!(r.f1, Int::from(60));
        assert_eq!(r.premise, Premise::Verified);
        assert!(r.all_hold() && r.alpha_le_beta());
        assert_eq!(r.rows[1].alpha, Some(rat(3, 10)));
        assert_eq!(r.rows[1].beta, Some(rat(54, 1)));
        assert_eq!(r.rows[2].alpha, Some(rat(20, 96)));
        assert_eq!(r.rows[2].beta, Some(rat(100, 6)));
        let c4 = SimplicialComplex::cross_polytope_boundary(4).unwrap();
        let r = interlacing_bounds(&c4).unwrap();
        assert_eq!(r.rows[1].lower_ok, Some(true));
        assert_eq!(r.rows[1].upper_ok, Some(true));
        let bad = interlacing_from_h(&v(&[1, 4, 6, 4, 1]), Premise::Assumed);
        assert_eq!(bad.premise.as_str(), "assumed");
    }

    #[test]
    fn sandwich() {
        let c6 = SimplicialComplex::cross_polytope_boundary(6).unwrap();
        let s = global_sandwich_check(&c6, 2).unwrap();
        assert!(s.all_true(), "{s:?}");
        let c4 = SimplicialComplex::cross_polytope_boundary(4).unwrap();
        assert!(matches!(global_sandwich_check(&c4, 1), Err(Error::Range(_))));
    }

    #[test]
    fn report_cross() {
        for d in [4u32, 6] {
            let k = SimplicialComplex::cross_polytope_boundary(d).unwrap();
            let rep = triviality_diagnostics(&k).unwrap();
            assert!(rep.identities_hold());
            assert!(rep.triviality.tags.interlacing_active);
            for row in &rep.triviality.rows {
                assert_eq!(row.in_unit_range(), Some(true));
            }
        }
    }
}
