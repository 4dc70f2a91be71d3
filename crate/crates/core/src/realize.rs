//! Stepwise realizability bounds for nonnegative gamma vectors.

use crate::arith::{binom_u, floor_rat, rat_int, Int, Rat};
use crate::error::{Error, Result};
use crate::macaulay::{check_cm_h, check_f_vector, check_sphere_g, pseudopower, MCheck};
use crate::vectors::{a_coef, b_coef, gamma_to_full_h, gamma_to_g, gamma_to_h};
use num_traits::{One, Signed, Zero};

/// Which realizability condition drives the extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// g-vector M-condition (simplicial spheres).
    Sphere,
    /// h-vector M-condition (Cohen-Macaulay complexes).
    Cm,
    /// Kruskal-Katona on γ itself.
    FVector,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Sphere => "sphere",
            Mode::Cm => "cm",
            Mode::FVector => "fvector",
        }
    }
}

/// Bound on the next gamma entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    /// No inequality applies (first step).
    Unbounded,
    Finite(Int),
    /// Pseudopower side minus linear side is negative.
    Infeasible { slack: Int },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionBound {
    /// Index i+1 of the entry being bounded.
    pub index: usize,
    pub mode: Mode,
    pub bound: Bound,
}

impl ExtensionBound {
    pub fn upper(&self) -> Option<&Int> {
        match &self.bound {
            Bound::Finite(u) => Some(u),
            _ => None,
        }
    }
    /// Pseudopower side minus linear side, when an inequality applies.
    pub fn slack(&self) -> Option<&Int> {
        match &self.bound {
            Bound::Finite(u) => Some(u),
            Bound::Infeasible { slack } => Some(slack),
            Bound::Unbounded => None,
        }
    }
    pub fn is_feasible(&self) -> bool {
        !matches!(self.bound, Bound::Infeasible { .. })
    }
}

fn validate_prefix(prefix: &[Int], d: usize) -> Result<()> {
    if prefix.first().is_none_or(|g| !g.is_one()) {
        return Err(Error::Normalization);
    }
    if prefix.iter().any(|g| g.is_negative()) {
        return Err(Error::Range("gamma entries must be nonnegative".into()));
    }
    if prefix.len() > d / 2 {
        return Err(Error::Range(format!(
            "index {} exceeds ⌊d/2⌋ = {}",
            prefix.len(),
            d / 2
        )));
    }
    Ok(())
}

fn lin(coef: fn(usize, usize, usize) -> Int, d: usize, row: usize, gamma: &[Int]) -> Int {
    gamma
        .iter()
        .enumerate()
        .take(row + 1)
        .map(|(j, g)| coef(d, row, j) * g)
        .sum()
}

/// Upper bound on γ_{i+1} given γ_0..γ_i.
pub fn gamma_extension_bound(prefix: &[Int], d: usize, mode: Mode) -> Result<ExtensionBound> {
    validate_prefix(prefix, d)?;
    let i = prefix.len() - 1;
    let index = i + 1;
    if i == 0 {
        return Ok(ExtensionBound { index, mode, bound: Bound::Unbounded });
    }
    let slack = match mode {
        Mode::Sphere | Mode::Cm => {
            let coef = if mode == Mode::Sphere { b_coef } else { a_coef };
            let here = lin(coef, d, i, prefix);
            let next_without = lin(coef, d, i + 1, prefix);
            pseudopower(&here, i as u32) - next_without
        }
        Mode::FVector => pseudopower(&prefix[i], i as u32),
    };
    let bound = if slack.is_negative() {
        Bound::Infeasible { slack }
    } else {
        Bound::Finite(slack)
    };
    Ok(ExtensionBound { index, mode, bound })
}

/// How the next entry is picked from its bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    Max,
    /// floor(ρ · upper), ρ in (0, 1].
    Fraction(Rat),
    /// Explicit values for the entries after the prefix.
    Given(Vec<Int>),
}

/// One extension step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRow {
    pub index: usize,
    pub mode: Mode,
    pub bound: Bound,
    pub chosen: Option<Int>,
}

impl ExtensionRow {
    pub fn to_json(&self) -> serde_json::Value {
        let (upper, slack) = match &self.bound {
            Bound::Unbounded => (serde_json::Value::Null, serde_json::Value::Null),
            Bound::Finite(u) => (u.to_string().into(), u.to_string().into()),
            Bound::Infeasible { slack } => (serde_json::Value::Null, slack.to_string().into()),
        };
        serde_json::json!({
            "index": self.index,
            "mode": self.mode.as_str(),
            "upper": upper,
            "chosen": self.chosen.as_ref().map(|c| c.to_string()),
            "slack": slack,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    /// Full vector when every step succeeded, otherwise the feasible prefix.
    pub gamma: Vec<Int>,
    pub rows: Vec<ExtensionRow>,
    pub infeasible_at: Option<usize>,
}

impl Extension {
    pub fn is_complete(&self) -> bool {
        self.infeasible_at.is_none()
    }
}

/// Value used when a step carries no bound; defaults to d.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtendOptions {
    pub free_cap: Option<Int>,
}

/// Extends a gamma prefix to length ⌊d/2⌋+1.
pub fn extend_gamma(
    prefix: &[Int],
    d: usize,
    mode: Mode,
    strategy: &Strategy,
    opts: &ExtendOptions,
) -> Result<Extension> {
    let target = d / 2 + 1;
    if prefix.len() > target {
        return Err(Error::Range(format!("prefix longer than ⌊d/2⌋+1 = {target}")));
    }
    if prefix.len() == target {
        validate_full(prefix)?;
        return Ok(Extension { gamma: prefix.to_vec(), rows: vec![], infeasible_at: None });
    }
    if let Strategy::Fraction(r) = strategy {
        if !r.is_positive() || r > &Rat::one() {
            return Err(Error::Range("fraction must lie in (0, 1]".into()));
        }
    }
    if let Strategy::Given(v) = strategy {
        if v.len() < target - prefix.len() {
            return Err(Error::Shape(format!(
                "given sequence needs {} values",
                target - prefix.len()
            )));
        }
    }
    extend_gamma_by(prefix, d, mode, opts, |step, cap| match strategy {
        Strategy::Max => cap.clone(),
        Strategy::Fraction(r) => floor_rat(&(r * rat_int(cap))),
        Strategy::Given(v) => v[step].clone(),
    })
}

/// Extension with a caller-supplied choice `pick(step, cap)`; `cap` is the
/// bound, or the free cap when the step is unbounded.
pub fn extend_gamma_by<F>(
    prefix: &[Int],
    d: usize,
    mode: Mode,
    opts: &ExtendOptions,
    mut pick: F,
) -> Result<Extension>
where
    F: FnMut(usize, &Int) -> Int,
{
    let target = d / 2 + 1;
    if prefix.len() > target {
        return Err(Error::Range(format!("prefix longer than ⌊d/2⌋+1 = {target}")));
    }
    if prefix.len() == target {
        validate_full(prefix)?;
        return Ok(Extension { gamma: prefix.to_vec(), rows: vec![], infeasible_at: None });
    }
    let free_cap = opts.free_cap.clone().unwrap_or_else(|| Int::from(d));
    let mut gamma = prefix.to_vec();
    let mut rows = Vec::new();
    while gamma.len() < target {
        let eb = gamma_extension_bound(&gamma, d, mode)?;
        let step = gamma.len() - prefix.len();
        let cap = match &eb.bound {
            Bound::Infeasible { .. } => {
                rows.push(ExtensionRow { index: eb.index, mode, bound: eb.bound, chosen: None });
                return Ok(Extension { infeasible_at: Some(gamma.len()), gamma, rows });
            }
            Bound::Finite(u) => u.clone(),
            Bound::Unbounded => free_cap.clone(),
        };
        let chosen = pick(step, &cap);
        let over = match &eb.bound {
            Bound::Finite(u) => &chosen > u,
            _ => false,
        };
        if over || chosen.is_negative() {
            let slack = match &eb.bound {
                Bound::Finite(u) => u - &chosen,
                _ => chosen.clone(),
            };
            rows.push(ExtensionRow {
                index: eb.index,
                mode,
                bound: Bound::Infeasible { slack },
                chosen: Some(chosen),
            });
            return Ok(Extension { infeasible_at: Some(gamma.len()), gamma, rows });
        }
        rows.push(ExtensionRow { index: eb.index, mode, bound: eb.bound, chosen: Some(chosen.clone()) });
        gamma.push(chosen);
    }
    Ok(Extension { gamma, rows, infeasible_at: None })
}

fn validate_full(gamma: &[Int]) -> Result<()> {
    if gamma.first().is_none_or(|g| !g.is_one()) {
        return Err(Error::Normalization);
    }
    Ok(())
}

/// The check matching a mode, applied to a full gamma vector.
pub fn mode_check(gamma: &[Int], d: usize, mode: Mode) -> Result<MCheck> {
    Ok(match mode {
        Mode::Sphere => check_sphere_g(&gamma_to_full_h(gamma, d)?),
        Mode::Cm => check_cm_h(&gamma_to_full_h(gamma, d)?),
        Mode::FVector => check_f_vector(&gamma[1..]),
    })
}

/// The three closed-form bounds at index q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedBounds {
    pub q: usize,
    /// q g_q and g_1 h_{q-1}
    pub part1_lhs: Option<Int>,
    pub part1_rhs: Int,
    pub part1_holds: Option<bool>,
    /// Recursive upper bound on γ_q (exact rational).
    pub recursive_bound: Rat,
    pub recursive_holds: Option<bool>,
    /// g_1 C(g_1+q-1, q-1) / q, an upper bound on g_q.
    pub closed_g_bound: Rat,
    /// closed_g_bound - Σ_{j<q} b_{q,j} γ_j, an upper bound on γ_q.
    pub closed_gamma_bound: Rat,
    /// closed_gamma_bound >= 0, necessary for γ_q >= 0.
    pub closed_nonnegative: bool,
}

/// Closed-form and recursive bounds on g_q and γ_q from γ_0..γ_{q-1} (and γ_q if given).
pub fn closed_gamma_bounds(prefix: &[Int], d: usize, q: usize) -> Result<ClosedBounds> {
    if q < 1 || q > d / 2 {
        return Err(Error::Range(format!("q must satisfy 1 <= q <= {}", d / 2)));
    }
    if prefix.len() < q {
        return Err(Error::Shape(format!("prefix needs at least {q} entries")));
    }
    if prefix.len() > d / 2 + 1 {
        return Err(Error::Shape("prefix longer than ⌊d/2⌋+1".into()));
    }
    let known = &prefix[..q];
    let mut padded = prefix.to_vec();
    padded.resize(d / 2 + 1, Int::zero());
    let g = gamma_to_g(&padded, d)?;
    let h = gamma_to_h(&padded, d)?;
    let g1 = g[1].clone();
    let have_q = prefix.len() > q;

    let qr = Rat::from_integer(Int::from(q));
    let part1_rhs = &g1 * &h[q - 1];
    let part1_lhs = have_q.then(|| Int::from(q) * &g[q]);
    let part1_holds = part1_lhs.as_ref().map(|l| l <= &part1_rhs);

    let mut recursive = Rat::zero();
    for (j, gj) in known.iter().enumerate() {
        let col: Int = (j..q).map(|i| b_coef(d, i, j)).sum();
        let c = rat_int(&g1) * rat_int(&col) / &qr - rat_int(&b_coef(d, q, j));
        recursive += c * rat_int(gj);
    }
    let recursive_holds = have_q.then(|| rat_int(&prefix[q]) <= recursive);

    let g1_big = &g1 + Int::from(q) - 1;
    let closed_g = rat_int(&(&g1 * crate::arith::binom(&g1_big, q as i64 - 1))) / &qr;
    let lin: Int = known.iter().enumerate().map(|(j, gj)| b_coef(d, q, j) * gj).sum();
    let closed_gamma = &closed_g - rat_int(&lin);
    Ok(ClosedBounds {
        q,
        part1_lhs,
        part1_rhs,
        part1_holds,
        recursive_bound: recursive,
        recursive_holds,
        closed_nonnegative: !closed_gamma.is_negative(),
        closed_g_bound: closed_g,
        closed_gamma_bound: closed_gamma,
    })
}

/// One index of [`order_diagnostics`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRow {
    pub i: usize,
    pub g: Int,
    /// C(d,i) - C(d,i-1)
    pub b_lower: Int,
    pub meets_lower: bool,
    /// g_i <= g_1^i
    pub within_power: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderDiagnostics {
    pub d: usize,
    pub rows: Vec<OrderRow>,
    /// g_1 <= linear_factor · d
    pub linear: bool,
    pub linear_factor: u32,
    /// g_1 < d + 10
    pub interlacing_active: bool,
    /// Some g_i falls below its γ >= 0 lower bound.
    pub gamma_nonneg_impossible: bool,
}

/// Default factor separating linear from superlinear g_1.
pub const LINEAR_FACTOR: u32 = 3;

/// Growth diagnostics for g_trunc.
pub fn order_diagnostics(g: &[Int], d: usize, linear_factor: u32) -> Result<OrderDiagnostics> {
    if g.len() != d / 2 + 1 || d < 2 {
        return Err(Error::Shape(format!("g_trunc for d = {d} needs {} entries", d / 2 + 1)));
    }
    let dd = d as i64;
    let rows: Vec<OrderRow> = (0..g.len())
        .map(|i| {
            let b = binom_u(dd, i as i64) - binom_u(dd, i as i64 - 1);
            OrderRow {
                i,
                g: g[i].clone(),
                meets_lower: g[i] >= b,
                within_power: g[i] <= num_traits::pow(g[1].clone(), i),
                b_lower: b,
            }
        })
        .collect();
    Ok(OrderDiagnostics {
        d,
        linear: g[1] <= Int::from(linear_factor as usize * d),
        linear_factor,
        interlacing_active: g[1] < Int::from(d + 10),
        gamma_nonneg_impossible: rows.iter().any(|r| !r.meets_lower),
        rows,
    })
}
