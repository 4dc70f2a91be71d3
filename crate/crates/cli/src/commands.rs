//! Command bodies. Each returns a JSON report and an exit code.

use crate::input::{load_complex, load_counts, parse_ints, parse_rats, RunConfig, Source};
use crate::{CheckMode, CliError, Outcome, EXIT_FAIL, EXIT_LINK};
use gammasphere::arith::{parse_rat, rat_string};
use gammasphere::link::triviality_diagnostics;
use gammasphere::macaulay::{check_cm_h, check_f_vector, check_sphere_g};
use gammasphere::orthopath::{
    coefficient_via_covers, formal_h, formal_unimodality_check, gamma_via_covers, mu_matrix, unitary_family,
    GeneralizedGamma, WeightScheme,
};
use gammasphere::realize::{extend_gamma, extend_gamma_by, ExtendOptions, Mode, Strategy};
use gammasphere::vectors::{dehn_sommerville_check, gamma_via_chebyshev, h_half_to_gamma, h_to_g, GMode};
use gammasphere::{Error, Int};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn strs(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn opt_strs(v: &Option<Vec<Int>>) -> Value {
    v.as_ref().map_or(Value::Null, |x| json!(strs(x)))
}

fn note(cfg: &RunConfig, msg: impl FnOnce() -> String) {
    if cfg.verbose > 0 {
        eprintln!("[{} as {:?}] {}", cfg.command.join(" "), cfg.format, msg());
    }
}

pub fn vectors(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = load_counts(cfg)?;
    note(cfg, || format!("input {} with d = {}", cfg.source.as_ref().map_or("none", |s| s.label()), c.d));
    let palindromic = dehn_sommerville_check(&c.h);
    if !palindromic && matches!(cfg.source, Some(Source::H(_))) {
        return Err(Error::NotReciprocal.into());
    }
    let (gamma, gamma_error) = if palindromic {
        match gamma_via_chebyshev(&c.h) {
            Ok(g) => (Some(g), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, Some(Error::NotReciprocal.to_string()))
    };
    // The matrix path only sees the lower half, so it is compared on even d.
    let gamma_matrix = (palindromic && c.d % 2 == 0).then(|| h_half_to_gamma(&c.h[..=c.d / 2], c.d).ok()).flatten();
    let agreement = match (&gamma, &gamma_matrix) {
        (Some(a), Some(b)) => Value::Bool(a == b),
        (Some(_), None) if c.d % 2 == 1 => Value::Null,
        (None, None) => Value::Null,
        _ => Value::Bool(false),
    };
    let report = json!({
        "d": c.d,
        "source": cfg.source.as_ref().map(|s| s.label()),
        "f": strs(&c.f),
        "h": strs(&c.h),
        "g_trunc": strs(&h_to_g(&c.h, GMode::Trunc)),
        "g_ext": strs(&h_to_g(&c.h, GMode::Ext)),
        "dehn_sommerville": palindromic,
        "gamma": opt_strs(&gamma),
        "gamma_error": gamma_error,
        "gamma_matrix": opt_strs(&gamma_matrix),
        "gamma_agreement": agreement,
    });
    Ok(Outcome { report, code: 0 })
}

pub fn check(cfg: &RunConfig, mode: CheckMode) -> Result<Outcome, CliError> {
    let c = load_counts(cfg)?;
    let (name, result) = match mode {
        CheckMode::Fvector => ("fvector", check_f_vector(&c.f)),
        CheckMode::Cm => ("cm", check_cm_h(&c.h)),
        CheckMode::Sphere => ("sphere", check_sphere_g(&c.h)),
    };
    note(cfg, || format!("{name} check on d = {}: {}", c.d, result.holds));
    let mut report = json!({"mode": name, "d": c.d, "f": strs(&c.f), "h": strs(&c.h)});
    let obj = report.as_object_mut().expect("object");
    if let Value::Object(m) = result.to_json() {
        obj.extend(m);
    }
    Ok(Outcome { report, code: if result.holds { 0 } else { EXIT_FAIL } })
}

pub fn link_analyze(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if !cfg.source.as_ref().is_some_and(Source::is_complex) {
        return Err(CliError::usage("link analyze needs --generator or --file".into()));
    }
    let k = load_complex(cfg)?;
    if !k.is_pure() {
        return Err(CliError::usage("complex is not pure".into()));
    }
    match triviality_diagnostics(&k) {
        Ok(rep) => {
            let ok = rep.identities_hold();
            note(cfg, || format!("{} edges, identities hold: {ok}", rep.f1_edges));
            Ok(Outcome { report: rep.to_json(), code: if ok { 0 } else { EXIT_FAIL } })
        }
        Err(Error::LinkCondition(_)) => {
            let violations = k.check_link_condition()?.violations();
            let report = json!({"link_condition": false, "violating_edges": violations});
            Err(CliError {
                code: EXIT_LINK,
                message: format!("link condition fails on {} edges", violations.len()),
                report: Some(report),
            })
        }
        Err(e) => Err(e.into()),
    }
}

/// Uniform integer in 0..=cap by rejection on random bytes.
fn uniform_upto(rng: &mut ChaCha8Rng, cap: &Int) -> Int {
    if cap.sign() != num_bigint::Sign::Plus {
        return Int::from(0);
    }
    if let Ok(c) = u64::try_from(cap) {
        return Int::from(rng.random_range(0..=c));
    }
    let bits = cap.bits();
    let bytes = bits.div_ceil(8) as usize;
    let top_mask = 0xffu8 >> (bytes as u64 * 8 - bits);
    loop {
        let mut buf = vec![0u8; bytes];
        rng.fill(buf.as_mut_slice());
        buf[bytes - 1] &= top_mask;
        let v = Int::from_bytes_le(num_bigint::Sign::Plus, &buf);
        if &v <= cap {
            return v;
        }
    }
}

pub fn extend(
    cfg: &RunConfig,
    gamma: &str,
    mode: Mode,
    strategy: &str,
    free_cap: Option<&str>,
    seed: u64,
) -> Result<Outcome, CliError> {
    let prefix = parse_ints("gamma", gamma)?;
    let d = cfg.d.expect("extend always sets d");
    let opts = ExtendOptions { free_cap: free_cap.map(|s| parse_ints("free-cap", s)).transpose()?.map(|v| v[0].clone()) };
    let (kind, arg) = strategy.split_once(':').unwrap_or((strategy, ""));
    let ext = match kind {
        "max" => extend_gamma(&prefix, d, mode, &Strategy::Max, &opts)?,
        "fraction" => {
            let r = parse_rat(arg).ok_or_else(|| CliError::usage(format!("bad fraction {arg:?}")))?;
            extend_gamma(&prefix, d, mode, &Strategy::Fraction(r), &opts)?
        }
        "given" => extend_gamma(&prefix, d, mode, &Strategy::Given(parse_ints("strategy given", arg)?), &opts)?,
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            extend_gamma_by(&prefix, d, mode, &opts, |_, cap| uniform_upto(&mut rng, cap))?
        }
        _ => return Err(CliError::usage(format!("unknown strategy {strategy:?}"))),
    };
    note(cfg, || format!("{} rows, complete: {}", ext.rows.len(), ext.is_complete()));
    let report = json!({
        "d": d,
        "mode": mode.as_str(),
        "strategy": strategy,
        "seed": (kind == "random").then_some(seed),
        "prefix": strs(&prefix),
        "rows": ext.rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "gamma": strs(&ext.gamma),
        "complete": ext.is_complete(),
        "infeasible_at": ext.infeasible_at,
    });
    Ok(Outcome { report, code: if ext.is_complete() { 0 } else { EXIT_FAIL } })
}

fn load_scheme(spec: &str, n: usize) -> Result<WeightScheme, CliError> {
    if spec == "chebyshev" {
        return Ok(WeightScheme::chebyshev(n));
    }
    let text =
        std::fs::read_to_string(spec).map_err(|e| CliError::usage(format!("cannot read scheme {spec}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::usage(format!("scheme {spec}: {e}")))?;
    Ok(WeightScheme::from_json(&v)?)
}

pub fn ortho_mu(n: usize, scheme: &str) -> Result<Outcome, CliError> {
    let w = load_scheme(scheme, n)?;
    let mu = mu_matrix(&w, n)?;
    let mut report = mu.to_json();
    report["scheme"] = w.to_json();
    Ok(Outcome { report, code: 0 })
}

pub fn ortho_invert(z: &str, scheme: &str) -> Result<Outcome, CliError> {
    let z = parse_rats("z", z)?;
    if z.is_empty() {
        return Err(CliError::usage("--z is empty".into()));
    }
    let w = load_scheme(scheme, z.len() - 1)?;
    let gg = GeneralizedGamma { z: z.clone(), weights: w };
    let formal = formal_h(&gg)?;
    let unimodality = formal_unimodality_check(&gg).map(|r| r.to_json()).unwrap_or(Value::Null);
    let report = json!({
        "N": gg.n(),
        "z": z.iter().map(rat_string).collect::<Vec<_>>(),
        "formal": formal.to_json(),
        "unimodality": unimodality,
    });
    Ok(Outcome { report, code: 0 })
}

pub fn ortho_covers(m: usize, r: usize, scheme: &str) -> Result<Outcome, CliError> {
    let w = load_scheme(scheme, m)?;
    let covers = coefficient_via_covers(&w, m, r)?;
    let recursion = unitary_family(&w, m)?[m].coeff(r);
    let agree = covers == recursion;
    let report = json!({
        "m": m,
        "r": r,
        "via_covers": rat_string(&covers),
        "via_recursion": rat_string(&recursion),
        "agree": agree,
    });
    Ok(Outcome { report, code: if agree { 0 } else { EXIT_FAIL } })
}

pub fn ortho_gamma_dimers(h: &str) -> Result<Outcome, CliError> {
    let h = parse_ints("h", h)?;
    if h.is_empty() {
        return Err(CliError::usage("--h is empty".into()));
    }
    let covers = gamma_via_covers(&h)?;
    let d = h.len() - 1;
    let chebyshev = gamma_via_chebyshev(&h)?;
    let matrix = h_half_to_gamma(&h[..=d / 2], d)?;
    let agree = covers == chebyshev && covers == matrix;
    let report = json!({
        "d": d,
        "gamma": strs(&covers),
        "gamma_chebyshev": strs(&chebyshev),
        "gamma_matrix": strs(&matrix),
        "agreement": agree,
    });
    Ok(Outcome { report, code: if agree { 0 } else { EXIT_FAIL } })
}
