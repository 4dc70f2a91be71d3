//! Input sources and vector parsing.

use crate::CliError;
use gammasphere::arith::parse_rat;
use gammasphere::complex::{Family, SimplicialComplex};
use gammasphere::vectors::{f_to_h, g_to_h, gamma_to_full_h, h_to_f};
use gammasphere::{Int, Rat};
use std::path::PathBuf;

/// Exactly one of these feeds a command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Generator(Family),
    File(PathBuf),
    F(Vec<Int>),
    H(Vec<Int>),
    G(Vec<Int>),
    Gamma(Vec<Int>),
}

impl Source {
    pub fn is_complex(&self) -> bool {
        matches!(self, Source::Generator(_) | Source::File(_))
    }
    pub fn label(&self) -> &'static str {
        match self {
            Source::Generator(_) => "generator",
            Source::File(_) => "file",
            Source::F(_) => "f",
            Source::H(_) => "h",
            Source::G(_) => "g",
            Source::Gamma(_) => "gamma",
        }
    }
}

/// Validated invocation settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Vec<&'static str>,
    pub source: Option<Source>,
    pub d: Option<usize>,
    pub format: crate::render::Format,
    pub verbose: u8,
    pub guard_faces: u128,
}

pub fn parse_ints(name: &str, csv: &str) -> Result<Vec<Int>, CliError> {
    csv.split(',')
        .enumerate()
        .map(|(i, t)| {
            t.trim()
                .parse::<Int>()
                .map_err(|_| CliError::usage(format!("--{name}: entry {i} ({t:?}) is not an integer")))
        })
        .collect()
}

pub fn parse_rats(name: &str, csv: &str) -> Result<Vec<Rat>, CliError> {
    csv.split(',')
        .enumerate()
        .map(|(i, t)| {
            parse_rat(t.trim())
                .ok_or_else(|| CliError::usage(format!("--{name}: entry {i} ({t:?}) is not a rational")))
        })
        .collect()
}

pub fn parse_generator(spec: &str) -> Result<Family, CliError> {
    let (name, arg) = spec
        .split_once(':')
        .ok_or_else(|| CliError::usage(format!("generator {spec:?} must look like name:n")))?;
    let n: u32 = arg
        .parse()
        .map_err(|_| CliError::usage(format!("generator size {arg:?} is not a nonnegative integer")))?;
    match name {
        "cross" => Ok(Family::CrossPolytopeBoundary(n)),
        "simplexboundary" => Ok(Family::SimplexBoundary(n)),
        "cycle" => Ok(Family::Cycle(n)),
        _ => Err(CliError::usage(format!("unknown generator {name:?} (cross, simplexboundary, cycle)"))),
    }
}

/// Faces touched when listing every face of a generated family.
fn generator_cost(family: Family) -> u128 {
    match family {
        Family::CrossPolytopeBoundary(d) => 3u128.checked_pow(d).unwrap_or(u128::MAX),
        Family::SimplexBoundary(d) => 1u128.checked_shl(d + 1).unwrap_or(u128::MAX),
        Family::Cycle(n) => 4 * n as u128,
    }
}

pub fn load_complex(cfg: &RunConfig) -> Result<SimplicialComplex, CliError> {
    let k = match &cfg.source {
        Some(Source::Generator(fam)) => {
            let cost = generator_cost(*fam);
            if cost > cfg.guard_faces {
                return Err(CliError::usage(format!(
                    "generator needs about {cost} face enumerations, above --guard-faces {}",
                    cfg.guard_faces
                )));
            }
            SimplicialComplex::generate(*fam)?
        }
        Some(Source::File(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            SimplicialComplex::parse(&text)?
        }
        _ => return Err(CliError::usage("this command needs --generator or --file".into())),
    };
    let cost = k.enumeration_cost();
    if cost > cfg.guard_faces {
        return Err(CliError::usage(format!(
            "complex needs {cost} face enumerations, above --guard-faces {}",
            cfg.guard_faces
        )));
    }
    Ok(k)
}

/// f and h of the input, whatever its form.
#[derive(Clone, Debug)]
pub struct Counts {
    pub d: usize,
    pub f: Vec<Int>,
    pub h: Vec<Int>,
}

fn need_d(cfg: &RunConfig, what: &str) -> Result<usize, CliError> {
    cfg.d.ok_or_else(|| CliError::usage(format!("--{what} needs --d")))
}

fn match_d(cfg: &RunConfig, d: usize) -> Result<usize, CliError> {
    match cfg.d {
        Some(given) if given != d => {
            Err(CliError::usage(format!("inconsistent d: vector implies {d}, --d says {given}")))
        }
        _ => Ok(d),
    }
}

pub fn load_counts(cfg: &RunConfig) -> Result<Counts, CliError> {
    let source = cfg.source.as_ref().ok_or_else(|| CliError::usage("no input given".into()))?;
    let (d, h) = match source {
        Source::Generator(_) | Source::File(_) => {
            let k = load_complex(cfg)?;
            let d = match_d(cfg, k.d())?;
            return Ok(Counts { d, f: k.f_vector(), h: k.h_vector() });
        }
        Source::F(f) => {
            let d = match_d(cfg, f.len())?;
            return Ok(Counts { d, h: f_to_h(f, d)?, f: f.clone() });
        }
        Source::H(h) => {
            if h.is_empty() {
                return Err(CliError::usage("empty h-vector".into()));
            }
            (match_d(cfg, h.len() - 1)?, h.clone())
        }
        Source::G(g) => {
            let d = need_d(cfg, "g")?;
            (d, g_to_h(g, d)?)
        }
        Source::Gamma(gamma) => {
            let d = need_d(cfg, "gamma")?;
            (d, gamma_to_full_h(gamma, d)?)
        }
    };
    Ok(Counts { d, f: h_to_f(&h)?, h })
}
