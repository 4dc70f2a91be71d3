mod commands;
mod input;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use input::{RunConfig, Source};
use render::Format;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exit codes: 0 pass, 1 check failed, 2 usage or parse error, 3 link condition fails.
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_LINK: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    /// Printed on stdout before exiting, when present.
    pub report: Option<serde_json::Value>,
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError { code: EXIT_USAGE, message, report: None }
    }
}

impl From<gammasphere::Error> for CliError {
    fn from(e: gammasphere::Error) -> Self {
        let code = match e {
            gammasphere::Error::LinkCondition(_) => EXIT_LINK,
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.to_string(), report: None }
    }
}

/// What a command hands back: the report and its exit code.
pub struct Outcome {
    pub report: serde_json::Value,
    pub code: u8,
}

#[derive(Parser, Debug)]
#[command(name = "gammasphere", version, about = "Face, gamma and lattice-path computations for simplicial spheres")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Repeat for more detail on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Refuse complexes whose face enumeration exceeds this many subsets.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    guard_faces: u128,
    /// Seed for randomized strategies.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
#[group(id = "input", multiple = false)]
struct InputArgs {
    /// cross:d, simplexboundary:d or cycle:n
    #[arg(long)]
    generator: Option<String>,
    /// Facet file: one facet per line, or {"facets": [...]}.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
}

impl InputArgs {
    fn source(&self) -> Result<Option<Source>, CliError> {
        use input::{parse_generator, parse_ints};
        Ok(if let Some(s) = &self.generator {
            Some(Source::Generator(parse_generator(s)?))
        } else if let Some(p) = &self.file {
            Some(Source::File(p.clone()))
        } else if let Some(s) = &self.f {
            Some(Source::F(parse_ints("f", s)?))
        } else if let Some(s) = &self.h {
            Some(Source::H(parse_ints("h", s)?))
        } else if let Some(s) = &self.g {
            Some(Source::G(parse_ints("g", s)?))
        } else if let Some(s) = &self.gamma {
            Some(Source::Gamma(parse_ints("gamma", s)?))
        } else {
            None
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Fvector,
    Cm,
    Sphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sphere,
    Cm,
    Fvector,
}

impl From<ModeArg> for gammasphere::realize::Mode {
    fn from(m: ModeArg) -> Self {
        use gammasphere::realize::Mode;
        match m {
            ModeArg::Sphere => Mode::Sphere,
            ModeArg::Cm => Mode::Cm,
            ModeArg::Fvector => Mode::FVector,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// f, h, g and gamma vectors with consistency flags.
    Vectors {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Kruskal-Katona, Cohen-Macaulay or g-theorem test.
    Check {
        #[arg(value_enum)]
        mode: CheckMode,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Link-based identities and inequalities.
    Link {
        #[command(subcommand)]
        cmd: LinkCmd,
    },
    /// Extend a gamma prefix entry by entry.
    Extend {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "sphere")]
        mode: ModeArg,
        /// max, fraction:p/q, given:v1,v2,... or random
        #[arg(long, default_value = "max")]
        strategy: String,
        /// Cap for unbounded steps; defaults to d.
        #[arg(long)]
        free_cap: Option<String>,
    },
    /// Orthogonal-polynomial path and cover computations.
    Ortho {
        #[command(subcommand)]
        cmd: OrthoCmd,
    },
}

#[derive(Subcommand, Debug)]
enum LinkCmd {
    Analyze {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum OrthoCmd {
    /// Weighted path matrix μ up to length N.
    Mu {
        #[arg(long = "N")]
        n: usize,
        /// chebyshev, or a JSON file {"b": [...], "lam": [...]}
        #[arg(long, default_value = "chebyshev")]
        scheme: String,
    },
    /// Formal h and g of a generalized gamma vector z_0..z_N.
    Invert {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "chebyshev")]
        scheme: String,
    },
    /// Coefficient of x^r in P_m from covers and from the recursion.
    Covers {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "chebyshev")]
        scheme: String,
    },
    /// Gamma vector from monomer/dimer counts.
    GammaDimers {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
}

fn config(cli: &Cli, command: Vec<&'static str>, input: Option<&InputArgs>, d: Option<usize>) -> Result<RunConfig, CliError> {
    if cli.guard_faces == 0 {
        return Err(CliError::usage("--guard-faces must be positive".into()));
    }
    Ok(RunConfig {
        command,
        source: input.map(|i| i.source()).transpose()?.flatten(),
        d,
        format: cli.format,
        verbose: cli.verbose,
        guard_faces: cli.guard_faces,
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.cmd {
        Cmd::Vectors { input, d } => commands::vectors(&config(cli, vec!["vectors"], Some(input), *d)?),
        Cmd::Check { mode, input, d } => commands::check(&config(cli, vec!["check"], Some(input), *d)?, *mode),
        Cmd::Link { cmd: LinkCmd::Analyze { input } } => {
            commands::link_analyze(&config(cli, vec!["link", "analyze"], Some(input), None)?)
        }
        Cmd::Extend { gamma, d, mode, strategy, free_cap } => {
            let cfg = config(cli, vec!["extend"], None, Some(*d))?;
            commands::extend(&cfg, gamma, (*mode).into(), strategy, free_cap.as_deref(), cli.seed)
        }
        Cmd::Ortho { cmd } => match cmd {
            OrthoCmd::Mu { n, scheme } => commands::ortho_mu(*n, scheme),
            OrthoCmd::Invert { z, scheme } => commands::ortho_invert(z, scheme),
            OrthoCmd::Covers { m, r, scheme } => commands::ortho_covers(*m, *r, scheme),
            OrthoCmd::GammaDimers { h } => commands::ortho_gamma_dimers(h),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let result = run(&cli);
    if cli.verbose > 0 {
        eprintln!("{:?} finished in {:.3}s", cli.cmd, start.elapsed().as_secs_f64());
    }
    match result {
        Ok(out) => {
            print!("{}", render::render(&out.report, cli.format));
            ExitCode::from(out.code)
        }
        Err(e) => {
            if let Some(r) = &e.report {
                print!("{}", render::render(r, cli.format));
            }
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
