//! Command-line front end: session config, argument parsing, dispatch and
//! JSON reports.

pub mod commands;
pub mod config;
pub mod serial;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hvir_core::algebra::AlgebraVariant;
use hvir_core::lattice::LatticeVector;
use hvir_core::syntax::ParseError;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub use config::{Session, SessionConfig, CONFIG_ENV};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse `{text}`: {error}")]
    Parse { text: String, error: ParseError },
    #[error("non-generic specialization: μ·{0} vanishes")]
    NonGeneric(LatticeVector),
}

impl CliError {
    pub fn parse(text: &str, error: ParseError) -> CliError {
        CliError::Parse {
            text: text.to_string(),
            error,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Inconsistent,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    pub status: Status,
    pub payload: Value,
    pub counterexamples: Vec<Value>,
}

impl Report {
    pub fn new(command: &str, status: Status, payload: Value) -> Report {
        Report {
            command: command.to_string(),
            args: Vec::new(),
            status,
            payload,
            counterexamples: Vec::new(),
        }
    }

    pub fn with_counterexamples(mut self, c: Vec<Value>) -> Report {
        self.counterexamples = c;
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Fail | Status::Inconsistent => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports are plain data")
    }

    /// Plain-text rendering for `--pretty`.
    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command  {}", self.command);
        let _ = writeln!(
            out,
            "status   {}",
            serde_json::to_value(self.status).unwrap().as_str().unwrap()
        );
        if let Value::Object(map) = &self.payload {
            for (k, v) in map {
                let _ = writeln!(out, "{k:<8} {}", render(v));
            }
        } else {
            let _ = writeln!(out, "payload  {}", render(&self.payload));
        }
        for c in &self.counterexamples {
            let _ = writeln!(out, "counterexample {}", render(c));
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum VariantArg {
    Solwitt,
    Wa,
    #[default]
    Hvir,
}

impl From<VariantArg> for AlgebraVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Solwitt => AlgebraVariant::SolWitt,
            VariantArg::Wa => AlgebraVariant::WA,
            VariantArg::Hvir => AlgebraVariant::HVir,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hvir",
    version,
    about = "Exact computations in the solenoidal Heisenberg-Virasoro algebra"
)]
pub struct Cli {
    /// JSON session config (defaults to $HVIR_CONFIG)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Lattice rank, overriding the config
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Specialize μ to these rationals, e.g. `--mu 2,1/3`
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub mu: Option<Vec<String>>,
    /// Seed for sampled window suites
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Check every case of a window suite instead of a seeded sample
    #[arg(long, global = true)]
    pub exhaustive: bool,
    /// Sample size for window suites without --exhaustive
    #[arg(long, global = true, default_value_t = 2000)]
    pub samples: usize,
    #[command(subcommand)]
    pub command: Command,
}

/// Parameters of `T_μ(a, b, F)`.
#[derive(Debug, Clone, clap::Args)]
pub struct TParams {
    #[arg(long, default_value = "a", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "b", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long = "F", default_value = "F", allow_hyphen_values = true)]
    pub f: String,
    /// Work in T(0,0,0)/Cv_0
    #[arg(long)]
    pub quotient: bool,
}

/// `λ = (lam, c0, c1, c2, c3)`; free parameters by default.
#[derive(Debug, Clone, clap::Args)]
pub struct WeightArgs {
    #[arg(long, default_value = "lam", allow_hyphen_values = true)]
    pub lam: String,
    #[arg(long, default_value = "c0", allow_hyphen_values = true)]
    pub c0: String,
    #[arg(long, default_value = "c1", allow_hyphen_values = true)]
    pub c1: String,
    #[arg(long, default_value = "c2", allow_hyphen_values = true)]
    pub c2: String,
    #[arg(long, default_value = "c3", allow_hyphen_values = true)]
    pub c3: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket of two elements
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, value_enum, default_value_t)]
        variant: VariantArg,
    },
    /// Jacobi defect of three elements, or a window suite over basis triples
    Jacobi {
        #[arg(long, allow_hyphen_values = true, requires_all = ["y", "z"])]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        variant: VariantArg,
        #[arg(long = "B")]
        window: Option<i64>,
    },
    /// Cocycle condition for a generator or a windowed cochain
    CocycleCheck {
        #[arg(long, conflicts_with = "cochain")]
        which: Option<u8>,
        /// JSON list of {pair, value}
        #[arg(long)]
        cochain: Option<PathBuf>,
        #[arg(long = "B")]
        window: Option<i64>,
    },
    /// Split a windowed cocycle into generators plus a coboundary
    CocycleDecompose {
        /// JSON list of {pair, value}
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long = "B")]
        window: Option<i64>,
    },
    /// Functional equation of θ_i
    ThetaCheck {
        #[arg(long)]
        which: u8,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Action on T_μ(a, b, F)
    TmodAct {
        #[command(flatten)]
        params: TParams,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Basis vector v_κ, e.g. `[0,1]`
        #[arg(long, allow_hyphen_values = true, conflicts_with = "vector")]
        kappa: Option<String>,
        /// JSON list of {kappa, coeff}
        #[arg(long)]
        vector: Option<String>,
    },
    /// Module axiom over a window
    TmodAxioms {
        #[command(flatten)]
        params: TParams,
        #[arg(long = "B")]
        window: Option<i64>,
    },
    /// Windowed search for invariant subspaces
    TmodSubmodule {
        #[command(flatten)]
        params: TParams,
        #[arg(long = "B")]
        window: Option<i64>,
    },
    /// Action on a Verma module
    VermaAct {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// JSON list of {kind, alpha}; the generating vector when omitted
        #[arg(long)]
        monomial: Option<String>,
        #[arg(long)]
        mirror: bool,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// PBW monomials of a given weight offset
    VermaWeights {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long = "D")]
        degree: Option<usize>,
        #[arg(long = "K")]
        bound: Option<i64>,
        #[arg(long)]
        mirror: bool,
    },
    /// Weight-space sizes for several coordinate bounds
    VermaGrowth {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long = "D")]
        degree: Option<usize>,
        #[arg(long = "K", value_delimiter = ',', required = true)]
        bounds: Vec<i64>,
        #[arg(long)]
        mirror: bool,
    },
    /// Checks on one level of the generalized Verma module
    GenvermaLevel {
        #[arg(long)]
        level: usize,
        #[arg(long = "B")]
        window: Option<i64>,
        /// Total tail weight κ' (defaults to 0)
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        #[command(flatten)]
        params: TParams,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bracket { .. } => "bracket",
            Command::Jacobi { .. } => "jacobi",
            Command::CocycleCheck { .. } => "cocycle-check",
            Command::CocycleDecompose { .. } => "cocycle-decompose",
            Command::ThetaCheck { .. } => "theta-check",
            Command::TmodAct { .. } => "tmod-act",
            Command::TmodAxioms { .. } => "tmod-axioms",
            Command::TmodSubmodule { .. } => "tmod-submodule",
            Command::VermaAct { .. } => "verma-act",
            Command::VermaWeights { .. } => "verma-weights",
            Command::VermaGrowth { .. } => "verma-growth",
            Command::GenvermaLevel { .. } => "genverma-level",
        }
    }
}

/// Everything a process run would print, plus its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Builds the session: defaults, then the config file, then command-line overrides.
pub fn session_from(cli: &Cli, env_config: Option<PathBuf>) -> Result<Session, CliError> {
    let mut config = match cli.config.clone().or(env_config) {
        Some(path) => SessionConfig::load(&path)?,
        None => SessionConfig::default(),
    };
    if let Some(n) = cli.n {
        config.n = n;
    }
    if let Some(mu) = &cli.mu {
        config.mu_values = Some(mu.iter().map(|m| config::RationalLit::Text(m.clone())).collect());
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    Session::new(config)
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I, env_config: Option<PathBuf>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("hvir".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome { stdout, stderr, code };
        }
    };
    let result = session_from(&cli, env_config).and_then(|session| commands::dispatch(&cli, &session));
    let report = match result {
        Ok(report) => report,
        Err(CliError::NonGeneric(alpha)) => Report::new(
            cli.command.name(),
            Status::Fail,
            serde_json::json!({ "error": CliError::NonGeneric(alpha.clone()).to_string() }),
        )
        .with_counterexamples(vec![serde_json::json!({ "alpha": alpha.coords() })]),
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                code: 2,
            }
        }
    };
    let report = Report { args, ..report };
    let stdout = if cli.pretty {
        report.to_pretty()
    } else {
        report.to_json() + "\n"
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: report.exit_code(),
    }
}
