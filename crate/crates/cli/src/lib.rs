//! Command line front end: argument parsing, instance resolution and exit codes.

mod commands;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use skewore::catalog::{finite_params, AlgebraSpec};
use skewore::config::{load_fixture, ModuleSpec};
use skewore::{preset, Check, Error, FiniteModule, FiniteRing, ReportEnvelope};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "skewore", version, about = "Skew Ore polynomial arithmetic and attached-prime verification")]
pub struct Cli {
    /// Algebra fixture file (sections [ring], [twist], optionally [module]).
    #[arg(long, global = true, conflicts_with = "preset")]
    pub algebra: Option<PathBuf>,
    /// Catalog preset name.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Preset parameter, `key=value`; repeatable.
    #[arg(long = "param", global = true, value_parser = parse_param)]
    pub params: Vec<(String, String)>,
    /// Use the preset's finite-carrier parameters (explicit --param wins).
    #[arg(long, global = true)]
    pub finite: bool,
    /// Module fixture file (section [module]).
    #[arg(long, global = true)]
    pub module: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Truncation bound k.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Omit elapsed time so reports are reproducible byte for byte.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of an expression.
    Normalize { expr: String },
    /// Multiply two expressions.
    Mul { lhs: String, rhs: String },
    /// Compute a_p with x^p a = a_p x^p.
    OreSwap { expr: String, p: usize },
    /// Apply f_j^i to a carrier element, cross-checked by word enumeration.
    Finv { j: usize, i: usize, elem: String },
    /// Right action of an algebra element on an inverse polynomial.
    Act { invpoly: String, expr: String },
    /// Compatibility of a finite module, forward and inverse.
    CompatCheck,
    /// Attached primes of a finite module.
    Att,
    /// Associated primes of a finite module.
    Ass,
    /// Check PA = ann(M[x^-1]/N[x^-1]) on every polynomial of degree <= k.
    VerifyLemma {
        /// Module element labels generating N (default: N = 0).
        #[arg(long, value_delimiter = ',')]
        sub: Vec<String>,
    },
    /// Check Att(M[x^-1]) against { PA : P in Att(M) } at bound k.
    VerifyTheorem,
    /// Compare (r x^-k)(s x^-k') with both exponent readings of its expansion.
    ProductProbe {
        #[arg(long, default_value = "1")]
        r: String,
        #[arg(long, default_value = "x")]
        s: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long = "k-prime", default_value_t = 1)]
        k_prime: usize,
    },
    /// List the presets and run their relation self-tests.
    Catalog,
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected key=value, got `{s}`")),
    }
}

/// Everything a command needs about the instance.
pub(crate) struct Context {
    pub cli: Cli,
    pub spec: Option<AlgebraSpec>,
    pub module: Option<ModuleSpec>,
}

impl Context {
    pub fn spec(&self) -> Result<&AlgebraSpec, Error> {
        self.spec
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("this command needs --preset or --algebra".into()))
    }

    pub fn finite_module(&self) -> Result<FiniteModule, Error> {
        let spec = self.spec()?;
        if !spec.twist.carrier().is_finite() {
            return Err(Error::InvalidParameter(format!(
                "{} is not finite; pass --finite or a finite --algebra",
                spec.twist.carrier()
            )));
        }
        let ring = Arc::new(FiniteRing::new(spec.twist.clone())?);
        match &self.module {
            Some(m) => m.build(ring),
            None => FiniteModule::regular(ring),
        }
    }

    pub fn module_label(&self) -> Option<String> {
        Some(self.module.as_ref().map_or_else(|| "R".to_string(), ModuleSpec::describe))
    }
}

fn resolve(cli: Cli) -> Result<Context, Error> {
    let mut module = None;
    let spec = if let Some(path) = &cli.algebra {
        let fx = load_fixture(path)?;
        module = fx.module;
        Some(fx.algebra.ok_or_else(|| Error::Config(format!("{} has no [ring] section", path.display())))?)
    } else if let Some(name) = &cli.preset {
        let mut params: BTreeMap<String, String> =
            if cli.finite { finite_params(name)? } else { BTreeMap::new() };
        params.extend(cli.params.iter().cloned());
        Some(preset(name, &params)?)
    } else {
        if !cli.params.is_empty() {
            return Err(Error::InvalidParameter("--param needs --preset".into()));
        }
        None
    };
    if let Some(path) = &cli.module {
        module = Some(
            load_fixture(path)?
                .module
                .ok_or_else(|| Error::Config(format!("{} has no [module] section", path.display())))?,
        );
    }
    Ok(Context { cli, spec, module })
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded(_) | Error::LatticeTooLarge { .. } | Error::ModuleTooLarge { .. } => EXIT_CAP,
        Error::Precondition(_)
        | Error::Postcondition(_)
        | Error::RelationFailed { .. }
        | Error::NotStableUnderTwist { .. }
        | Error::ZeroModule => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn render(report: &ReportEnvelope, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let start = Instant::now();
    let format = cli.format;
    let no_timing = cli.no_timing;
    let command = commands::name(&cli.command);
    let algebra_label = cli
        .preset
        .clone()
        .or_else(|| cli.algebra.as_ref().map(|p| p.display().to_string()))
        .unwrap_or_default();
    let seed = cli.seed;
    let result = resolve(cli).and_then(|ctx| commands::dispatch(&ctx));
    let (code, mut report, stderr) = match result {
        Ok(report) => {
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            let stderr = report
                .first_failure()
                .map(|c| format!("verification failed: {}\n", c.name))
                .unwrap_or_default();
            (code, report, stderr)
        }
        Err(e) => {
            let mut report = ReportEnvelope::new(command, &algebra_label, seed);
            report.checks.push(Check::new("error", false, Some(e.to_string())));
            (exit_code(&e), report, format!("error: {e}\n"))
        }
    };
    if !no_timing {
        report.set_elapsed(start.elapsed());
    }
    let stdout = match (format, code) {
        (Format::Text, EXIT_USAGE | EXIT_CAP) => String::new(),
        _ => render(&report, format),
    };
    Outcome { code, stdout, stderr }
}
