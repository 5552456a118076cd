//! The `gzk` command-line front end.
//!
//! Every experiment is a subcommand whose flags mirror a TOML section, so
//! `gzk run experiment.toml` and the equivalent flag invocation produce the
//! same artifacts. Errors print one line `E:<class>: message` to stderr and
//! exit with the class code: 2 for configuration, 3 for numerical failure,
//! 4 for I/O and missing artifacts.

mod args;
mod commands;
mod plotdata;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::dynamics::DynamicsError;
use crate::functionals::FunctionalsError;
use crate::groundstate::GroundStateError;
use crate::spectral::SpectralError;

pub use args::{
    Datum, GnVerifyArgs, GroundStateArgs, Preset, ProbeArgs, SignArg, SimulateArgs, SolitonArgs, ThresholdArgs,
};
pub use plotdata::emit_plotdata;

/// Schema version accepted in experiment files.
pub const CONFIG_VERSION: &str = "1";

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "GZK_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    MissingArtifact(String),
}

impl CliError {
    pub fn class(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numeric(_) => "numeric",
            CliError::Io(_) => "io",
            CliError::MissingArtifact(_) => "missing-artifact",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) | CliError::MissingArtifact(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Io(io) => CliError::Io(io.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::NonFinite { .. } => CliError::Numeric(e.to_string()),
            DynamicsError::InvalidConfig(m) => CliError::Config(m),
            DynamicsError::Spectral(s) => s.into(),
            DynamicsError::Io(io) => io.into(),
        }
    }
}

impl From<GroundStateError> for CliError {
    fn from(e: GroundStateError) -> Self {
        match e {
            GroundStateError::NoConvergence { .. } | GroundStateError::Degenerate(_) => CliError::Numeric(e.to_string()),
            GroundStateError::InvalidOrder(_) => CliError::Config(e.to_string()),
            GroundStateError::Spectral(s) => s.into(),
        }
    }
}

impl From<FunctionalsError> for CliError {
    fn from(e: FunctionalsError) -> Self {
        match e {
            FunctionalsError::ConstructionFailure(_) | FunctionalsError::ViolationFound { .. } => {
                CliError::Numeric(e.to_string())
            }
            FunctionalsError::InvalidOrder(_) | FunctionalsError::InvalidArgument(_) => CliError::Config(e.to_string()),
            FunctionalsError::Spectral(s) => s.into(),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::ResolutionError { .. } => CliError::Numeric(e.to_string()),
            AnalysisError::DomainTooSmall { .. } | AnalysisError::NotDyadic(_) | AnalysisError::InvalidArgument(_) => {
                CliError::Config(e.to_string())
            }
            AnalysisError::Spectral(s) => s.into(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gzk", version, about = "Generalized Zakharov-Kuznetsov equation on the cylinder R x T")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve an initial datum and record conserved quantities.
    Simulate(SimulateArgs),
    /// Compute the planar ground state and the sharp constant.
    Groundstate(GroundStateArgs),
    /// Evaluate the global-existence thresholds for a datum.
    Thresholds(ThresholdArgs),
    /// Check the cylinder Gagliardo-Nirenberg inequality on random and scaled fields.
    GnVerify(GnVerifyArgs),
    /// Scan the L^4 / X^{s,b} ratio across dyadic frequency shells.
    ProbeStrichartz(ProbeArgs),
    /// Check and propagate a line soliton.
    SolitonTest(SolitonArgs),
    /// Run the experiment described by a TOML file.
    Run {
        config: PathBuf,
    },
    /// Extract plain CSV columns from a run directory.
    Plotdata {
        dir: PathBuf,
        /// Destination directory; defaults to the run directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An experiment file: a `version` key and exactly one command section.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExperimentConfig {
    pub version: String,
    pub simulate: Option<SimulateArgs>,
    pub groundstate: Option<GroundStateArgs>,
    pub thresholds: Option<ThresholdArgs>,
    pub gn_verify: Option<GnVerifyArgs>,
    pub probe_strichartz: Option<ProbeArgs>,
    pub soliton_test: Option<SolitonArgs>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| CliError::Config(one_line(&e.to_string())))?;
        if cfg.version != CONFIG_VERSION {
            return Err(CliError::Config(format!(
                "key `version`: expected \"{CONFIG_VERSION}\", got \"{}\"",
                cfg.version
            )));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The single experiment section as a command.
    pub fn into_command(self) -> Result<Command, CliError> {
        let mut found = Vec::new();
        if let Some(a) = self.simulate {
            found.push(Command::Simulate(a));
        }
        if let Some(a) = self.groundstate {
            found.push(Command::Groundstate(a));
        }
        if let Some(a) = self.thresholds {
            found.push(Command::Thresholds(a));
        }
        if let Some(a) = self.gn_verify {
            found.push(Command::GnVerify(a));
        }
        if let Some(a) = self.probe_strichartz {
            found.push(Command::ProbeStrichartz(a));
        }
        if let Some(a) = self.soliton_test {
            found.push(Command::SolitonTest(a));
        }
        match found.len() {
            1 => Ok(found.pop().expect("one section")),
            0 => Err(CliError::Config("config has no command section".into())),
            _ => Err(CliError::Config("config has more than one command section".into())),
        }
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("env `{THREADS_ENV}`: expected a positive integer, got {v:?}")))?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Validates the command's parameters without touching the filesystem.
pub fn validate(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Simulate(a) => a.validate(),
        Command::Groundstate(a) => a.validate(),
        Command::Thresholds(a) => a.validate(),
        Command::GnVerify(a) => a.validate(),
        Command::ProbeStrichartz(a) => a.validate(),
        Command::SolitonTest(a) => a.validate(),
        Command::Run { .. } | Command::Plotdata { .. } => Ok(()),
    }
}

/// Runs one command and returns the text to print on success.
pub fn execute(command: Command) -> Result<String, CliError> {
    let command = match command {
        Command::Run { config } => ExperimentConfig::load(&config)?.into_command()?,
        other => other,
    };
    validate(&command)?;
    match command {
        Command::Simulate(a) => commands::simulate(&a),
        Command::Groundstate(a) => commands::groundstate(&a),
        Command::Thresholds(a) => commands::thresholds(&a),
        Command::GnVerify(a) => commands::gn_verify(&a),
        Command::ProbeStrichartz(a) => commands::probe_strichartz(&a),
        Command::SolitonTest(a) => commands::soliton_test(&a),
        Command::Plotdata { dir, out } => {
            let written = emit_plotdata(&dir, out.as_deref().unwrap_or(&dir))?;
            Ok(written
                .iter()
                .map(|p| format!("wrote {}", p.display()))
                .collect::<Vec<_>>()
                .join("\n"))
        }
        Command::Run { .. } => Err(CliError::Config("nested `run` is not allowed".into())),
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("E:config: {}", first.trim_start_matches("error: "));
            return 2;
        }
    };
    let result = configure_threads().and_then(|_| execute(cli.command));
    match result {
        Ok(text) => {
            if !text.is_empty() {
                println!("{text}");
            }
            0
        }
        Err(e) => {
            eprintln!("E:{}: {}", e.class(), one_line(&e.to_string()));
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_requires_exactly_one_section() {
        let none = ExperimentConfig::parse("version = \"1\"\n").unwrap();
        assert!(matches!(none.into_command(), Err(CliError::Config(_))));
        let two = ExperimentConfig::parse("version = \"1\"\n[simulate]\nk = 1\n[groundstate]\nk = 2\n").unwrap();
        assert!(matches!(two.into_command(), Err(CliError::Config(_))));
        let one = ExperimentConfig::parse("version = \"1\"\n[groundstate]\nk = 3\nN = 128\n").unwrap();
        match one.into_command().unwrap() {
            Command::Groundstate(a) => {
                assert_eq!((a.k, a.n, a.l), (3, 128, 20.0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = ExperimentConfig::parse("version = \"1\"\n[simulate]\ndtt = 0.1\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("dtt"), "{err}");
        let err = ExperimentConfig::parse("version = \"2\"\n").unwrap_err();
        assert!(err.to_string().contains("version"));
    }

    #[test]
    fn validation_names_the_key() {
        let a = SimulateArgs {
            dt: -1.0,
            ..SimulateArgs::default()
        };
        let e = a.validate().unwrap_err();
        assert!(e.to_string().contains("`dt`"), "{e}");
        let p = ProbeArgs {
            scales: vec![1, 3],
            ..ProbeArgs::default()
        };
        assert!(p.validate().unwrap_err().to_string().contains("`scales`"));
    }

    #[test]
    fn flags_and_defaults_agree() {
        let cli = Cli::try_parse_from(["gzk", "simulate"]).unwrap();
        match cli.command {
            Command::Simulate(a) => assert_eq!(a, SimulateArgs::default()),
            other => panic!("unexpected {other:?}"),
        }
        let cli = Cli::try_parse_from(["gzk", "probe-strichartz", "--scales", "1,2,4", "--s", "0"]).unwrap();
        match cli.command {
            Command::ProbeStrichartz(a) => {
                assert_eq!(a.scales, vec![1, 2, 4]);
                assert_eq!(a.s, 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exit_codes_per_class() {
        assert_eq!(CliError::Config(String::new()).exit_code(), 2);
        assert_eq!(CliError::Numeric(String::new()).exit_code(), 3);
        assert_eq!(CliError::Io(String::new()).exit_code(), 4);
        assert_eq!(CliError::MissingArtifact(String::new()).exit_code(), 4);
    }
}
