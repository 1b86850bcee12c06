//! `bgchan`: classify, simulate, decompose and verify one-mode Gaussian
//! channels from JSON inputs, printing deterministic JSON reports.
//!
//! Exit codes: 0 success, 1 a residual check failed, 2 parse/IO error,
//! 3 domain or range error, 4 unsupported (`q` at 0 or 1).

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::channels::{ChannelSpec, ChannelSpecJson, KChannel};
use crate::coupling::CouplingMatrix;
use crate::decompose::{apply_decomposed, decompose, verify_decomposition};
use crate::degradability::{classify, composition_residual, Identity};
use crate::error::Error;
use crate::gaussian::{GaussianState, StateJson};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: u64 = 100;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "bgchan",
    version,
    about = "One-mode Bosonic Gaussian channel toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute q and the weak-degradability / anti-degradability verdict.
    Classify(Options),
    /// Propagate a Gaussian state through the channel.
    Simulate {
        #[command(flatten)]
        options: Options,
        /// Output the environment state instead (weakly complementary map).
        #[arg(long)]
        complementary: bool,
        /// Also compute the characteristic-function route and report the residual.
        #[arg(long)]
        oracle: bool,
    },
    /// Factor the coupling into squeezers around a beam splitter/amplifier.
    Decompose(Options),
    /// Check a degrading-map composition identity on random inputs.
    Verify(Options),
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Input JSON: a file path, inline JSON, or `-` for stdin (default).
    #[arg(long)]
    pub input: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_f64)]
    pub tolerance: f64,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

impl Command {
    pub fn options(&self) -> &Options {
        match self {
            Command::Classify(o) | Command::Decompose(o) | Command::Verify(o) => o,
            Command::Simulate { options, .. } => options,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(Error),
    /// The report was produced but its residual exceeded the tolerance.
    Failed(Value),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(Error::Unsupported { .. }) => 4,
            CliError::Domain(_) => 3,
            CliError::Failed(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Parse(m) => ("parse", m.clone()),
            CliError::Domain(e @ Error::Unsupported { .. }) => ("unsupported", e.to_string()),
            CliError::Domain(e) => ("domain", e.to_string()),
            CliError::Failed(_) => ("check_failed", "residual exceeds tolerance".to_string()),
        };
        json!({ "error": kind, "message": message, "exit_code": self.exit_code() })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

fn read_input(input: Option<&str>) -> Result<String, CliError> {
    match input {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Parse(format!("reading stdin: {e}")))?;
            Ok(buf)
        }
        Some(s) if s.trim_start().starts_with('{') => Ok(s.to_string()),
        Some(path) => {
            fs::read_to_string(path).map_err(|e| CliError::Parse(format!("reading {path}: {e}")))
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(value: Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))
}

/// A bare `{"A": ...}` at top level is shorthand for `{"coupling": {"A": ...}}`.
fn normalize_channel(mut value: Value) -> Value {
    if let Some(obj) = value.as_object_mut() {
        if let Some(a) = obj.remove("A") {
            obj.insert("coupling".into(), json!({ "A": a }));
        }
    }
    value
}

const CHANNEL_KEYS: &[&str] = &["coupling", "bs", "amp", "env"];

/// Rejects unknown top-level keys and anything other than exactly one
/// coupling source, then parses.
fn parse_channel_input<T: for<'de> Deserialize<'de>>(
    value: Value,
    extra: &[&str],
) -> Result<T, CliError> {
    let value = normalize_channel(value);
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Parse("input must be a JSON object".into()))?;
    if let Some(key) = obj
        .keys()
        .find(|k| !CHANNEL_KEYS.contains(&k.as_str()) && !extra.contains(&k.as_str()))
    {
        return Err(CliError::Parse(format!("unknown field `{key}`")));
    }
    let sources = ["coupling", "bs", "amp"]
        .iter()
        .filter(|k| obj.contains_key(**k))
        .count();
    if sources != 1 {
        return Err(CliError::Parse(
            "channel needs exactly one of \"A\", \"coupling\", \"bs\" or \"amp\"".into(),
        ));
    }
    parse(value)
}

#[derive(Deserialize)]
struct SimulateInput {
    #[serde(flatten)]
    channel: ChannelSpecJson,
    state: StateJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyInput {
    k: f64,
    identity: Identity,
    #[serde(default)]
    env: Option<StateJson>,
}

/// Rounds every float to 15 significant digits; serialization then prints
/// the shortest representation that round-trips the rounded value.
pub fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
            let rounded = if rounded == 0.0 { 0.0 } else { rounded };
            *value = json!(rounded);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn render(value: &Value) -> String {
    let mut value = value.clone();
    round_floats(&mut value);
    let mut text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    text.push('\n');
    text
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Executes a command on already-read input text.
pub fn execute(command: &Command, input: &str) -> Result<Value, CliError> {
    let value: Value = serde_json::from_str(input).map_err(|e| CliError::Parse(e.to_string()))?;
    let opts = command.options();
    match command {
        Command::Classify(_) => {
            let spec = parse_channel_input::<ChannelSpecJson>(value, &[])?.build()?;
            let mut report = to_value(&classify(&spec.coupling)?.with_env(&spec.env));
            // Tr ρ² of a Gaussian state is 1 / (2 √det Γ).
            report["env_purity"] = json!(0.5 / spec.env.symplectic_invariant().sqrt());
            Ok(report)
        }
        Command::Simulate {
            complementary,
            oracle,
            ..
        } => {
            let input: SimulateInput = parse_channel_input(value, &["state"])?;
            let spec = input.channel.build()?;
            let rho = GaussianState::try_from(input.state)?;
            let direct = if *complementary {
                spec.apply_complementary(&rho)
            } else {
                spec.apply(&rho)
            };
            if !*oracle {
                return Ok(to_value(&direct));
            }
            let characteristic = characteristic_route(&input.channel, &spec, &rho, *complementary)?;
            let residual = direct.distance(&characteristic);
            let report = json!({
                "covariance": direct,
                "characteristic": characteristic,
                "residual": residual,
                "tolerance": opts.tolerance,
                "passed": residual < opts.tolerance,
            });
            if residual < opts.tolerance {
                Ok(report)
            } else {
                Err(CliError::Failed(report))
            }
        }
        Command::Decompose(_) => {
            let spec = parse_channel_input::<ChannelSpecJson>(value, &[])?.build()?;
            let report =
                verify_decomposition(&spec.coupling, &spec.env, opts.samples as usize, opts.seed)?;
            let passed = report.max_residual < opts.tolerance;
            let out = json!({
                "q": spec.coupling.q(),
                "decomposition": report.decomposition,
                "max_residual": report.max_residual,
                "samples": report.samples,
                "seed": opts.seed,
                "tolerance": opts.tolerance,
                "passed": passed,
            });
            if passed {
                Ok(out)
            } else {
                Err(CliError::Failed(out))
            }
        }
        Command::Verify(_) => {
            let input: VerifyInput = parse(value)?;
            let env = match input.env {
                Some(e) => GaussianState::try_from(e)?,
                None => GaussianState::vacuum(),
            };
            let report = composition_residual(
                input.identity,
                input.k,
                &env,
                &env,
                opts.samples as usize,
                opts.seed,
            )?;
            let passed = report.passed(opts.tolerance);
            let mut out = to_value(&report);
            out["seed"] = json!(opts.seed);
            out["tolerance"] = json!(opts.tolerance);
            out["passed"] = json!(passed);
            if passed {
                Ok(out)
            } else {
                Err(CliError::Failed(out))
            }
        }
    }
}

/// Channel output computed through the characteristic-function maps:
/// directly for `bs`/`amp` shorthands and canonical matrices, otherwise via
/// the decomposition of the coupling (or of its swapped form for the
/// complementary map).
fn characteristic_route(
    input: &ChannelSpecJson,
    spec: &ChannelSpec,
    rho: &GaussianState,
    complementary: bool,
) -> Result<GaussianState, CliError> {
    let canonical_k = match (input.bs, input.amp) {
        (Some(k), _) | (_, Some(k)) => Some(k),
        _ => {
            let q = spec.coupling.q();
            crate::channels::k_coupling(q)
                .ok()
                .filter(|c| *c == spec.coupling)
                .map(|_| q)
        }
    };
    if let Some(k) = canonical_k {
        let ch = KChannel::new(k, spec.env)?;
        return Ok(if complementary {
            ch.apply_complementary(rho)
        } else {
            ch.apply(rho)
        });
    }
    let coupling: CouplingMatrix = if complementary {
        spec.coupling.swapped()
    } else {
        spec.coupling
    };
    Ok(apply_decomposed(&decompose(&coupling)?, &spec.env, rho)?)
}

/// Parses arguments, runs the command and writes the report. Returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let opts = cli.command.options().clone();
    let result = read_input(opts.input.as_deref()).and_then(|text| execute(&cli.command, &text));
    let (report, error) = match result {
        Ok(report) => (Some(report), None),
        Err(CliError::Failed(report)) => (Some(report.clone()), Some(CliError::Failed(report))),
        Err(e) => (None, Some(e)),
    };
    if let Some(report) = report {
        let text = render(&report);
        match &opts.output {
            Some(path) => {
                if let Err(e) = fs::write(path, text) {
                    let err = CliError::Parse(format!("writing {}: {e}", path.display()));
                    eprint!("{}", render(&err.to_json()));
                    return err.exit_code();
                }
            }
            None => print!("{text}"),
        }
    }
    match error {
        Some(e) => {
            eprint!("{}", render(&e.to_json()));
            e.exit_code()
        }
        None => 0,
    }
}
