//! Command-line front end.
//!
//! Exit codes: 0 consistent / success, 1 inconsistent preferences, 2 input
//! or domain-precondition errors, 64 usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::consistency::{self, ConsistencyReport, EpsilonSearchConfig};
use crate::error::{Error, Result};
use crate::instance::{InstanceFormat, PreferenceInstance};
use crate::plot::{self, PlotOptions};
use crate::valuefn::{ValueFunction, ValueFunctionKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "prefcone",
    version,
    about = "Consistency test for preferences against increasing quasi-concave value functions"
)]
pub struct CliConfig {
    /// Increase log verbosity (-v debug, -vv simplex tableaux)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the instance file against the structural assumptions
    Validate(Common),
    /// Run the consistency test and emit the full report
    Test(Common),
    /// Print strictly positive weights of a consistent linear value function
    Weights(Common),
    /// Search for a perturbation epsilon with a pointed perturbed cone
    Epsilon(Common),
    /// Evaluate a constructed value function at a point
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        function: FunctionArg,
        /// Comma-separated coordinates, e.g. "3,3"
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Write an SVG schematic of a two-criterion instance
    Plot {
        #[command(flatten)]
        common: Common,
        /// Paint this value function as a background field
        #[arg(long, value_enum)]
        function: Option<FunctionArg>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Instance file (JSON, or CSV by extension)
    #[arg(value_name = "INSTANCE", required_unless_present = "instance")]
    pub instance_pos: Option<PathBuf>,
    #[arg(long, conflicts_with = "instance_pos")]
    pub instance: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-2)]
    pub epsilon0: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    #[arg(long, default_value_t = 60)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    Psi,
    Vartheta,
    Linear,
}

impl From<FunctionArg> for ValueFunctionKind {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::Psi => ValueFunctionKind::Psi,
            FunctionArg::Vartheta => ValueFunctionKind::Vartheta,
            FunctionArg::Linear => ValueFunctionKind::Linear,
        }
    }
}

impl Common {
    fn path(&self) -> &Path {
        self.instance
            .as_deref()
            .or(self.instance_pos.as_deref())
            .expect("clap enforces an instance path")
    }

    fn search_config(&self) -> EpsilonSearchConfig {
        EpsilonSearchConfig {
            epsilon0: self.epsilon0,
            beta: self.beta,
            max_iter: self.max_iter,
        }
    }

    fn load(&self) -> Result<PreferenceInstance> {
        let path = self.path();
        let text = std::fs::read_to_string(path)?;
        PreferenceInstance::parse(&text, InstanceFormat::from_path(path))
    }

    fn emit(&self, stdout: &mut dyn Write, body: &str) -> Result<()> {
        match &self.output {
            Some(path) => std::fs::write(path, body)?,
            None => stdout.write_all(body.as_bytes())?,
        }
        Ok(())
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn report_text(r: &ConsistencyReport) -> String {
    let mut s = format!("{}\n", r.verdict_text);
    s.push_str(&format!("facets of E: {}\n", r.facet_count));
    if let Some(d) = &r.weight_certificate {
        s.push_str(&format!("linear weights: {d:?}\n"));
    }
    if let Some(e) = r.epsilon_bar {
        s.push_str(&format!("epsilon_bar: {e:e}\n"));
    }
    s
}

/// Parses `argv` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cfg, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error[{}]: {e}", e.code());
            match e {
                Error::NotPointed => EXIT_INCONSISTENT,
                _ => EXIT_INPUT,
            }
        }
    }
}

pub fn execute(cfg: &CliConfig, stdout: &mut dyn Write) -> Result<i32> {
    match &cfg.command {
        Command::Validate(common) => {
            let inst = common.load()?;
            let report = inst.validate();
            let body = match common.format {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Text => format!("{report}\n"),
            };
            common.emit(stdout, &body)?;
            Ok(if report.ok { EXIT_OK } else { EXIT_INPUT })
        }
        Command::Test(common) => {
            let inst = common.load()?;
            let report = consistency::consistency_verdict(&inst, &common.search_config())?;
            let body = match common.format {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Text => report_text(&report),
            };
            common.emit(stdout, &body)?;
            Ok(if report.pointed { EXIT_OK } else { EXIT_INCONSISTENT })
        }
        Command::Weights(common) => {
            let inst = common.load()?;
            let d = consistency::extract_linear_weights(&inst)?;
            let body = match common.format {
                OutputFormat::Json => to_json(&json!({ "weights": d })),
                OutputFormat::Text => format!("{d:?}\n"),
            };
            common.emit(stdout, &body)?;
            Ok(EXIT_OK)
        }
        Command::Epsilon(common) => {
            let inst = common.load()?;
            let eps = consistency::epsilon_search(&inst, &common.search_config())?;
            let body = match common.format {
                OutputFormat::Json => to_json(&json!({ "epsilon_bar": eps })),
                OutputFormat::Text => format!("{eps:e}\n"),
            };
            common.emit(stdout, &body)?;
            Ok(EXIT_OK)
        }
        Command::Eval {
            common,
            function,
            point,
        } => {
            let inst = common.load()?;
            let x = parse_point(point)?;
            let f = ValueFunction::for_instance(&inst, (*function).into(), &common.search_config())?;
            let (value, class) = f.evaluate_classified(&x)?;
            let body = match common.format {
                OutputFormat::Json => to_json(&json!({ "value": value, "classification": class.as_str() })),
                OutputFormat::Text => format!("{} = {value} ({})\n", f.kind().as_str(), class.as_str()),
            };
            common.emit(stdout, &body)?;
            Ok(EXIT_OK)
        }
        Command::Plot { common, function } => {
            let inst = common.load()?;
            let cfg = common.search_config();
            let epsilon_bar = if inst.dim() == 2 && consistency::test_pointedness(&inst, 0.0)?.pointed {
                Some(consistency::epsilon_search(&inst, &cfg)?)
            } else {
                None
            };
            let field = match function {
                Some(kind) => Some(ValueFunction::for_instance(&inst, (*kind).into(), &cfg)?),
                None => None,
            };
            let svg = plot::plot2d(
                &inst,
                &PlotOptions {
                    epsilon_bar,
                    field,
                    ..Default::default()
                },
            )?;
            common.emit(stdout, &svg)?;
            Ok(EXIT_OK)
        }
    }
}

pub fn parse_point(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .enumerate()
        .map(|(i, s)| {
            s.trim().parse::<f64>().map_err(|_| Error::Parse {
                position: format!("--point component {}", i + 1),
                message: format!("`{}` is not a number", s.trim()),
            })
        })
        .collect()
}
