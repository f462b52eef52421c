//! Command-line front end: argument types, dispatch and rendering.

pub mod args;
pub mod error;
pub mod example6;
pub mod forms;
pub mod loci_cmd;
pub mod strata_cmd;

use serde_json::Value;

use args::{Cli, Command, Format};
use error::CliError;
use forms::FormOp;

pub use example6::{run_example6, Example6Report};

/// Output of a successful command in every supported format.
#[derive(Debug)]
pub struct Rendered {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
    /// Set by `--dot`, which selects the DOT rendering whatever `--format` says.
    pub dot_requested: bool,
    /// Exit status for commands that succeed at running but report a failed check.
    pub failure: Option<CliError>,
}

impl Rendered {
    pub fn new(json: Value, text: String) -> Self {
        Rendered {
            json,
            text,
            dot: None,
            dot_requested: false,
            failure: None,
        }
    }

    pub fn with_dot(mut self, dot: String, requested: bool) -> Self {
        self.dot = Some(dot);
        self.dot_requested = requested;
        self
    }
}

pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Cartier(a) => forms::run_form(FormOp::Cartier, a),
        Command::Tc(a) => forms::run_form(FormOp::Tc, a),
        Command::Exact(a) => forms::run_form(FormOp::Exact, a),
        Command::QuasiExact(a) => forms::run_form(FormOp::QuasiExact, a),
        Command::Ascover(a) => forms::run_ascover(a),
        Command::Strata(s) => strata_cmd::run(s),
        Command::Loci(l) => loci_cmd::run(l),
        Command::Example6(e) => {
            let report = run_example6(&e.field, e.perturb)?;
            let mut r = Rendered::new(serde_json::to_value(&report).expect("report serializes"), report.text());
            if !report.passed {
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
                r.failure = Some(CliError::CheckFailed(format!("failed checks: {}", failed.join(", "))));
            }
            Ok(r)
        }
    }
}

/// Runs a parsed command and returns the exit status with everything to print.
pub fn dispatch(cli: &Cli) -> (i32, String) {
    let result = execute(cli);
    let (status, json, text, dot, requested) = match result {
        Ok(r) => {
            let status = r.failure.as_ref().map_or(0, CliError::exit_code);
            (status, r.json, r.text, r.dot, r.dot_requested)
        }
        Err(e) => (e.exit_code(), e.to_json(), format!("error ({}): {e}", e.code()), None, false),
    };
    let format = if requested { Format::Dot } else { cli.format };
    let body = match (format, dot) {
        (Format::Dot, Some(d)) => d,
        (Format::Dot, None) if status == 0 => {
            let e = CliError::Usage("DOT output is only available for level graphs".into());
            return (e.exit_code(), serde_json::to_string_pretty(&e.to_json()).expect("json"));
        }
        (Format::Text, _) => text,
        _ => serde_json::to_string_pretty(&json).expect("values serialize"),
    };
    (status, body)
}
