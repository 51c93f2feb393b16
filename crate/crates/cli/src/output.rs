use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use eigenform_core::Error;
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_NONCONVERGENCE: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Core(e) if e.is_input_error() => EXIT_INPUT,
            CliError::Core(_) => EXIT_DOMAIN,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "Input",
            CliError::Core(e) => e.kind(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Input(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: &'static str,
    pub inputs: BTreeMap<&'static str, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    pub overrides: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_s: Option<f64>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Manifest {
    pub fn new(command: &'static str, timing: bool) -> Self {
        Self {
            command,
            inputs: BTreeMap::new(),
            weights: None,
            overrides: Vec::new(),
            seed: None,
            version: env!("CARGO_PKG_VERSION"),
            duration_s: None,
            started: timing.then(Instant::now),
        }
    }

    pub fn input(mut self, key: &'static str, value: &str) -> Self {
        self.inputs.insert(key, value.to_string());
        self
    }

    pub fn finish(&mut self) {
        if let Some(t) = self.started {
            self.duration_s = Some(t.elapsed().as_secs_f64());
        }
    }
}

#[derive(Serialize)]
pub struct Document<'a, T: Serialize> {
    pub manifest: &'a Manifest,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<&'a T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<&'a T>,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    manifest: &'a Manifest,
    error: ErrorBody,
}

pub fn write_text(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// Reports an error on stderr and as a JSON document on stdout, returning
/// the exit code.
pub fn emit_error(manifest: &mut Manifest, out: Option<&Path>, err: &CliError) -> u8 {
    manifest.finish();
    eprintln!("error: {}", err.message());
    let doc = ErrorDocument {
        manifest,
        error: ErrorBody {
            kind: err.kind(),
            message: err.message(),
        },
    };
    if let Err(e) = write_text(out, &pretty(&doc)) {
        eprintln!("error: {}", e.message());
    }
    err.exit_code()
}
