//! Report and error documents printed by the CLI.

use serde::{Deserialize, Serialize};

use phasedisc::Error;

pub const SCHEMA: u32 = 1;

/// One discriminated input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    /// 1-based position of the input.
    pub input_index: usize,
    /// Most probable ancilla outcome.
    pub bits: String,
    pub probability: f64,
    /// Fidelity of the post-measurement work state with the input.
    pub fidelity: f64,
    /// `pass`, `fail`, or an error kind such as `NotAMember`.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecSummary {
    pub n_qubits: usize,
    pub arrays: Vec<Vec<i8>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub spec: SpecSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<String>,
    pub rows: Vec<Row>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(command: &str, spec: SpecSummary, expect: Option<String>, rows: Vec<Row>) -> Self {
        let pass = rows.iter().all(Row::passed);
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            spec,
            expect,
            rows,
            pass,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("input_index,bits,probability,fidelity,verdict\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.input_index, row.bits, row.probability, row.fidelity, row.verdict
            ));
        }
        out
    }
}

/// Failure reasons that are not library errors.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: String, message: String },
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "Io",
            CliError::Usage(_) => "Usage",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io { path, message } => format!("{path}: {message}"),
            CliError::Usage(m) => m.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "schema": SCHEMA,
            "error": { "kind": self.kind(), "message": self.message() },
        })
        .to_string()
    }
}
