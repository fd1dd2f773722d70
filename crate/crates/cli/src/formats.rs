//! Triple files and canonical JSON.
//!
//! A triple file is a JSON object `{name, symbols, edges, labels}` plus an
//! optional `metadata` map for free-form tags. The symbol list fixes the
//! symbol indices, so two files with the same sets in different orders are
//! different presentations on purpose.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use shiftlab_core::FactorTriple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleFile {
    pub name: String,
    pub symbols: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub labels: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BTreeMap<String, String>>,
}

impl TripleFile {
    pub fn to_triple(&self) -> Result<FactorTriple, shiftlab_core::Error> {
        let symbols: Vec<&str> = self.symbols.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|(u, v)| (u.as_str(), v.as_str()))
            .collect();
        let labels: Vec<(&str, &str)> = self
            .labels
            .iter()
            .map(|(s, l)| (s.as_str(), l.as_str()))
            .collect();
        FactorTriple::new(&self.name, &symbols, &edges, &labels)
    }

    /// Declared symbols that did not survive essentialization.
    pub fn removed_symbols(&self, t: &FactorTriple) -> Vec<String> {
        self.symbols
            .iter()
            .filter(|s| t.graph().index_of(s).is_err())
            .cloned()
            .collect()
    }
}

/// Canonical form: sorted keys, two-space indent, UTF-8, LF line ends, one
/// trailing newline. Reports and corpus files are diffed byte for byte, so
/// everything written by this tool goes through here.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("value serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

/// Writes via a sibling temp file and rename, so readers never observe a
/// half-written report.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let stem = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".to_string());
    let tmp = dir.join(format!(".{}.tmp{}", stem, std::process::id()));
    fs::write(&tmp, bytes)?;
    match fs::rename(&tmp, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            Err(e)
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Io {
        path: PathBuf,
        source: io::Error,
    },
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    /// Structurally invalid input: the named invariant failed.
    Invalid(shiftlab_core::Error),
    /// Mathematically valid input that does not meet a command's
    /// precondition.
    Precondition(shiftlab_core::Error),
    Flag(String),
    /// verify-examples found mismatches.
    ExamplesFailed(usize),
}

impl CliError {
    /// 1 for IO, parse, validation and flag errors; 2 when the input is
    /// well formed but a mathematical precondition fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Precondition(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {}", path.display(), source),
            CliError::Parse {
                path,
                line,
                column,
                message,
            } => write!(f, "{}:{}:{}: {}", path.display(), line, column, message),
            CliError::Invalid(e) => write!(f, "invalid input: {}", e),
            CliError::Precondition(e) => write!(f, "{}", e),
            CliError::Flag(m) => write!(f, "{}", m),
            CliError::ExamplesFailed(n) => write!(f, "{} example assertion(s) failed", n),
        }
    }
}

impl std::error::Error for CliError {}

impl From<shiftlab_core::Error> for CliError {
    fn from(e: shiftlab_core::Error) -> Self {
        if e.is_precondition() {
            CliError::Precondition(e)
        } else {
            CliError::Invalid(e)
        }
    }
}

/// Reads and validates a triple file. Returns the parsed file, the
/// essentialized triple, and the raw bytes for digesting.
pub fn parse_triple(path: &Path) -> Result<(TripleFile, FactorTriple, Vec<u8>), CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file: TripleFile = serde_json::from_slice(&bytes).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let triple = file.to_triple()?;
    Ok((file, triple, bytes))
}
