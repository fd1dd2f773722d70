//! Report envelope shared by every command.
//!
//! A report is a JSON object `{certificates, command, flags, input_sha256,
//! result, status, version}` rendered canonically, so identical inputs and
//! flags produce byte-identical files. Numeric claims always travel with the
//! certificate that re-verifies them.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use shiftlab_core::monoid::Exactness;
use shiftlab_core::{BitSet, FactorTriple, XSym, YSym};

use crate::formats::canonical_json;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// The value is the true minimum.
    Exact,
    /// A bounded scan was requested; the value is valid up to the horizon.
    Bounded,
    /// An exact search hit the element cap before closing.
    Capped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "EXACT",
            Status::Bounded => "BOUNDED",
            Status::Capped => "CAPPED",
        }
    }

    /// Exactness of an engine search that was meant to be exact.
    pub fn from_exactness(e: Exactness) -> Status {
        match e {
            Exactness::Exact => Status::Exact,
            Exactness::UpToLength(_) => Status::Capped,
        }
    }
}

pub struct Report {
    pub command: &'static str,
    pub input_sha256: String,
    pub flags: Value,
    pub result: Value,
    pub certificates: Value,
    pub status: Status,
}

impl Report {
    pub fn render(&self) -> String {
        canonical_json(&json!({
            "command": self.command,
            "input_sha256": self.input_sha256,
            "flags": self.flags,
            "result": self.result,
            "certificates": self.certificates,
            "status": self.status.as_str(),
            "version": VERSION,
        }))
    }
}

/// Hex digest over the concatenation of all inputs, in argument order.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p);
    }
    h.finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect::<String>()
}

pub fn word_letters(t: &FactorTriple, w: &[YSym]) -> Value {
    Value::Array(
        w.iter()
            .map(|&y| Value::String(t.alphabet()[y].clone()))
            .collect(),
    )
}

pub fn symbol_names(t: &FactorTriple, set: &BitSet) -> Value {
    Value::Array(
        set.iter()
            .map(|x| Value::String(t.graph().name(x).to_string()))
            .collect(),
    )
}

pub fn walk_names(t: &FactorTriple, walk: &[XSym]) -> Value {
    Value::Array(
        walk.iter()
            .map(|&x| Value::String(t.graph().name(x).to_string()))
            .collect(),
    )
}
