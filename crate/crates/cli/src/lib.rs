//! Command-line front end for the shiftlab engine.
//!
//! Triple files come in as JSON, reports go out as canonical JSON, and every
//! numeric claim travels with a certificate that the engine can re-verify.
//! The bundled corpus and its assertions live in [`examples`]; the
//! `verify-examples` command replays them as a regression gate.

pub mod commands;
pub mod examples;
pub mod formats;
pub mod report;

pub use commands::{run, Cli, Command, Outcome};
pub use formats::{canonical_json, parse_triple, write_atomic, CliError, TripleFile};
pub use report::{digest, Report, Status, VERSION};
