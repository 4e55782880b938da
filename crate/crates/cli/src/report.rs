//! Report envelope and atomic output.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

/// Wraps a command body with its resolved configuration and timing.
///
/// Field order is fixed by declaration, so identical configurations produce
/// byte-identical reports apart from `elapsed_ms`.
#[derive(Serialize)]
pub struct Envelope<C: Serialize, B: Serialize> {
    pub config: C,
    #[serde(flatten)]
    pub body: B,
    pub elapsed_ms: u128,
}

/// Serializes the report and writes it to stdout or atomically to a file.
pub fn emit<T: Serialize>(report: &T, output: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match output {
        None => {
            print!("{text}");
            std::io::stdout().flush()
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, &text)?;
            fs::rename(&tmp, path)
        }
    }
}

/// Writes raw text (CSV exports) to stdout or atomically to a file.
pub fn emit_text(text: &str, output: Option<&Path>) -> std::io::Result<()> {
    match output {
        None => {
            print!("{text}");
            std::io::stdout().flush()
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, text)?;
            fs::rename(&tmp, path)
        }
    }
}
