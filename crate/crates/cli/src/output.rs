use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::Value;

use crate::error::CliError;

/// Bumped whenever a JSON field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

/// Pretty JSON plus a trailing newline on stdout. Keys come out sorted, so
/// the bytes depend only on the values.
pub fn print_json(v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).expect("json values always serialize");
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(micropolar::Error::from)?;
    Ok(())
}

/// Runs `write` against `path`, or stdout when `path` is `None`.
pub fn with_sink<F>(path: Option<&Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> micropolar::Result<()>,
{
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError::file(p, e))?;
            let mut w = BufWriter::new(f);
            write(&mut w)?;
            w.flush().map_err(|e| CliError::file(p, e))?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            write(&mut w)?;
            w.flush().map_err(micropolar::Error::from)?;
        }
    }
    Ok(())
}
