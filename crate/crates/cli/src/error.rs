use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use crate::output::SCHEMA_VERSION;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] micropolar::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn file(path: &Path, source: std::io::Error) -> Self {
        CliError::File {
            path: path.display().to_string(),
            source,
        }
    }

    /// 2 for bad input, 3 when the computation itself broke down, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use micropolar::Error as E;
        match self {
            CliError::Usage(_) | CliError::File { .. } => 2,
            CliError::Core(e) => match e {
                E::Divergence { .. } | E::Instability { .. } | E::NonFinite { .. } | E::SingularGauge { .. } => 3,
                E::Io(_) => 1,
                _ => 2,
            },
        }
    }

    fn kind(&self) -> &'static str {
        use micropolar::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::File { .. } => "file",
            CliError::Core(e) => match e {
                E::Domain(_) => "domain",
                E::Range { .. } => "range",
                E::SingularGauge { .. } => "singular_gauge",
                E::Divergence { .. } => "divergence",
                E::Config(_) => "config",
                E::Instability { .. } => "instability",
                E::Regularity { .. } => "regularity",
                E::GridTooSmall { .. } => "grid_too_small",
                E::NonFinite { .. } => "non_finite",
                E::Parse(_) => "parse",
                E::Io(_) => "io",
            },
        }
    }

    /// Machine-readable error record.
    pub fn to_json(&self) -> Value {
        use micropolar::Error as E;
        let mut v = json!({
            "schema_version": SCHEMA_VERSION,
            "status": "error",
            "kind": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        let extra = match self {
            CliError::Core(E::Divergence { radius, limit }) => json!({ "radius": radius, "limit": limit }),
            CliError::Core(E::Instability { time }) => json!({ "time": time }),
            CliError::Core(E::NonFinite { point }) => json!({ "point": point }),
            CliError::Core(E::SingularGauge { alpha, threshold }) => json!({ "alpha": alpha, "threshold": threshold }),
            _ => json!({}),
        };
        if let (Some(obj), Some(more)) = (v.as_object_mut(), extra.as_object()) {
            for (k, x) in more {
                obj.insert(k.clone(), x.clone());
            }
        }
        v
    }
}
