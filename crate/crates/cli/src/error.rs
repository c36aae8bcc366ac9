use serde_json::json;
use thiserror::Error;
use tractscope::be::BeError;
use tractscope::field::FieldError;
use tractscope::poisson::PoissonError;
use tractscope::report::AnalyzeError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed model JSON: {0}")]
    ModelJson(serde_json::Error),
    #[error(transparent)]
    Model(#[from] PoissonError),
    #[error(transparent)]
    Be(#[from] BeError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for unusable input, 2 for failures while computing or writing.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::ModelJson(_) => 1,
            CliError::Analyze(e) => e.exit_code() as u8,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Analyze(e) => e.kind(),
            CliError::Field(_) => "field",
            CliError::ModelJson(_) => "model-json",
            CliError::Model(_) => "model",
            CliError::Be(_) => "be",
            CliError::Io { .. } => "io",
        }
    }

    pub fn to_json(&self) -> String {
        let mut err = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let CliError::Analyze(AnalyzeError::Parse(p)) = self {
            err["offset"] = json!(p.offset());
        }
        json!({ "error": err }).to_string()
    }
}
