use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("missing prerequisite: run {} first", .0.iter().map(|c| format!("`{c}`")).collect::<Vec<_>>().join(" and "))]
    MissingPrerequisite(Vec<String>),

    #[error("{0}")]
    Verification(String),

    #[error(transparent)]
    Core(#[from] primezero::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use primezero::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::MissingPrerequisite(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Core(
                E::InvalidArgument { .. }
                | E::NonFinite(_)
                | E::CeilingExceeded { .. }
                | E::HeightExceeded(_)
                | E::NotCoprime { .. }
                | E::PrincipalCharacter(_)
                | E::ImprimitiveCharacter { .. }
                | E::IndexOutOfRange { .. },
            ) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        use primezero::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::MissingPrerequisite(_) => "missing_prerequisite",
            CliError::Verification(_) => "verification",
            CliError::Core(E::CacheVersion { .. }) => "cache_version",
            CliError::Core(E::Cache(_)) => "cache",
            CliError::Core(E::Io(_)) | CliError::Io(_) => "io",
            CliError::Core(E::Consistency(_)) | CliError::Core(E::RootNumber { .. }) => "internal",
            CliError::Core(E::Overflow(_)) | CliError::Core(E::SearchExhausted { .. }) => "limit",
            CliError::Core(_) => "invalid_argument",
            CliError::Json(_) => "internal",
        }
    }

    /// `error: kind=<kind> detail="<message>"` on one line.
    pub fn line(&self) -> String {
        let detail = self.to_string().replace('\\', "\\\\").replace('"', "\\\"").replace('\n', " ");
        format!("error: kind={} detail=\"{}\"", self.kind(), detail)
    }
}

pub fn usage(flag: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{flag}: {reason}"))
}
