use osculant_core::geometry::GeometryError;
use osculant_core::syzygy::SyzygyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Syzygy(#[from] SyzygyError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for bad input, 2 when a randomized oracle failed to stabilize, 3 for failed
    /// verifications.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Geometry(GeometryError::DegenerateOracle { .. })
            | CliError::Syzygy(SyzygyError::Geometry(GeometryError::DegenerateOracle { .. })) => 2,
            CliError::Syzygy(SyzygyError::NotAnIdeal { .. }) | CliError::Verification(_) => 3,
            _ => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let degenerate = || GeometryError::DegenerateOracle { points: 8 };
        assert_eq!(CliError::from(degenerate()).exit_code(), 2);
        assert_eq!(CliError::from(SyzygyError::Geometry(degenerate())).exit_code(), 2);
        assert_eq!(CliError::from(SyzygyError::NotAnIdeal { degree: 3 }).exit_code(), 3);
        assert_eq!(CliError::Verification("x".into()).exit_code(), 3);
        assert_eq!(CliError::Input("x".into()).exit_code(), 1);
        assert_eq!(CliError::from(GeometryError::Input("x".into())).exit_code(), 1);
    }
}
