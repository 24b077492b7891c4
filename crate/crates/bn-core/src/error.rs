use thiserror::Error;

/// Every failure the library can report. Variant names are surfaced by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BnError {
    #[error("ContainmentViolation: mu is not contained in lambda")]
    ContainmentViolation,
    #[error("EmptyRow: row {0} would have no boxes")]
    EmptyRow(usize),
    #[error("DegenerateShape: {0}")]
    DegenerateShape(String),
    #[error("InvalidData: {0}")]
    InvalidData(String),
    #[error("RowOutOfRange: row {row} not in 1..={k}")]
    RowOutOfRange { row: usize, k: usize },
    #[error("InternalNonIntegral: {0}")]
    InternalNonIntegral(String),
    #[error("NonIntegral: {0}")]
    NonIntegral(String),
    #[error("TooLarge: size {size} exceeds enumeration cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("DisconnectedShape: the shape is not connected")]
    DisconnectedShape,
    #[error("InvalidTableau: {0}")]
    InvalidTableau(String),
    #[error("WrongRho: expected rho = {expected}, got {actual}")]
    WrongRho { expected: String, actual: i64 },
    #[error("InvalidSequence: {0}")]
    InvalidSequence(String),
    #[error("InvalidPretableau: {0}")]
    InvalidPretableau(String),
    #[error("DataMismatch: sequences belong to different data")]
    DataMismatch,
    #[error("EmptyAspect: the aspect locus is empty")]
    EmptyAspect,
    #[error("DisconnectedGraph: the dual graph is not connected")]
    DisconnectedGraph,
}

impl BnError {
    /// The bare variant name, e.g. `TooLarge`.
    pub fn name(&self) -> &'static str {
        match self {
            BnError::ContainmentViolation => "ContainmentViolation",
            BnError::EmptyRow(_) => "EmptyRow",
            BnError::DegenerateShape(_) => "DegenerateShape",
            BnError::InvalidData(_) => "InvalidData",
            BnError::RowOutOfRange { .. } => "RowOutOfRange",
            BnError::InternalNonIntegral(_) => "InternalNonIntegral",
            BnError::NonIntegral(_) => "NonIntegral",
            BnError::TooLarge { .. } => "TooLarge",
            BnError::DisconnectedShape => "DisconnectedShape",
            BnError::InvalidTableau(_) => "InvalidTableau",
            BnError::WrongRho { .. } => "WrongRho",
            BnError::InvalidSequence(_) => "InvalidSequence",
            BnError::InvalidPretableau(_) => "InvalidPretableau",
            BnError::DataMismatch => "DataMismatch",
            BnError::EmptyAspect => "EmptyAspect",
            BnError::DisconnectedGraph => "DisconnectedGraph",
        }
    }
}

pub type Result<T> = std::result::Result<T, BnError>;
