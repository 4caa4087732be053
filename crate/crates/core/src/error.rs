use thiserror::Error;

use crate::page::CellKey;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SsError {
    #[error("height must be at least 1 (got {0})")]
    InvalidHeight(u32),

    #[error("invalid module descriptor: {0}")]
    InvalidModule(String),

    #[error("multiplication by 2 on a mod-2 module was asserted to be an integral differential: {0}")]
    IntegralOnTorsion(String),

    #[error("torsion deeper than mod 2 would be required: {0}")]
    DeepTorsion(String),

    #[error("cannot Pontryagin-dualize an integral cell at {cell}: {module}")]
    DualOfIntegral { cell: String, module: String },

    #[error("unsupported differential pairing {source_module} -> {target_module} by {multiplier}")]
    UnsupportedPairing {
        source_module: String,
        target_module: String,
        multiplier: String,
    },

    #[error("non-diagonal differential on page {page}: two sources hit {cell}")]
    NonDiagonal { page: u32, cell: CellKey },

    #[error("summand {label} at {cell} is both a source and a target on page {page}")]
    SourceAndTarget { page: u32, cell: CellKey, label: String },

    #[error("degree mismatch for {label}: stored at {stored}, recomputed {computed}")]
    DegreeMismatch {
        label: String,
        stored: CellKey,
        computed: CellKey,
    },

    #[error("window is empty or malformed: {0}")]
    BadWindow(String),

    #[error("preset parameter out of range: {0}")]
    BadPreset(String),

    #[error("page is not converged inside the window: rule on page {0} still fires")]
    Unconverged(u32),

    #[error("witness rejected: {0}")]
    WitnessRejected(String),

    #[error("engine consistency failure: {0}")]
    Consistency(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, SsError>;
