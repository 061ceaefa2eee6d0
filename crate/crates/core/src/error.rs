use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("|D| = {abs} exceeds the reduced-form enumeration cap {cap}")]
    EnumerationCap { abs: u64, cap: u64 },
    #[error("invalid base field: {0}")]
    InvalidBase(String),
    #[error("invalid extension field: {0}")]
    InvalidExtension(String),
    #[error("no splitting data for the place over {p} of {label}")]
    MissingSplitting { label: String, p: u64 },
}

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error("Bernoulli index {0} exceeds the configured cap")]
    BernoulliCap(u32),
    #[error("unsupported argument: {0}")]
    Unsupported(String),
    #[error("no rational with denominator <= {cap} in [{lo}, {hi}]")]
    NoRationalFound { cap: u64, lo: String, hi: String },
    #[error("error radius {radius} too large for denominator cap {cap}")]
    PrecisionInsufficient { cap: u64, radius: String },
    #[error("relative L-value has the wrong sign for {0}")]
    Sign(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error)]
pub enum ParahoricError {
    #[error("case {case} is incompatible with {detail}")]
    Incompatible { case: String, detail: String },
}

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("delta must lie in (0, 1), got {0}")]
    DeltaRange(String),
    #[error("degree {0} is below the smallest tabulated degree")]
    BelowTable(u32),
    #[error("no tabulated root discriminant bound exceeds {0}")]
    BeyondTable(String),
    #[error("invalid Martinet table: {0}")]
    InvalidTable(String),
    #[error("no regulator floor for D_k = {0}")]
    NoRegulator(u64),
    #[error("Hilbert class field iteration did not stabilise after {0} steps")]
    NonTerminating(usize),
    #[error("cannot read bound expression `{0}`")]
    BadKey(String),
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("configuration invalid: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Parahoric(#[from] ParahoricError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("scan assertion failed: {0}")]
    ScanAssertion(String),
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing header field `{0}`")]
    MissingHeader(&'static str),
    #[error("snapshot kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("checksum mismatch: header {header}, body {body}")]
    Checksum { header: String, body: String },
    #[error("line {line}: invariant violated: {msg}")]
    Invariant { line: usize, msg: String },
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<IngestError>,
    },
}
