use chrono::NaiveDate;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series `{series}` has non-positive value {value} at {date} (index {index})")]
    NonPositiveValue {
        series: String,
        date: NaiveDate,
        index: usize,
        value: f64,
    },
    #[error("series too short: need more than {needed} observations, got {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("series overlap of {overlap} observations is below the minimum of {required}")]
    InsufficientOverlap { overlap: usize, required: usize },
    #[error("invalid series `{series}`: {reason}")]
    InvalidSeries { series: String, reason: String },
    #[error("design matrix is rank deficient at column {column} (|r_jj| / max column norm = {ratio:.3e})")]
    RankDeficient { column: usize, ratio: f64 },
    #[error("too few observations: n = {n}, k = {k}")]
    TooFewObservations { n: usize, k: usize },
    #[error("restriction covariance R V R' is singular")]
    SingularRestrictionCovariance,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bandwidth {bandwidth} must be smaller than the series length {len}")]
    BandwidthTooLarge { bandwidth: usize, len: usize },
    #[error("long-run coefficient undefined: level coefficient on y(t-1) is {mu1:.3e}")]
    DegenerateLongRun { mu1: f64 },
    #[error("lag count must be positive")]
    InvalidLagCount,
    #[error("model has no non-constant regressors to test")]
    NoRegressorsToTest,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bootstrap aborted: {failed} failed draws out of {replications} replications")]
    BootstrapFailure { failed: usize, replications: usize },
    #[error("series `{series}` is integrated of order two or higher")]
    IntegratedOrderTwo { series: String },
    #[error("configuration error: {0}")]
    InvalidConfig(String),
    #[error("{path}: missing column `{column}`")]
    MissingColumn { path: String, column: String },
    #[error("line {line}: unparseable date `{value}`")]
    UnparseableDate { line: u64, value: String },
    #[error("line {line}: negative {column} count {value}")]
    NegativeCount {
        line: u64,
        column: String,
        value: i64,
    },
    #[error("line {line}: unparseable {column} value `{value}`")]
    UnparseableValue {
        line: u64,
        column: String,
        value: String,
    },
    #[error("duplicate date {date}")]
    DuplicateDate { date: NaiveDate },
    #[error("{0}: empty input")]
    EmptyInput(String),
    #[error("country `{0}` not found in records")]
    CountryNotFound(String),
    #[error("model {model}: {source}")]
    Model {
        model: String,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse failure class, used for process exit codes and the C ABI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Data,
    Estimation,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidConfig(_) => ErrorKind::Config,
            Error::NonPositiveValue { .. }
            | Error::InsufficientOverlap { .. }
            | Error::InvalidSeries { .. }
            | Error::MissingColumn { .. }
            | Error::UnparseableDate { .. }
            | Error::NegativeCount { .. }
            | Error::UnparseableValue { .. }
            | Error::DuplicateDate { .. }
            | Error::EmptyInput(_)
            | Error::CountryNotFound(_)
            | Error::IntegratedOrderTwo { .. }
            | Error::Io(_)
            | Error::Csv(_)
            | Error::Json(_) => ErrorKind::Data,
            Error::Model { source, .. } => source.kind(),
            _ => ErrorKind::Estimation,
        }
    }

    /// 2 config error, 3 data error, 4 estimation failure.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            ErrorKind::Config => 2,
            ErrorKind::Data => 3,
            ErrorKind::Estimation => 4,
        }
    }

    pub fn in_model(self, model: impl Into<String>) -> Error {
        Error::Model {
            model: model.into(),
            source: Box::new(self),
        }
    }
}
