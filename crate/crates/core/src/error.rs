// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u32),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("field of order {0} exceeds the supported maximum")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,

    #[error("curve polynomial must have degree 5 or 6, got {0}")]
    BadDegree(usize),
    #[error("curve polynomial is not squarefree")]
    SingularModel,

    #[error("operation undefined for the zero function")]
    ZeroFunction,
    #[error("divisor support includes a non-rational place")]
    IrrationalSupport,
    #[error("function has a pole at {0}")]
    PoleAtPlace(String),
    #[error("divisor has non-rational support")]
    NonRationalSupport,

    #[error("condition not met: {0}")]
    ConditionNotMet(String),
    #[error("matrix does not define an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("group exceeds {0} elements")]
    GroupTooLarge(usize),

    #[error("no base point with a full unramified orbit passes the degree test")]
    NoBasePoint,
    #[error("invariant function check failed: {0}")]
    InvarianceFailed(String),
    #[error("pole divisor mismatch: {0}")]
    PoleDegreeMismatch(String),
    #[error("no basis element with the required pole pattern: {0}")]
    PatternNotFound(String),
    #[error("requested {requested} fibers but only {available} full orbits exist")]
    FiberShortage { requested: usize, available: usize },
    #[error("generator matrix has deficient rank: {0}")]
    RankDeficient(String),
    #[error("invalid budget: {0}")]
    BudgetInvalid(String),

    #[error("distance computation infeasible within budget: {0}")]
    Infeasible(String),
    #[error("singular local submatrix: {0}")]
    SingularSubmatrix(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// The variant name, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CompositeCharacteristic{ .. } => "CompositeCharacteristic",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::ReducibleModulus{ .. } => "ReducibleModulus",
            Error::BadModulus{ .. } => "BadModulus",
            Error::FieldTooLarge{ .. } => "FieldTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::BadDegree{ .. } => "BadDegree",
            Error::SingularModel => "SingularModel",
            Error::ZeroFunction => "ZeroFunction",
            Error::IrrationalSupport => "IrrationalSupport",
            Error::PoleAtPlace{ .. } => "PoleAtPlace",
            Error::NonRationalSupport => "NonRationalSupport",
            Error::ConditionNotMet{ .. } => "ConditionNotMet",
            Error::NotAnAutomorphism{ .. } => "NotAnAutomorphism",
            Error::GroupTooLarge{ .. } => "GroupTooLarge",
            Error::NoBasePoint => "NoBasePoint",
            Error::InvarianceFailed{ .. } => "InvarianceFailed",
            Error::PoleDegreeMismatch{ .. } => "PoleDegreeMismatch",
            Error::PatternNotFound{ .. } => "PatternNotFound",
            Error::FiberShortage{ .. } => "FiberShortage",
            Error::RankDeficient{ .. } => "RankDeficient",
            Error::BudgetInvalid{ .. } => "BudgetInvalid",
            Error::Infeasible{ .. } => "Infeasible",
            Error::SingularSubmatrix{ .. } => "SingularSubmatrix",
            Error::Parse{ .. } => "Parse",
            Error::Config{ .. } => "Config",
            Error::Io{ .. } => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}
