use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("level {from} does not divide level {to}")]
    LevelMismatch { from: u64, to: u64 },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("elements belong to different algebras (`{0}` vs `{1}`)")]
    AlgebraMismatch(String, String),
    #[error("automorphism is not of finite order within bound {0}")]
    NotFiniteOrder(u32),
    #[error("exponent {q} is not compatible with denominator {denominator}")]
    IncompatibleDenominator { q: String, denominator: u64 },
    #[error("loop elements live in different twist contexts")]
    ContextMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("twist mismatch: {0}")]
    TwistMismatch(String),
    #[error("automorphism is not of the first kind")]
    NotFirstKind,
    #[error("automorphism is not of the second kind")]
    NotSecondKind,
    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: String, found: String },
    #[error("no catalog representative matches: {0}")]
    CatalogMiss(String),
    #[error("incompatible data: {0}")]
    IncompatibleData(String),
    #[error("phi_plus^2 differs from phi_minus^2")]
    SquareMismatch,
    #[error("no component classifier for {0}")]
    ClassifierUnavailable(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("map is not a Lie algebra automorphism")]
    NotAutomorphism,
    #[error("non-commuting exponential curves cannot be combined")]
    NonCommutingCurves,
    #[error("scaling factor {0} has no rational root of the required degree")]
    NonRationalScaling(String),
}

impl Error {
    /// Stable identifier of the variant, for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::LevelMismatch { .. } => "LevelMismatch",
            Error::UnknownAlgebra(_) => "UnknownAlgebra",
            Error::AlgebraMismatch(..) => "AlgebraMismatch",
            Error::NotFiniteOrder(_) => "NotFiniteOrder",
            Error::IncompatibleDenominator { .. } => "IncompatibleDenominator",
            Error::ContextMismatch => "ContextMismatch",
            Error::InvalidInput(_) => "InvalidInput",
            Error::TwistMismatch(_) => "TwistMismatch",
            Error::NotFirstKind => "NotFirstKind",
            Error::NotSecondKind => "NotSecondKind",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::CatalogMiss(_) => "CatalogMiss",
            Error::IncompatibleData(_) => "IncompatibleData",
            Error::SquareMismatch => "SquareMismatch",
            Error::ClassifierUnavailable(_) => "ClassifierUnavailable",
            Error::NotApplicable(_) => "NotApplicable",
            Error::NotAutomorphism => "NotAutomorphism",
            Error::NonCommutingCurves => "NonCommutingCurves",
            Error::NonRationalScaling(_) => "NonRationalScaling",
        }
    }

    /// Whether the failure means the catalog or classifier has no answer, as
    /// opposed to malformed input.
    pub fn is_catalog_miss(&self) -> bool {
        matches!(self, Error::CatalogMiss(_) | Error::ClassifierUnavailable(_))
    }
}
