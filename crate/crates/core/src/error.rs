use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("set is not contained in the ambient interval")]
    NotContained,
    #[error("objects live on different spaces")]
    SpaceMismatch,
    #[error("point {0} is outside the function's domain")]
    OutOfDomain(String),
    #[error("profile domain does not cover the required range: {0}")]
    DomainTooSmall(String),
    #[error("profile must vanish at 0 on the line")]
    NotAnchoredAtZero,
    #[error("function range violates the precondition: {0}")]
    RangeViolation(String),
    #[error("empty set where a nonempty one is required")]
    EmptySet,
    #[error("set is neither open nor closed in the space")]
    NotAdmissibleSet,
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("product of two sloped pieces is not piecewise linear on [{0}, {1}]")]
    ProductNotPwl(String, String),
    #[error("functional samples are not monotone: {0}")]
    NotMonotoneInput(String),
    #[error("measure has a non-additive component and no linear integral")]
    NotLinear,
    #[error("function is outside the functional's domain: {0}")]
    OutsideFunctionalDomain(String),
    #[error("representation invariant failed: {0}")]
    Invariant(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidRational(_) => "InvalidRational",
            Error::InvalidInterval(_) => "InvalidInterval",
            Error::NotContained => "NotContained",
            Error::SpaceMismatch => "SpaceMismatch",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::DomainTooSmall(_) => "DomainTooSmall",
            Error::NotAnchoredAtZero => "NotAnchoredAtZero",
            Error::RangeViolation(_) => "RangeViolation",
            Error::EmptySet => "EmptySet",
            Error::NotAdmissibleSet => "NotAdmissibleSet",
            Error::InvalidFunction(_) => "InvalidFunction",
            Error::InvalidMeasure(_) => "InvalidMeasure",
            Error::ProductNotPwl(..) => "ProductNotPwl",
            Error::NotMonotoneInput(_) => "NotMonotoneInput",
            Error::NotLinear => "NotLinear",
            Error::OutsideFunctionalDomain(_) => "OutsideFunctionalDomain",
            Error::Invariant(_) => "Invariant",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
