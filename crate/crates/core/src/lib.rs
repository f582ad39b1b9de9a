//! Exact quasi-integrals of continuous piecewise-linear functions with respect
//! to finite deficient topological measures on the real line and on compact
//! intervals.
//!
//! The core objects are generic over [`Scalar`]; the aliases at the crate
//! root fix the exact rational instantiation used for every identity check.

pub mod checks;
pub mod distributions;
pub mod error;
pub mod functional_lab;
pub mod interval_sets;
pub mod limits;
pub mod measures;
pub mod pwl_functions;
pub mod quasi_integral;
pub mod reconstruction;
pub mod sampling;
pub mod scalar;
pub mod suites;
pub mod wire;

pub use checks::{CheckReport, CheckStatus};
pub use distributions::{
    integration_by_parts_check, pushforward_check, rl_equal_criterion, BoundaryMeasure, DistributionBundle,
    JumpFunction, MonotonePwFunction, RlVerdict,
};
pub use error::{Error, Result};
pub use functional_lab::{
    classify, generate_case, quasi_linearity_check, Case, CaseKind, ClassificationReport, FunctionalClass, Property,
    Verdict, Witness,
};
pub use interval_sets::{Extended, Interval, IntervalSet, Space};
pub use limits::{limit_of, Certificate};
pub use measures::{is_topological_measure, validate_dtm, Dtm, MeasureNode, SetFunction, ValidationReport};
pub use pwl_functions::{compose_monotone, CombineOp, Direction, MonotoneProfile, PwlFunction};
pub use quasi_integral::{
    oracle_min_max, quasi_integral_l, quasi_integral_r, quasi_integrals, DomainTag, FunctionalHandle, Provenance,
};
pub use reconstruction::{
    norm_estimate, plateau_inside, plateau_over, reconstruct, reconstruct_compact, reconstruct_open, round_trip_check,
    RampSchedule, ReconstructionResult,
};
pub use scalar::Scalar;

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;

pub type QInterval = Interval<Rational>;
pub type QIntervalSet = IntervalSet<Rational>;
pub type QSpace = Space<Rational>;
pub type Pwl = PwlFunction<Rational>;
pub type QProfile = MonotoneProfile<Rational>;
pub type QDtm = Dtm<Rational>;

pub type PwlF64 = PwlFunction<f64>;
