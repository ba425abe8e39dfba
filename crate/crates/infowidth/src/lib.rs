//! Combinatorial information measures for finite set systems.
//!
//! This crate computes *counting-based* (non-stochastic) information
//! quantities over a finite target space `Y`:
//!
//! * **Entropy** `H(Y) = log2 |Y|` and **conditional entropy** `H(Y|x)`
//!   of the target given a *property* `x` — a collection of nonempty
//!   subsets of `Y`, one of which is guaranteed to contain the target
//!   ([`measures`]).
//! * **Information** `I(x:Y) = H(Y) − H(Y|x)` and the pairwise set
//!   information `I(z:y) = 2·log2|y ∪ z| − log2|y| − log2|z|`.
//! * **Description complexity** `ℓ(x) = log2(2^|Y| / |Z_x|)` — the number
//!   of bits needed to single the property out of the ambient universe of
//!   subset collections — and the complement identity
//!   `2^{−ℓ(x)} + 2^{−ℓ(x^c)} = 1`.
//! * **Information width** `I*(l)`: the maximum information any property
//!   of description complexity `l` can convey, with an exact big-integer
//!   backend, a log-domain backend for astronomically large spaces, and
//!   exhaustive brute-force oracles for tiny spaces ([`width`]).
//! * **Binary-function classes**: traces, VC-dimension, agreement
//!   (L-)dimension, property predicates, and exhaustive property
//!   statistics for small domains ([`classes`]).
//! * **Closed-form large-`n` evaluators** for the information and
//!   description complexity of those class properties ([`asymptotics`]).
//! * **Monte-Carlo estimation** of property probabilities and information
//!   reports under seeded, reproducible random-class models ([`mc`]).
//!
//! All logarithms are base 2 and all information quantities are in bits.
//! Counts that can reach `2^(2^n)` are held exactly as [`num_bigint::BigUint`]
//! and only converted to bits via a documented high-accuracy rule
//! ([`numeric::log2_bigcount`]).

#![warn(missing_docs)]

pub mod asymptotics;
pub mod classes;
pub mod mc;
pub mod measures;
pub mod numeric;
pub mod parallel;
pub mod width;

use num_bigint::BigUint;
use thiserror::Error;

/// Base-2 logarithm of a count, in bits.
///
/// Plain `f64` with a naming convention rather than a newtype; every
/// conversion from an exact [`BigUint`] count goes through
/// [`numeric::log2_bigcount`], which guarantees at least 50 significant
/// mantissa bits (absolute error ≤ 2⁻⁶³/ln 2).
pub type LogBits = f64;

/// Errors reported by every fallible operation in this crate.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// A target space must contain at least one element.
    #[error("target space must contain at least one element")]
    EmptySpace,
    /// Subsets of the target space must be nonempty (log2 of an empty
    /// member's cardinality is undefined).
    #[error("target subsets must be nonempty")]
    EmptySubset,
    /// A subset member index lies outside the target space.
    #[error("element index {index} out of range for a space of size {size}")]
    IndexOutOfRange {
        /// Offending element index.
        index: u64,
        /// Size of the target space.
        size: u64,
    },
    /// Subset members must be distinct.
    #[error("duplicate element index {index} in a target subset")]
    DuplicateIndex {
        /// The repeated element index.
        index: u64,
    },
    /// A property must contain at least one member subset.
    #[error("property collections must contain at least one member subset")]
    EmptyCollection,
    /// Explicit property collections must not repeat a member subset.
    #[error("duplicate member subset in an explicit property collection")]
    DuplicateMember,
    /// A profiled cardinality key must lie in `1..=space_size`.
    #[error("cardinality {k} out of range for a space of size {size}")]
    CardinalityOutOfRange {
        /// Offending cardinality key.
        k: u64,
        /// Size of the target space.
        size: u64,
    },
    /// A profiled count exceeds the number of subsets of that size.
    #[error("count for cardinality {k} exceeds C(space, {k})")]
    CountExceedsBinomial {
        /// Cardinality whose count is too large.
        k: u64,
    },
    /// Total member count must lie in `1..=2^space − 1`.
    #[error("total member count must lie in 1..=2^space - 1")]
    TotalCountOutOfRange,
    /// Operation requires the explicit (listed) representation.
    #[error("operation requires an explicit member list, not a cardinality profile")]
    NotExplicit,
    /// Cost and efficiency are undefined when the information is zero.
    #[error("undefined ratio: the property conveys zero information")]
    ZeroInformation,
    /// Description complexity and its complement need a positive argument.
    #[error("description complexity must be positive (got {l})")]
    NonPositiveComplexity {
        /// Offending value in bits.
        l: f64,
    },
    /// The requested complexity is outside the achievable range for the space.
    #[error("complexity {l} outside the achievable range (0, {max}] for this space")]
    ComplexityOutOfRange {
        /// Requested description complexity in bits.
        l: f64,
        /// Largest achievable complexity (the space size in bits).
        max: f64,
    },
    /// A size cap for an exhaustive or exact computation was exceeded.
    #[error("{what} supports at most {max}, got {value}")]
    TooLarge {
        /// What was being computed.
        what: &'static str,
        /// Offending size.
        value: u64,
        /// Supported maximum.
        max: u64,
    },
    /// The exact backend needs an integral member count.
    #[error("member count 2^(space - l) is not integral at l = {l}; use the log-domain backend")]
    NonIntegralMembers {
        /// Requested complexity in bits.
        l: f64,
    },
    /// A function class must contain at least one function.
    #[error("function classes must be nonempty")]
    EmptyClass,
    /// A function encoding lies outside `[0, 2^n)`.
    #[error("function code {code} out of range for domain size {n}")]
    CodeOutOfRange {
        /// Offending function encoding.
        code: u64,
        /// Domain size.
        n: u32,
    },
    /// Duplicate function encoding in a class.
    #[error("duplicate function code {code} in a class")]
    DuplicateCode {
        /// The repeated encoding.
        code: u64,
    },
    /// A labeled sample repeats a point with conflicting labels.
    #[error("sample labels point {point} with both 0 and 1")]
    ConflictingLabels {
        /// The conflicting 1-based domain point.
        point: u32,
    },
    /// A sample point lies outside the domain `1..=n`.
    #[error("sample point {point} outside the domain 1..={n}")]
    SamplePointOutOfRange {
        /// Offending 1-based point.
        point: u32,
        /// Domain size.
        n: u32,
    },
    /// Weighted-decay property specifications carry a distribution, not a predicate.
    #[error("the weighted-decay property has no yes/no predicate to evaluate")]
    NotAPredicate,
    /// The (method, property) pair has no evaluation route.
    #[error("no {method} evaluation route for this property")]
    UnsupportedCombination {
        /// The requested method name.
        method: &'static str,
    },
    /// An evaluator parameter is outside its mathematical domain.
    #[error("parameter {name} out of domain: {why}")]
    BadParameter {
        /// Parameter name.
        name: &'static str,
        /// Human-readable constraint description.
        why: String,
    },
    /// Rejection sampling is hopeless at the requested parameters.
    #[error(
        "estimated acceptance rate {acceptance:.3e} below 1e-9; rejection sampling infeasible"
    )]
    SamplingInfeasible {
        /// Estimated acceptance probability.
        acceptance: f64,
    },
    /// The rejection sampler exhausted its retry budget.
    #[error("rejection sampler exhausted {cap} attempts without accepting")]
    RetryCapExceeded {
        /// The retry cap that was exhausted.
        cap: u64,
    },
    /// Monte-Carlo estimation saw no satisfying sample at any cardinality.
    #[error("no sampled class satisfied the property at any cardinality; cannot estimate")]
    AllRejected,
    /// Malformed JSON input.
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    /// Structurally valid JSON that violates the documented schema.
    #[error("JSON schema violation: {why}")]
    Schema {
        /// What was wrong.
        why: String,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub use classes::{BinaryFunc, FuncDomain, FunctionClass, LabeledSample, PropertySpec};
pub use measures::{DensityCounts, InfoReport, PropertyCollection, TargetSpace, TargetSubset};
pub use width::{WidthBackend, WidthQuery, WidthResult};

/// Exact big-integer count (e.g. the `2^(2^n)` collections over a function space).
pub type BigCount = BigUint;
