//! Classes of binary functions on `{1, …, n}` and their properties.
//!
//! A function `f: {1..n} → {0,1}` is encoded as an `n`-bit integer whose
//! bit `j` (value `2^j`) is `f(j+1)`; a *class* is a nonempty set of
//! such encodings. Classes embed into the measure layer as subsets of a
//! target space of `2^n` elements — the encoding *is* the element index —
//! so a *property of classes* (a predicate) becomes a
//! [`PropertyCollection`] by listing every class that satisfies it.
//!
//! Supported predicates ([`PropertySpec`]): agreement-dimension lower
//! bounds, VC-dimension bounds (with or without consistency with a
//! labeled sample), and identity with a fixed class. The weighted-decay
//! variant describes a *distribution* over classes rather than a yes/no
//! predicate, so only its closed-form evaluators exist
//! ([`crate::asymptotics`]).

use serde::{Deserialize, Serialize};

use crate::measures::{InfoReport, PropertyCollection, TargetSpace, TargetSubset};
use crate::{Error, Result};

/// Largest domain size: encodings must fit in `u32` bit masks.
pub const MAX_DOMAIN: u32 = 24;
/// Largest domain for exhaustive property enumeration (`2^(2^n) − 1`
/// candidate classes).
pub const MAX_ENUM_DOMAIN: u32 = 4;

/// The domain `{1, …, n}` of the function classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuncDomain {
    n: u32,
}

impl FuncDomain {
    /// A domain of `n ∈ [1, 24]` points.
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameter {
                name: "n",
                why: "domain must have at least one point".into(),
            });
        }
        if n > MAX_DOMAIN {
            return Err(Error::TooLarge {
                what: "function domain",
                value: n as u64,
                max: MAX_DOMAIN as u64,
            });
        }
        Ok(Self { n })
    }

    /// Number of points `n`.
    pub fn n(self) -> u32 {
        self.n
    }

    /// Number of binary functions on the domain, `2^n`.
    pub fn num_functions(self) -> u64 {
        1u64 << self.n
    }

    /// The target space the classes live in: one element per function.
    pub fn target_space(self) -> TargetSpace {
        TargetSpace::new(self.num_functions()).expect("2^n >= 2")
    }
}

/// A single binary function, by encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryFunc {
    n: u32,
    code: u32,
}

impl BinaryFunc {
    /// A function on `domain` with the given encoding `code < 2^n`.
    pub fn new(domain: FuncDomain, code: u32) -> Result<Self> {
        if u64::from(code) >= domain.num_functions() {
            return Err(Error::CodeOutOfRange {
                code: code.into(),
                n: domain.n,
            });
        }
        Ok(Self { n: domain.n, code })
    }

    /// Evaluates the function at a 1-based point.
    pub fn eval(self, point: u32) -> Result<bool> {
        if point == 0 || point > self.n {
            return Err(Error::SamplePointOutOfRange { point, n: self.n });
        }
        Ok(self.code >> (point - 1) & 1 == 1)
    }

    /// The integer encoding.
    pub fn code(self) -> u32 {
        self.code
    }
}

/// A nonempty class of binary functions, stored as sorted distinct encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionClass {
    n: u32,
    members: Vec<u32>,
}

impl FunctionClass {
    /// Builds a class from encodings; sorts them and rejects duplicates,
    /// out-of-range codes, and the empty class.
    pub fn new(domain: FuncDomain, mut codes: Vec<u32>) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::EmptyClass);
        }
        codes.sort_unstable();
        if let Some(w) = codes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCode { code: w[0].into() });
        }
        if u64::from(*codes.last().expect("nonempty")) >= domain.num_functions() {
            return Err(Error::CodeOutOfRange {
                code: (*codes.last().unwrap()).into(),
                n: domain.n,
            });
        }
        Ok(Self {
            n: domain.n,
            members: codes,
        })
    }

    /// The canonical class of the first `count` encodings, `{0, …, count−1}`.
    pub fn prefix(domain: FuncDomain, count: u64) -> Result<Self> {
        if count == 0 || count > domain.num_functions() {
            return Err(Error::BadParameter {
                name: "count",
                why: format!(
                    "class size must lie in 1..={}, got {count}",
                    domain.num_functions()
                ),
            });
        }
        Ok(Self {
            n: domain.n,
            members: (0..count as u32).collect(),
        })
    }

    /// Domain size `n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The domain the class lives on.
    pub fn domain(&self) -> FuncDomain {
        FuncDomain { n: self.n }
    }

    /// Number of functions in the class.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// A class is never empty; kept for iterator-idiom compatibility.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sorted encodings.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    /// The class as a subset of its target space (encoding = element index).
    pub fn as_target_subset(&self) -> TargetSubset {
        TargetSubset::new(self.members.iter().map(|&c| u64::from(c)).collect())
            .expect("class members are nonempty, sorted, distinct")
    }

    /// Serializes to `{"n": 2, "class": [0, 1]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ClassJson {
            n: self.n,
            class: self.members.clone(),
        })
        .expect("serializable by construction")
    }

    /// Parses the shape produced by [`Self::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ClassJson = serde_json::from_str(text).map_err(|e| Error::Schema {
            why: format!("expected {{\"n\", \"class\"}}: {e}"),
        })?;
        Self::new(FuncDomain::new(doc.n)?, doc.class)
    }
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    n: u32,
    class: Vec<u32>,
}

/// A sample of labeled domain points: distinct 1-based points with 0/1 labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSample {
    pairs: Vec<(u32, bool)>,
}

impl LabeledSample {
    /// Builds a sample; duplicate `(point, label)` pairs collapse, while
    /// the same point under both labels is rejected. May be empty (an
    /// empty sample constrains nothing).
    pub fn new(mut pairs: Vec<(u32, bool)>) -> Result<Self> {
        pairs.sort_unstable();
        pairs.dedup();
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::ConflictingLabels { point: w[0].0 });
        }
        Ok(Self { pairs })
    }

    /// The canonical sample of a given size: points `1..=m`, all labeled 0.
    pub fn zeros(m: u32) -> Self {
        Self {
            pairs: (1..=m).map(|p| (p, false)).collect(),
        }
    }

    /// Number of labeled points.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Whether the sample is empty.
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The `(point, label)` pairs, sorted by point.
    pub fn pairs(&self) -> &[(u32, bool)] {
        &self.pairs
    }

    /// Checks all points lie in `1..=n`.
    pub fn check_in_domain(&self, domain: FuncDomain) -> Result<()> {
        for &(p, _) in &self.pairs {
            if p == 0 || p > domain.n() {
                return Err(Error::SamplePointOutOfRange {
                    point: p,
                    n: domain.n(),
                });
            }
        }
        Ok(())
    }

    /// Serializes to `{"sample": [[1, 0], [2, 1]]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SampleJson {
            sample: self.pairs.iter().map(|&(p, b)| (p, u8::from(b))).collect(),
        })
        .expect("serializable by construction")
    }

    /// Parses the shape produced by [`Self::to_json`]; labels must be 0 or 1.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SampleJson = serde_json::from_str(text).map_err(|e| Error::Schema {
            why: format!("expected {{\"sample\": [[point, label], …]}}: {e}"),
        })?;
        let pairs = doc
            .sample
            .into_iter()
            .map(|(p, l)| match l {
                0 => Ok((p, false)),
                1 => Ok((p, true)),
                other => Err(Error::Schema {
                    why: format!("label for point {p} must be 0 or 1, got {other}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }
}

#[derive(Serialize, Deserialize)]
struct SampleJson {
    sample: Vec<(u32, u8)>,
}

/// A property (predicate or weighting) of function classes.
#[derive(Debug, Clone, PartialEq)]
pub enum PropertySpec {
    /// Agreement dimension at least `d`: the members all agree on `≥ d` points.
    AgreementAtLeast(u32),
    /// VC dimension below `d`.
    VcBelow(u32),
    /// VC dimension at least `d` (the complement of [`Self::VcBelow`]).
    VcAtLeast(u32),
    /// VC dimension below `d` *and* every member consistent with the sample.
    VcBelowConsistent {
        /// The VC bound.
        d: u32,
        /// The labeled sample each member must fit.
        sample: LabeledSample,
    },
    /// Exactly this class.
    Identity(FunctionClass),
    /// Geometric weighting `c·α^|G|` over classes: a distribution, not a
    /// predicate — only closed-form evaluators apply.
    ExpDecayWeights {
        /// Decay base `α ∈ (0, 1)`.
        alpha: f64,
        /// Positive normalization coefficient.
        coefficient: f64,
    },
}

impl PropertySpec {
    /// Validates parameter ranges against a domain.
    pub fn validate(&self, domain: FuncDomain) -> Result<()> {
        match self {
            Self::AgreementAtLeast(d) | Self::VcBelow(d) | Self::VcAtLeast(d) => {
                check_dim(*d, domain)
            }
            Self::VcBelowConsistent { d, sample } => {
                check_dim(*d, domain)?;
                sample.check_in_domain(domain)
            }
            Self::Identity(class) => {
                if class.n() != domain.n() {
                    return Err(Error::BadParameter {
                        name: "identity class",
                        why: format!(
                            "class is over a {}-point domain, expected {}",
                            class.n(),
                            domain.n()
                        ),
                    });
                }
                Ok(())
            }
            Self::ExpDecayWeights { alpha, coefficient } => {
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(Error::BadParameter {
                        name: "alpha",
                        why: format!("decay base must lie in (0, 1), got {alpha}"),
                    });
                }
                if coefficient.is_nan() || *coefficient <= 0.0 {
                    return Err(Error::BadParameter {
                        name: "coefficient",
                        why: format!("must be positive, got {coefficient}"),
                    });
                }
                Ok(())
            }
        }
    }
}

fn check_dim(d: u32, domain: FuncDomain) -> Result<()> {
    if d == 0 || d > domain.n() {
        return Err(Error::BadParameter {
            name: "d",
            why: format!("dimension bound must lie in 1..={}, got {d}", domain.n()),
        });
    }
    Ok(())
}

/// Restriction of the class to a set of distinct 1-based points: the
/// sorted distinct projected patterns, where pattern bit `j` is the
/// member's value at `points[j]`.
pub fn trace(class: &FunctionClass, points: &[u32]) -> Result<Vec<u32>> {
    let n = class.n();
    let mut seen = Vec::with_capacity(class.len());
    for (j, &p) in points.iter().enumerate() {
        if p == 0 || p > n {
            return Err(Error::SamplePointOutOfRange { point: p, n });
        }
        if points[..j].contains(&p) {
            return Err(Error::BadParameter {
                name: "points",
                why: format!("point {p} repeated"),
            });
        }
    }
    for &code in class.members() {
        let mut pattern = 0u32;
        for (j, &p) in points.iter().enumerate() {
            pattern |= (code >> (p - 1) & 1) << j;
        }
        seen.push(pattern);
    }
    seen.sort_unstable();
    seen.dedup();
    Ok(seen)
}

/// VC dimension: the size of the largest point set the class shatters
/// (realizes all `2^|E|` patterns on). The empty set is always
/// shattered, so the result is `0` exactly for singleton classes.
///
/// Cost grows as `C(n,d)·|G|` per candidate size; intended for the small
/// domains where classes are enumerated or sampled.
pub fn vc_dimension(class: &FunctionClass) -> u32 {
    let n = class.n();
    let len = class.len();
    let d_max = (len.ilog2()).min(n);
    let mut patterns: Vec<u32> = Vec::with_capacity(len);
    for d in (1..=d_max).rev() {
        // Gosper's hack: every n-bit mask with exactly d bits set.
        let mut mask = (1u32 << d) - 1;
        let limit = 1u32 << n;
        while mask < limit {
            if shatters(class, mask, d, &mut patterns) {
                return d;
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    0
}

/// Whether the class realizes all `2^d` patterns on the points of `mask`.
fn shatters(class: &FunctionClass, mask: u32, d: u32, patterns: &mut Vec<u32>) -> bool {
    let full = 1usize << d;
    if class.len() < full {
        return false;
    }
    let mut bits = [0u32; 32];
    let mut count = 0usize;
    let mut m = mask;
    while m != 0 {
        bits[count] = m.trailing_zeros();
        count += 1;
        m &= m - 1;
    }
    patterns.clear();
    for &code in class.members() {
        let mut pattern = 0u32;
        for (j, &b) in bits[..count].iter().enumerate() {
            pattern |= (code >> b & 1) << j;
        }
        patterns.push(pattern);
    }
    patterns.sort_unstable();
    patterns.dedup();
    patterns.len() == full
}

/// Whether the class shatters some point set of size exactly `d` —
/// equivalently, whether its VC dimension is at least `d`.
///
/// Shattering is downward closed (every subset of a shattered set is
/// shattered), so a dimension *bound* needs only a scan of one size
/// instead of the full [`vc_dimension`] descent; on randomly sampled
/// classes the first few masks usually decide.
pub fn vc_at_least(class: &FunctionClass, d: u32) -> bool {
    if d == 0 {
        return true;
    }
    let n = class.n();
    if d > n || (class.len() as u64) < 1u64 << d {
        return false;
    }
    let mut patterns: Vec<u32> = Vec::with_capacity(class.len());
    let mut mask = (1u32 << d) - 1;
    let limit = 1u32 << n;
    while mask < limit {
        if shatters(class, mask, d, &mut patterns) {
            return true;
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    false
}

/// Agreement dimension: the number of points where *all* members agree.
/// Equals `n` exactly for singleton classes; `0` means that at every
/// point some pair of members disagrees.
pub fn agreement_dimension(class: &FunctionClass) -> u32 {
    // Domains are capped at 24 points, so the mask never overflows.
    let domain_mask = (1u32 << class.n()) - 1;
    let all_and = class.members().iter().fold(domain_mask, |a, &c| a & c);
    let all_or = class.members().iter().fold(0u32, |a, &c| a | c);
    (!(all_and ^ all_or) & domain_mask).count_ones()
}

/// Whether every member of the class fits the labeled sample.
pub fn consistent(class: &FunctionClass, sample: &LabeledSample) -> Result<bool> {
    sample.check_in_domain(class.domain())?;
    Ok(class.members().iter().all(|&code| {
        sample
            .pairs()
            .iter()
            .all(|&(p, label)| (code >> (p - 1) & 1 == 1) == label)
    }))
}

/// Evaluates the property predicate on a class.
///
/// Errors for [`PropertySpec::ExpDecayWeights`], which carries a
/// distribution rather than a predicate.
pub fn satisfies(class: &FunctionClass, spec: &PropertySpec) -> Result<bool> {
    spec.validate(class.domain())?;
    match spec {
        PropertySpec::AgreementAtLeast(d) => Ok(agreement_dimension(class) >= *d),
        PropertySpec::VcBelow(d) => Ok(!vc_at_least(class, *d)),
        PropertySpec::VcAtLeast(d) => Ok(vc_at_least(class, *d)),
        PropertySpec::VcBelowConsistent { d, sample } => {
            Ok(consistent(class, sample)? && !vc_at_least(class, *d))
        }
        PropertySpec::Identity(g0) => Ok(g0 == class),
        PropertySpec::ExpDecayWeights { .. } => Err(Error::NotAPredicate),
    }
}

/// Lists every class satisfying the property, as an explicit
/// [`PropertyCollection`] over the `2^n`-element function space.
///
/// Exhausts all `2^(2^n) − 1` nonempty classes; domains up to
/// [`MAX_ENUM_DOMAIN`] points only.
pub fn enumerate_property(domain: FuncDomain, spec: &PropertySpec) -> Result<PropertyCollection> {
    if domain.n() > MAX_ENUM_DOMAIN {
        return Err(Error::TooLarge {
            what: "exhaustive property enumeration",
            value: domain.n() as u64,
            max: MAX_ENUM_DOMAIN as u64,
        });
    }
    spec.validate(domain)?;
    let nf = domain.num_functions() as u32; // ≤ 16
    let mut subsets = Vec::new();
    for selection in 1u64..(1u64 << nf) {
        let codes: Vec<u32> = (0..nf).filter(|&c| selection >> c & 1 == 1).collect();
        let class = FunctionClass {
            n: domain.n(),
            members: codes,
        };
        if satisfies(&class, spec)? {
            subsets.push(class.as_target_subset());
        }
    }
    if subsets.is_empty() {
        return Err(Error::EmptyCollection);
    }
    PropertyCollection::explicit(domain.target_space(), subsets)
}

/// How a property report should be computed.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportMethod {
    /// Exhaustive enumeration (domains up to [`MAX_ENUM_DOMAIN`] points).
    Exact,
    /// Closed-form large-`n` evaluators.
    Asymptotic,
    /// Seeded Monte-Carlo estimation with the given per-cardinality budget.
    MonteCarlo {
        /// Samples drawn per class cardinality.
        trials: u64,
        /// Base RNG seed.
        seed: u64,
    },
}

/// Information report for a class property, by the requested method.
///
/// * `Exact` routes through [`enumerate_property`] and carries every
///   field, including efficiency.
/// * `Asymptotic` dispatches to [`crate::asymptotics`]; the description
///   complexity of the agreement property is an interval, reported at
///   its midpoint; efficiency comes from the log-domain width backend.
///   The weighted-decay property reports information and conditional
///   entropy only.
/// * `MonteCarlo` reports point estimates (uncertainty is available from
///   [`crate::mc::mc_info_report`] directly); efficiency is omitted
///   because a width evaluated at a noisy complexity would be biased.
pub fn property_report(
    domain: FuncDomain,
    spec: &PropertySpec,
    method: &ReportMethod,
) -> Result<InfoReport> {
    spec.validate(domain)?;
    match method {
        ReportMethod::Exact => enumerate_property(domain, spec)?.report(),
        ReportMethod::Asymptotic => asymptotic_report(domain.n(), spec),
        ReportMethod::MonteCarlo { trials, seed } => {
            let handle = crate::mc::RngHandle::new(*seed);
            let report = crate::mc::mc_info_report(
                domain,
                spec,
                *trials,
                &handle,
                crate::parallel::default_threads(),
            )?;
            let i = report.information.estimate;
            Ok(InfoReport {
                information: i,
                conditional_entropy: report.conditional_entropy.estimate,
                description: Some(report.description.estimate),
                cost: (i > 0.0).then(|| report.description.estimate / i),
                efficiency: None,
            })
        }
    }
}

fn asymptotic_report(n: u32, spec: &PropertySpec) -> Result<InfoReport> {
    use crate::asymptotics as asym;
    let nf = f64::from(n);
    let (info, description) = match spec {
        PropertySpec::AgreementAtLeast(d) => {
            let d = f64::from(*d);
            let interval = asym::agreement_complexity(nf, d)?;
            (asym::agreement_info(nf, d)?, Some(interval.midpoint()))
        }
        PropertySpec::VcAtLeast(d) => {
            let d = f64::from(*d);
            (
                asym::vc_atleast_info(nf, d)?,
                Some(asym::vc_atleast_complexity(nf, d)?),
            )
        }
        PropertySpec::VcBelow(d) => {
            let d = f64::from(*d);
            (
                asym::vc_below_info(nf, d)?,
                Some(asym::vc_below_complexity(nf, d)?),
            )
        }
        PropertySpec::VcBelowConsistent { d, sample } => {
            let d = f64::from(*d);
            let m = sample.len() as f64;
            (
                asym::vc_below_consistent_info(nf, d, m)?,
                Some(asym::vc_below_consistent_complexity(nf, d, m)?),
            )
        }
        PropertySpec::Identity(class) => {
            return asym::identity_report(nf, class.len() as f64);
        }
        PropertySpec::ExpDecayWeights { alpha, .. } => {
            let i = asym::expdecay_info_finite(nf, *alpha)?;
            return Ok(InfoReport {
                information: i,
                conditional_entropy: nf - i,
                description: None,
                cost: None,
                efficiency: None,
            });
        }
    };
    let (cost, efficiency) = match description {
        Some(l) if info > 0.0 => {
            let space = TargetSpace::new(1u64 << n)?;
            let query = crate::width::WidthQuery::from_complexity(space, l, None)?;
            let width = crate::width::info_width(&query)?.width;
            (Some(l / info), Some(info / width))
        }
        _ => (None, None),
    };
    Ok(InfoReport {
        information: info,
        conditional_entropy: nf - info,
        description,
        cost,
        efficiency,
    })
}
