//! Core information measures over a finite target space.
//!
//! A *property* of the target is a nonempty collection of nonempty
//! subsets of the target space, one of which contains the target. Two
//! interchangeable representations are supported:
//!
//! * **explicit** — the member subsets are listed; every measure is
//!   available;
//! * **profiled** — only the count of members per cardinality is kept
//!   (enough for [`conditional_entropy`], [`information`],
//!   [`description_complexity`] and friends, which depend on the profile
//!   alone), with exact big-integer counts so collections of size up to
//!   `2^|Y| − 1` are representable.
//!
//! All measures are in bits (logarithms base 2).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::numeric::{bigcount_to_f64_exact, binomial, log2_bigcount, log2_binomial};
use crate::{BigCount, Error, LogBits, Result};

/// A finite target space `Y = {0, 1, …, size−1}`.
///
/// Only the size matters; elements are identified by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetSpace {
    size: u64,
}

impl TargetSpace {
    /// A space with `size ≥ 1` elements.
    pub fn new(size: u64) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptySpace);
        }
        Ok(Self { size })
    }

    /// Number of elements.
    pub fn size(self) -> u64 {
        self.size
    }

    /// Entropy of the space: `H(Y) = log2 |Y|`.
    pub fn entropy(self) -> LogBits {
        (self.size as f64).log2()
    }
}

/// A nonempty subset of a target space, stored as sorted distinct indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetSubset {
    members: Vec<u64>,
}

impl TargetSubset {
    /// Builds a subset from element indices.
    ///
    /// Indices are sorted; the subset must be nonempty and free of
    /// duplicates. Range checking against a concrete space happens where
    /// the subset is attached to one (e.g. [`PropertyCollection::explicit`]).
    pub fn new(mut members: Vec<u64>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySubset);
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex { index: w[0] });
        }
        Ok(Self { members })
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.members.len() as u64
    }

    /// Sorted element indices.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    /// Checks every index lies inside `space`.
    pub fn check_in_space(&self, space: TargetSpace) -> Result<()> {
        // Members are sorted, so the last one is the maximum.
        match self.members.last() {
            Some(&max) if max >= space.size() => Err(Error::IndexOutOfRange {
                index: max,
                size: space.size(),
            }),
            _ => Ok(()),
        }
    }

    /// Size of the union with another subset (merge of two sorted lists).
    pub fn union_size(&self, other: &TargetSubset) -> u64 {
        let (mut i, mut j) = (0usize, 0usize);
        let (a, b) = (&self.members, &other.members);
        let mut count = 0u64;
        while i < a.len() && j < b.len() {
            count += 1;
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        count + (a.len() - i) as u64 + (b.len() - j) as u64
    }

    /// Whether the two subsets share an element.
    pub fn intersects(&self, other: &TargetSubset) -> bool {
        let (mut i, mut j) = (0usize, 0usize);
        let (a, b) = (&self.members, &other.members);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// Count of member subsets per cardinality: `counts[k]` members of size `k`.
///
/// Counts are exact big integers; the total is maintained alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityCounts {
    counts: BTreeMap<u64, BigCount>,
    total: BigCount,
}

impl DensityCounts {
    /// Validates cardinality keys and counts against a space.
    ///
    /// Requirements: every key `k` in `1..=|Y|`; every count at most
    /// `C(|Y|, k)` (checked exactly for spaces up to 1000 elements, and
    /// through the `log2`-domain binomial with a `1e-6`-bit slack beyond
    /// that); total in `1..=2^|Y| − 1`. Zero counts are dropped.
    pub fn new(counts: BTreeMap<u64, BigCount>, space: TargetSpace) -> Result<Self> {
        let size = space.size();
        let mut clean = BTreeMap::new();
        let mut total = BigUint::zero();
        for (k, count) in counts {
            if count.is_zero() {
                continue;
            }
            if k == 0 || k > size {
                return Err(Error::CardinalityOutOfRange { k, size });
            }
            let fits = if size <= 1000 {
                count <= binomial(size, k)
            } else {
                log2_bigcount(&count) <= log2_binomial(size, k) + 1e-6
            };
            if !fits {
                return Err(Error::CountExceedsBinomial { k });
            }
            total += &count;
            clean.insert(k, count);
        }
        // total <= 2^size - 1  <=>  total < 2^size  <=>  total.bits() <= size.
        if total.is_zero() || total.bits() > size {
            return Err(Error::TotalCountOutOfRange);
        }
        Ok(Self {
            counts: clean,
            total,
        })
    }

    /// Total number of members across all cardinalities.
    pub fn total(&self) -> &BigCount {
        &self.total
    }

    /// Iterates `(cardinality, count)` in ascending cardinality order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigCount)> {
        self.counts.iter().map(|(&k, c)| (k, c))
    }

    /// The underlying count map.
    pub fn counts(&self) -> &BTreeMap<u64, BigCount> {
        &self.counts
    }
}

/// A property: a collection of candidate subsets, one of which contains
/// the target.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCollection {
    space: TargetSpace,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Explicit(Vec<TargetSubset>),
    Profiled(DensityCounts),
}

impl PropertyCollection {
    /// Explicit representation: the member subsets themselves.
    ///
    /// Members must be distinct, nonempty, within the space, and there
    /// must be at least one.
    pub fn explicit(space: TargetSpace, subsets: Vec<TargetSubset>) -> Result<Self> {
        if subsets.is_empty() {
            return Err(Error::EmptyCollection);
        }
        for s in &subsets {
            s.check_in_space(space)?;
        }
        // Duplicate detection on sorted views, without cloning members.
        let mut order: Vec<&TargetSubset> = subsets.iter().collect();
        order.sort_unstable_by(|a, b| a.members().cmp(b.members()));
        if order.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember);
        }
        Ok(Self {
            space,
            repr: Repr::Explicit(subsets),
        })
    }

    /// Profiled representation: member counts per cardinality.
    pub fn profiled(space: TargetSpace, counts: DensityCounts) -> Result<Self> {
        // DensityCounts validated against *a* space at construction;
        // re-validate against this one so the pairing is sound.
        let counts = DensityCounts::new(counts.counts, space)?;
        Ok(Self {
            space,
            repr: Repr::Profiled(counts),
        })
    }

    /// Convenience: profiled representation from a raw count map.
    pub fn from_counts(space: TargetSpace, counts: BTreeMap<u64, BigCount>) -> Result<Self> {
        Ok(Self {
            space,
            repr: Repr::Profiled(DensityCounts::new(counts, space)?),
        })
    }

    /// The target space this property talks about.
    pub fn space(&self) -> TargetSpace {
        self.space
    }

    /// Exact number of member subsets.
    pub fn member_count(&self) -> BigCount {
        match &self.repr {
            Repr::Explicit(subsets) => BigUint::from(subsets.len()),
            Repr::Profiled(counts) => counts.total().clone(),
        }
    }

    /// The member list, when explicit.
    pub fn members(&self) -> Option<&[TargetSubset]> {
        match &self.repr {
            Repr::Explicit(subsets) => Some(subsets),
            Repr::Profiled(_) => None,
        }
    }

    /// Member counts per cardinality (computed on demand when explicit).
    pub fn density_counts(&self) -> DensityCounts {
        match &self.repr {
            Repr::Profiled(counts) => counts.clone(),
            Repr::Explicit(subsets) => {
                let mut counts: BTreeMap<u64, BigCount> = BTreeMap::new();
                for s in subsets {
                    *counts.entry(s.size()).or_insert_with(BigUint::zero) += 1u32;
                }
                DensityCounts::new(counts, self.space)
                    .expect("explicit members always form a valid profile")
            }
        }
    }

    /// Drops the member list, keeping only the cardinality profile.
    pub fn to_profiled(&self) -> PropertyCollection {
        PropertyCollection {
            space: self.space,
            repr: Repr::Profiled(self.density_counts()),
        }
    }

    /// Full report: information, conditional entropy, description
    /// complexity, and (when the information is positive) cost and
    /// efficiency.
    pub fn report(&self) -> Result<InfoReport> {
        let i = information(self);
        let h = conditional_entropy(self);
        let l = description_complexity(self);
        let (kappa, eta) = if i > 0.0 {
            (Some(l / i), Some(crate::width::efficiency(self)?))
        } else {
            (None, None)
        };
        Ok(InfoReport {
            information: i,
            conditional_entropy: h,
            description: Some(l),
            cost: kappa,
            efficiency: eta,
        })
    }

    /// Serializes to the documented JSON shape.
    ///
    /// Explicit: `{"ny": N, "subsets": [[0,2],[1]]}`. Profiled:
    /// `{"ny": N, "counts": {"1": "4", "2": "13"}}` with decimal-string
    /// big-integer counts.
    pub fn to_json(&self) -> String {
        let doc = match &self.repr {
            Repr::Explicit(subsets) => PropertyJson::Explicit {
                ny: self.space.size(),
                subsets: subsets.iter().map(|s| s.members().to_vec()).collect(),
            },
            Repr::Profiled(counts) => PropertyJson::Profiled {
                ny: self.space.size(),
                counts: counts
                    .iter()
                    .map(|(k, c)| (k.to_string(), c.to_string()))
                    .collect(),
            },
        };
        serde_json::to_string_pretty(&doc).expect("serializable by construction")
    }

    /// Parses the JSON shape produced by [`Self::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PropertyJson = serde_json::from_str(text).map_err(|e| Error::Schema {
            why: format!("expected {{\"ny\", \"subsets\"}} or {{\"ny\", \"counts\"}}: {e}"),
        })?;
        match doc {
            PropertyJson::Explicit { ny, subsets } => {
                let space = TargetSpace::new(ny)?;
                let subsets = subsets
                    .into_iter()
                    .map(TargetSubset::new)
                    .collect::<Result<Vec<_>>>()?;
                Self::explicit(space, subsets)
            }
            PropertyJson::Profiled { ny, counts } => {
                let space = TargetSpace::new(ny)?;
                let mut map = BTreeMap::new();
                for (k, c) in counts {
                    let k: u64 = k.parse().map_err(|_| Error::Schema {
                        why: format!("cardinality key {k:?} is not an integer"),
                    })?;
                    let c: BigUint = c.parse().map_err(|_| Error::Schema {
                        why: format!("count for cardinality {k} is not a decimal integer"),
                    })?;
                    map.insert(k, c);
                }
                Self::from_counts(space, map)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum PropertyJson {
    Explicit {
        ny: u64,
        subsets: Vec<Vec<u64>>,
    },
    Profiled {
        ny: u64,
        counts: BTreeMap<String, String>,
    },
}

/// Summary of the information measures of a property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoReport {
    /// Information conveyed about the whole space, `I`, in bits.
    #[serde(rename = "I")]
    pub information: f64,
    /// Conditional entropy of the target given the property, `H`, in bits.
    #[serde(rename = "H")]
    pub conditional_entropy: f64,
    /// Description complexity `l` in bits, when defined for the route used.
    #[serde(rename = "l", default, skip_serializing_if = "Option::is_none")]
    pub description: Option<f64>,
    /// Cost `kappa = l / I`; absent when the information is zero.
    #[serde(rename = "kappa", default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<f64>,
    /// Efficiency `eta = I / I*(l)`; absent when the information is zero.
    #[serde(rename = "eta", default, skip_serializing_if = "Option::is_none")]
    pub efficiency: Option<f64>,
}

/// Entropy of a target space: `H(Y) = log2 |Y|`.
pub fn entropy(space: TargetSpace) -> LogBits {
    space.entropy()
}

/// Information between two nonempty sets:
/// `I(z : y) = 2·log2 |z ∪ y| − log2 |z| − log2 |y|`.
///
/// Zero exactly when `z = y`; grows as the sets diverge.
pub fn info_between_sets(z: &TargetSubset, y: &TargetSubset) -> LogBits {
    let union = z.union_size(y) as f64;
    2.0 * union.log2() - (z.size() as f64).log2() - (y.size() as f64).log2()
}

/// Whether the property says anything about a particular target set:
/// true when at least one member subset intersects `target` (the
/// provider's promise — the target meets *some* member — is then
/// satisfiable).
///
/// Requires the explicit representation.
pub fn is_informative(x: &PropertyCollection, target: &TargetSubset) -> Result<bool> {
    let members = x.members().ok_or(Error::NotExplicit)?;
    target.check_in_space(x.space())?;
    Ok(members.iter().any(|z| z.intersects(target)))
}

/// Fraction of members per cardinality, `ω_x(k)`; values sum to 1.
pub fn density(x: &PropertyCollection) -> BTreeMap<u64, f64> {
    let counts = x.density_counts();
    let total = counts.total().clone();
    match bigcount_to_f64_exact(&total) {
        Some(t) => counts
            .iter()
            .map(|(k, c)| {
                let c = bigcount_to_f64_exact(c)
                    .map(|c| c / t)
                    .unwrap_or_else(|| (log2_bigcount(c) - t.log2()).exp2());
                (k, c)
            })
            .collect(),
        None => {
            let lt = log2_bigcount(&total);
            counts
                .iter()
                .map(|(k, c)| (k, (log2_bigcount(c) - lt).exp2()))
                .collect()
        }
    }
}

/// Conditional entropy of the target given the property:
/// `H(Y|x) = Σ_k ω_x(k)·log2 k`.
///
/// When every count (and the total) is exactly representable in `f64`,
/// the sum `Σ count·log2 k` accumulates in ascending cardinality order
/// and divides by the total once — bit-for-bit reproducible by a naive
/// enumeration. Larger counts fall back to per-term `log2`-domain
/// weights (relative error ~1e-15).
pub fn conditional_entropy(x: &PropertyCollection) -> LogBits {
    let counts = x.density_counts();
    entropy_of_counts(counts.counts(), counts.total())
}

/// Shared kernel for [`conditional_entropy`]: `Σ_k (count_k/total)·log2 k`.
pub(crate) fn entropy_of_counts(counts: &BTreeMap<u64, BigCount>, total: &BigCount) -> f64 {
    let exact_total = bigcount_to_f64_exact(total);
    let all_exact = counts.values().all(|c| c.bits() <= 53);
    match (exact_total, all_exact) {
        (Some(t), true) => {
            let weighted: f64 = counts
                .iter()
                .map(|(&k, c)| {
                    bigcount_to_f64_exact(c).expect("checked <= 53 bits") * (k as f64).log2()
                })
                .sum();
            weighted / t
        }
        _ => {
            let lt = log2_bigcount(total);
            counts
                .iter()
                .map(|(&k, c)| (log2_bigcount(c) - lt).exp2() * (k as f64).log2())
                .sum()
        }
    }
}

/// Information the property conveys about the whole space:
/// `I(x:Y) = H(Y) − H(Y|x)`.
pub fn information(x: &PropertyCollection) -> LogBits {
    x.space().entropy() - conditional_entropy(x)
}

/// Information the property conveys about a particular target set:
/// the average of `I(z : target)` over *all* member subsets `z`
/// (non-intersecting members included), or `0` when the property says
/// nothing about the target (no member meets it).
///
/// Requires the explicit representation.
pub fn information_about(x: &PropertyCollection, target: &TargetSubset) -> Result<LogBits> {
    if !is_informative(x, target)? {
        return Ok(0.0);
    }
    let members = x
        .members()
        .expect("is_informative already required explicit");
    let ly = (target.size() as f64).log2();
    let sum: f64 = members
        .iter()
        .map(|z| 2.0 * (z.union_size(target) as f64).log2() - ly - (z.size() as f64).log2())
        .sum();
    Ok(sum / members.len() as f64)
}

/// Description complexity of the property inside the ambient universe of
/// all `2^|Y| − 1` nonempty collections: `ℓ(x) = |Y| − log2 |Z_x|` bits.
pub fn description_complexity(x: &PropertyCollection) -> LogBits {
    x.space().size() as f64 - log2_bigcount(&x.member_count())
}

/// Description complexity against an arbitrary finite universe of
/// candidate descriptions: `log2(universe) − log2(members)`.
///
/// Generalizes [`description_complexity`] to scenarios whose natural
/// description universe is not the full power-set lattice (e.g. the
/// cells of a fixed partition).
pub fn description_complexity_in_universe(
    universe: &BigCount,
    members: &BigCount,
) -> Result<LogBits> {
    if members.is_zero() || members > universe {
        return Err(Error::TotalCountOutOfRange);
    }
    Ok(log2_bigcount(universe) - log2_bigcount(members))
}

/// The complexity `ℓ(x^c)` of the complementary collection, from `ℓ(x)`
/// alone: the unique solution of `2^{−ℓ(x)} + 2^{−ℓ(x^c)} = 1`.
///
/// Split into two branches so both tiny and huge inputs stay at machine
/// accuracy: for `l ≤ 1` the result comes from `expm1(−l·ln 2)`; for
/// `l > 1` from `log1p(−2^{−l})`. A naive `−log2(1 − 2^{−l})` would
/// round to zero once `l ≳ 53`, where the true value is `≈ 2^{−l}/ln 2`.
pub fn complement_complexity(l: LogBits) -> Result<LogBits> {
    if l.is_nan() || l <= 0.0 {
        return Err(Error::NonPositiveComplexity { l });
    }
    let ln2 = std::f64::consts::LN_2;
    if l <= 1.0 {
        // 1 − 2^{−l} = −expm1(−l·ln2), accurate for small l.
        let q = -(-l * ln2).exp_m1();
        Ok(-q.ln() / ln2)
    } else {
        // −log2(1 − t) with t = 2^{−l} via log1p, accurate for tiny t.
        let t = (-l).exp2();
        Ok(-(-t).ln_1p() / ln2)
    }
}

/// Cost of the property: `κ = ℓ(x) / I`, with `I = I(x:Y)` by default or
/// `I = I(x:target)` when a target set is supplied.
///
/// Errors when the information is zero (the ratio is undefined).
pub fn cost(x: &PropertyCollection, target: Option<&TargetSubset>) -> Result<f64> {
    let info = match target {
        None => information(x),
        Some(t) => information_about(x, t)?,
    };
    if info <= 0.0 {
        return Err(Error::ZeroInformation);
    }
    Ok(description_complexity(x) / info)
}
