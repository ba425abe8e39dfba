//! Information width: the largest information any property of a given
//! description complexity can convey about a target space.
//!
//! For a space of `S` elements, a property of description complexity `l`
//! has `T = 2^{S−l}` member subsets. Information is maximized by packing
//! the members into the smallest subsets available: all `C(S,1)`
//! singletons, then all pairs, and so on, stopping at a *threshold
//! cardinality* `r` — the smallest `a` with `Σ_{i=1..a} C(S,i) ≥ T`.
//! The width is then
//!
//! ```text
//! I*(l) = log2 S − (1/T)·[ Σ_{k=2}^{r−1} C(S,k)·log2 k  +  (T − Σ_{k=1}^{r−1} C(S,k))·log2 r ]
//! ```
//!
//! Two backends compute this:
//!
//! * [`WidthBackend::Exact`] — exact big-integer binomials and the same
//!   entropy kernel used for property measures, for spaces up to 1000
//!   elements; it can also materialize the optimizing property itself
//!   ([`optimal_property`]).
//! * [`WidthBackend::LogDomain`] — all sums carried as `log2` values with
//!   windowed accumulation around the binomial peak, usable up to
//!   astronomically large spaces (`S = 2^30` and beyond).
//!
//! For very small spaces, [`brute_force_width`] checks the closed form
//! against an exhaustive scan of every property, and
//! [`provider_width_bruteforce`] does the same for the adversarial
//! (min over target sets) variant.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::measures::{entropy_of_counts, PropertyCollection, TargetSpace};
use crate::numeric::{log2_bigcount, log2_binomial, log2_diff, Log2Accumulator};
use crate::{BigCount, Error, LogBits, Result};

/// Which evaluation strategy a [`WidthQuery`] should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthBackend {
    /// Exact big-integer binomial sums; spaces up to 1000 elements and
    /// integral member counts only.
    Exact,
    /// Windowed `log2`-domain sums; any space size that fits in `u64`,
    /// fractional complexities welcome.
    LogDomain,
}

/// A width question: "how much information can `l` bits of description buy
/// in this space?"
#[derive(Debug, Clone)]
pub struct WidthQuery {
    space: TargetSpace,
    complexity: f64,
    members: Option<BigCount>,
    backend: WidthBackend,
}

impl WidthQuery {
    /// Builds a query from a description complexity `l ∈ (0, S]`.
    ///
    /// The member count `T = 2^{S−l}` is recovered when it is
    /// unambiguous — integral `l`, or `T ≤ 2^52` within `1e-6` of an
    /// integer — which makes the exact backend available. With
    /// `backend = None` the exact backend is picked whenever it applies
    /// (space ≤ 1000 and `T` recovered), the log-domain backend otherwise.
    pub fn from_complexity(
        space: TargetSpace,
        l: f64,
        backend: Option<WidthBackend>,
    ) -> Result<Self> {
        let sf = space.size() as f64;
        if !l.is_finite() || l <= 0.0 || l > sf {
            return Err(Error::ComplexityOutOfRange { l, max: sf });
        }
        // Member recovery only serves the exact backend, so skip the
        // (potentially enormous) materialization beyond its space cap.
        let members = if space.size() > EXACT_MAX_SPACE {
            None
        } else if l.fract() == 0.0 {
            Some(BigUint::one() << (space.size() - l as u64))
        } else {
            let exp = sf - l;
            if exp <= 52.0 {
                let t = exp.exp2();
                let rounded = t.round();
                if rounded >= 1.0 && (t - rounded).abs() <= 1e-6 * rounded {
                    Some(BigUint::from(rounded as u64))
                } else {
                    None
                }
            } else {
                None
            }
        };
        let backend = Self::resolve_backend(space, l, &members, backend)?;
        Ok(Self {
            space,
            complexity: l,
            members,
            backend,
        })
    }

    /// Builds a query from an exact member count `T ∈ [1, 2^S − 1]`.
    pub fn from_members(
        space: TargetSpace,
        members: BigCount,
        backend: Option<WidthBackend>,
    ) -> Result<Self> {
        if members.bits() == 0 || members.bits() > space.size() {
            return Err(Error::TotalCountOutOfRange);
        }
        let l = space.size() as f64 - log2_bigcount(&members);
        let members = Some(members);
        let backend = Self::resolve_backend(space, l, &members, backend)?;
        Ok(Self {
            space,
            complexity: l,
            members,
            backend,
        })
    }

    fn resolve_backend(
        space: TargetSpace,
        l: f64,
        members: &Option<BigCount>,
        requested: Option<WidthBackend>,
    ) -> Result<WidthBackend> {
        let exact_ok = space.size() <= EXACT_MAX_SPACE && members.is_some();
        match requested {
            None => Ok(if exact_ok {
                WidthBackend::Exact
            } else {
                WidthBackend::LogDomain
            }),
            Some(WidthBackend::LogDomain) => Ok(WidthBackend::LogDomain),
            Some(WidthBackend::Exact) => {
                if space.size() > EXACT_MAX_SPACE {
                    return Err(Error::TooLarge {
                        what: "the exact width backend",
                        value: space.size(),
                        max: EXACT_MAX_SPACE,
                    });
                }
                if members.is_none() {
                    return Err(Error::NonIntegralMembers { l });
                }
                Ok(WidthBackend::Exact)
            }
        }
    }

    /// The target space queried.
    pub fn space(&self) -> TargetSpace {
        self.space
    }

    /// The description complexity in bits.
    pub fn complexity(&self) -> f64 {
        self.complexity
    }

    /// The exact member count, when recovered or given.
    pub fn members(&self) -> Option<&BigCount> {
        self.members.as_ref()
    }

    /// The backend that will evaluate this query.
    pub fn backend(&self) -> WidthBackend {
        self.backend
    }
}

/// Largest space the exact backend accepts (`Σ C·log2 k` stays finite in
/// `f64` well past this, but binomial materialization cost grows fast).
pub const EXACT_MAX_SPACE: u64 = 1000;

/// Result of a width evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthResult {
    /// Threshold cardinality `r`: the optimizing property uses all
    /// subsets of size `< r` and fills the remainder at size `r`.
    pub r: u64,
    /// The information width `I*(l)` in bits.
    pub width: LogBits,
    /// The queried description complexity `l` in bits.
    pub complexity: f64,
    /// Which backend produced the value.
    pub backend: WidthBackend,
    /// Conservative absolute error bound on `width`, in bits.
    pub accuracy: f64,
}

/// The threshold cardinality `r` for a query.
pub fn threshold_r(query: &WidthQuery) -> Result<u64> {
    match query.backend {
        WidthBackend::Exact => Ok(exact_witness(query)?.0),
        WidthBackend::LogDomain => threshold_log(query.space.size(), query.complexity),
    }
}

/// Evaluates the information width `I*(l)`.
pub fn info_width(query: &WidthQuery) -> Result<WidthResult> {
    let s = query.space.size();
    match query.backend {
        WidthBackend::Exact => {
            let (r, counts) = exact_witness(query)?;
            let members = query.members.clone().expect("exact backend has members");
            let h = entropy_of_counts(&counts, &members);
            Ok(WidthResult {
                r,
                width: query.space.entropy() - h,
                complexity: query.complexity,
                backend: WidthBackend::Exact,
                accuracy: 1e-12,
            })
        }
        WidthBackend::LogDomain => {
            let (r, h) = log_eval(s, query.complexity)?;
            Ok(WidthResult {
                r,
                width: query.space.entropy() - h,
                complexity: query.complexity,
                backend: WidthBackend::LogDomain,
                accuracy: log_accuracy(s),
            })
        }
    }
}

/// Optimal cost at complexity `l`: `κ*(l) = l / I*(l)`.
///
/// Increasing in `l` at plotting scale, but *not* strictly monotone:
/// it dips by parts in a thousand at the complexities where the
/// threshold cardinality `r` drops (see the regression tests pinning
/// those dip locations). Errors on a single-element space where the
/// width is identically zero.
pub fn kappa_star(query: &WidthQuery) -> Result<f64> {
    let result = info_width(query)?;
    if result.width <= 0.0 {
        return Err(Error::ZeroInformation);
    }
    Ok(query.complexity / result.width)
}

/// Materializes a property achieving the width: all subsets of size
/// `< r` plus the remaining members at size `r`, as a cardinality
/// profile. Exact backend only (space ≤ 1000).
///
/// Feeding the result back through [`crate::measures::information`]
/// reproduces the width through the *same* entropy kernel, so the two
/// agree exactly.
pub fn optimal_property(space: TargetSpace, members: &BigCount) -> Result<PropertyCollection> {
    let query = WidthQuery::from_members(space, members.clone(), Some(WidthBackend::Exact))?;
    let (_, counts) = exact_witness(&query)?;
    PropertyCollection::from_counts(space, counts)
}

/// Efficiency of a property: `η = I(x:Y) / I*(ℓ(x)) ∈ (0, 1]`.
///
/// Picks the exact backend for spaces up to 1000 elements and the
/// log-domain backend beyond. Errors when the information is zero.
pub fn efficiency(x: &PropertyCollection) -> Result<f64> {
    let info = crate::measures::information(x);
    if info <= 0.0 {
        return Err(Error::ZeroInformation);
    }
    let space = x.space();
    let query = if space.size() <= EXACT_MAX_SPACE {
        WidthQuery::from_members(space, x.member_count(), Some(WidthBackend::Exact))?
    } else {
        WidthQuery::from_complexity(
            space,
            crate::measures::description_complexity(x),
            Some(WidthBackend::LogDomain),
        )?
    };
    Ok(info / info_width(&query)?.width)
}

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------

/// Threshold cardinality and the witness profile `{k < r: C(S,k), r: rest}`.
fn exact_witness(query: &WidthQuery) -> Result<(u64, BTreeMap<u64, BigCount>)> {
    let s = query.space.size();
    let m = query.members.as_ref().ok_or(Error::NonIntegralMembers {
        l: query.complexity,
    })?;
    let mut cum = BigUint::default();
    let mut c = BigUint::from(s); // C(s, 1)
    for a in 1..=s {
        let next = &cum + &c;
        if next >= *m {
            let boundary = m - &cum;
            let mut counts: BTreeMap<u64, BigCount> = BTreeMap::new();
            let mut ck = BigUint::from(s);
            for k in 1..a {
                counts.insert(k, ck.clone());
                ck = &ck * (s - k) / (k + 1);
            }
            counts.insert(a, boundary);
            return Ok((a, counts));
        }
        cum = next;
        if a < s {
            c = &c * (s - a) / (a + 1);
        }
    }
    // Unreachable: m ≤ 2^s − 1 = Σ_{a=1..s} C(s,a) by query validation.
    unreachable!("member count validated against the subset total")
}

// ---------------------------------------------------------------------------
// Log-domain backend
// ---------------------------------------------------------------------------

/// Terms more than this many bits below the running maximum cannot move
/// an `f64` sum; used for early exit past the binomial peak.
const NEGLIGIBLE_BITS: f64 = 120.0;

/// Window half-width: binomial terms `C(S, peak ± d)` fall below the
/// `2^-120` cutoff once `d² ≳ 42·S`; doubling that (86·S) leaves margin
/// for the slowly varying entropy weights, plus padding for tiny spaces.
fn window_radius(s: u64) -> u64 {
    (86.0 * s as f64).sqrt().ceil() as u64 + 64
}

/// `log2( Σ_{k=lo..=hi} C(s,k) · 2^{weight(k)} )`, windowed around the
/// binomial peak.
///
/// The anchor `log2 C(s, k_hi)` comes from the log-gamma function once
/// per call; the remaining binomials follow the exact downward recurrence
/// `log2 C(s,k−1) = log2 C(s,k) + log2 k − log2(s−k+1)`.
fn log2_window_sum(s: u64, lo: u64, hi: u64, weight: impl Fn(u64) -> f64) -> f64 {
    if lo > hi {
        return f64::NEG_INFINITY;
    }
    let peak = (s / 2).clamp(lo, hi);
    let rad = window_radius(s);
    let klo = lo.max(peak.saturating_sub(rad));
    let khi = hi.min(peak.saturating_add(rad));
    let mut log_c = log2_binomial(s, khi);
    let mut acc = Log2Accumulator::new();
    let mut max_term = f64::NEG_INFINITY;
    let mut k = khi;
    loop {
        let term = log_c + weight(k);
        if term > max_term {
            max_term = term;
        } else if k < peak && term < max_term - NEGLIGIBLE_BITS {
            break;
        }
        acc.add(term);
        if k == klo {
            break;
        }
        log_c += (k as f64).log2() - ((s - k + 1) as f64).log2();
        k -= 1;
    }
    acc.total()
}

/// `log2 Σ_{i=1..a} C(s,i)`.
fn log2_cumulative(s: u64, a: u64) -> f64 {
    log2_window_sum(s, 1, a, |_| 0.0)
}

/// `log2 Σ_{i=a+1..s} C(s,i)`.
fn log2_tail(s: u64, a: u64) -> f64 {
    if a >= s {
        f64::NEG_INFINITY
    } else {
        log2_window_sum(s, a + 1, s, |_| 0.0)
    }
}

/// Threshold search in the log domain.
///
/// For `l ≥ 1` it bisects on `log2 Σ_{i≤a} C(s,i) ≥ s − l`. For `l < 1`
/// the cumulative sum hugs `2^s` so closely that `s − l` is swamped by
/// rounding; the equivalent complementary condition
/// `Σ_{i>a} C(s,i) ≤ 2^s·(1 − 2^{−l}) − 1` stays well-conditioned, with
/// the right-hand side computed through `expm1`.
///
/// Ties within the comparison slack can move `r` by one, but only at
/// points where the boundary count is zero, where both choices yield the
/// same width.
fn threshold_log(s: u64, l: f64) -> Result<u64> {
    let sf = s as f64;
    let is_cond_true: Box<dyn Fn(u64) -> bool> = if l >= 1.0 {
        let target = sf - l;
        let eps = 1e-9 + target.abs() * 1e-13;
        Box::new(move |a: u64| log2_cumulative(s, a) >= target - eps)
    } else {
        if l == 0.0 {
            // Only reachable from an exact member count so close to 2^s
            // that its complexity rounds to zero (queries by complexity
            // reject l ≤ 0 upfront). All size classes are then interior
            // to within ~2^{1−s} relative mass, so the top threshold is
            // value-safe even when the true count stops one size early.
            return Ok(s);
        }
        // 1 − 2^{−l} via expm1 keeps tiny l intact.
        let q = -(-l * std::f64::consts::LN_2).exp_m1();
        let bound_main = sf + q.log2();
        if bound_main < 0.0 {
            // The member count 2^{s−l} would exceed 2^s − 1: no property
            // is that cheap to describe.
            return Err(Error::ComplexityOutOfRange { l, max: sf });
        }
        let bound = log2_diff(bound_main, 0.0);
        let eps = 1e-9 + bound.abs() * 1e-13;
        Box::new(move |a: u64| log2_tail(s, a) <= bound + eps)
    };
    let (mut lo, mut hi) = (1u64, s);
    debug_assert!(is_cond_true(s));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if is_cond_true(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Width evaluation in the log domain: returns `(r, H)` with
/// `I* = log2 s − H`.
fn log_eval(s: u64, l: f64) -> Result<(u64, f64)> {
    let r = threshold_log(s, l)?;
    if r == 1 {
        // Every member is a singleton: the target is pinned exactly.
        return Ok((1, 0.0));
    }
    let log_t = s as f64 - l;
    let log_interior = log2_window_sum(s, 2, r - 1, |k| (k as f64).log2().log2());
    let log_cum_before = log2_cumulative(s, r - 1);
    let interior = if log_interior == f64::NEG_INFINITY {
        0.0
    } else {
        (log_interior - log_t).exp2()
    };
    let covered = (log_cum_before - log_t).exp2();
    // Boundary weight (T − Σ_{k<r} C)/T; clamp against log-domain noise.
    let boundary = (1.0 - covered).max(0.0);
    Ok((r, interior + boundary * (r as f64).log2()))
}

/// Error bound for the log-domain backend: the log-gamma anchors carry
/// `~2 ulp` each and are amplified by at most `log2 s` through the
/// entropy ratios; small spaces are dominated by the `1e-12` floor.
fn log_accuracy(s: u64) -> f64 {
    let anchor = libm::lgamma((s + 1) as f64).abs() * 2.2e-16 / std::f64::consts::LN_2;
    1e-12 + 60.0 * anchor
}

// ---------------------------------------------------------------------------
// Exhaustive oracles for tiny spaces
// ---------------------------------------------------------------------------

/// Exhaustive maximum of `I(x:Y)` over *every* property with `m` member
/// subsets of a space of at most 4 elements.
pub fn brute_force_width(space: TargetSpace, m: u64) -> Result<LogBits> {
    let s = space.size();
    if s > 4 {
        return Err(Error::TooLarge {
            what: "exhaustive width search",
            value: s,
            max: 4,
        });
    }
    let pool = (1u32 << s) - 1; // nonempty subsets of the space
    if m == 0 || m > u64::from(pool) {
        return Err(Error::TotalCountOutOfRange);
    }
    let size_log2: Vec<f64> = (1..=pool)
        .map(|mask| f64::from(mask.count_ones()).log2())
        .collect();
    let mut min_h = f64::INFINITY;
    for selection in 1u32..(1 << pool) {
        if u64::from(selection.count_ones()) != m {
            continue;
        }
        let h: f64 = (0..pool)
            .filter(|bit| selection >> bit & 1 == 1)
            .map(|bit| size_log2[bit as usize])
            .sum::<f64>()
            / m as f64;
        min_h = min_h.min(h);
    }
    Ok(space.entropy() - min_h)
}

/// Exhaustive adversarial width for spaces of at most 3 elements:
/// `max over properties x` of `min over informative target sets y` of
/// `I(x:y)`, at `m` member subsets.
///
/// The guaranteed (target-independent) information a property provider
/// can promise; compare with [`brute_force_width`] which fixes the
/// benign whole-space target.
pub fn provider_width_bruteforce(space: TargetSpace, m: u64) -> Result<LogBits> {
    let s = space.size();
    if s > 3 {
        return Err(Error::TooLarge {
            what: "exhaustive adversarial width search",
            value: s,
            max: 3,
        });
    }
    let pool = (1u32 << s) - 1;
    if m == 0 || m > u64::from(pool) {
        return Err(Error::TotalCountOutOfRange);
    }
    let popf = |mask: u32| f64::from(mask.count_ones());
    let mut best = f64::NEG_INFINITY;
    for selection in 1u32..(1 << pool) {
        if u64::from(selection.count_ones()) != m {
            continue;
        }
        let members: Vec<u32> = (0..pool)
            .filter(|bit| selection >> bit & 1 == 1)
            .map(|bit| bit + 1)
            .collect();
        let mut worst = f64::INFINITY;
        for y in 1..=pool {
            if members.iter().all(|&z| z & y == 0) {
                continue; // no member meets this target: nothing promised
            }
            // Average of the raw pairwise terms over all members, the
            // non-intersecting ones included.
            let info = members
                .iter()
                .map(|&z| 2.0 * popf(z | y).log2() - popf(z).log2() - popf(y).log2())
                .sum::<f64>()
                / m as f64;
            worst = worst.min(info);
        }
        // Every member is itself a viable target set, so `worst` is finite.
        best = best.max(worst);
    }
    Ok(best)
}
