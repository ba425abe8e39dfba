//! Numeric kernels: exact big-integer counts, high-accuracy `log2`
//! conversions, and log-domain accumulation helpers.
//!
//! Counts in this crate can reach `2^(2^n)`, far beyond `f64`. They are
//! kept exact as [`BigUint`] and only converted to bits at the boundary
//! through [`log2_bigcount`], whose error is bounded by `2^-63 / ln 2`
//! bits. All other helpers here operate directly in the log2 domain.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// `log2` of an exact nonnegative integer count.
///
/// * counts below `2^53` convert to `f64` exactly and use the platform
///   `log2` (correctly rounded on all mainstream libm implementations);
/// * larger counts use the top 64 bits as a mantissa window:
///   `log2(x) = (bits − 64) + log2(window)`, where
///   `window = x >> (bits − 64)` keeps the leading 64 bits. The discarded
///   tail perturbs `log2` by at most `2^-63 / ln 2 ≈ 1.6e-19` bits.
///
/// Returns `f64::NEG_INFINITY` for a zero count.
pub fn log2_bigcount(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        // Exact in f64.
        (x.to_u64().expect("fits in 53 bits") as f64).log2()
    } else {
        // For 54..=63 bits the whole value is its own window (shift 0).
        let shift = bits.saturating_sub(64);
        let window = (x >> shift).to_u64().expect("64-bit window");
        shift as f64 + (window as f64).log2()
    }
}

/// Converts a count to `f64` only when the conversion is exact.
///
/// Returns `None` for counts of more than 53 significant bits, whose
/// `f64` image would round.
pub fn bigcount_to_f64_exact(x: &BigUint) -> Option<f64> {
    if x.bits() <= 53 {
        Some(x.to_u64().expect("fits in 53 bits") as f64)
    } else {
        None
    }
}

/// Exact binomial coefficient `C(n, k)`.
///
/// Iterative product with exact division at every step, so intermediate
/// values never exceed the final result times `n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `log2 C(n, k)` through the log-gamma function.
///
/// Accurate to ~`1e-14` relative; used to anchor incremental binomial
/// recurrences in the log-domain width backend where exact big-integer
/// binomials would be too large to materialize.
pub fn log2_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    let ln = libm::lgamma((n + 1) as f64)
        - libm::lgamma((k + 1) as f64)
        - libm::lgamma((n - k + 1) as f64);
    ln / std::f64::consts::LN_2
}

/// `log2(2^a + 2^b)` without overflow, tolerating `-inf` inputs.
pub fn log2_sum(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    // log2(2^hi (1 + 2^(lo-hi))) = hi + log1p(2^(lo-hi)) / ln 2.
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

/// `log2(2^a − 2^b)` for `a ≥ b`, tolerating `b = -inf`.
///
/// Uses `ln(1 − 2^(b−a))` through `ln_1p` so that nearly-equal inputs
/// lose no more precision than the subtraction itself forces.
pub fn log2_diff(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    debug_assert!(a >= b, "log2_diff needs a >= b");
    let d = b - a; // <= 0
    if d == 0.0 {
        return f64::NEG_INFINITY;
    }
    a + (-d.exp2()).ln_1p() / std::f64::consts::LN_2
}

/// Running log-domain sum: `total = log2(Σ 2^{term_i})`.
///
/// Accumulation order matters at the `1e-16` level; callers that need
/// reproducibility must feed terms in a deterministic order.
#[derive(Debug, Clone, Copy)]
pub struct Log2Accumulator {
    total: f64,
}

impl Log2Accumulator {
    /// Empty sum (`log2 0 = -inf`).
    pub fn new() -> Self {
        Self {
            total: f64::NEG_INFINITY,
        }
    }

    /// Adds a term given as its `log2`.
    pub fn add(&mut self, log2_term: f64) {
        self.total = log2_sum(self.total, log2_term);
    }

    /// `log2` of the accumulated sum.
    pub fn total(&self) -> f64 {
        self.total
    }
}

impl Default for Log2Accumulator {
    fn default() -> Self {
        Self::new()
    }
}

/// Validates that an `f64` is (close to) a nonnegative integer and returns it.
///
/// Accepts a relative slack of `1e-9` to absorb formatting round-trips
/// (e.g. a complexity printed with nine decimals).
pub fn as_integer(value: f64, name: &'static str) -> Result<u64> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::BadParameter {
            name,
            why: format!("expected a nonnegative integer, got {value}"),
        });
    }
    let rounded = value.round();
    if (value - rounded).abs() > 1e-9 * rounded.max(1.0) || rounded > u64::MAX as f64 {
        return Err(Error::BadParameter {
            name,
            why: format!("expected an integer, got {value}"),
        });
    }
    Ok(rounded as u64)
}
