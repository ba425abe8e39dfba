//! Closed-form large-`n` evaluators for the information and description
//! complexity of function-class properties.
//!
//! Each evaluator mirrors the corresponding exhaustive computation from
//! [`crate::classes`] in the regime where enumeration is hopeless
//! (`2^(2^n)` classes). Arguments are real-valued: `n`, `d`, `m` need not
//! be integers, which the parameter-sweep figures rely on.
//!
//! The guiding approximation replaces binomial tails by normal ones, so
//! everything funnels through [`std_normal_cdf`] and friends; deep tails
//! use a continued-fraction Mills ratio in the `log2` domain
//! ([`log2_normal_cdf`]) to stay finite far past `f64` underflow.
//!
//! Validity premises (e.g. `n < d·2^d` for the VC-bound family) are
//! *advisory*: [`vc_below_premise_holds`] and [`vc_atleast_premise_holds`]
//! let callers warn, but evaluation proceeds — outside the premises the
//! formulas simply lose their accuracy guarantees.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use crate::measures::{complement_complexity, InfoReport};
use crate::numeric::log2_sum;
use crate::{Error, Result};

/// `1/√(2π)`.
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
/// `ln √(2π)`.
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// Standard normal density `φ(x)`.
pub fn std_normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal distribution `Φ(x)`, via the complementary error
/// function (relative error below `1e-13` across the range).
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// `log2 φ(x)`, exact to rounding for any finite `x`.
pub fn log2_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x - LN_SQRT_2PI) / LN_2
}

/// `log2 Φ(x)`, finite arbitrarily deep into the lower tail.
///
/// For `x ≥ −8` the direct distribution value is still comfortably
/// normal-range and its `log2` is taken straight. Below, `Φ(x)` itself
/// underflows long before the evaluators stop needing it, so the Mills
/// ratio continued fraction
/// `Φ(−t) = φ(t) / (t + 1/(t + 2/(t + 3/(…))))`
/// is evaluated by backward recurrence (depth 60 keeps the truncation
/// error below `1e-26` already at `t = 8`).
pub fn log2_normal_cdf(x: f64) -> f64 {
    if x >= -8.0 {
        std_normal_cdf(x).log2()
    } else {
        let t = -x;
        let mut denom = t;
        for k in (1..=60u32).rev() {
            denom = t + f64::from(k) / denom;
        }
        (-0.5 * t * t - LN_SQRT_2PI - denom.ln()) / LN_2
    }
}

/// A description complexity known only up to an interval, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalBits {
    /// Lower endpoint.
    pub low: f64,
    /// Upper endpoint.
    pub high: f64,
}

impl IntervalBits {
    /// The midpoint, used wherever a single representative is needed.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.low + self.high)
    }
}

fn check_n(n: f64) -> Result<()> {
    if !n.is_finite() || n < 1.0 {
        return Err(Error::BadParameter {
            name: "n",
            why: format!("domain exponent must be finite and >= 1, got {n}"),
        });
    }
    Ok(())
}

fn check_d(n: f64, d: f64) -> Result<()> {
    if !d.is_finite() || d < 1.0 || d >= n {
        return Err(Error::BadParameter {
            name: "d",
            why: format!("dimension bound must lie in [1, n), got {d} at n = {n}"),
        });
    }
    Ok(())
}

fn check_m(n: f64, m: f64) -> Result<()> {
    if !m.is_finite() || m < 0.0 || m >= n {
        return Err(Error::BadParameter {
            name: "m",
            why: format!("sample size must lie in [0, n), got {m} at n = {n}"),
        });
    }
    Ok(())
}

/// Premise of the VC-bound family (`VcBelow`, `VcBelowConsistent`):
/// `n < d·2^d`. Advisory — see the module docs.
pub fn vc_below_premise_holds(n: f64, d: f64) -> bool {
    n < d * d.exp2()
}

/// Premise of the `VcAtLeast` evaluators: `d > log2 n`. Advisory.
pub fn vc_atleast_premise_holds(n: f64, d: f64) -> bool {
    d > n.log2()
}

/// Information of the agreement property (all members agree on at least
/// `d` points), in bits.
pub fn agreement_info(n: f64, d: f64) -> Result<f64> {
    check_n(n)?;
    check_d(n, d)?;
    let a = 2.0 * (1.0 + d.exp2()) * (-(n + d) / 2.0).exp2() - ((n - d) / 2.0).exp2();
    let mean_log2 = n - d - (-d).exp2().ln_1p() / LN_2;
    let num = std_normal_cdf(-a) * mean_log2 + ((d - n) / 2.0).exp2() * std_normal_pdf(a) / LN_2;
    let den = -(-(n.exp2()) * (-d).exp2().ln_1p()).exp_m1();
    Ok(n - num / den)
}

/// Description complexity interval of the agreement property, in bits:
/// `2^n·2^d/(1+2^d) − d − [log2 n, d·log2 n]`.
pub fn agreement_complexity(n: f64, d: f64) -> Result<IntervalBits> {
    check_n(n)?;
    check_d(n, d)?;
    if n > 1000.0 {
        return Err(Error::BadParameter {
            name: "n",
            why: format!("complexity 2^n·(…) exceeds f64 range beyond n = 1000, got {n}"),
        });
    }
    let base = n.exp2() / (1.0 + (-d).exp2()) - d;
    Ok(IntervalBits {
        low: base - d * n.log2(),
        high: base - n.log2(),
    })
}

/// Information of the `VcAtLeast` property, in bits.
///
/// Evaluated in the algebraically equivalent form `1 − w·a²/2^n` with
/// `w` the density share of the boundary term, which stays finite where
/// the textbook numerator/denominator pair would reach `0/0`.
pub fn vc_atleast_info(n: f64, d: f64) -> Result<f64> {
    check_n(n)?;
    check_d(n, d)?;
    let a = (n / 2.0).exp2() - (d + 1.0 - n / 2.0).exp2();
    let w = 1.0 / (1.0 + (n / 2.0 + log2_normal_cdf(a) - log2_normal_pdf(a)).exp2());
    let quad = if a == 0.0 {
        0.0
    } else {
        (2.0 * a.abs().log2() - n).exp2()
    };
    Ok(1.0 - w * quad)
}

/// Description complexity of the `VcAtLeast` property, in bits.
pub fn vc_atleast_complexity(n: f64, d: f64) -> Result<f64> {
    check_n(n)?;
    check_d(n, d)?;
    let a = (n / 2.0).exp2() - (d + 1.0 - n / 2.0).exp2();
    let inner = log2_sum(n + log2_normal_cdf(a), n / 2.0 + log2_normal_pdf(a));
    Ok(d * (d.exp2() + 1.0) + d.log2() - inner - n.log2() + 1.0)
}

/// Information of the `VcBelow` property: the `m = 0` case of
/// [`vc_below_consistent_info`], shared verbatim so the reduction is exact.
pub fn vc_below_info(n: f64, d: f64) -> Result<f64> {
    vc_below_consistent_info(n, d, 0.0)
}

/// Description complexity of the `VcBelow` property: the complement of
/// [`vc_atleast_complexity`] under `2^{−l} + 2^{−l^c} = 1`, kept accurate
/// down to its true `~2^{−l^c}/ln 2` scale by the two-branch complement.
pub fn vc_below_complexity(n: f64, d: f64) -> Result<f64> {
    complement_complexity(vc_atleast_complexity(n, d)?)
}

/// Information of the `VcBelowConsistent` property (VC below `d` and
/// consistency with an `m`-point sample), in bits.
pub fn vc_below_consistent_info(n: f64, d: f64, m: f64) -> Result<f64> {
    check_n(n)?;
    check_d(n, d)?;
    check_m(n, m)?;
    let gamma = (-m).exp2();
    let p = gamma / (1.0 + gamma);
    let q1 = 1.0 / (1.0 + gamma); // 1 − p
    let mu_log2 = n - m - gamma.ln_1p() / LN_2;
    let mu = mu_log2.exp2();
    let sigma = (mu * q1).sqrt();
    let a = (mu - d.exp2()) / sigma;
    let b = (mu - 2.0) / sigma;
    let d2d = d * d.exp2();
    let rate = (n - m) / d2d;
    let beta = (-d2d).exp2();
    let s = std_normal_cdf(a) * mu + std_normal_pdf(a) * sigma;
    let o1 = (-(n.exp2()) * gamma.ln_1p() / LN_2).exp2();
    let den = 1.0 - o1 - rate * s * beta;
    let corr = std_normal_pdf(b) * (q1 / p).sqrt() / ((n / 2.0).exp2() * den * LN_2);
    Ok(n - mu_log2 - corr)
}

/// Description complexity of the `VcBelowConsistent` property, in bits.
pub fn vc_below_consistent_complexity(n: f64, d: f64, m: f64) -> Result<f64> {
    check_n(n)?;
    check_d(n, d)?;
    check_m(n, m)?;
    if n > 1000.0 {
        return Err(Error::BadParameter {
            name: "n",
            why: format!("complexity 2^n·(…) exceeds f64 range beyond n = 1000, got {n}"),
        });
    }
    let gamma = (-m).exp2();
    let q1 = 1.0 / (1.0 + gamma);
    let log2_1p_gamma = gamma.ln_1p() / LN_2;
    let lead = n.exp2() * (1.0 - log2_1p_gamma);
    let mu = (n - m - log2_1p_gamma).exp2();
    let sigma = (mu * q1).sqrt();
    let a = (mu - d.exp2()) / sigma;
    let rb_log2 = (n - m).log2() - d.log2() - d * (1.0 + d.exp2());
    let inner = log2_sum(
        log2_normal_cdf(a) + (n - m),
        log2_normal_pdf(a) + (n - m) / 2.0,
    );
    let tail = (-(n.exp2()) * log2_1p_gamma).exp2();
    Ok(lead + (rb_log2 + inner).exp2() + tail)
}

/// Information of the geometric-decay weighting with base `α`, at finite `n`.
pub fn expdecay_info_finite(n: f64, alpha: f64) -> Result<f64> {
    check_n(n)?;
    check_alpha(alpha)?;
    let p = alpha / (1.0 + alpha);
    let big_n = n.exp2();
    let a = (2.0 - big_n * p) / (big_n * p * (1.0 - p)).sqrt();
    let mean_log2 = n + alpha.log2() - alpha.ln_1p() / LN_2;
    let num = std_normal_cdf(-a) * mean_log2 + std_normal_pdf(a) / ((alpha * big_n).sqrt() * LN_2);
    let den = -(-big_n * alpha.ln_1p()).exp_m1();
    Ok(n - num / den)
}

/// The `n → ∞` limit of [`expdecay_info_finite`]: `log2(1 + 1/α)`.
pub fn expdecay_info_limit(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok((1.0 + 1.0 / alpha).log2())
}

/// Information of the *complement* of the geometric-decay weighting:
/// exactly one bit, independent of `α` and `n`.
pub fn expdecay_complement_info() -> f64 {
    1.0
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::BadParameter {
            name: "alpha",
            why: format!("decay base must lie in (0, 1), got {alpha}"),
        });
    }
    Ok(())
}

/// Report for the identity property (`G = G₀` for a fixed class of
/// `g_size` functions): `I = n − log2 g`, `H = log2 g`, `ℓ = 2^n`,
/// `κ = 2^n/I`, and `η = I/n` since `I*(2^n) = n` exactly.
///
/// Real-valued `n` and `g_size` are accepted; `n ≤ 1000` keeps `ℓ`
/// inside `f64`.
pub fn identity_report(n: f64, g_size: f64) -> Result<InfoReport> {
    check_n(n)?;
    if n > 1000.0 {
        return Err(Error::BadParameter {
            name: "n",
            why: format!("complexity 2^n exceeds f64 range beyond n = 1000, got {n}"),
        });
    }
    if g_size.is_nan() || g_size < 1.0 || g_size.log2() > n + 1e-9 {
        return Err(Error::BadParameter {
            name: "g_size",
            why: format!("class size must lie in [1, 2^n], got {g_size} at n = {n}"),
        });
    }
    let h = g_size.log2();
    let info = n - h;
    let l = n.exp2();
    Ok(InfoReport {
        information: info,
        conditional_entropy: h,
        description: Some(l),
        cost: (info > 0.0).then_some(l / info),
        efficiency: (info > 0.0).then_some(info / n),
    })
}
