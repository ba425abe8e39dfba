//! Report assembly shared by the `property` command and the figures.
//!
//! The closed-form evaluators accept real-valued parameters (the figure
//! grids use `d = sqrt(n)` and `m = n^a`), which the library's
//! class-based structures cannot represent, so the dispatch from a
//! property family to the evaluator pair lives here.

use infowidth::asymptotics as asym;
use infowidth::width::{info_width, WidthQuery};
use infowidth::{InfoReport, TargetSpace, WidthBackend};

use crate::CliResult;

/// A property family with real-valued parameters, for the closed-form
/// evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymFamily {
    /// Agreement dimension at least `d`.
    Ld {
        /// Dimension bound.
        d: f64,
    },
    /// VC dimension below `d`.
    Vd {
        /// Dimension bound.
        d: f64,
    },
    /// VC dimension at least `d`.
    Vdc {
        /// Dimension bound.
        d: f64,
    },
    /// VC dimension below `d` and consistency with an `m`-point sample.
    Vdsm {
        /// Dimension bound.
        d: f64,
        /// Sample size.
        m: f64,
    },
    /// Exactly one fixed class of `gsize` functions.
    Identity {
        /// Class size.
        gsize: f64,
    },
    /// Geometric weighting with base `alpha`.
    ExpDecay {
        /// Decay base in (0, 1).
        alpha: f64,
    },
}

/// Efficiency `eta = I / I*(l)` over the `2^n`-element function space,
/// from the log-domain width backend (closed-form complexities are
/// fractional, so the exact backend does not apply).
///
/// `None` when the information is nonpositive or `2^n` overflows `u64`.
pub fn efficiency_at(n: u32, info: f64, l: f64) -> CliResult<Option<f64>> {
    if info <= 0.0 || n >= 64 {
        return Ok(None);
    }
    let space = TargetSpace::new(1u64 << n)?;
    let query = WidthQuery::from_complexity(space, l, Some(WidthBackend::LogDomain))?;
    let width = info_width(&query)?.width;
    Ok((width > 0.0).then(|| info / width))
}

/// Full closed-form information report for a family at domain size `n`.
///
/// Efficiency is attached for the dimension families when `n` is an
/// integer (the width is defined over a `2^n`-element space); the
/// identity family carries its own exact efficiency `I/n`, and the
/// weighted-decay family has no description complexity.
pub fn asym_report(n: f64, family: AsymFamily) -> CliResult<InfoReport> {
    let (info, l) = match family {
        AsymFamily::Ld { d } => (
            asym::agreement_info(n, d)?,
            asym::agreement_complexity(n, d)?.midpoint(),
        ),
        AsymFamily::Vd { d } => (asym::vc_below_info(n, d)?, asym::vc_below_complexity(n, d)?),
        AsymFamily::Vdc { d } => (
            asym::vc_atleast_info(n, d)?,
            asym::vc_atleast_complexity(n, d)?,
        ),
        AsymFamily::Vdsm { d, m } => (
            asym::vc_below_consistent_info(n, d, m)?,
            asym::vc_below_consistent_complexity(n, d, m)?,
        ),
        AsymFamily::Identity { gsize } => return Ok(asym::identity_report(n, gsize)?),
        AsymFamily::ExpDecay { alpha } => {
            let info = asym::expdecay_info_finite(n, alpha)?;
            return Ok(InfoReport {
                information: info,
                conditional_entropy: n - info,
                description: None,
                cost: None,
                efficiency: None,
            });
        }
    };
    let efficiency = if n.fract() == 0.0 && n <= u32::MAX as f64 {
        efficiency_at(n as u32, info, l)?
    } else {
        None
    };
    Ok(InfoReport {
        information: info,
        conditional_entropy: n - info,
        description: Some(l),
        cost: (info > 0.0).then(|| l / info),
        efficiency,
    })
}

/// Advisory notes when a closed form is evaluated outside the parameter
/// regime it was derived for. The values are still returned; callers
/// print these to stderr.
pub fn premise_notes(n: f64, family: AsymFamily) -> Vec<String> {
    let note = match family {
        AsymFamily::Vd { d } | AsymFamily::Vdsm { d, .. }
            if !asym::vc_below_premise_holds(n, d) =>
        {
            Some(format!(
                "note: the VC-below closed form assumes n < d*2^d; n = {n}, d = {d} is outside that regime"
            ))
        }
        AsymFamily::Vdc { d } if !asym::vc_atleast_premise_holds(n, d) => Some(format!(
            "note: the VC-at-least closed form assumes d > log2(n); n = {n}, d = {d} is outside that regime"
        )),
        _ => None,
    };
    note.into_iter().collect()
}
