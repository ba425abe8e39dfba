//! Seeded statistical self-checks of the Monte-Carlo samplers.
//!
//! Each check prints one line (`ok` or `FAIL`) with the measured
//! quantity; the suite fails — exit code 1 — when any check fails.
//! Everything is deterministic in `(seed, trials)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use infowidth::classes::{FuncDomain, PropertySpec};
use infowidth::mc::{
    chi_square_critical_p99, chi_square_stat, chi_square_two_sample, mc_property_prob,
    sample_class_uniform_k, sample_simple_matrix, RngHandle, DEFAULT_RETRY_CAP,
};

use crate::{CliError, CliResult};

/// Outcome of one named check.
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

/// Runs the suite; returns the printable report and the number of failed
/// checks (the caller maps a nonzero count to exit code 1).
pub fn run_suite(trials: u64, seed: u64, threads: usize) -> CliResult<(String, usize)> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let handle = RngHandle::new(seed);
    let mut checks = vec![
        // Distinct-columns acceptance rates: drawing k uniform functions
        // on n = 2 accepts with probability prod_{i<k}(1 - i/4): 0.75 at
        // k = 2, 0.09375 at k = 4.
        acceptance_rate(2, 2, 0.75, trials, &handle.substream(1))?,
        acceptance_rate(2, 4, 0.09375, trials, &handle.substream(2))?,
        // Uniformity over the C(4,2) = 6 two-function classes, for both
        // the direct k-subset sampler and the rejection sampler.
        uniformity(2, 2, SamplerKind::UniformK, trials, &handle.substream(3))?,
        uniformity(2, 2, SamplerKind::Matrix, trials, &handle.substream(4))?,
        // The two samplers draw from the same distribution.
        two_sample(2, 2, trials, &handle.substream(5))?,
        two_sample(2, 3, trials, &handle.substream(6))?,
        two_sample(3, 2, trials, &handle.substream(7))?,
    ];

    // Zero-one behavior of the conditional property probabilities at
    // n = 10, d = 2.
    checks.extend(zero_one_thresholds(trials, &handle, threads)?);

    let mut out = String::new();
    let mut failed = 0usize;
    for check in &checks {
        let status = if check.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} {name}: {detail}",
            name = check.name,
            detail = check.detail
        );
        failed += usize::from(!check.passed);
    }
    let _ = writeln!(
        out,
        "{passed}/{total} checks passed (trials = {trials}, seed = {seed})",
        passed = checks.len() - failed,
        total = checks.len(),
    );
    Ok((out, failed))
}

/// Measures the per-draw acceptance rate of the distinct-columns sampler
/// against the closed form, at three standard errors.
fn acceptance_rate(
    n: u32,
    k: u64,
    expected: f64,
    trials: u64,
    handle: &RngHandle,
) -> CliResult<Check> {
    let domain = FuncDomain::new(n)?;
    let mut rng = handle.rng();
    let mut draws = 0u64;
    for _ in 0..trials {
        let (_, attempts) = sample_simple_matrix(domain, k, &mut rng, DEFAULT_RETRY_CAP)?;
        draws += attempts;
    }
    // Each accepted sample ends a run of rejected draws: `trials`
    // successes in `draws` Bernoulli(p) trials.
    let observed = trials as f64 / draws as f64;
    let sigma = (expected * (1.0 - expected) / draws as f64).sqrt();
    let delta = (observed - expected).abs();
    Ok(Check {
        name: "acceptance-rate",
        passed: delta <= 3.0 * sigma,
        detail: format!(
            "n={n} k={k}: accepted {observed:.5} vs expected {expected:.5} (|delta| = {delta:.2e}, 3 sigma = {:.2e})",
            3.0 * sigma
        ),
    })
}

enum SamplerKind {
    UniformK,
    Matrix,
}

/// Indexes every k-subset of the `2^n` functions, in lexicographic order.
fn class_index(n: u32, k: u64) -> BTreeMap<Vec<u32>, usize> {
    let total = 1u64 << n;
    let mut map = BTreeMap::new();
    let mut combo: Vec<u32> = (0..k as u32).collect();
    loop {
        map.insert(combo.clone(), map.len());
        // Next combination in lexicographic order.
        let mut i = k as usize;
        loop {
            if i == 0 {
                return map;
            }
            i -= 1;
            if combo[i] < (total as u32 - (k as u32 - i as u32)) {
                combo[i] += 1;
                for j in i + 1..k as usize {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// χ² goodness of fit of a sampler against the uniform distribution over
/// all k-function classes, at the 0.01 level.
fn uniformity(
    n: u32,
    k: u64,
    kind: SamplerKind,
    trials: u64,
    handle: &RngHandle,
) -> CliResult<Check> {
    let domain = FuncDomain::new(n)?;
    let index = class_index(n, k);
    let cells = index.len();
    let mut observed = vec![0u64; cells];
    let mut rng = handle.rng();
    for _ in 0..trials {
        let class = match kind {
            SamplerKind::UniformK => sample_class_uniform_k(domain, k, &mut rng)?,
            SamplerKind::Matrix => sample_simple_matrix(domain, k, &mut rng, DEFAULT_RETRY_CAP)?.0,
        };
        observed[index[class.members()]] += 1;
    }
    let expected = vec![trials as f64 / cells as f64; cells];
    let stat = chi_square_stat(&observed, &expected);
    let dof = (cells - 1) as u32;
    let critical = chi_square_critical_p99(dof).ok_or_else(|| {
        CliError::Usage(format!(
            "no tabulated χ² critical value for {dof} degrees of freedom"
        ))
    })?;
    let name = match kind {
        SamplerKind::UniformK => "uniformity-direct",
        SamplerKind::Matrix => "uniformity-matrix",
    };
    Ok(Check {
        name,
        passed: stat <= critical,
        detail: format!(
            "n={n} k={k}: chi2 = {stat:.3} vs critical(0.01, dof={dof}) = {critical:.3}"
        ),
    })
}

/// Two-sample χ²: the direct sampler and the rejection sampler agree.
fn two_sample(n: u32, k: u64, trials: u64, handle: &RngHandle) -> CliResult<Check> {
    let domain = FuncDomain::new(n)?;
    let index = class_index(n, k);
    let cells = index.len();
    let mut direct = vec![0u64; cells];
    let mut matrix = vec![0u64; cells];
    let mut rng_a = handle.substream(0).rng();
    let mut rng_b = handle.substream(1).rng();
    for _ in 0..trials {
        let a = sample_class_uniform_k(domain, k, &mut rng_a)?;
        direct[index[a.members()]] += 1;
        let b = sample_simple_matrix(domain, k, &mut rng_b, DEFAULT_RETRY_CAP)?.0;
        matrix[index[b.members()]] += 1;
    }
    let stat = chi_square_two_sample(&direct, &matrix);
    let dof = (cells - 1) as u32;
    let critical = chi_square_critical_p99(dof).ok_or_else(|| {
        CliError::Usage(format!(
            "no tabulated χ² critical value for {dof} degrees of freedom"
        ))
    })?;
    Ok(Check {
        name: "two-sample",
        passed: stat <= critical,
        detail: format!(
            "n={n} k={k}: chi2 = {stat:.3} vs critical(0.01, dof={dof}) = {critical:.3}"
        ),
    })
}

/// Conditional property probabilities at n = 10, d = 2 jump between 0
/// and 1 across their cardinality thresholds:
///
/// * agreement ≥ 2 is certain for a singleton and vanishingly rare for
///   10 random functions;
/// * VC ≥ 2 is structurally impossible below 4 = 2^2 functions and near
///   certain for 64.
fn zero_one_thresholds(trials: u64, handle: &RngHandle, threads: usize) -> CliResult<Vec<Check>> {
    let domain = FuncDomain::new(10)?;
    let agreement = PropertySpec::AgreementAtLeast(2);
    let vc_atleast = PropertySpec::VcAtLeast(2);

    let p_l2_k1 = mc_property_prob(domain, 1, &agreement, trials, &handle.substream(8), threads)?;
    let p_l2_k10 = mc_property_prob(
        domain,
        10,
        &agreement,
        trials,
        &handle.substream(9),
        threads,
    )?;
    let p_v2c_k3 = mc_property_prob(
        domain,
        3,
        &vc_atleast,
        trials,
        &handle.substream(10),
        threads,
    )?;
    let p_v2c_k64 = mc_property_prob(
        domain,
        64,
        &vc_atleast,
        trials,
        &handle.substream(11),
        threads,
    )?;

    Ok(vec![
        Check {
            name: "zero-one",
            passed: p_l2_k1.estimate == 1.0,
            detail: format!("P(agreement>=2 | k=1) = {} (expected exactly 1)", p_l2_k1.estimate),
        },
        Check {
            name: "zero-one",
            passed: p_l2_k10.estimate < 0.01,
            detail: format!("P(agreement>=2 | k=10) = {} (expected < 0.01)", p_l2_k10.estimate),
        },
        Check {
            name: "zero-one",
            passed: p_v2c_k3.estimate == 0.0,
            detail: format!(
                "P(vc>=2 | k=3) = {} (expected exactly 0: 3 < 2^2 functions cannot shatter 2 points)",
                p_v2c_k3.estimate
            ),
        },
        Check {
            name: "zero-one",
            passed: p_v2c_k64.estimate >= 0.9,
            detail: format!("P(vc>=2 | k=64) = {} (expected >= 0.9)", p_v2c_k64.estimate),
        },
    ])
}
