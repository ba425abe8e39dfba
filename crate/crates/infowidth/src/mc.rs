//! Seeded Monte-Carlo estimation over random function classes.
//!
//! Three class samplers (a per-function Bernoulli model, a uniform
//! fixed-cardinality model, and a distinct-columns rejection model) feed
//! estimators for property probabilities and for full information
//! reports. Every estimator is deterministic given `(seed, parameters)`
//! and *independent of the thread count*: work is pre-split into fixed
//! shards, each on its own counter-derived RNG stream, and merged in
//! shard order.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::classes::{satisfies, FuncDomain, FunctionClass, PropertySpec};
use crate::numeric::{log2_binomial, Log2Accumulator};
use crate::parallel::parallel_map;
use crate::{Error, Result};

/// Fixed number of work shards per estimation; estimates merge in shard
/// order, so results do not depend on how shards map to threads.
pub const NUM_SHARDS: u64 = 32;

/// Default retry budget for the rejection sampler.
pub const DEFAULT_RETRY_CAP: u64 = 1_000_000;

/// Largest domain for the Bernoulli sampler (`2^n` coin flips per draw).
pub const MAX_BINOMIAL_DOMAIN: u32 = 20;

/// Largest domain for full Monte-Carlo information reports (`2^n`
/// cardinalities, each estimated separately).
pub const MAX_REPORT_DOMAIN: u32 = 16;

/// A seed plus a derived stream index: addresses one reproducible
/// ChaCha12 random stream.
///
/// Streams form a shallow tree: [`RngHandle::substream`] shifts the
/// current stream index by 17 bits and adds a child index (`< 2^17`), so
/// up to three nesting levels stay collision-free. All estimators in
/// this module consume streams at fixed tree positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngHandle {
    seed: u64,
    stream: u64,
}

impl RngHandle {
    /// The root handle for a seed (stream 0).
    pub fn new(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }

    /// The `index`-th child stream (`index < 2^17`).
    pub fn substream(&self, index: u64) -> Self {
        debug_assert!(index < 1 << 17, "substream index out of range");
        Self {
            seed: self.seed,
            stream: (self.stream << 17) | index,
        }
    }

    /// Instantiates the generator for this stream.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// The base seed.
    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// One Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    /// Point estimate.
    pub estimate: f64,
    /// Delta-method standard error.
    pub stderr: f64,
    /// Number of trials behind the estimate.
    pub trials: u64,
    /// Base seed that reproduces it.
    pub seed: u64,
}

/// Draws a class by including each of the `2^n` functions independently
/// with probability `p`; `None` when the draw comes out empty.
pub fn sample_class_binomial(
    domain: FuncDomain,
    p: f64,
    rng: &mut ChaCha12Rng,
) -> Result<Option<FunctionClass>> {
    if domain.n() > MAX_BINOMIAL_DOMAIN {
        return Err(Error::TooLarge {
            what: "the Bernoulli class sampler",
            value: domain.n() as u64,
            max: MAX_BINOMIAL_DOMAIN as u64,
        });
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::BadParameter {
            name: "p",
            why: format!("inclusion probability must lie in (0, 1), got {p}"),
        });
    }
    let codes: Vec<u32> = (0..domain.num_functions() as u32)
        .filter(|_| rng.gen_bool(p))
        .collect();
    if codes.is_empty() {
        return Ok(None);
    }
    Ok(Some(FunctionClass::new(domain, codes)?))
}

/// Draws a class uniformly among those with exactly `k` functions.
pub fn sample_class_uniform_k(
    domain: FuncDomain,
    k: u64,
    rng: &mut ChaCha12Rng,
) -> Result<FunctionClass> {
    let total = domain.num_functions();
    if k == 0 || k > total {
        return Err(Error::BadParameter {
            name: "k",
            why: format!("cardinality must lie in 1..={total}, got {k}"),
        });
    }
    let picks = index::sample(rng, total as usize, k as usize);
    let codes: Vec<u32> = picks.into_iter().map(|i| i as u32).collect();
    FunctionClass::new(domain, codes)
}

/// Draws `k` independent uniform functions (columns of a uniform `n×k`
/// binary matrix) and accepts when all are distinct; retries otherwise.
///
/// Returns the class and the number of attempts used. Errors upfront
/// when the acceptance probability `∏_{i<k}(1 − i/2^n)` is below `1e-9`,
/// and with [`Error::RetryCapExceeded`] if `retry_cap` draws all collide.
pub fn sample_simple_matrix(
    domain: FuncDomain,
    k: u64,
    rng: &mut ChaCha12Rng,
    retry_cap: u64,
) -> Result<(FunctionClass, u64)> {
    let total = domain.num_functions();
    if k == 0 || k > total {
        return Err(Error::BadParameter {
            name: "k",
            why: format!("cardinality must lie in 1..={total}, got {k}"),
        });
    }
    let acceptance: f64 = (0..k).map(|i| 1.0 - i as f64 / total as f64).product();
    if acceptance < 1e-9 {
        return Err(Error::SamplingInfeasible { acceptance });
    }
    let mut draw = vec![0u32; k as usize];
    for attempt in 1..=retry_cap.max(1) {
        for slot in draw.iter_mut() {
            *slot = rng.gen_range(0..total) as u32;
        }
        let mut sorted = draw.clone();
        sorted.sort_unstable();
        if sorted.windows(2).all(|w| w[0] != w[1]) {
            return Ok((FunctionClass::new(domain, sorted)?, attempt));
        }
    }
    Err(Error::RetryCapExceeded { cap: retry_cap })
}

/// Probability that a uniform random `k`-function class satisfies the
/// property, estimated from `trials` samples.
///
/// Deterministic in `(seed, parameters)`; `threads` affects speed only.
pub fn mc_property_prob(
    domain: FuncDomain,
    k: u64,
    spec: &PropertySpec,
    trials: u64,
    handle: &RngHandle,
    threads: usize,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::BadParameter {
            name: "trials",
            why: "at least one trial required".into(),
        });
    }
    if matches!(spec, PropertySpec::ExpDecayWeights { .. }) {
        return Err(Error::NotAPredicate);
    }
    spec.validate(domain)?;
    let shards: Vec<(u64, u64)> = (0..NUM_SHARDS)
        .map(|i| (i, trials / NUM_SHARDS + u64::from(i < trials % NUM_SHARDS)))
        .filter(|&(_, t)| t > 0)
        .collect();
    let counts = parallel_map(&shards, threads, |&(shard, shard_trials)| -> Result<u64> {
        let mut rng = handle.substream(shard).rng();
        let mut hits = 0u64;
        for _ in 0..shard_trials {
            let class = sample_class_uniform_k(domain, k, &mut rng)?;
            if satisfies(&class, spec)? {
                hits += 1;
            }
        }
        Ok(hits)
    });
    let hits: u64 = counts.into_iter().sum::<Result<u64>>()?;
    let p = hits as f64 / trials as f64;
    Ok(McEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / trials as f64).sqrt(),
        trials,
        seed: handle.seed(),
    })
}

/// Monte-Carlo information report: per-measure estimates with standard
/// errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McInfoReport {
    /// Information `I` about the whole function space.
    pub information: McEstimate,
    /// Conditional entropy `H`.
    pub conditional_entropy: McEstimate,
    /// Description complexity `l`.
    pub description: McEstimate,
    /// Per-cardinality sampling budget used.
    pub trials_per_cardinality: u64,
    /// Base seed.
    pub seed: u64,
}

/// Estimates a full information report for a property by estimating the
/// satisfaction probability `p̂_k` at every class cardinality
/// `k = 1..=2^n` (each with its own budget and RNG stream) and
/// recombining under the exact cardinality weights
/// `w_k = C(2^n, k)·2^{−2^n}`:
///
/// ```text
/// B = Σ w_k p̂_k        →  l = −log2 B
/// A = Σ w_k p̂_k log2 k  →  H = A/B,  I = n − H
/// ```
///
/// The weights span thousands of orders of magnitude, so both sums
/// accumulate in the `log2` domain; standard errors follow the delta
/// method. Errors with [`Error::AllRejected`] when no cardinality sees a
/// single satisfying sample.
pub fn mc_info_report(
    domain: FuncDomain,
    spec: &PropertySpec,
    trials_per_cardinality: u64,
    handle: &RngHandle,
    threads: usize,
) -> Result<McInfoReport> {
    if domain.n() > MAX_REPORT_DOMAIN {
        return Err(Error::TooLarge {
            what: "Monte-Carlo information reports",
            value: domain.n() as u64,
            max: MAX_REPORT_DOMAIN as u64,
        });
    }
    let total = domain.num_functions();
    let cardinalities: Vec<u64> = (1..=total).collect();
    let estimates = parallel_map(&cardinalities, threads, |&k| {
        mc_property_prob(
            domain,
            k,
            spec,
            trials_per_cardinality,
            &handle.substream(k),
            1,
        )
    });

    // Log-domain accumulation of B = Σ w_k p̂_k and A = Σ w_k p̂_k log2 k.
    let nf = total as f64;
    let mut log_b = Log2Accumulator::new();
    let mut log_a = Log2Accumulator::new();
    let mut per_k: Vec<(u64, f64, f64)> = Vec::new(); // (k, log2 w_k, p̂_k)
    for (&k, est) in cardinalities.iter().zip(&estimates) {
        let est = est.as_ref().map_err(clone_error)?;
        let w_log2 = log2_binomial(total, k) - nf;
        per_k.push((k, w_log2, est.estimate));
        if est.estimate > 0.0 {
            let term = w_log2 + est.estimate.log2();
            log_b.add(term);
            if k >= 2 {
                log_a.add(term + (k as f64).log2().log2());
            }
        }
    }
    let log_b = log_b.total();
    if log_b == f64::NEG_INFINITY {
        return Err(Error::AllRejected);
    }
    let h = if log_a.total() == f64::NEG_INFINITY {
        0.0
    } else {
        (log_a.total() - log_b).exp2()
    };

    // Delta method: u_k = w_k/B factors are moderate, so variance sums
    // run in the linear domain.
    let trials_f = trials_per_cardinality as f64;
    let mut var_rel_b = 0.0; // Σ (w_k/B)² v_k
    let mut var_h = 0.0; // Σ (w_k/B)² (log2 k − H)² v_k
    for &(k, w_log2, p) in &per_k {
        let v = p * (1.0 - p) / trials_f;
        if v == 0.0 {
            continue;
        }
        let u = (w_log2 - log_b).exp2();
        var_rel_b += u * u * v;
        let dev = (k as f64).log2() - h;
        var_h += u * u * dev * dev * v;
    }
    let sigma_h = var_h.sqrt();
    let sigma_l = var_rel_b.sqrt() / std::f64::consts::LN_2;

    let n = domain.n() as f64;
    let seed = handle.seed();
    let base = |estimate: f64, stderr: f64| McEstimate {
        estimate,
        stderr,
        trials: trials_per_cardinality,
        seed,
    };
    Ok(McInfoReport {
        information: base(n - h, sigma_h),
        conditional_entropy: base(h, sigma_h),
        description: base(-log_b, sigma_l),
        trials_per_cardinality,
        seed,
    })
}

/// `Error` is not `Clone` (it wraps `serde_json::Error`); estimation
/// errors are rebuilt as a schema-free summary for propagation out of
/// shared slices.
fn clone_error(e: &Error) -> Error {
    Error::BadParameter {
        name: "estimation",
        why: e.to_string(),
    }
}

/// Pearson statistic `Σ (observed − expected)²/expected`.
///
/// Panics in debug builds if the slices differ in length; zero-expected
/// cells must not appear.
pub fn chi_square_stat(observed: &[u64], expected: &[f64]) -> f64 {
    debug_assert_eq!(observed.len(), expected.len());
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum()
}

/// Two-sample Pearson statistic over shared categories: each cell's
/// expectation pools both samples. Cells empty in both samples are
/// skipped (they carry no information and would divide by zero).
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let (fa, fb) = (na as f64, nb as f64);
    let total = fa + fb;
    a.iter()
        .zip(b)
        .filter(|(&x, &y)| x + y > 0)
        .map(|(&x, &y)| {
            let pooled = (x + y) as f64 / total;
            let (ea, eb) = (pooled * fa, pooled * fb);
            let (dx, dy) = (x as f64 - ea, y as f64 - eb);
            dx * dx / ea + dy * dy / eb
        })
        .sum()
}

/// Frozen 99th-percentile chi-square critical values for the degrees of
/// freedom used by the validation suite.
pub fn chi_square_critical_p99(dof: u32) -> Option<f64> {
    match dof {
        3 => Some(11.344_866_730_144_373),
        5 => Some(15.086_272_469_388_99),
        27 => Some(46.962_942_124_751_436),
        _ => None,
    }
}
