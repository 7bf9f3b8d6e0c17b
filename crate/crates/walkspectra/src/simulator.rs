//! Monte Carlo realization of the shuffles and the card-marking process,
//! with empirical cross-checks against the exact small-n machinery.
//!
//! Reproducibility contract: all randomness flows from a counter-based
//! generator with frozen constants, trials draw from independent streams
//! keyed by seed XOR trial index, and identical configurations produce
//! bit-identical results on every platform.

use crate::group_oracle::{enumerate_group, EvenPermutation, GroupDistribution};
use crate::perm::Perm;
use crate::{Error, Result, Walk};

// ---------------------------------------------------------------------------
// Deterministic counter-based RNG.

/// Counter-based 64-bit generator: output i is a fixed avalanche hash of
/// (seed, i). The constants below are frozen; a reference output sequence
/// for seed 42 is committed as a test fixture.
#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed, counter: 0 }
    }

    /// Independent stream for one trial of an experiment: seed XOR trial.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        CounterRng::new(seed ^ trial)
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        let mut z = self
            .seed
            .wrapping_add(self.counter.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        self.counter = self.counter.wrapping_add(1);
        z ^= z >> 30;
        z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z ^= z >> 27;
        z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        z
    }

    /// Uniform double in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform integer in [0, m) by rejection (no modulo bias).
    pub fn next_below(&mut self, m: u64) -> u64 {
        assert!(m > 0, "next_below needs a positive bound");
        let limit = u64::MAX - u64::MAX % m;
        loop {
            let x = self.next_u64();
            if x < limit {
                return x % m;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Step sampling.

fn check_sim_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "simulation needs n >= 4, got {n}"
        )));
    }
    Ok(())
}

/// Draws one step permutation of the walk. The index-to-element mapping is
/// part of the reproducibility contract:
/// - transpose-top-2: j in [0, 2n-3); 0 is the identity, 1..=n-2 is
///   (j, n-1, n), and n-1..2n-4 is (j-(n-2), n, n-1) in 1-based cycles;
/// - 3-cycle walk: rejection-sampled ordered distinct triple (a, b, c);
/// - star walk: j in [0, (n-1)^2); j < n-1 is the identity, the rest
///   decodes an ordered pair (i, j) with i != j <= n-1 to (i, j, n).
fn sample_step(walk: Walk, n: usize, rng: &mut CounterRng) -> Perm {
    match walk {
        Walk::TransposeTop2 => {
            let j = rng.next_below(2 * n as u64 - 3) as usize;
            if j == 0 {
                Perm::identity(n)
            } else if j <= n - 2 {
                Perm::three_cycle(n, j - 1, n - 2, n - 1)
            } else {
                Perm::three_cycle(n, j - (n - 1), n - 1, n - 2)
            }
        }
        Walk::ThreeCycle => {
            let a = rng.next_below(n as u64) as usize;
            let b = loop {
                let b = rng.next_below(n as u64) as usize;
                if b != a {
                    break b;
                }
            };
            let c = loop {
                let c = rng.next_below(n as u64) as usize;
                if c != a && c != b {
                    break c;
                }
            };
            Perm::three_cycle(n, a, b, c)
        }
        Walk::StarThreeCycle => {
            let m = (n - 1) as u64;
            let j = rng.next_below(m * m);
            if j < m {
                Perm::identity(n)
            } else {
                let t = j - m;
                let i = (t / (m - 1)) as usize;
                let mut k = (t % (m - 1)) as usize;
                if k >= i {
                    k += 1;
                }
                Perm::three_cycle(n, i, k, n - 1)
            }
        }
    }
}

/// Composes `steps` independent draws of the walk, applied on the right.
pub fn run_walk(walk: Walk, n: usize, steps: u64, seed: u64) -> Result<EvenPermutation> {
    check_sim_n(n)?;
    let mut rng = CounterRng::new(seed);
    let mut g = Perm::identity(n);
    for _ in 0..steps {
        g = g.compose(&sample_step(walk, n, &mut rng));
    }
    Ok(EvenPermutation::from_perm(g))
}

/// Uniform element of A_n: uniform shuffle, then a parity-fixing swap of
/// the first two entries when the result is odd.
pub fn uniform_even(n: usize, rng: &mut CounterRng) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        images.swap(i, j);
    }
    let p = Perm::from_images(images).expect("shuffle is a permutation");
    if p.is_even() {
        p
    } else {
        let mut images = p.images().to_vec();
        images.swap(0, 1);
        Perm::from_images(images).expect("swap keeps a permutation")
    }
}

// ---------------------------------------------------------------------------
// Experiment configuration.

/// Which experiment a configuration runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Card-marking process; reports completion times.
    Marking,
    /// Fixed-point histogram of the walk after a fixed number of steps.
    FixedPoints,
    /// Dense empirical distribution compared against exact convolution.
    Empirical,
}

/// Full description of one experiment; identical configurations give
/// bit-identical outputs.
#[derive(Debug, Clone, Copy)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub walk: Walk,
    pub n: usize,
    pub trials: u64,
    /// Steps per trial; required by FixedPoints and Empirical, ignored by
    /// Marking (which runs to completion).
    pub steps: Option<u64>,
    pub seed: u64,
}

/// Result of one experiment run.
#[derive(Debug, Clone)]
pub enum ExperimentOutput {
    Marking(MarkingResult),
    FixedPoints(FixedPointHistogram),
    Empirical(EmpiricalResult),
}

/// Runs the configured experiment.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let steps = || {
        config.steps.ok_or_else(|| {
            Error::InvalidArgument("this experiment needs a step count".to_string())
        })
    };
    match config.experiment {
        ExperimentKind::Marking => Ok(ExperimentOutput::Marking(marking_experiment(
            config.n,
            config.trials,
            config.seed,
        )?)),
        ExperimentKind::FixedPoints => Ok(ExperimentOutput::FixedPoints(fixed_point_histogram(
            config.walk,
            config.n,
            steps()?,
            config.trials,
            config.seed,
        )?)),
        ExperimentKind::Empirical => Ok(ExperimentOutput::Empirical(empirical_distribution(
            config.walk,
            config.n,
            steps()?,
            config.trials,
            config.seed,
        )?)),
    }
}

// ---------------------------------------------------------------------------
// Summary statistics.

/// Mean, sample variance, and order-statistic quantiles of a sample.
#[derive(Debug, Clone)]
pub struct Summary {
    pub mean: f64,
    pub variance: f64,
    /// (level, value) at levels 0.05, 0.25, 0.5, 0.75, 0.95.
    pub quantiles: Vec<(f64, f64)>,
}

/// Mean, sample variance, and quantiles of a nonempty integer sample.
pub fn summarize_sample(values: &[u64]) -> Summary {
    assert!(!values.is_empty(), "summary of an empty sample");
    let count = values.len() as f64;
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / count;
    let variance = if values.len() < 2 {
        0.0
    } else {
        values
            .iter()
            .map(|&v| (v as f64 - mean) * (v as f64 - mean))
            .sum::<f64>()
            / (count - 1.0)
    };
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let quantiles = [0.05, 0.25, 0.5, 0.75, 0.95]
        .iter()
        .map(|&q| {
            let idx = ((q * count).ceil() as usize).saturating_sub(1).min(values.len() - 1);
            (q, sorted[idx] as f64)
        })
        .collect();
    Summary {
        mean,
        variance,
        quantiles,
    }
}

// ---------------------------------------------------------------------------
// The card-marking process.

/// Per-trial completion data of the marking process plus pooled counts for
/// the per-step marking-rate check.
#[derive(Debug, Clone)]
pub struct MarkingResult {
    pub n: usize,
    pub seed: u64,
    /// Steps until every card was marked, one entry per trial.
    pub completion_steps: Vec<u64>,
    /// Total steps across all trials.
    pub total_steps: u64,
    /// Steps that drew the identity.
    pub identity_draws: u64,
    /// Steps targeting each position 1..=n-2 (index 0 = position 1): draws
    /// whose newly marked card ends at that position.
    pub position_targets: Vec<u64>,
}

impl MarkingResult {
    pub fn summary(&self) -> Summary {
        summarize_sample(&self.completion_steps)
    }

    /// Pooled per-(step, position) marking rate over positions 1..=n-2.
    pub fn pooled_target_rate(&self) -> f64 {
        let targets: u64 = self.position_targets.iter().sum();
        targets as f64 / (self.total_steps as f64 * (self.n - 2) as f64)
    }

    /// The rate the process prescribes: 2/(2n-3) per position per step.
    pub fn expected_target_rate(&self) -> f64 {
        2.0 / (2 * self.n - 3) as f64
    }

    /// Standard error of the pooled rate estimate. Exactly one low position
    /// is targeted per non-identity step, so the pooled count is binomial
    /// with success probability (2n-4)/(2n-3).
    pub fn pooled_rate_standard_error(&self) -> f64 {
        let q = (2 * self.n - 4) as f64 / (2 * self.n - 3) as f64;
        (q * (1.0 - q) / self.total_steps as f64).sqrt() / (self.n - 2) as f64
    }
}

/// Runs the card-marking process to completion `trials` times.
///
/// The process, per trial: mark the card at position n; then repeatedly
/// draw from the walk's generator set (identity with the same mass as each
/// 3-cycle) and
/// - identity: mark the card at position n, deck unaltered;
/// - (i, n-1, n): mark the card at position n-1, transpose positions
///   n and n-1, then swap positions i and n;
/// - (i, n, n-1): mark the card at position n, transpose positions
///   n and n-1, then swap positions i and n-1;
///
/// stopping when all n cards are marked. Marks attach to cards, not
/// positions, and are permanent.
pub fn marking_experiment(n: usize, trials: u64, seed: u64) -> Result<MarkingResult> {
    check_sim_n(n)?;
    let mut completion_steps = Vec::with_capacity(trials as usize);
    let mut total_steps = 0u64;
    let mut identity_draws = 0u64;
    let mut position_targets = vec![0u64; n - 2];
    for trial in 0..trials {
        let mut rng = CounterRng::for_trial(seed, trial);
        // card_at[p] = card currently at 0-based position p.
        let mut card_at: Vec<usize> = (0..n).collect();
        let mut marked = vec![false; n];
        let mut marked_count = 0usize;
        let mark = |card: usize, marked: &mut Vec<bool>, count: &mut usize| {
            if !marked[card] {
                marked[card] = true;
                *count += 1;
            }
        };
        mark(card_at[n - 1], &mut marked, &mut marked_count);
        let mut steps = 0u64;
        while marked_count < n {
            steps += 1;
            let j = rng.next_below(2 * n as u64 - 3) as usize;
            if j == 0 {
                identity_draws += 1;
                mark(card_at[n - 1], &mut marked, &mut marked_count);
            } else if j <= n - 2 {
                // (i, n-1, n) with i = j.
                let i = j - 1;
                position_targets[i] += 1;
                mark(card_at[n - 2], &mut marked, &mut marked_count);
                card_at.swap(n - 1, n - 2);
                card_at.swap(i, n - 1);
            } else {
                // (i, n, n-1) with i = j - (n-2).
                let i = j - (n - 1);
                position_targets[i] += 1;
                mark(card_at[n - 1], &mut marked, &mut marked_count);
                card_at.swap(n - 1, n - 2);
                card_at.swap(i, n - 2);
            }
            assert!(steps < 1_000_000_000, "marking failed to complete");
        }
        completion_steps.push(steps);
        total_steps += steps;
    }
    Ok(MarkingResult {
        n,
        seed,
        completion_steps,
        total_steps,
        identity_draws,
        position_targets,
    })
}

// ---------------------------------------------------------------------------
// Fixed-point histogram.

/// Histogram of fixed-point counts over trials; index = number of fixed
/// points, length n + 1.
#[derive(Debug, Clone)]
pub struct FixedPointHistogram {
    pub counts: Vec<u64>,
}

impl FixedPointHistogram {
    pub fn trials(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        let total = self.trials() as f64;
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| k as f64 * c as f64)
            .sum::<f64>()
            / total
    }

    /// Total variation distance to a Poisson law, with the Poisson mass
    /// beyond the histogram range charged in full.
    pub fn tv_to_poisson(&self, rate: f64) -> f64 {
        let total = self.trials() as f64;
        let mut sum = 0.0;
        let mut cdf = 0.0;
        let mut log_pmf = -rate;
        for (k, &c) in self.counts.iter().enumerate() {
            if k > 0 {
                log_pmf += rate.ln() - (k as f64).ln();
            }
            let p = log_pmf.exp();
            cdf += p;
            sum += (c as f64 / total - p).abs();
        }
        0.5 * (sum + (1.0 - cdf).max(0.0))
    }
}

/// Number of fixed points after `steps` steps of the walk, one entry per
/// trial.
pub fn fixed_point_counts(
    walk: Walk,
    n: usize,
    steps: u64,
    trials: u64,
    seed: u64,
) -> Result<Vec<u64>> {
    check_sim_n(n)?;
    let mut out = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = CounterRng::for_trial(seed, trial);
        let mut g = Perm::identity(n);
        for _ in 0..steps {
            g = g.compose(&sample_step(walk, n, &mut rng));
        }
        out.push(g.fixed_points() as u64);
    }
    Ok(out)
}

/// Empirical distribution of the number of fixed points after `steps`
/// steps of the walk.
pub fn fixed_point_histogram(
    walk: Walk,
    n: usize,
    steps: u64,
    trials: u64,
    seed: u64,
) -> Result<FixedPointHistogram> {
    let mut counts = vec![0u64; n + 1];
    for c in fixed_point_counts(walk, n, steps, trials, seed)? {
        counts[c as usize] += 1;
    }
    Ok(FixedPointHistogram { counts })
}

/// Fixed-point histogram of exactly uniform draws from A_n.
pub fn uniform_fixed_point_histogram(
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<FixedPointHistogram> {
    check_sim_n(n)?;
    let mut counts = vec![0u64; n + 1];
    for trial in 0..trials {
        let mut rng = CounterRng::for_trial(seed, trial);
        counts[uniform_even(n, &mut rng).fixed_points()] += 1;
    }
    Ok(FixedPointHistogram { counts })
}

// ---------------------------------------------------------------------------
// Empirical distribution over small groups.

/// Empirical walk distribution plus its distance to the exact k-step law
/// and to uniform.
#[derive(Debug, Clone)]
pub struct EmpiricalResult {
    pub distribution: GroupDistribution,
    /// TV between the empirical distribution and the exact convolution.
    pub tv_to_exact: f64,
    /// TV between the empirical distribution and uniform.
    pub tv_to_uniform: f64,
}

/// Rank (in enumeration order over A_n) of the end state of each trial
/// after `steps` steps of the walk (n <= 9).
pub fn empirical_ranks(
    walk: Walk,
    n: usize,
    steps: u64,
    trials: u64,
    seed: u64,
) -> Result<Vec<usize>> {
    check_sim_n(n)?;
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "empirical distribution needs at least one trial".to_string(),
        ));
    }
    let index = enumerate_group(n)?;
    let mut out = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = CounterRng::for_trial(seed, trial);
        let mut g = Perm::identity(n);
        for _ in 0..steps {
            g = g.compose(&sample_step(walk, n, &mut rng));
        }
        out.push(index.rank_perm(&g));
    }
    Ok(out)
}

/// Samples the walk `trials` times for `steps` steps and tabulates the
/// empirical distribution densely over A_n (n <= 9).
pub fn empirical_distribution(
    walk: Walk,
    n: usize,
    steps: u64,
    trials: u64,
    seed: u64,
) -> Result<EmpiricalResult> {
    let index = enumerate_group(n)?;
    let mut counts = vec![0u64; index.size()];
    for rank in empirical_ranks(walk, n, steps, trials, seed)? {
        counts[rank] += 1;
    }
    let probs: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / trials as f64)
        .collect();
    let empirical = GroupDistribution::from_probs(n, probs);
    let exact = crate::group_oracle::distribution_at(walk, n, steps)?;
    let tv_to_exact = empirical.tv_to(&exact);
    let tv_to_uniform = empirical.tv_to_uniform();
    Ok(EmpiricalResult {
        distribution: empirical,
        tv_to_exact,
        tv_to_uniform,
    })
}
