//! Mixing-time analysis: the Poisson limit profile, spectral upper bounds
//! on total variation, and cross-walk comparison sums.
//!
//! Everything that sums over all partitions of n runs in the log domain:
//! dimensions reach e^100 and beyond long before n hits the configured
//! ceiling, while the final answers are ordinary floats.

use rayon::prelude::*;

use crate::combinatorics::{
    check_n, for_each_corner_pair, for_each_partition_with_first, log_dim, LnTables, PairRelation,
    ShapeScratch,
};
use crate::spectra::{log_add, ratio_to_f64, regular_spectrum_aggregate, three_cycle_ratio_exact};
use crate::{Error, Result, Walk};

/// A signed quantity sign * exp(log_magnitude), for sums whose terms span
/// hundreds of orders of magnitude.
///
/// Addition factors out the larger magnitude before exponentiating, so a
/// running fold is associative within about 1e-12 relative error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogAccumulator {
    sign: i8,
    log_magnitude: f64,
}

impl SignedLogAccumulator {
    pub fn zero() -> Self {
        SignedLogAccumulator {
            sign: 0,
            log_magnitude: f64::NEG_INFINITY,
        }
    }

    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            Self::zero()
        } else {
            SignedLogAccumulator {
                sign: if v > 0.0 { 1 } else { -1 },
                log_magnitude: v.abs().ln(),
            }
        }
    }

    /// sign * exp(log_magnitude); a zero sign is canonical zero.
    pub fn from_sign_log(sign: i8, log_magnitude: f64) -> Self {
        assert!(sign == -1 || sign == 0 || sign == 1, "sign must be -1/0/1");
        if sign == 0 || log_magnitude == f64::NEG_INFINITY {
            Self::zero()
        } else {
            SignedLogAccumulator {
                sign,
                log_magnitude,
            }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_magnitude(&self) -> f64 {
        self.log_magnitude
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn value(&self) -> f64 {
        self.sign as f64 * self.log_magnitude.exp()
    }

    pub fn push(&mut self, sign: i8, log_magnitude: f64) {
        *self = *self + Self::from_sign_log(sign, log_magnitude);
    }
}

impl std::ops::Add for SignedLogAccumulator {
    type Output = Self;

    /// Signed addition by factoring out the larger magnitude, so the sum
    /// of the residual factors stays within float range.
    fn add(self, other: Self) -> Self {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let m = self.log_magnitude.max(other.log_magnitude);
        let s = self.sign as f64 * (self.log_magnitude - m).exp()
            + other.sign as f64 * (other.log_magnitude - m).exp();
        if s == 0.0 {
            return Self::zero();
        }
        SignedLogAccumulator {
            sign: if s > 0.0 { 1 } else { -1 },
            log_magnitude: m + s.abs().ln(),
        }
    }
}

/// base^exp for integer exponents, exact for negative bases.
pub(crate) fn fpow(base: f64, exp: u64) -> f64 {
    if exp <= i32::MAX as u64 {
        base.powi(exp as i32)
    } else {
        // Exponentiation by squaring for the (unrealistic) huge-step case.
        let mut acc = 1.0;
        let mut b = base;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc *= b;
            }
            b *= b;
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Schedules.

/// Which algebraic form the step schedule uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeForm {
    /// coefficient * (ln n + c): the window parameter is scaled by the
    /// coefficient. This is the default.
    Scaled,
    /// coefficient * ln n + c * n: the window parameter adds a plain c*n
    /// term. Differs from Scaled by a bounded reparameterization of c.
    Plain,
}

/// Step schedule k(n, c) for one walk.
#[derive(Debug, Clone, Copy)]
pub struct TimeSchedule {
    walk: Walk,
    form: TimeForm,
}

impl TimeSchedule {
    pub fn new(walk: Walk) -> Self {
        TimeSchedule {
            walk,
            form: TimeForm::Scaled,
        }
    }

    pub fn with_form(walk: Walk, form: TimeForm) -> Self {
        TimeSchedule { walk, form }
    }

    pub fn walk(&self) -> Walk {
        self.walk
    }

    /// The real-valued leading time; natural logarithm throughout.
    pub fn tau(&self, n: usize, c: f64) -> f64 {
        assert!(n >= 2, "schedule needs n >= 2");
        let coef = self.walk.schedule_coefficient(n);
        match self.form {
            TimeForm::Scaled => coef * ((n as f64).ln() + c),
            TimeForm::Plain => coef * (n as f64).ln() + c * n as f64,
        }
    }

    /// ceil(tau), floored at zero.
    pub fn steps(&self, n: usize, c: f64) -> u64 {
        let t = self.tau(n, c);
        if t <= 0.0 {
            0
        } else {
            t.ceil() as u64
        }
    }
}

/// Scheduled step count in the default (scaled) form.
pub fn schedule(walk: Walk, n: usize, c: f64) -> u64 {
    TimeSchedule::new(walk).steps(n, c)
}

// ---------------------------------------------------------------------------
// Poisson total variation and the limit profile.

/// Total variation distance between Poisson(rate_a) and Poisson(rate_b),
/// summed until both tails drop below 1e-15.
pub fn poisson_tv(rate_a: f64, rate_b: f64) -> Result<f64> {
    if !(rate_a > 0.0 && rate_b > 0.0) || !rate_a.is_finite() || !rate_b.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "poisson rates must be positive and finite, got {rate_a} and {rate_b}"
        )));
    }
    const TAIL: f64 = 1e-18;
    let mut sum = 0.0;
    let mut overlap = 0.0;
    let mut lnfact = 0.0;
    let mut k = 0u64;
    loop {
        if k > 0 {
            lnfact += (k as f64).ln();
        }
        let pa = (-rate_a + k as f64 * rate_a.ln() - lnfact).exp();
        let pb = (-rate_b + k as f64 * rate_b.ln() - lnfact).exp();
        sum += (pa - pb).abs();
        overlap += pa.min(pb);
        // Past twice the larger mode the term ratio is below 1/2, so each
        // remaining tail is under twice the current term; once both terms
        // are negligible the truncation error is far below the result's
        // precision.
        let past_modes = k as f64 > 2.0 * rate_a.max(rate_b) + 32.0;
        if past_modes && pa < TAIL && pb < TAIL {
            break;
        }
        k += 1;
        assert!(k < 100_000_000, "poisson series failed to converge");
    }
    // Half the absolute difference and one minus the overlap agree exactly
    // in real arithmetic; in floats the first is accurate for small
    // distances, the second for distances near one, where the difference
    // sum drowns the complement in accumulated rounding.
    let diff = 0.5 * sum;
    Ok(if diff > 0.5 { 1.0 - overlap } else { diff })
}

/// The walk's limiting total-variation profile inside the cutoff window:
/// f(c) = d_TV(Poisson(1 + e^-c), Poisson(1)).
pub fn limit_profile_f(c: f64) -> f64 {
    poisson_tv(1.0 + (-c).exp(), 1.0).expect("rates are positive")
}

/// A sampled point of the limit profile.
#[derive(Debug, Clone, Copy)]
pub struct ProfilePoint {
    pub c: f64,
    pub value: f64,
}

/// Samples the limit profile at the given window positions.
pub fn profile_points(c_values: &[f64]) -> Vec<ProfilePoint> {
    c_values
        .iter()
        .map(|&c| ProfilePoint {
            c,
            value: limit_profile_f(c),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Spectral upper bound on total variation.

/// Reusable nontrivial spectrum data for one (walk, n): evaluating the
/// bound at many step counts shares one partition sweep.
pub struct SpectralBoundTable {
    /// (log multiplicity, ln |eigenvalue|) per nontrivial spectrum slot
    /// with nonzero eigenvalue.
    terms: Vec<(f64, f64)>,
    /// ln(n!/2 - 1): log of the total nontrivial multiplicity.
    total_log: f64,
}

/// Builds the spectral table for the walk at size n. Requires n >= 4
/// (cycles3: n >= 5, where its eigenvalue formula takes over).
pub fn spectral_bound_table(walk: Walk, n: usize) -> Result<SpectralBoundTable> {
    let entries = regular_spectrum_aggregate(walk, n)?;
    let mut terms = Vec::with_capacity(entries.len());
    let mut seen_one = false;
    let mut check_total = f64::NEG_INFINITY;
    for e in &entries {
        let v = e.value_f64();
        check_total = log_add(check_total, e.count.log);
        if v == 1.0 {
            // The stationary eigenvalue: exactly one slot across the whole
            // regular representation (walks are irreducible and aperiodic).
            assert!(!seen_one, "eigenvalue 1 must be unique");
            assert!(
                e.count.log.abs() < 1e-9,
                "eigenvalue 1 must have multiplicity 1"
            );
            seen_one = true;
            continue;
        }
        if v != 0.0 {
            terms.push((e.count.log, v.abs().ln()));
        } else {
            // Zero eigenvalues only matter at k = 0, which is handled from
            // the total count.
        }
    }
    assert!(seen_one, "stationary eigenvalue missing");
    // ln(n!/2 - 1) computed directly from the factorial for accuracy:
    // ln(n!/2) + ln(1 - 1/(n!/2)).
    let tables = LnTables::new(n + 2);
    let ln_half_fact = tables.lnfact[n] - std::f64::consts::LN_2;
    let total_log = ln_half_fact + (-(-ln_half_fact).exp()).ln_1p();
    debug_assert!(
        (check_total - ln_half_fact).abs() < 1e-6,
        "aggregate multiplicities must total n!/2"
    );
    Ok(SpectralBoundTable { terms, total_log })
}

impl SpectralBoundTable {
    /// (1/2) * sqrt( sum over nontrivial slots of eigenvalue^(2k) ).
    pub fn bound(&self, k: u64) -> f64 {
        if k == 0 {
            return 0.5 * (0.5 * self.total_log).exp();
        }
        let mut log_sum = f64::NEG_INFINITY;
        for &(log_count, ln_abs) in &self.terms {
            log_sum = log_add(log_sum, log_count + 2.0 * k as f64 * ln_abs);
        }
        0.5 * (0.5 * log_sum).exp()
    }
}

/// One-shot spectral TV upper bound after k steps of the walk.
pub fn spectral_tv_upper_bound(walk: Walk, n: usize, k: u64) -> Result<f64> {
    Ok(spectral_bound_table(walk, n)?.bound(k))
}

// ---------------------------------------------------------------------------
// The 2x2 block trace and its closed-form bound.

/// Exact trace of (A^n1 - B^n2)^2 for the block pair
/// A = (a' + b') * [[0,1],[1,0]] and B = [[a^2, (a+b)/kappa], [0, b^2]],
/// together with the closed-form bound a^(4 n2) + b^(4 n2) + 2(a'+b')^(2 n1).
#[derive(Debug, Clone, Copy)]
pub struct TwoByTwoTrace {
    pub trace: f64,
    pub bound: f64,
}

/// Computes the block trace in closed form.
///
/// `trace <= bound` holds whenever all four amplitudes are non-negative
/// (and also for the walk-derived data, where the two off-diagonal signs
/// agree); the closed-form trace itself is exact for any inputs.
pub fn two_by_two_trace(
    a: f64,
    b: f64,
    a_prime: f64,
    b_prime: f64,
    kappa: f64,
    n1: u64,
    n2: u64,
) -> Result<TwoByTwoTrace> {
    if !kappa.is_finite() || kappa <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "kappa must be positive and finite, got {kappa}"
        )));
    }
    if a == b {
        return Err(Error::InvalidArgument(format!(
            "block requires a != b, got a = b = {a}"
        )));
    }
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidArgument(
            "block powers must be at least 1".to_string(),
        ));
    }
    let s = a_prime + b_prime;
    Ok(block_trace_core(a, b, s, kappa, n1, n2))
}

/// Shared core: the antidiagonal side enters only through s = a' + b'.
pub(crate) fn block_trace_core(
    a: f64,
    b: f64,
    s: f64,
    kappa: f64,
    n1: u64,
    n2: u64,
) -> TwoByTwoTrace {
    let alpha = a * a;
    let beta = b * b;
    let a2 = fpow(alpha, n2);
    let b2 = fpow(beta, n2);
    let big_s = fpow(s, n1);
    let trace = if n1.is_multiple_of(2) {
        // A^n1 = S * identity; the difference is upper triangular.
        (big_s - a2) * (big_s - a2) + (big_s - b2) * (big_s - b2)
    } else {
        // A^n1 = S * swap; the corner of B^n2 is
        // x = (b^(2 n2) - a^(2 n2)) / (kappa (b - a)).
        let x = (b2 - a2) / (kappa * (b - a));
        a2 * a2 + b2 * b2 + 2.0 * big_s * big_s - 2.0 * big_s * x
    };
    let bound = a2 * a2 + b2 * b2 + 2.0 * big_s * big_s;
    TwoByTwoTrace { trace, bound }
}

// ---------------------------------------------------------------------------
// Cross-walk comparison sums.

/// Which pair of scheduled walks a comparison sum contrasts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonPair {
    /// Transpose-top-2 against the uniform 3-cycle walk.
    PQ,
    /// Transpose-top-2 against the star 3-cycle walk.
    PPprime,
}

impl ComparisonPair {
    pub fn token(self) -> &'static str {
        match self {
            ComparisonPair::PQ => "PQ",
            ComparisonPair::PPprime => "PPprime",
        }
    }

    /// (walk A, walk B) of the pair; A is always transpose-top-2.
    pub fn walks(self) -> (Walk, Walk) {
        match self {
            ComparisonPair::PQ => (Walk::TransposeTop2, Walk::ThreeCycle),
            ComparisonPair::PPprime => (Walk::TransposeTop2, Walk::StarThreeCycle),
        }
    }
}

/// A comparison sum, optionally split at a first-part threshold.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonSums {
    pub sum: f64,
    pub split: Option<SumSplit>,
}

/// The two halves of a split comparison sum: `sum1` collects shapes with
/// first part <= n - m, `sum2` the rest; they add up to the total.
#[derive(Debug, Clone, Copy)]
pub struct SumSplit {
    pub m: u32,
    pub sum1: f64,
    pub sum2: f64,
}

/// One comparison-sum request, to be evaluated in a shared sweep.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonRequest {
    pub pair: ComparisonPair,
    pub c: f64,
    pub split_m: Option<u32>,
}

/// Comparison sum for one pair at window position c:
/// Sum = sum over modules rho of d_rho * Tr((A-hat^kA - B-hat^kB)^2)
/// at the two walks' scheduled step counts.
pub fn comparison_sum(
    pair: ComparisonPair,
    n: usize,
    c: f64,
    split_m: Option<u32>,
) -> Result<ComparisonSums> {
    let out = comparison_sums_batch(n, &[ComparisonRequest { pair, c, split_m }])?;
    Ok(out[0])
}

/// Evaluates several comparison-sum requests in one partition sweep.
pub fn comparison_sums_batch(
    n: usize,
    requests: &[ComparisonRequest],
) -> Result<Vec<ComparisonSums>> {
    for r in requests {
        if !(-5.0..=5.0).contains(&r.c) {
            return Err(Error::InvalidArgument(format!(
                "window position c must lie in [-5, 5], got {}",
                r.c
            )));
        }
        if n < 5 {
            return Err(Error::InvalidArgument(format!(
                "comparison sums need n >= 5, got {n}"
            )));
        }
    }
    let jobs: Vec<CrossJob> = requests
        .iter()
        .map(|r| {
            let (wa, wb) = r.pair.walks();
            CrossJob {
                walk_a: wa,
                k_a: schedule(wa, n, r.c),
                walk_b: wb,
                k_b: schedule(wb, n, r.c),
                split_m: r.split_m,
            }
        })
        .collect();
    let accums = cross_sweep(n, &jobs)?;
    Ok(accums
        .into_iter()
        .map(|acc| {
            let sum = 0.5 * acc.total.value();
            let split = acc.split.map(|(m, s1, s2)| SumSplit {
                m,
                sum1: 0.5 * s1.value(),
                sum2: 0.5 * s2.value(),
            });
            ComparisonSums { sum, split }
        })
        .collect())
}

/// Upper bound on the difference of total variation distances between two
/// scheduled walks: (1/2) sqrt( sum over rho of d_rho Tr((A-hat^kA -
/// B-hat^kB)^2) ). Symmetric in its two walk arguments, zero when they
/// agree.
pub fn tv_comparison_bound(
    walk_a: Walk,
    k_a: u64,
    walk_b: Walk,
    k_b: u64,
    n: usize,
) -> Result<f64> {
    let job = CrossJob {
        walk_a,
        k_a,
        walk_b,
        k_b,
        split_m: None,
    };
    let accums = cross_sweep(n, &[job])?;
    Ok(0.5 * (0.5 * accums[0].total.value()).sqrt())
}

/// The per-module comparison term d_rho * Tr((A-hat^kA - B-hat^kB)^2) for
/// one labelled module at the pair's scheduled step counts.
#[derive(Debug, Clone)]
pub struct ComparisonTerm {
    pub label: crate::spectra::IrrepLabel,
    pub value: f64,
}

/// White-box view of one module's contribution to a comparison sum.
pub fn comparison_term(
    pair: ComparisonPair,
    label: &crate::spectra::IrrepLabel,
    c: f64,
) -> Result<ComparisonTerm> {
    let n = label.n();
    if n < 5 {
        return Err(Error::InvalidArgument(format!(
            "comparison terms need n >= 5, got {n}"
        )));
    }
    if !(-5.0..=5.0).contains(&c) {
        return Err(Error::InvalidArgument(format!(
            "window position c must lie in [-5, 5], got {c}"
        )));
    }
    let (wa, wb) = pair.walks();
    let job = CrossJob {
        walk_a: wa,
        k_a: schedule(wa, n, c),
        walk_b: wb,
        k_b: schedule(wb, n, c),
        split_m: None,
    };
    let tables = LnTables::new(n + 2);
    let mut scratch = ShapeScratch::new();
    let mut parts: Vec<usize> = label
        .shape()
        .parts()
        .iter()
        .copied()
        .filter(|&p| p > 0)
        .collect();
    let mut acc = SignedLogAccumulator::zero();
    shape_cross_term(&mut parts, n, &tables, &mut scratch, &job, &mut acc);
    // acc holds d_lambda * Tr over the full two-sided shape multiset; a
    // whole module is worth that value, each split constituent a quarter
    // (half the dimension times half the trace).
    let factor = match label.variant() {
        crate::spectra::IrrepVariant::Whole => 1.0,
        _ => 0.25,
    };
    Ok(ComparisonTerm {
        label: label.clone(),
        value: factor * acc.value(),
    })
}

/// One cross-walk trace job: compare walk_a after k_a steps with walk_b
/// after k_b steps.
#[derive(Debug, Clone, Copy)]
struct CrossJob {
    walk_a: Walk,
    k_a: u64,
    walk_b: Walk,
    k_b: u64,
    split_m: Option<u32>,
}

struct CrossAccums {
    total: SignedLogAccumulator,
    split: Option<(u32, SignedLogAccumulator, SignedLogAccumulator)>,
}

fn formula_min_n(walk: Walk) -> usize {
    match walk {
        Walk::TransposeTop2 | Walk::StarThreeCycle => 4,
        Walk::ThreeCycle => 5,
    }
}

/// Sweeps all partitions of n once and accumulates, for every job, the
/// aggregate sum over all shapes of d_lambda * Tr((A^kA - B^kB)^2) on the
/// shape's slot multiset. The caller halves the result to land on the
/// module-indexed sum.
fn cross_sweep(n: usize, jobs: &[CrossJob]) -> Result<Vec<CrossAccums>> {
    check_n(n)?;
    for job in jobs {
        let min = formula_min_n(job.walk_a).max(formula_min_n(job.walk_b));
        if n < min {
            return Err(Error::InvalidArgument(format!(
                "comparing {} and {} needs n >= {min}, got {n}",
                job.walk_a.token(),
                job.walk_b.token()
            )));
        }
    }
    let tables = LnTables::new(n + 2);
    // Shapes are swept in parallel strata by first part; every stratum owns
    // private accumulators, and the strata are folded in fixed order at the
    // end, so the result does not depend on thread scheduling.
    let strata: Vec<Vec<SignedLogAccumulator>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut scratch = ShapeScratch::new();
            let mut parts_buf: Vec<usize> = Vec::with_capacity(n);
            let mut sums = vec![SignedLogAccumulator::zero(); jobs.len()];
            for_each_partition_with_first(first, n, |parts| {
                parts_buf.clear();
                parts_buf.extend_from_slice(parts);
                for (job, sum) in jobs.iter().zip(sums.iter_mut()) {
                    let mut shape_acc = SignedLogAccumulator::zero();
                    shape_cross_term(&mut parts_buf, n, &tables, &mut scratch, job, &mut shape_acc);
                    *sum = *sum + shape_acc;
                }
            });
            sums
        })
        .collect();
    let mut accums: Vec<CrossAccums> = jobs
        .iter()
        .map(|job| CrossAccums {
            total: SignedLogAccumulator::zero(),
            split: job
                .split_m
                .map(|m| (m, SignedLogAccumulator::zero(), SignedLogAccumulator::zero())),
        })
        .collect();
    for (stratum, sums) in strata.iter().enumerate() {
        let first_part = stratum + 1;
        for (acc, &sum) in accums.iter_mut().zip(sums) {
            acc.total = acc.total + sum;
            if let Some((m, sum1, sum2)) = &mut acc.split {
                if first_part <= n.saturating_sub(*m as usize) {
                    *sum1 = *sum1 + sum;
                } else {
                    *sum2 = *sum2 + sum;
                }
            }
        }
    }
    Ok(accums)
}

/// Adds d_lambda * Tr((A^kA - B^kB)^2) for one shape into `acc`.
///
/// The slot model per ordered corner-pair group (x = content of the cell
/// holding n, y = content of the cell holding n-1, count m):
/// - transpose-top-2 is diagonal with entry sgn(x - y) * (x + y)/(2n-3);
/// - the 3-cycle walk is the scalar C_lambda;
/// - the star walk has the single (x/(n-1))^2 on same-row/column groups and
///   the triangular 2x2 block on each unordered Neither pair.
///
/// Block cases consume the x > y orientation and skip its mirror.
fn shape_cross_term(
    parts: &mut [usize],
    n: usize,
    tables: &LnTables,
    scratch: &mut ShapeScratch,
    job: &CrossJob,
    acc: &mut SignedLogAccumulator,
) {
    // Canonical walk order keeps the case analysis small: tt2r, cycles3,
    // tprime. The trace is symmetric in the two sides.
    let (wa, ka, wb, kb) = if walk_rank(job.walk_a) <= walk_rank(job.walk_b) {
        (job.walk_a, job.k_a, job.walk_b, job.k_b)
    } else {
        (job.walk_b, job.k_b, job.walk_a, job.k_a)
    };
    let logd = {
        crate::combinatorics::conjugate_into(parts, &mut scratch.conj);
        log_dim(parts, &scratch.conj, n, tables)
    };
    let needs_scalar = wa == Walk::ThreeCycle || wb == Walk::ThreeCycle;
    let scalar = if needs_scalar {
        ratio_to_f64(&three_cycle_ratio_exact(parts, n))
    } else {
        0.0
    };
    let kappa = (n - 1) as f64;
    let tt2r_den = (2 * n - 3) as f64;
    for_each_corner_pair(parts, n, tables, scratch, |x, y, rel, log_count| {
        let t = match (wa, wb) {
            (Walk::TransposeTop2, Walk::TransposeTop2) => {
                let e = tt2r_value(x, y, tt2r_den);
                sq(fpow(e, ka) - fpow(e, kb))
            }
            (Walk::TransposeTop2, Walk::ThreeCycle) => {
                let e = tt2r_value(x, y, tt2r_den);
                sq(fpow(e, ka) - fpow(scalar, kb))
            }
            (Walk::ThreeCycle, Walk::ThreeCycle) => sq(fpow(scalar, ka) - fpow(scalar, kb)),
            (Walk::TransposeTop2, Walk::StarThreeCycle) => match rel {
                PairRelation::Neither if x < y => return,
                PairRelation::Neither => {
                    let s = (x + y) as f64 / tt2r_den;
                    block_trace_core(x as f64 / kappa, y as f64 / kappa, s, kappa, ka, kb).trace
                }
                _ => {
                    let e = tt2r_value(x, y, tt2r_den);
                    let v = sq(x as f64 / kappa);
                    sq(fpow(e, ka) - fpow(v, kb))
                }
            },
            (Walk::ThreeCycle, Walk::StarThreeCycle) => match rel {
                PairRelation::Neither if x < y => return,
                PairRelation::Neither => {
                    let ca = fpow(scalar, ka);
                    sq(ca - fpow(sq(x as f64 / kappa), kb)) + sq(ca - fpow(sq(y as f64 / kappa), kb))
                }
                _ => {
                    let v = sq(x as f64 / kappa);
                    sq(fpow(scalar, ka) - fpow(v, kb))
                }
            },
            (Walk::StarThreeCycle, Walk::StarThreeCycle) => match rel {
                PairRelation::Neither if x < y => return,
                PairRelation::Neither => {
                    let va = sq(x as f64 / kappa);
                    let vb = sq(y as f64 / kappa);
                    sq(fpow(va, ka) - fpow(va, kb)) + sq(fpow(vb, ka) - fpow(vb, kb))
                }
                _ => {
                    let v = sq(x as f64 / kappa);
                    sq(fpow(v, ka) - fpow(v, kb))
                }
            },
            _ => unreachable!("walks are in canonical order"),
        };
        debug_assert!(t > -1e-9, "trace terms are squares up to rounding");
        if t > 0.0 {
            acc.push(1, logd + log_count + t.ln());
        }
    });
}

fn walk_rank(walk: Walk) -> u8 {
    match walk {
        Walk::TransposeTop2 => 0,
        Walk::ThreeCycle => 1,
        Walk::StarThreeCycle => 2,
    }
}

fn sq(v: f64) -> f64 {
    v * v
}

/// The transpose-top-2 eigenvalue on an ordered corner-pair group:
/// magnitude |x + y| / (2n - 3), sign positive exactly when x > y.
fn tt2r_value(x: i64, y: i64, den: f64) -> f64 {
    let signed = if x > y { x + y } else { -(x + y) };
    signed as f64 / den
}

// ---------------------------------------------------------------------------
// Tail threshold for the split comparison sums.

/// Smallest positive integer M with sum over m >= M of e^(-2mc)/m! at most
/// epsilon/8, evaluated in the log domain (the terms reach e^20000 for
/// strongly negative c).
pub fn choose_m(c: f64, epsilon: f64) -> Result<u64> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if !c.is_finite() || c < -5.0 {
        return Err(Error::InvalidArgument(format!(
            "tail threshold needs finite c >= -5, got {c}"
        )));
    }
    let target = epsilon.ln() - (8.0f64).ln();
    // Term logs: t_m = -2mc - ln m!. Terms peak near m = e^{-2c} and decay
    // super-geometrically after; collect terms until they fall far enough
    // below the target that the remaining tail is negligible.
    let peak = (-2.0 * c).exp();
    let mut term_logs = vec![0.0f64];
    let mut lnfact = 0.0;
    let mut m = 1usize;
    loop {
        lnfact += (m as f64).ln();
        let t = -2.0 * m as f64 * c - lnfact;
        term_logs.push(t);
        // Past twice the peak the term ratio is below 1/2, so the tail
        // beyond m is under twice the current term.
        if m as f64 > 2.0 * peak + 64.0 && t < target - 64.0 {
            break;
        }
        m += 1;
        assert!(m < 1_000_000, "tail scan failed to terminate");
    }
    let m_hi = term_logs.len() - 1;
    // Suffix log-sum-exp from the top; scanning down, the first index whose
    // suffix exceeds the target ends the search.
    let mut suffix = f64::NEG_INFINITY;
    let mut best = m_hi as u64;
    for m in (1..=m_hi).rev() {
        suffix = log_add(suffix, term_logs[m]);
        if suffix <= target {
            best = m as u64;
        } else {
            break;
        }
    }
    Ok(best.max(1))
}
