//! Window analysis layer: schedules, the Poisson limit profile, spectral
//! upper bounds, block traces, and the cross-walk comparison sums, checked
//! against independent summation oracles and frozen reference values.

use walkspectra::analysis::{
    choose_m, comparison_sum, comparison_sums_batch, comparison_term, limit_profile_f, poisson_tv,
    profile_points, schedule, spectral_bound_table, spectral_tv_upper_bound, tv_comparison_bound,
    two_by_two_trace, ComparisonPair, ComparisonRequest, SignedLogAccumulator, TimeForm,
    TimeSchedule,
};
use walkspectra::group_oracle::{distribution_at, enumerate_group, exact_tv};
use walkspectra::spectra::canonical_labels;
use walkspectra::Walk;

const WALKS: [Walk; 3] = [Walk::TransposeTop2, Walk::ThreeCycle, Walk::StarThreeCycle];

// ---------------------------------------------------------------------------
// Schedules.

#[test]
fn schedules_are_frozen_at_n100() {
    assert_eq!(schedule(Walk::TransposeTop2, 100, 0.0), 454);
    assert_eq!(schedule(Walk::ThreeCycle, 100, 0.0), 154);
    assert_eq!(schedule(Walk::StarThreeCycle, 100, 0.0), 228);
    // Far left of the window the scheduled time clamps at zero.
    for walk in WALKS {
        assert_eq!(schedule(walk, 100, -9.0), 0, "{}", walk.token());
    }
}

#[test]
fn schedule_steps_are_the_ceiling_of_tau() {
    for walk in WALKS {
        let sched = TimeSchedule::new(walk);
        assert_eq!(sched.walk(), walk);
        for n in [5usize, 20, 100] {
            for c in [-1.0, -0.3, 0.0, 0.7, 3.0] {
                let tau = sched.tau(n, c);
                let steps = sched.steps(n, c);
                if tau <= 0.0 {
                    assert_eq!(steps, 0);
                } else {
                    assert!(steps as f64 >= tau && (steps as f64) < tau + 1.0);
                }
                // tau is linear in c with slope equal to the coefficient.
                let slope = (sched.tau(n, c + 0.5) - tau) / 0.5;
                let coef = walk.schedule_coefficient(n);
                assert!((slope - coef).abs() < 1e-9 * coef, "slope for {}", walk.token());
            }
        }
    }
}

#[test]
fn plain_form_differs_from_scaled_by_the_window_term() {
    for walk in WALKS {
        let scaled = TimeSchedule::new(walk);
        let plain = TimeSchedule::with_form(walk, TimeForm::Plain);
        for n in [10usize, 50] {
            let coef = walk.schedule_coefficient(n);
            // At c = 0 the two forms agree ...
            assert!((scaled.tau(n, 0.0) - plain.tau(n, 0.0)).abs() < 1e-12);
            // ... and differ by (coef - n) * c elsewhere.
            for c in [-1.0, 0.5, 2.0] {
                let gap = scaled.tau(n, c) - plain.tau(n, c);
                assert!(
                    (gap - (coef - n as f64) * c).abs() < 1e-9,
                    "form gap for {} at n = {n}, c = {c}",
                    walk.token()
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Poisson distances and the limit profile.

/// Direct high-cutoff summation, independent of the library's stopping rule.
fn poisson_tv_reference(a: f64, b: f64) -> f64 {
    let mut sum = 0.0;
    let mut log_pa = -a;
    let mut log_pb = -b;
    for k in 0..400 {
        if k > 0 {
            let lk = (k as f64).ln();
            log_pa += a.ln() - lk;
            log_pb += b.ln() - lk;
        }
        sum += (log_pa.exp() - log_pb.exp()).abs();
    }
    0.5 * sum
}

#[test]
fn poisson_distance_matches_direct_summation() {
    let cases = [(1.0, 1.0), (1.0, 2.0), (0.5, 3.5), (2.0, 148.4), (7.3, 7.30001)];
    for (a, b) in cases {
        let got = poisson_tv(a, b).unwrap();
        let want = poisson_tv_reference(a, b);
        assert!((got - want).abs() <= 1e-12, "poisson TV at ({a}, {b}): {got} vs {want}");
        let swapped = poisson_tv(b, a).unwrap();
        assert_eq!(got, swapped, "symmetry at ({a}, {b})");
        assert!((0.0..=1.0).contains(&got));
    }
    assert_eq!(poisson_tv(3.0, 3.0).unwrap(), 0.0);
    assert!(poisson_tv(0.0, 1.0).is_err());
    assert!(poisson_tv(1.0, -2.0).is_err());
    assert!(poisson_tv(f64::NAN, 1.0).is_err());
    assert!(poisson_tv(f64::INFINITY, 1.0).is_err());
}

#[test]
fn limit_profile_is_the_poisson_distance_at_shifted_rates() {
    for c in [-5.0f64, -1.2, 0.0, 0.8, 5.0] {
        let want = poisson_tv(1.0 + (-c).exp(), 1.0).unwrap();
        assert_eq!(limit_profile_f(c), want, "profile at c = {c}");
    }
}

#[test]
fn limit_profile_has_the_documented_shape() {
    // Value at the window center, frozen to three decimals.
    assert!((limit_profile_f(0.0) - 0.3297).abs() < 1e-3);
    // The profile is decreasing across the window. At the far left the
    // distance sits within one double-precision ulp of 1 (the Poisson
    // overlap is around 1e-32 there), so correctly rounded evaluations tie
    // at exactly 1.0: strictness is only observable once the complement is
    // representable, from about c = -4.25 on.
    let mut c = -5.0;
    let mut prev = f64::INFINITY;
    while c <= 5.0 {
        let v = limit_profile_f(c);
        assert!(v <= prev, "profile must never increase, but did at c = {c}");
        if c >= -4.25 {
            assert!(v < prev, "profile must strictly decrease at c = {c}");
        } else {
            assert_eq!(v, 1.0, "saturated plateau at c = {c}");
        }
        prev = v;
        c += 0.25;
    }
    assert!(limit_profile_f(-5.0) > 0.95);
    assert!(limit_profile_f(5.0) < 0.02);
}

#[test]
fn profile_points_sample_the_profile() {
    let cs = [-2.0, 0.0, 1.5];
    let pts = profile_points(&cs);
    assert_eq!(pts.len(), 3);
    for (p, c) in pts.iter().zip(cs) {
        assert_eq!(p.c, c);
        assert_eq!(p.value, limit_profile_f(c));
    }
}

// ---------------------------------------------------------------------------
// Spectral upper bound.

#[test]
fn spectral_bound_table_matches_single_evaluations() {
    for walk in WALKS {
        let table = spectral_bound_table(walk, 8).unwrap();
        for k in [0u64, 1, 5, 20, 60] {
            let single = spectral_tv_upper_bound(walk, 8, k).unwrap();
            assert_eq!(table.bound(k), single, "{} at k = {k}", walk.token());
        }
    }
}

#[test]
fn spectral_bound_starts_at_the_full_mass_and_decreases() {
    for walk in WALKS {
        for n in [6usize, 40] {
            let table = spectral_bound_table(walk, n).unwrap();
            let order: f64 = (1..=n).map(|i| i as f64).product::<f64>() / 2.0;
            let k0 = table.bound(0);
            assert!(
                (k0 - 0.5 * (order - 1.0).sqrt()).abs() <= 1e-6 * k0,
                "k = 0 bound for {} at n = {n}",
                walk.token()
            );
            let mut prev = k0;
            for k in 1..=(3 * n as u64) {
                let b = table.bound(k);
                assert!(
                    b <= prev * (1.0 + 1e-12),
                    "bound increased for {} at n = {n}, k = {k}",
                    walk.token()
                );
                prev = b;
            }
        }
    }
}

#[test]
fn spectral_bound_dominates_exact_distance() {
    for walk in WALKS {
        for n in [5usize, 6] {
            let table = spectral_bound_table(walk, n).unwrap();
            for k in 0..=20u64 {
                let exact = exact_tv(walk, n, k).unwrap();
                let bound = table.bound(k);
                assert!(
                    exact <= bound + 1e-10,
                    "{} at n = {n}, k = {k}: exact {exact} > bound {bound}",
                    walk.token()
                );
            }
        }
    }
    assert!(spectral_bound_table(Walk::TransposeTop2, 3).is_err());
}

// ---------------------------------------------------------------------------
// Exact 2x2 block traces.

struct TestRng(u64);

impl TestRng {
    fn next(&mut self) -> u64 {
        // splitmix64-style scramble; any fixed scrambler works here.
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    fn uniform(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn mat_mul(x: [[f64; 2]; 2], y: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

fn mat_pow(m: [[f64; 2]; 2], mut e: u64) -> [[f64; 2]; 2] {
    let mut base = m;
    let mut acc = [[1.0, 0.0], [0.0, 1.0]];
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(acc, base);
        }
        base = mat_mul(base, base);
        e >>= 1;
    }
    acc
}

fn naive_block_trace(a: f64, b: f64, ap: f64, bp: f64, kappa: f64, n1: u64, n2: u64) -> f64 {
    let s = ap + bp;
    let swap = mat_pow([[0.0, s], [s, 0.0]], n1);
    let tri = mat_pow([[a * a, (a + b) / kappa], [0.0, b * b]], n2);
    let d = [
        [swap[0][0] - tri[0][0], swap[0][1] - tri[0][1]],
        [swap[1][0] - tri[1][0], swap[1][1] - tri[1][1]],
    ];
    let sq = mat_mul(d, d);
    sq[0][0] + sq[1][1]
}

#[test]
fn block_trace_matches_naive_matrix_powers() {
    let mut rng = TestRng(7);
    for _ in 0..2000 {
        let a = 2.0 * rng.uniform() - 1.0;
        let b = 2.0 * rng.uniform() - 1.0;
        let ap = 2.0 * rng.uniform() - 1.0;
        let bp = 2.0 * rng.uniform() - 1.0;
        let kappa = 1.0 + 19.0 * rng.uniform();
        let n1 = 1 + rng.next() % 40;
        let n2 = 1 + rng.next() % 40;
        let got = two_by_two_trace(a, b, ap, bp, kappa, n1, n2).unwrap();
        let want = naive_block_trace(a, b, ap, bp, kappa, n1, n2);
        let scale = want.abs().max(1.0);
        assert!(
            (got.trace - want).abs() <= 1e-10 * scale,
            "block trace at ({a}, {b}, {ap}, {bp}, {kappa}, {n1}, {n2}): {} vs {want}",
            got.trace
        );
        // For non-negative amplitudes the closed-form bound applies.
        let got = two_by_two_trace(a.abs(), b.abs(), ap.abs(), bp.abs(), kappa, n1, n2).unwrap();
        assert!(
            got.trace <= got.bound + 1e-12 * got.bound.abs().max(1.0),
            "bound violated at ({a}, {b}, {ap}, {bp}, {kappa}, {n1}, {n2})"
        );
    }
    assert!(two_by_two_trace(0.5, 0.5, 0.5, 0.5, 0.0, 1, 1).is_err());
    assert!(two_by_two_trace(0.5, 0.5, 0.5, 0.5, f64::NAN, 1, 1).is_err());
}

// ---------------------------------------------------------------------------
// Comparison sums.

/// |G| times the squared L2 distance between the two scheduled step
/// distributions, from dense convolution: the Parseval route.
fn parseval_reference(pair: ComparisonPair, n: usize, c: f64) -> f64 {
    let (wa, wb) = pair.walks();
    let da = distribution_at(wa, n, schedule(wa, n, c)).unwrap();
    let db = distribution_at(wb, n, schedule(wb, n, c)).unwrap();
    let size = enumerate_group(n).unwrap().size() as f64;
    size * da
        .probs()
        .iter()
        .zip(db.probs())
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<f64>()
}

#[test]
fn comparison_sums_match_the_parseval_route() {
    for pair in [ComparisonPair::PQ, ComparisonPair::PPprime] {
        for n in [5usize, 6] {
            for c in [-0.5, 0.0, 1.0] {
                let got = comparison_sum(pair, n, c, None).unwrap().sum;
                let want = parseval_reference(pair, n, c);
                assert!(
                    (got - want).abs() <= 1e-10 * want.abs().max(1e-12),
                    "{} at n = {n}, c = {c}: {got} vs {want}",
                    pair.token()
                );
            }
        }
    }
}

#[test]
fn comparison_sums_are_frozen_at_reference_points() {
    // Dense-convolution values, pinned to catch silent regressions.
    let cases = [
        (ComparisonPair::PQ, 5, 1.1368971519692e-1),
        (ComparisonPair::PPprime, 5, 4.8540538737233e-2),
        (ComparisonPair::PQ, 6, 1.0039208367625e-1),
        (ComparisonPair::PPprime, 6, 5.9918567260508e-2),
    ];
    for (pair, n, want) in cases {
        let got = comparison_sum(pair, n, 0.0, None).unwrap().sum;
        assert!(
            (got - want).abs() <= 1e-11 * want,
            "frozen {} at n = {n}: {got} vs {want}",
            pair.token()
        );
    }
}

#[test]
fn split_sums_add_up_to_the_total() {
    for c in [-1.0, 0.0, 1.0] {
        let m = choose_m(c, 1e-2).unwrap() as u32;
        for split in [m, 2, 30] {
            let out = comparison_sum(ComparisonPair::PQ, 12, c, Some(split)).unwrap();
            let split_part = out.split.expect("split requested");
            assert_eq!(split_part.m, split);
            let total = out.sum;
            assert!(
                (split_part.sum1 + split_part.sum2 - total).abs() <= 1e-10 * total.abs().max(1e-300),
                "split halves at c = {c}, m = {split}: {} + {} vs {total}",
                split_part.sum1,
                split_part.sum2
            );
            if split as usize >= 12 {
                assert_eq!(split_part.sum1, 0.0, "nothing below first part 0");
            }
        }
    }
}

#[test]
fn batched_requests_agree_with_single_evaluations() {
    let requests = [
        ComparisonRequest { pair: ComparisonPair::PQ, c: -0.5, split_m: None },
        ComparisonRequest { pair: ComparisonPair::PPprime, c: 0.0, split_m: Some(3) },
        ComparisonRequest { pair: ComparisonPair::PQ, c: 2.0, split_m: Some(7) },
    ];
    let batch = comparison_sums_batch(10, &requests).unwrap();
    for (req, out) in requests.iter().zip(&batch) {
        let single = comparison_sum(req.pair, 10, req.c, req.split_m).unwrap();
        assert_eq!(out.sum, single.sum, "batch vs single for {}", req.pair.token());
        assert_eq!(
            out.split.map(|s| (s.m, s.sum1, s.sum2)),
            single.split.map(|s| (s.m, s.sum1, s.sum2)),
        );
    }
}

#[test]
fn per_module_terms_add_up_to_the_comparison_sum() {
    for pair in [ComparisonPair::PQ, ComparisonPair::PPprime] {
        for n in [6usize, 8] {
            let c = 0.25;
            let mut total = 0.0;
            for label in canonical_labels(n).unwrap() {
                total += comparison_term(pair, &label, c).unwrap().value;
            }
            let want = comparison_sum(pair, n, c, None).unwrap().sum;
            assert!(
                (total - want).abs() <= 1e-9 * want.abs().max(1e-300),
                "module terms for {} at n = {n}: {total} vs {want}",
                pair.token()
            );
        }
    }
}

#[test]
fn comparison_bound_dominates_the_distance_gap() {
    for pair in [ComparisonPair::PQ, ComparisonPair::PPprime] {
        let (wa, wb) = pair.walks();
        for n in [5usize, 6] {
            for c in [-0.5, 0.0, 1.5] {
                let ka = schedule(wa, n, c);
                let kb = schedule(wb, n, c);
                let bound = tv_comparison_bound(wa, ka, wb, kb, n).unwrap();
                let gap = (exact_tv(wa, n, ka).unwrap() - exact_tv(wb, n, kb).unwrap()).abs();
                assert!(
                    gap <= bound + 1e-10,
                    "{} at n = {n}, c = {c}: gap {gap} > bound {bound}",
                    pair.token()
                );
                // The bound is half the root of the comparison sum.
                let sum = comparison_sum(pair, n, c, None).unwrap().sum;
                assert!(
                    (bound - 0.5 * sum.sqrt()).abs() <= 1e-12 * bound.max(1e-300),
                    "bound vs sum for {} at n = {n}, c = {c}",
                    pair.token()
                );
            }
        }
    }
    // Identical walks at identical times are at distance zero.
    let same = tv_comparison_bound(Walk::TransposeTop2, 5, Walk::TransposeTop2, 5, 8).unwrap();
    assert!(same.abs() < 1e-12);
    // Swapping the two walks changes nothing.
    let ab = tv_comparison_bound(Walk::TransposeTop2, 9, Walk::ThreeCycle, 4, 6).unwrap();
    let ba = tv_comparison_bound(Walk::ThreeCycle, 4, Walk::TransposeTop2, 9, 6).unwrap();
    assert!((ab - ba).abs() <= 1e-12 * ab);
}

#[test]
fn comparison_sum_rejects_out_of_domain_requests() {
    assert!(comparison_sum(ComparisonPair::PQ, 4, 0.0, None).is_err());
    assert!(comparison_sum(ComparisonPair::PQ, 10, 5.5, None).is_err());
    assert!(comparison_sum(ComparisonPair::PQ, 10, -6.0, None).is_err());
}

// ---------------------------------------------------------------------------
// Tail threshold.

/// Independent log-domain check that the tail sum over m >= threshold of
/// e^(-2 m c) / m! is at most epsilon / 8.
fn tail_log_sum(c: f64, from: u64) -> f64 {
    assert!(from >= 1);
    let mut lnfact: f64 = (1..=from).map(|i| (i as f64).ln()).sum();
    let mut acc = f64::NEG_INFINITY;
    let mut m = from;
    loop {
        let t = -2.0 * m as f64 * c - lnfact;
        let hi = acc.max(t);
        acc = if hi == f64::NEG_INFINITY {
            t
        } else {
            hi + ((acc - hi).exp() + (t - hi).exp()).ln()
        };
        // Stop once the terms are well past their peak and far below the
        // accumulated mass.
        if m as f64 > 2.0 * (-2.0 * c).exp() + 40.0 && t < acc - 60.0 {
            break;
        }
        m += 1;
        lnfact += (m as f64).ln();
        assert!(m < 10_000, "reference tail failed to converge");
    }
    acc
}

#[test]
fn tail_threshold_is_frozen_and_minimal() {
    let cases = [
        (0.0, 1e-2, 7u64),
        (0.0, 1e-6, 11),
        (1.0, 1e-2, 3),
        (-2.0, 1e-3, 155),
        (5.0, 1e-12, 3),
    ];
    for (c, eps, want) in cases {
        let got = choose_m(c, eps).unwrap();
        assert_eq!(got, want, "threshold at c = {c}, epsilon = {eps:e}");
        let target = (eps / 8.0).ln();
        assert!(
            tail_log_sum(c, got) <= target + 1e-9,
            "tail at the returned threshold must meet the target (c = {c})"
        );
        if got > 1 {
            assert!(
                tail_log_sum(c, got - 1) > target,
                "threshold must be minimal (c = {c})"
            );
        }
    }
    // A huge budget is satisfied by the smallest admissible threshold.
    assert_eq!(choose_m(0.0, 1e300).unwrap(), 1);
    assert!(choose_m(-5.5, 1e-3).is_err());
    assert!(choose_m(0.0, 0.0).is_err());
    assert!(choose_m(0.0, f64::NAN).is_err());
}

// ---------------------------------------------------------------------------
// Signed log-domain accumulation.

#[test]
fn signed_log_accumulator_behaves_like_signed_reals() {
    let x = SignedLogAccumulator::from_value(3.5);
    assert_eq!(x.sign(), 1);
    assert!((x.value() - 3.5).abs() < 1e-12);
    let y = SignedLogAccumulator::from_value(-1.25);
    let sum = x + y;
    assert!((sum.value() - 2.25).abs() < 1e-12);
    // Exact cancellation collapses to zero.
    let z = x + SignedLogAccumulator::from_value(-3.5);
    assert!(z.is_zero());
    assert_eq!(z.value(), 0.0);
    // Neutral element.
    let w = SignedLogAccumulator::zero() + y;
    assert_eq!(w.value(), y.value());
    // Push mirrors addition in sign/log form.
    let mut acc = SignedLogAccumulator::zero();
    acc.push(1, 2.0f64.ln());
    acc.push(-1, 5.0f64.ln());
    assert!((acc.value() + 3.0).abs() < 1e-12);
    // Huge magnitudes stay finite in log form.
    let big = SignedLogAccumulator::from_sign_log(1, 5000.0);
    let bigger = big + SignedLogAccumulator::from_sign_log(1, 5000.0 + std::f64::consts::LN_2);
    assert_eq!(bigger.sign(), 1);
    assert!((bigger.log_magnitude() - (5000.0 + (3.0f64).ln())).abs() < 1e-9);
}
