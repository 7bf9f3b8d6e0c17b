//! Spectrum formulas checked three ways: against dense matrix
//! diagonalization on small groups, against per-tableau evaluation, and
//! against exact trace identities that the regular representation forces.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use walkspectra::characters::normalized_three_cycle;
use walkspectra::combinatorics::{enumerate_standard_tableaux, Partition};
use walkspectra::group_oracle::{brute_spectrum, SpectrumTarget};
use walkspectra::spectra::{
    ag_spectrum, aggregate_total_count, canonical_labels, regular_spectrum_aggregate,
    tableau_tt2r_value, three_cycle_spectrum, tprime_blocks, tt2r_spectrum, IrrepLabel,
    IrrepVariant, SpectrumEntry,
};
use walkspectra::Walk;

fn shape(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn ratio(num: i64, den: i64) -> Ratio<BigInt> {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

fn half_factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product::<BigUint>() / 2u32
}

fn label_dimension(label: &IrrepLabel) -> BigUint {
    let d = label.shape().dimension();
    match label.variant() {
        IrrepVariant::Whole => d,
        IrrepVariant::Plus | IrrepVariant::Minus => d / 2u32,
    }
}

/// Expands spectrum entries into a sorted f64 list using exact counts.
fn expand(entries: &[SpectrumEntry]) -> Vec<f64> {
    let mut out = Vec::new();
    for e in entries {
        let count = e
            .count
            .exact
            .as_ref()
            .expect("exact counts at test sizes")
            .to_usize()
            .unwrap();
        out.extend(std::iter::repeat_n(e.value_f64(), count));
    }
    out.sort_by(|a, b| b.partial_cmp(a).unwrap());
    out
}

fn assert_spectra_close(formula: &[f64], brute: &[f64], tol: f64, what: &str) {
    assert_eq!(formula.len(), brute.len(), "{what}: multiset sizes differ");
    for (f, b) in formula.iter().zip(brute) {
        assert!((f - b).abs() <= tol, "{what}: eigenvalue {f} vs {b}");
    }
}

#[test]
fn aggregate_spectra_match_dense_diagonalization() {
    // (walk, minimum n at which the closed form exists)
    let cases = [
        (Walk::TransposeTop2, 4),
        (Walk::ThreeCycle, 5),
        (Walk::StarThreeCycle, 4),
    ];
    for (walk, min_n) in cases {
        for n in min_n..=5 {
            let formula = expand(&regular_spectrum_aggregate(walk, n).unwrap());
            let mut brute = brute_spectrum(SpectrumTarget::Walk(walk), n).unwrap();
            brute.sort_by(|a, b| b.partial_cmp(a).unwrap());
            assert_spectra_close(&formula, &brute, 1e-9, &format!("{} at n = {n}", walk.token()));
        }
    }
}

#[test]
fn top_two_transpose_spectrum_matches_per_tableau_values() {
    // Independent route: evaluate the eigenvalue tableau by tableau and
    // bucket, instead of going through corner-pair groups.
    for n in 4..=9 {
        for label in canonical_labels(n).unwrap() {
            let spec = tt2r_spectrum(&label).unwrap();
            let mut census: BTreeMap<Ratio<BigInt>, BigUint> = BTreeMap::new();
            for t in enumerate_standard_tableaux(label.shape()).unwrap() {
                let keep = match label.variant() {
                    IrrepVariant::Whole => true,
                    IrrepVariant::Plus => t.is_upper(),
                    IrrepVariant::Minus => !t.is_upper(),
                };
                if keep {
                    *census.entry(tableau_tt2r_value(&t)).or_default() += 1u32;
                }
            }
            assert_eq!(spec.entries.len(), census.len(), "distinct eigenvalues at {label}");
            for e in &spec.entries {
                let count = census
                    .get(&e.value)
                    .unwrap_or_else(|| panic!("eigenvalue {} missing at {label}", e.value));
                assert_eq!(
                    e.count.exact.as_ref().unwrap(),
                    count,
                    "multiplicity of {} at {label}",
                    e.value
                );
            }
        }
    }
}

#[test]
fn split_module_spectra_are_frozen_for_known_shapes() {
    // (2,2) splits into two one-dimensional halves, both with eigenvalue
    // -1/5 under the top-two-transpose walk at n = 4.
    for variant in [IrrepVariant::Plus, IrrepVariant::Minus] {
        let label = IrrepLabel::new(shape(&[2, 2]), variant).unwrap();
        let spec = tt2r_spectrum(&label).unwrap();
        assert_eq!(spec.entries.len(), 1, "single eigenvalue for 2.2 halves");
        assert_eq!(spec.entries[0].value, ratio(-1, 5));
        assert_eq!(spec.entries[0].count.exact, Some(BigUint::one()));
    }
    // (3,2,1) splits into two 8-dimensional halves with identical spectra
    // {2/9 x3, 0 x2, -2/9 x3} at n = 6.
    for variant in [IrrepVariant::Plus, IrrepVariant::Minus] {
        let label = IrrepLabel::new(shape(&[3, 2, 1]), variant).unwrap();
        let spec = tt2r_spectrum(&label).unwrap();
        let got: Vec<(Ratio<BigInt>, u32)> = spec
            .entries
            .iter()
            .map(|e| (e.value.clone(), e.count.exact.as_ref().unwrap().to_u32().unwrap()))
            .collect();
        let want = vec![(ratio(2, 9), 3u32), (ratio(0, 1), 2), (ratio(-2, 9), 3)];
        assert_eq!(got, want, "frozen 3.2.1 split spectrum, variant {variant:?}");
    }
}

#[test]
fn three_cycle_spectrum_is_the_scalar_from_the_character_route() {
    // The uniform 3-cycle walk acts as a scalar on each module; that scalar
    // must be the normalized 3-cycle character computed by the independent
    // recursion in the characters module.
    for n in 5..=10 {
        for label in canonical_labels(n).unwrap() {
            let spec = three_cycle_spectrum(&label).unwrap();
            assert_eq!(spec.entries.len(), 1, "scalar action at {label}");
            assert_eq!(
                spec.entries[0].value,
                normalized_three_cycle(label.shape()).unwrap(),
                "scalar vs character recursion at {label}"
            );
            assert_eq!(
                spec.entries[0].count.exact.as_ref().unwrap(),
                &label_dimension(&label),
                "scalar multiplicity at {label}"
            );
        }
    }
}

#[test]
fn star_walk_blocks_are_frozen_for_the_standard_module() {
    let label = IrrepLabel::new(shape(&[4, 1]), IrrepVariant::Whole).unwrap();
    let b = tprime_blocks(&label).unwrap();
    assert_eq!(b.singles.len(), 1);
    assert_eq!(b.singles[0].value, ratio(9, 16));
    assert_eq!(b.singles[0].count.exact, Some(BigUint::from(2u32)));
    assert_eq!(b.blocks.len(), 1);
    assert_eq!(b.blocks[0].a, ratio(3, 4));
    assert_eq!(b.blocks[0].b, ratio(-1, 4));
    assert_eq!(b.blocks[0].kappa, 4);
    assert_eq!(b.blocks[0].count.exact, Some(BigUint::one()));
    let expanded: Vec<(Ratio<BigInt>, u32)> = b
        .eigenvalue_entries()
        .iter()
        .map(|e| (e.value.clone(), e.count.exact.as_ref().unwrap().to_u32().unwrap()))
        .collect();
    assert_eq!(expanded, vec![(ratio(9, 16), 3u32), (ratio(1, 16), 1)]);
}

#[test]
fn star_walk_block_structure_is_consistent() {
    for n in 4..=9 {
        for label in canonical_labels(n).unwrap() {
            let b = tprime_blocks(&label).unwrap();
            let mut total = BigUint::zero();
            for s in &b.singles {
                total += s.count.exact.as_ref().unwrap();
            }
            for blk in &b.blocks {
                assert_eq!(blk.kappa as usize, n - 1, "kappa at {label}");
                assert!(blk.a > blk.b, "block orientation at {label}");
                total += blk.count.exact.as_ref().unwrap() * 2u32;
            }
            assert_eq!(total, label_dimension(&label), "slot count at {label}");
            for w in b.blocks.windows(2) {
                let k0 = (w[0].a.clone(), w[0].b.clone());
                let k1 = (w[1].a.clone(), w[1].b.clone());
                assert!(k0 > k1, "blocks must be sorted at {label}");
            }
        }
    }
}

/// First and second moments of an aggregate spectrum, exactly.
fn moments(entries: &[SpectrumEntry]) -> (Ratio<BigInt>, Ratio<BigInt>) {
    let mut m1 = Ratio::zero();
    let mut m2 = Ratio::zero();
    for e in entries {
        let count = Ratio::from_integer(BigInt::from(e.count.exact.clone().unwrap()));
        m1 += &count * &e.value;
        m2 += count * (&e.value * &e.value);
    }
    (m1, m2)
}

#[test]
fn aggregate_moments_match_return_probabilities() {
    // Trace identities for the walk operator on the regular representation:
    // sum of m lambda = |G| P(identity), and, the step distributions being
    // symmetric, sum of m lambda^2 = |G| P(two steps return).
    for n in 5..=10 {
        let order = Ratio::from_integer(BigInt::from(half_factorial(n)));
        let big_n = BigInt::from(n as i64);

        let entries = regular_spectrum_aggregate(Walk::TransposeTop2, n).unwrap();
        assert_eq!(aggregate_total_count(&entries), Some(half_factorial(n)));
        let (m1, m2) = moments(&entries);
        let id_mass = Ratio::new(BigInt::one(), BigInt::from(2 * n as i64 - 3));
        assert_eq!(m1, &order * &id_mass, "first moment of tt2r at n = {n}");
        assert_eq!(m2, &order * &id_mass, "second moment of tt2r at n = {n}");

        let entries = regular_spectrum_aggregate(Walk::ThreeCycle, n).unwrap();
        assert_eq!(aggregate_total_count(&entries), Some(half_factorial(n)));
        let (m1, m2) = moments(&entries);
        let cycles = &big_n * (&big_n - 1) * (&big_n - 2);
        assert_eq!(m1, Ratio::zero(), "first moment of cycles3 at n = {n}");
        assert_eq!(
            m2,
            &order * Ratio::new(BigInt::from(3), cycles),
            "second moment of cycles3 at n = {n}"
        );

        let entries = regular_spectrum_aggregate(Walk::StarThreeCycle, n).unwrap();
        assert_eq!(aggregate_total_count(&entries), Some(half_factorial(n)));
        let (m1, m2) = moments(&entries);
        let k: BigInt = &big_n - 1;
        assert_eq!(
            m1,
            &order * Ratio::new(BigInt::one(), k.clone()),
            "first moment of tprime at n = {n}"
        );
        // P(return in two steps) = 1/(n-1)^2 + (n-2)/(n-1)^3.
        let ret2 = Ratio::new(BigInt::one(), &k * &k) + Ratio::new(&big_n - 2, &k * &k * &k);
        assert_eq!(m2, &order * ret2, "second moment of tprime at n = {n}");
    }
}

#[test]
fn aggregates_contain_the_constant_eigenvalue_once() {
    for (walk, min_n) in [
        (Walk::TransposeTop2, 4),
        (Walk::ThreeCycle, 5),
        (Walk::StarThreeCycle, 4),
    ] {
        for n in min_n..=10 {
            let entries = regular_spectrum_aggregate(walk, n).unwrap();
            let ones: Vec<_> = entries.iter().filter(|e| e.value == Ratio::one()).collect();
            assert_eq!(ones.len(), 1, "{} at n = {n}", walk.token());
            assert_eq!(
                ones[0].count.exact,
                Some(BigUint::one()),
                "constant eigenvalue multiplicity for {} at n = {n}",
                walk.token()
            );
            for e in &entries {
                assert!(
                    e.value.abs() <= Ratio::one(),
                    "eigenvalue out of range for {} at n = {n}: {}",
                    walk.token(),
                    e.value
                );
            }
        }
    }
}

#[test]
fn aggregate_log_counts_track_exact_counts_at_larger_sizes() {
    for n in [12usize, 18] {
        let entries = regular_spectrum_aggregate(Walk::TransposeTop2, n).unwrap();
        assert_eq!(
            aggregate_total_count(&entries),
            Some(half_factorial(n)),
            "total count at n = {n}"
        );
        for e in &entries {
            if let Some(exact) = &e.count.exact {
                let reference = exact.to_f64().unwrap().ln();
                assert!(
                    (e.count.log - reference).abs() <= 1e-9 * reference.abs().max(1.0),
                    "log count drifted at n = {n}: {} vs {reference}",
                    e.count.log
                );
            }
        }
    }
}

#[test]
fn adjacency_graph_spectrum_is_frozen_at_n4() {
    let got: Vec<(i64, u64)> = ag_spectrum(4)
        .unwrap()
        .iter()
        .map(|(v, c)| (*v, c.exact.as_ref().unwrap().to_u64().unwrap()))
        .collect();
    assert_eq!(got, vec![(4, 1), (2, 3), (0, 3), (-2, 5)], "frozen degree-4 graph spectrum");
}

#[test]
fn adjacency_graph_spectrum_satisfies_graph_identities() {
    // Loop-free 2(n-2)-regular graph on n!/2 vertices: eigenvalues sum to
    // zero, squares sum to (number of vertices) x degree, and the top
    // eigenvalue is the degree with multiplicity one (connected graph).
    for n in 4..=7 {
        let entries = ag_spectrum(n).unwrap();
        let degree = 2 * (n as i64 - 2);
        let mut count_total = BigUint::zero();
        let mut sum = BigInt::ZERO;
        let mut sq_sum = BigInt::ZERO;
        for (v, c) in &entries {
            let c = BigInt::from(c.exact.clone().unwrap());
            count_total += c.to_biguint().unwrap();
            sum += BigInt::from(*v) * &c;
            sq_sum += BigInt::from(v * v) * &c;
        }
        assert_eq!(count_total, half_factorial(n), "vertex count at n = {n}");
        assert_eq!(sum, BigInt::ZERO, "trace at n = {n}");
        assert_eq!(
            sq_sum,
            BigInt::from(half_factorial(n)) * degree,
            "edge count at n = {n}"
        );
        assert_eq!(entries[0].0, degree, "top eigenvalue at n = {n}");
        assert_eq!(entries[0].1.exact, Some(BigUint::one()), "connectivity at n = {n}");
        assert!(
            entries.windows(2).all(|w| w[0].0 > w[1].0),
            "eigenvalues must be strictly sorted at n = {n}"
        );
    }
}

#[test]
fn adjacency_graph_spectrum_matches_dense_diagonalization() {
    for n in 4..=5 {
        let formula: Vec<f64> = {
            let mut out = Vec::new();
            for (v, c) in ag_spectrum(n).unwrap() {
                let count = c.exact.unwrap().to_usize().unwrap();
                out.extend(std::iter::repeat_n(v as f64, count));
            }
            out.sort_by(|a, b| b.partial_cmp(a).unwrap());
            out
        };
        let mut brute = brute_spectrum(SpectrumTarget::AdjacencyGraph, n).unwrap();
        brute.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_spectra_close(&formula, &brute, 1e-8, &format!("graph spectrum at n = {n}"));
    }
}

#[test]
fn labels_respect_shape_classes() {
    // Self-conjugate shapes must carry a sign, fat shapes must not, and
    // thin shapes are addressed through their conjugates.
    assert!(IrrepLabel::new(shape(&[3, 2, 1]), IrrepVariant::Whole).is_err());
    assert!(IrrepLabel::new(shape(&[3, 2, 1]), IrrepVariant::Plus).is_ok());
    assert!(IrrepLabel::new(shape(&[4, 2]), IrrepVariant::Whole).is_ok());
    assert!(IrrepLabel::new(shape(&[4, 2]), IrrepVariant::Minus).is_err());
    assert!(IrrepLabel::new(shape(&[2, 2, 1, 1]), IrrepVariant::Whole).is_err());
    assert!(IrrepLabel::new(shape(&[2, 2, 1, 1]), IrrepVariant::Plus).is_err());

    for n in 3..=10 {
        let labels = canonical_labels(n).unwrap();
        // Total dimension over canonical labels must be n!/2 ... squared.
        let mut total = BigUint::zero();
        for l in &labels {
            let d = label_dimension(l);
            total += &d * &d;
        }
        assert_eq!(total, half_factorial(n), "squared label dimensions at n = {n}");
        for l in &labels {
            let text = l.to_string();
            let back: IrrepLabel = text.parse().unwrap();
            assert_eq!(&back, l, "label round trip through {text:?}");
        }
    }
}

#[test]
fn formula_paths_reject_sizes_without_closed_forms() {
    let tiny = IrrepLabel::new(shape(&[3]), IrrepVariant::Whole);
    assert!(tiny.is_ok(), "3-box row is a valid fat label");
    assert!(tt2r_spectrum(tiny.as_ref().unwrap()).is_err(), "no tt2r closed form at n = 3");
    let four = IrrepLabel::new(shape(&[3, 1]), IrrepVariant::Whole).unwrap();
    assert!(three_cycle_spectrum(&four).is_err(), "no scalar form at n = 4");
    assert!(tprime_blocks(&four).is_ok(), "star blocks exist at n = 4");
    assert!(regular_spectrum_aggregate(Walk::ThreeCycle, 4).is_err());
    assert!(regular_spectrum_aggregate(Walk::TransposeTop2, 3).is_err());
    assert!(ag_spectrum(2).is_err());
}
