//! Cross-cutting properties, each checked against an independent oracle
//! or an internal consistency law on seeded corpora.

mod common;

use common::{
    all_exponents, exact_exponent_from_tag, exponent_from_tag, scaled_candidate, seeded_frame,
    space,
};
use proptest::prelude::*;
use schauder::rng::Rng;
use schauder::{
    besselian_constant, besselian_diagnostic, build_transfer, criterion_cor35, criterion_cor36,
    criterion_thm33, dimension_bound_vectors, emit_perturbed_frames,
    frame_constant, operator_norm, oracle, remark38_minimal_n, validate_frame, BilinearBudget,
    BoundMode, Exponent, FramePair, Functional, Matrix, Operator, PerturbationCandidate, Vector,
};

fn random_coords(rng: &mut Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.symmetric()).collect()
}

fn random_matrix(rng: &mut Rng, rows: usize, cols: usize) -> Matrix {
    let rows_data: Vec<Vec<f64>> = (0..rows).map(|_| random_coords(rng, cols)).collect();
    Matrix::from_rows(&rows_data).expect("rectangular draw")
}

proptest! {
    /// `‖λ·x‖ = |λ|·‖x‖` at every exponent.
    #[test]
    fn vector_norm_is_homogeneous(seed in any::<u64>(), dim in 1usize..=6, ptag in 0u8..5) {
        let s = space(dim, exponent_from_tag(ptag));
        let mut rng = Rng::new(seed);
        let x = Vector::new(s, random_coords(&mut rng, dim)).unwrap();
        let lambda = 3.0 * rng.symmetric();
        let scaled = x.scale(lambda);
        let expected = lambda.abs() * x.norm();
        prop_assert!(
            (scaled.norm() - expected).abs() <= 1e-12 * expected.max(1.0),
            "homogeneity broke: {} vs {}", scaled.norm(), expected
        );
    }

    /// `|f(x)| ≤ ‖f‖_q · ‖x‖_p` — the pairing never exceeds the dual norms.
    #[test]
    fn pairing_respects_dual_norms(seed in any::<u64>(), dim in 1usize..=6, ptag in 0u8..5) {
        let s = space(dim, exponent_from_tag(ptag));
        let mut rng = Rng::new(seed);
        let x = Vector::new(s, random_coords(&mut rng, dim)).unwrap();
        let f = Functional::new(s, random_coords(&mut rng, dim)).unwrap();
        let bound = f.norm() * x.norm();
        prop_assert!(f.apply(&x).abs() <= bound * (1.0 + 1e-12) + 1e-300);
    }

    /// An operator norm bound must dominate every sampled ratio, and the
    /// certified interval must be ordered.
    #[test]
    fn operator_norm_dominates_samples(seed in any::<u64>(), dim in 1usize..=6, ptag in 0u8..5) {
        let s = space(dim, exponent_from_tag(ptag));
        let mut rng = Rng::new(seed);
        let m = random_matrix(&mut rng, dim, dim);
        let op = Operator::new(s, m).unwrap();
        let norm = operator_norm(&op);
        prop_assert!(norm.lower <= norm.upper * (1.0 + 1e-12) + 1e-300);
        for _ in 0..8 {
            let x = Vector::new(s, random_coords(&mut rng, dim)).unwrap();
            if x.norm() <= 1e-12 {
                continue;
            }
            let ratio = op.apply(&x).norm() / x.norm();
            prop_assert!(
                ratio <= norm.upper * (1.0 + 1e-9) + 1e-12,
                "sampled ratio {ratio} exceeds certified upper {}", norm.upper
            );
        }
    }

    /// Closed-form exact norms agree with the oracle's independent
    /// extreme-point / bisection evaluations.
    #[test]
    fn exact_norms_match_the_oracle(seed in any::<u64>(), dim in 1usize..=6, ptag in 0u8..3) {
        let p = exact_exponent_from_tag(ptag);
        let s = space(dim, p);
        let mut rng = Rng::new(seed);
        let m = random_matrix(&mut rng, dim, dim);
        let norm = operator_norm(&Operator::new(s, m.clone()).unwrap());
        prop_assert!(norm.exact);
        let reference = if p == Exponent::Finite(2.0) {
            oracle::spectral_norm_bisect(&m)
        } else {
            oracle::ball_vertex_norm(&m, p).unwrap()
        };
        prop_assert!(
            (norm.upper - reference).abs() <= 1e-9 * reference.max(1.0),
            "norm {} vs oracle {reference}", norm.upper
        );
    }

    /// At exponents without closed forms the certified interval must
    /// bracket the oracle's independent dense ascent.
    #[test]
    fn general_interval_brackets_oracle_ascent(seed in any::<u64>(), dim in 2usize..=6, pv in prop::sample::select(vec![1.3f64, 1.5, 2.5, 4.0])) {
        let s = space(dim, Exponent::Finite(pv));
        let mut rng = Rng::new(seed);
        let m = random_matrix(&mut rng, dim, dim);
        let norm = operator_norm(&Operator::new(s, m.clone()).unwrap());
        let ascent = oracle::dense_ascent_lower(&m, pv, 12, seed);
        prop_assert!(
            ascent <= norm.upper * (1.0 + 1e-9) + 1e-12,
            "oracle ascent {ascent} escaped the certified upper {}", norm.upper
        );
        prop_assert!(norm.lower <= norm.upper + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Both frame constants are at least 1 on genuine frames (the full
    /// partial sum is the identity; the all-plus sign pattern is the
    /// synthesis operator).
    #[test]
    fn constants_dominate_one(seed in any::<u64>(), dim in 1usize..=5, extra in 0usize..3, ptag in 0u8..5) {
        let s = space(dim, exponent_from_tag(ptag));
        let f = seeded_frame(s, dim + extra, seed);
        let k = frame_constant(&f).unwrap();
        prop_assert!(k.upper >= 1.0 - 1e-9, "K = {k}");
        let l = besselian_constant(&f, BoundMode::Bounds, &BilinearBudget::default()).unwrap();
        prop_assert!(l.upper >= 1.0 - 1e-9, "L = {l}");
        if s.p().has_exact_operator_norm() && f.len() <= 12 {
            let l_exact = besselian_constant(&f, BoundMode::Exact, &BilinearBudget::default()).unwrap();
            prop_assert!(l_exact.upper >= 1.0 - 1e-9, "exact L = {l_exact}");
        }
    }

    /// The summability constant is invariant under `aₙ → cₙ·aₙ`,
    /// `bₙ* → bₙ*/cₙ` (the synthesis terms are unchanged) and under
    /// permuting the pairs (the sign enumeration is order-free).
    #[test]
    fn summability_constant_invariances(seed in any::<u64>(), dim in 1usize..=4, extra in 0usize..3, ptag in 0u8..3) {
        let s = space(dim, exact_exponent_from_tag(ptag));
        let f = seeded_frame(s, dim + extra, seed);
        prop_assume!(f.len() <= 10);
        let budget = BilinearBudget::default();
        let l = besselian_constant(&f, BoundMode::Exact, &budget).unwrap();

        let mut rng = Rng::new(seed ^ 0xabcd);
        let rescaled_pairs: Vec<(Vector, Functional)> = (0..f.len())
            .map(|n| {
                let c = 0.5 + 1.5 * rng.uniform();
                (
                    f.vector(n).scale(c),
                    f.functional(n).scale(1.0 / c),
                )
            })
            .collect();
        let rescaled = FramePair::new(s, rescaled_pairs).unwrap();
        prop_assert!(validate_frame(&rescaled, schauder::defaults::EMITTED_FRAME_TOL).is_frame);
        let l_rescaled = besselian_constant(&rescaled, BoundMode::Exact, &budget).unwrap();
        prop_assert!(
            (l.upper - l_rescaled.upper).abs() <= 1e-9 * l.upper.max(1.0),
            "rescaling moved L: {} vs {}", l.upper, l_rescaled.upper
        );

        let mut order: Vec<usize> = (0..f.len()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.below(i + 1));
        }
        let permuted_pairs: Vec<(Vector, Functional)> = order
            .iter()
            .map(|&n| (f.vector(n).clone(), f.functional(n).clone()))
            .collect();
        let permuted = FramePair::new(s, permuted_pairs).unwrap();
        let l_permuted = besselian_constant(&permuted, BoundMode::Exact, &budget).unwrap();
        prop_assert!(
            (l.upper - l_permuted.upper).abs() <= 1e-9 * l.upper.max(1.0),
            "permutation moved L: {} vs {}", l.upper, l_permuted.upper
        );
    }

    /// Interval mode must bracket exact mode, and the certified upper can
    /// never undercut the plain summable bound by more than rounding.
    #[test]
    fn bounds_bracket_exact_and_respect_crude(seed in any::<u64>(), dim in 1usize..=4, extra in 0usize..3, ptag in 0u8..5) {
        let s = space(dim, exponent_from_tag(ptag));
        let f = seeded_frame(s, dim + extra, seed);
        prop_assume!(f.len() <= 10);
        let budget = BilinearBudget::default();
        let bounds = besselian_constant(&f, BoundMode::Bounds, &budget).unwrap();
        let crude: f64 = (0..f.len())
            .map(|n| f.vector(n).norm() * f.functional(n).norm())
            .sum();
        prop_assert!(
            bounds.upper <= crude + 1e-9,
            "certified upper {} above crude sum {crude}", bounds.upper
        );
        if s.p().has_exact_operator_norm() {
            let exact = besselian_constant(&f, BoundMode::Exact, &budget).unwrap();
            prop_assert!(bounds.lower <= exact.upper + 1e-9 * exact.upper.max(1.0));
            prop_assert!(exact.upper <= bounds.upper + 1e-9 * exact.upper.max(1.0));
            let sampled = besselian_diagnostic(&f, 400, seed);
            prop_assert!(
                sampled <= exact.upper + 1e-9,
                "sampled ratio {sampled} above exact L {}", exact.upper
            );
        }
    }

    /// A satisfied reconstruction criterion really does bound the
    /// transfer operator's distance from the identity.
    #[test]
    fn reconstruction_value_bounds_the_transfer(seed in any::<u64>(), dim in 1usize..=5, extra in 0usize..3, ptag in 0u8..5) {
        let s = space(dim, exponent_from_tag(ptag));
        let f = seeded_frame(s, dim + extra, seed);
        let (candidate, report) = scaled_candidate(&f, seed, 0.8, true);
        prop_assume!(report.satisfied);
        let t = build_transfer(&candidate);
        let deviation = Operator::new(s, t.matrix().minus_identity()).unwrap();
        let measured = operator_norm(&deviation);
        if s.p().has_exact_operator_norm() {
            prop_assert!(
                measured.upper <= report.value.upper + 1e-9,
                "‖T−I‖ = {} above criterion {}", measured.upper, report.value.upper
            );
        } else {
            prop_assert!(
                measured.lower <= report.value.upper + 1e-9,
                "‖T−I‖ ≥ {} above criterion {}", measured.lower, report.value.upper
            );
        }
    }

    /// The sign-pattern criterion is dominated by the plain summable one
    /// at every exponent and in both modes.
    #[test]
    fn sign_pattern_criterion_is_dominated(seed in any::<u64>(), dim in 1usize..=4, extra in 0usize..3, ptag in 0u8..5) {
        let s = space(dim, exponent_from_tag(ptag));
        let f = seeded_frame(s, dim + extra, seed);
        prop_assume!(f.len() <= 10);
        let (candidate, cor34) = scaled_candidate(&f, seed, 0.9, false);
        let budget = BilinearBudget::default();
        let bounds = criterion_thm33(&candidate, BoundMode::Bounds, &budget).unwrap();
        prop_assert!(
            bounds.value.upper <= cor34.value.upper + 1e-9,
            "bounds-mode sign criterion {} above summable bound {}",
            bounds.value.upper, cor34.value.upper
        );
        if s.p().has_exact_operator_norm() {
            let exact = criterion_thm33(&candidate, BoundMode::Exact, &budget).unwrap();
            prop_assert!(exact.value.upper <= cor34.value.upper + 1e-9);
            prop_assert!(exact.value.upper <= bounds.value.upper + 1e-9 * exact.value.upper.max(1.0));
        }
    }

    /// Substituting only vectors (or only functionals) into the general
    /// sign-pattern criterion reproduces the specialized criteria bit for
    /// bit.
    #[test]
    fn specialized_criteria_are_bitwise_substitutions(seed in any::<u64>(), dim in 1usize..=4, extra in 0usize..3, ptag in 0u8..5) {
        let s = space(dim, exponent_from_tag(ptag));
        let f = seeded_frame(s, dim + extra, seed);
        prop_assume!(f.len() <= 10);
        let (candidate, _) = scaled_candidate(&f, seed, 0.9, false);
        let budget = BilinearBudget::default();
        let mode = if s.p().has_exact_operator_norm() { BoundMode::Exact } else { BoundMode::Bounds };

        let xs: Vec<Vector> = (0..candidate.len()).map(|n| candidate.vector(n).clone()).collect();
        let vector_only = criterion_cor35(&f, &xs, mode, &budget).unwrap();
        let substituted_pairs: Vec<(Vector, Functional)> = (0..f.len())
            .map(|n| (xs[n].clone(), f.functional(n).clone()))
            .collect();
        let substituted = PerturbationCandidate::new(f.clone(), substituted_pairs).unwrap();
        let general = criterion_thm33(&substituted, mode, &budget).unwrap();
        prop_assert_eq!(vector_only.value.upper.to_bits(), general.value.upper.to_bits());
        prop_assert_eq!(vector_only.value.lower.to_bits(), general.value.lower.to_bits());

        let ys: Vec<Functional> = (0..candidate.len()).map(|n| candidate.functional(n).clone()).collect();
        let functional_only = criterion_cor36(&f, &ys, mode, &budget).unwrap();
        let substituted_pairs: Vec<(Vector, Functional)> = (0..f.len())
            .map(|n| (f.vector(n).clone(), ys[n].clone()))
            .collect();
        let substituted = PerturbationCandidate::new(f.clone(), substituted_pairs).unwrap();
        let general = criterion_thm33(&substituted, mode, &budget).unwrap();
        prop_assert_eq!(functional_only.value.upper.to_bits(), general.value.upper.to_bits());
        prop_assert_eq!(functional_only.value.lower.to_bits(), general.value.lower.to_bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Emission produces two validating frames, a certified witness, and
    /// coordinatewise reconstruction through the corrector.
    #[test]
    fn emission_round_trips(seed in any::<u64>(), dim in 1usize..=5, extra in 0usize..3, ptag in 0u8..3) {
        let s = space(dim, exact_exponent_from_tag(ptag));
        let f = seeded_frame(s, dim + extra, seed);
        let (candidate, report) = scaled_candidate(&f, seed, 0.6, true);
        prop_assume!(report.satisfied);
        let emitted = emit_perturbed_frames(&candidate, &report, schauder::defaults::NEUMANN_TOL, false).unwrap();

        prop_assert!(emitted.certified);
        prop_assert!(validate_frame(&emitted.frame_xz, 1e-8).is_frame);
        prop_assert!(validate_frame(&emitted.frame_wy, 1e-8).is_frame);
        prop_assert!(emitted.witness.residual() <= 1e-8);

        // R really undoes T on every basis direction.
        let t = &emitted.transfer.forward;
        let r = &emitted.transfer.inverse;
        for i in 0..dim {
            let e = Vector::unit(s, i);
            let back = r.apply(&t.apply(&e));
            for j in 0..dim {
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!(
                    (back.coords()[j] - expected).abs() <= 1e-9,
                    "R(T(e_{i})) strayed at coordinate {j}: {}", back.coords()[j]
                );
            }
        }
    }

    /// The Neumann partial sum agrees with the oracle's elimination
    /// inverse within the emitted certificate.
    #[test]
    fn neumann_inverse_matches_elimination(seed in any::<u64>(), dim in 1usize..=5, extra in 0usize..3, ptag in 0u8..3) {
        let s = space(dim, exact_exponent_from_tag(ptag));
        let f = seeded_frame(s, dim + extra, seed);
        let (candidate, report) = scaled_candidate(&f, seed, 0.6, true);
        prop_assume!(report.satisfied);
        let emitted = emit_perturbed_frames(&candidate, &report, schauder::defaults::NEUMANN_TOL, false).unwrap();
        let reference = oracle::direct_inverse(emitted.transfer.forward.matrix()).unwrap();
        let difference = emitted.transfer.inverse.matrix().sub(&reference);
        let gap = operator_norm(&Operator::new(s, difference).unwrap()).upper;
        prop_assert!(
            gap <= emitted.transfer.inverse_error + 1e-9,
            "‖R_neumann − R_oracle‖ = {gap} above certificate {}", emitted.transfer.inverse_error
        );
    }

    /// Pure tail certificates shrink as the kept prefix grows, sharp
    /// certificates are never coarser than crude ones, and no certificate
    /// ever contradicts the known dimension (checked by an internal
    /// assertion on every call).
    #[test]
    fn dimension_certificates_are_sound_and_monotone(seed in any::<u64>(), dim in 1usize..=4, extra in 0usize..4, ptag in 0u8..3) {
        let s = space(dim, exact_exponent_from_tag(ptag));
        let f = seeded_frame(s, dim + extra, seed);
        prop_assume!(f.len() <= 10);
        let budget = BilinearBudget::default();

        let mut previous = f64::INFINITY;
        for n in 1..=f.len() {
            let replacements: Vec<Vector> = (0..n).map(|i| f.vector(i).clone()).collect();
            let cert = dimension_bound_vectors(&f, &replacements, BoundMode::Exact, &budget).unwrap();
            prop_assert!(
                cert.tail.upper <= previous + 1e-9,
                "tail grew with a longer prefix: {} after {previous}", cert.tail.upper
            );
            previous = cert.tail.upper;
        }

        let crude = remark38_minimal_n(&f, false, &budget).unwrap();
        let sharp = remark38_minimal_n(&f, true, &budget).unwrap();
        prop_assert!(sharp.n <= crude.n, "sharp N {} coarser than crude N {}", sharp.n, crude.n);
        prop_assert!(crude.valid && sharp.valid);
    }
}

/// The five-exponent palette stays in sync with the space constructor.
#[test]
fn exponent_palette_is_well_formed() {
    for p in all_exponents() {
        let s = space(3, p);
        assert_eq!(s.dim(), 3);
    }
}
