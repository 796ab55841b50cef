//! Shared helpers for the integration suites: exponent palettes, seeded
//! frame corpora, and perturbation candidates scaled onto a criterion
//! target.

#![allow(dead_code)] // each test target uses a different subset

use schauder::rng::Rng;
use schauder::{
    criterion_cor34, criterion_thm31, CriterionReport, Exponent, FramePair, Functional,
    PNormSpace, PerturbationCandidate, Vector,
};

/// The exponents every cross-cutting property is exercised at.
pub fn all_exponents() -> [Exponent; 5] {
    [
        Exponent::Finite(1.0),
        Exponent::Finite(1.5),
        Exponent::Finite(2.0),
        Exponent::Finite(3.0),
        Exponent::Infinity,
    ]
}

/// The exponents with closed-form operator norms.
pub fn exact_exponents() -> [Exponent; 3] {
    [
        Exponent::Finite(1.0),
        Exponent::Finite(2.0),
        Exponent::Infinity,
    ]
}

/// Indexes into [`all_exponents`] from an arbitrary byte.
pub fn exponent_from_tag(tag: u8) -> Exponent {
    all_exponents()[(tag as usize) % 5]
}

/// Indexes into [`exact_exponents`] from an arbitrary byte.
pub fn exact_exponent_from_tag(tag: u8) -> Exponent {
    exact_exponents()[(tag as usize) % 3]
}

pub fn space(dim: usize, p: Exponent) -> PNormSpace {
    PNormSpace::new(dim, p).expect("test spaces are well-formed")
}

/// A seeded frame: mostly random, occasionally tight or canonical so the
/// corpus also contains the structured extremes.
pub fn seeded_frame(s: PNormSpace, m: usize, seed: u64) -> FramePair {
    match seed % 8 {
        0 => schauder::canonical_frame(s),
        1 => schauder::tight_frame(s, m.max(s.dim()), seed).expect("tight draw"),
        _ => schauder::random_frame(s, m.max(s.dim()), seed).expect("random draw"),
    }
}

/// Draws a perturbation of every pair of `base` and scales it until the
/// chosen criterion value sits at or below `target` (which must be in
/// `(0, 1)` for the report to come back satisfied).
///
/// `reconstruction` selects the frame-constant criterion; otherwise the
/// plain summable one is used for the scaling loop. Returns the candidate
/// together with the report of the criterion it was scaled against.
pub fn scaled_candidate(
    base: &FramePair,
    seed: u64,
    target: f64,
    reconstruction: bool,
) -> (PerturbationCandidate, CriterionReport) {
    let s = base.space();
    let d = s.dim();
    let mut rng = Rng::new(seed ^ 0x9e37_79b9_7f4a_7c15);
    let dx: Vec<Vec<f64>> = (0..base.len())
        .map(|_| (0..d).map(|_| rng.symmetric()).collect())
        .collect();
    let dy: Vec<Vec<f64>> = (0..base.len())
        .map(|_| (0..d).map(|_| rng.symmetric()).collect())
        .collect();

    let build = |scale: f64| -> PerturbationCandidate {
        let pairs = (0..base.len())
            .map(|n| {
                let a = base.vector(n).coords();
                let b = base.functional(n).coords();
                let x: Vec<f64> = a.iter().zip(&dx[n]).map(|(&c, &e)| c + scale * e).collect();
                let y: Vec<f64> = b.iter().zip(&dy[n]).map(|(&c, &e)| c + scale * e).collect();
                (
                    Vector::new(s, x).expect("finite coords"),
                    Functional::new(s, y).expect("finite coords"),
                )
            })
            .collect();
        PerturbationCandidate::new(base.clone(), pairs).expect("lengths match")
    };

    let mut scale = 0.5;
    for _ in 0..200 {
        let candidate = build(scale);
        let report = if reconstruction {
            criterion_thm31(&candidate).expect("base is a frame")
        } else {
            criterion_cor34(&candidate).expect("base is a frame")
        };
        let value = report.value.upper;
        if value <= target && value > 0.0 {
            return (candidate, report);
        }
        // The criteria vanish continuously with the perturbation size, so
        // a multiplicative shrink always lands inside the target.
        let shrink = if value > 0.0 {
            (0.8 * target / value).min(0.5)
        } else {
            0.5
        };
        scale *= shrink.max(1e-3);
        if scale < 1e-14 {
            break;
        }
    }
    let candidate = build(scale);
    let report = if reconstruction {
        criterion_thm31(&candidate).expect("base is a frame")
    } else {
        criterion_cor34(&candidate).expect("base is a frame")
    };
    (candidate, report)
}
