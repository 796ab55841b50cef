//! Dimension certificates from tail criteria.
//!
//! If the pairs of a frame beyond some index `N` are summably small —
//! precisely, if the sign-pattern norm of the tail terms (optionally
//! after replacing the first `N` vectors or functionals) stays below 1 —
//! then the first `N` pairs already carry the space and `dim E ≤ N`.
//! All certificates here are *sound by construction*: validity is
//! decided on conservative upper bounds, and because the ambient
//! dimension is known at desk scale, every valid certificate is
//! hard-checked against it. A failed check would be a library bug, and
//! is treated as one (panic), not as a user error.

use alloc::vec::Vec;

use crate::bound::ConstantBound;
use crate::defaults;
use crate::error::{Error, Result};
use crate::frames::{abs_bilinear_norm, BilinearBudget, BoundMode, FramePair};
use crate::matrix::Matrix;
use crate::space::{self, Functional, Vector};

/// Which tail criterion produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionMethod {
    /// Vector-replacement tail criterion.
    Cor37a,
    /// Functional-replacement tail criterion.
    Cor37b,
    /// Minimal-prefix scan over the plain or sign-pattern tail.
    Remark38,
}

impl DimensionMethod {
    /// Stable identifier used in reports.
    pub fn id(self) -> &'static str {
        match self {
            DimensionMethod::Cor37a => "cor37a",
            DimensionMethod::Cor37b => "cor37b",
            DimensionMethod::Remark38 => "remark38",
        }
    }
}

impl core::fmt::Display for DimensionMethod {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.id())
    }
}

/// A certified claim `dim E ≤ n`, valid when the tail value is `< 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionCertificate {
    /// The asserted bound: when `valid`, the space dimension is ≤ `n`.
    pub n: usize,
    /// Certified value of the tail criterion.
    pub tail: ConstantBound,
    /// Which criterion produced the certificate.
    pub method: DimensionMethod,
    /// The tail clears the unit threshold by the validity guard band.
    pub valid: bool,
}

/// The strict `tail < 1` test, hardened against f64 rounding.
///
/// A tail whose true value is exactly 1 (e.g. the Mercedes frame with a
/// single kept pair) can evaluate a few ulps *below* 1, and accepting it
/// would certify a dimension bound that is false. Requiring the computed
/// upper bound to clear 1 by [`defaults::DIMENSION_GUARD`] absorbs that
/// rounding; it can only make certificates more conservative.
fn clears_unit_threshold(upper: f64) -> bool {
    upper < 1.0 - defaults::DIMENSION_GUARD
}

fn certify(
    dim: usize,
    n: usize,
    tail: ConstantBound,
    method: DimensionMethod,
) -> DimensionCertificate {
    let valid = clears_unit_threshold(tail.upper);
    assert!(
        !valid || dim <= n,
        "sound-by-construction certificate asserted dim ≤ {n} on a {dim}-dimensional space"
    );
    DimensionCertificate {
        n,
        tail,
        method,
        valid,
    }
}

/// Evaluates a tail family's sign-pattern norm, tightened in bounds mode
/// by the exact rank-one sum `Σ ‖uₙ‖·‖vₙ*‖` of the factors.
fn tail_value(
    f: &FramePair,
    terms: &[Matrix],
    rank_one_sum: f64,
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<ConstantBound> {
    let raw = abs_bilinear_norm(f.space(), terms, mode, budget)?;
    Ok(match mode {
        BoundMode::Exact => {
            if raw.upper <= rank_one_sum {
                raw
            } else {
                // Enumeration rounding crept past the triangle bound;
                // the smaller of the two is still certified.
                ConstantBound::interval(raw.lower.min(rank_one_sum), rank_one_sum)
            }
        }
        BoundMode::Bounds => {
            let upper = raw.upper.min(rank_one_sum);
            ConstantBound::interval(raw.lower.min(upper), upper)
        }
    })
}

/// Certifies `dim E ≤ N` from a frame and `N` replacement vectors: the
/// tail terms are `(x⁰ₙ−aₙ)⊗bₙ*` for `n ≤ N` and `aₙ⊗bₙ*` beyond, and
/// the certificate is valid when their sign-pattern norm stays below 1.
///
/// `N` is the number of replacements; it must not exceed the frame
/// length. Choosing `x⁰ₙ = aₙ` reduces this to the pure tail criterion.
pub fn dimension_bound_vectors(
    f: &FramePair,
    replacements: &[Vector],
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<DimensionCertificate> {
    let n = replacements.len();
    if n > f.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            got: n,
        });
    }
    for x in replacements {
        if x.space() != f.space() {
            return Err(Error::SpaceMismatch);
        }
    }
    f.ensure_frame(defaults::EMITTED_FRAME_TOL)?;
    let p = f.space().p();
    let q = f.space().dual_exponent();

    let mut terms = Vec::with_capacity(f.len());
    let mut rank_one_sum = 0.0f64;
    for (i, x0) in replacements.iter().enumerate() {
        let dx = x0.sub(f.vector(i));
        let b = f.functional(i);
        terms.push(Matrix::outer(dx.coords(), b.coords()));
        rank_one_sum += space::pnorm(p, dx.coords()) * space::pnorm(q, b.coords());
    }
    for i in n..f.len() {
        terms.push(f.term(i));
        rank_one_sum +=
            space::pnorm(p, f.vector(i).coords()) * space::pnorm(q, f.functional(i).coords());
    }

    let tail = tail_value(f, &terms, rank_one_sum, mode, budget)?;
    Ok(certify(f.space().dim(), n, tail, DimensionMethod::Cor37a))
}

/// Certifies `dim E ≤ N` from a frame and `N` replacement functionals:
/// the tail terms are `aₙ⊗(y⁰ₙ−bₙ*)` for `n ≤ N` and `aₙ⊗bₙ*` beyond.
pub fn dimension_bound_functionals(
    f: &FramePair,
    replacements: &[Functional],
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<DimensionCertificate> {
    let n = replacements.len();
    if n > f.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            got: n,
        });
    }
    for y in replacements {
        if y.space() != f.space() {
            return Err(Error::SpaceMismatch);
        }
    }
    f.ensure_frame(defaults::EMITTED_FRAME_TOL)?;
    let p = f.space().p();
    let q = f.space().dual_exponent();

    let mut terms = Vec::with_capacity(f.len());
    let mut rank_one_sum = 0.0f64;
    for (i, y0) in replacements.iter().enumerate() {
        let dy = y0.sub(f.functional(i));
        let a = f.vector(i);
        terms.push(Matrix::outer(a.coords(), dy.coords()));
        rank_one_sum += space::pnorm(p, a.coords()) * space::pnorm(q, dy.coords());
    }
    for i in n..f.len() {
        terms.push(f.term(i));
        rank_one_sum +=
            space::pnorm(p, f.vector(i).coords()) * space::pnorm(q, f.functional(i).coords());
    }

    let tail = tail_value(f, &terms, rank_one_sum, mode, budget)?;
    Ok(certify(f.space().dim(), n, tail, DimensionMethod::Cor37b))
}

/// Finds the smallest `N` whose tail certifies `dim E ≤ N`.
///
/// In the default (crude) mode the tail is the plain sum
/// `Σ_{n>N} ‖aₙ‖·‖bₙ*‖`, computed by a backward recurrence so it is
/// exactly nonincreasing in `N`. In `sharp` mode the tail is the
/// sign-pattern norm of the tail terms, capped by the crude sum so the
/// sharp answer never lands above the crude one; past the enumeration
/// cap (or at exponents without closed-form norms) it falls back to
/// certified bounds. `N = M` always succeeds (empty tail), so the scan
/// cannot fail on a genuine frame.
pub fn remark38_minimal_n(
    f: &FramePair,
    sharp: bool,
    budget: &BilinearBudget,
) -> Result<DimensionCertificate> {
    f.ensure_frame(defaults::EMITTED_FRAME_TOL)?;
    let m = f.len();
    let p = f.space().p();
    let q = f.space().dual_exponent();

    // crude_tail[i] = Σ_{k ≥ i} ‖aₖ‖·‖bₖ*‖, built backwards so it is
    // monotone by construction.
    let mut crude_tail = alloc::vec![0.0f64; m + 1];
    for i in (0..m).rev() {
        crude_tail[i] = crude_tail[i + 1]
            + space::pnorm(p, f.vector(i).coords()) * space::pnorm(q, f.functional(i).coords());
    }

    for n in 1..=m {
        if sharp {
            let tail_terms: Vec<Matrix> = (n..m).map(|i| f.term(i)).collect();
            let exact_feasible =
                f.space().p().has_exact_operator_norm() && tail_terms.len() <= budget.enum_cap;
            let mode = if exact_feasible {
                BoundMode::Exact
            } else {
                BoundMode::Bounds
            };
            let tail = tail_value(f, &tail_terms, crude_tail[n], mode, budget)?;
            if clears_unit_threshold(tail.upper) {
                return Ok(certify(f.space().dim(), n, tail, DimensionMethod::Remark38));
            }
        } else if clears_unit_threshold(crude_tail[n]) {
            return Ok(certify(
                f.space().dim(),
                n,
                ConstantBound::exact(crude_tail[n]),
                DimensionMethod::Remark38,
            ));
        }
    }
    // Unreachable for nonempty frames: the N = M tail is empty (zero).
    Err(Error::NotAFrame {
        residual: 1.0,
        tol: defaults::EMITTED_FRAME_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math;
    use crate::space::{Exponent, PNormSpace};

    fn l2(dim: usize) -> PNormSpace {
        PNormSpace::new(dim, Exponent::Finite(2.0)).unwrap()
    }

    fn canonical(space: PNormSpace) -> FramePair {
        let pairs = (0..space.dim())
            .map(|i| (Vector::unit(space, i), Functional::unit(space, i)))
            .collect();
        FramePair::new(space, pairs).unwrap()
    }

    fn mercedes(space: PNormSpace) -> FramePair {
        let r3 = math::sqrt(3.0);
        let dirs = [[1.0, 0.0], [-0.5, r3 / 2.0], [-0.5, -r3 / 2.0]];
        let pairs = dirs
            .iter()
            .map(|d| {
                (
                    Vector::new(space, d.to_vec()).unwrap(),
                    Functional::new(space, d.iter().map(|c| c * 2.0 / 3.0).collect()).unwrap(),
                )
            })
            .collect();
        FramePair::new(space, pairs).unwrap()
    }

    #[test]
    fn minimal_prefix_of_the_canonical_basis_is_the_dimension() {
        let f = canonical(l2(3));
        let cert = remark38_minimal_n(&f, false, &BilinearBudget::default()).unwrap();
        // Tails: after 1 kept pair the remaining terms sum to 2; after 2,
        // to 1 (not < 1, strictly); after 3, to 0.
        assert_eq!(cert.n, 3);
        assert_eq!(cert.tail.upper, 0.0);
        assert!(cert.valid);
        assert_eq!(cert.method, DimensionMethod::Remark38);
    }

    #[test]
    fn minimal_prefix_of_the_mercedes_frame_is_two() {
        let f = mercedes(l2(2));
        let budget = BilinearBudget::default();
        // Crude: terms are 2/3 each, so the tail after one pair is 4/3
        // and after two pairs 2/3.
        let crude = remark38_minimal_n(&f, false, &budget).unwrap();
        assert_eq!(crude.n, 2);
        assert!((crude.tail.upper - 2.0 / 3.0).abs() < 1e-12);
        // Sharp: after one pair the all-plus pattern of the remaining two
        // terms reaches norm 1 exactly, which strict reading rejects.
        let sharp = remark38_minimal_n(&f, true, &budget).unwrap();
        assert_eq!(sharp.n, 2);
        assert!(sharp.n <= crude.n);
    }

    #[test]
    fn single_pair_line_frame_certifies_at_one() {
        let s = PNormSpace::new(1, Exponent::Finite(2.0)).unwrap();
        let f = FramePair::new(
            s,
            alloc::vec![(
                Vector::new(s, alloc::vec![1.0]).unwrap(),
                Functional::new(s, alloc::vec![1.0]).unwrap()
            )],
        )
        .unwrap();
        let cert = remark38_minimal_n(&f, false, &BilinearBudget::default()).unwrap();
        assert_eq!(cert.n, 1);
        assert_eq!(cert.tail.upper, 0.0);
    }

    #[test]
    fn vector_replacement_with_the_full_frame_scores_zero() {
        let f = canonical(l2(3));
        let replacements: Vec<Vector> = (0..3).map(|i| f.vector(i).clone()).collect();
        let cert = dimension_bound_vectors(
            &f,
            &replacements,
            BoundMode::Exact,
            &BilinearBudget::default(),
        )
        .unwrap();
        assert_eq!(cert.n, 3);
        assert_eq!(cert.tail.upper, 0.0);
        assert!(cert.valid);
        assert_eq!(cert.method, DimensionMethod::Cor37a);
    }

    #[test]
    fn mercedes_tail_after_two_pairs_certifies_the_plane() {
        let f = mercedes(l2(2));
        let replacements = alloc::vec![f.vector(0).clone(), f.vector(1).clone()];
        let cert = dimension_bound_vectors(
            &f,
            &replacements,
            BoundMode::Exact,
            &BilinearBudget::default(),
        )
        .unwrap();
        // Single tail term (2/3)·a₃⊗a₃ᵀ has norm 2/3.
        assert!((cert.tail.upper - 2.0 / 3.0).abs() < 1e-12);
        assert!(cert.valid);
        assert_eq!(cert.n, 2);
    }

    #[test]
    fn canonical_tail_of_norm_one_is_rejected_strictly() {
        let f = canonical(l2(3));
        let replacements = alloc::vec![f.vector(0).clone(), f.vector(1).clone()];
        let cert = dimension_bound_vectors(
            &f,
            &replacements,
            BoundMode::Exact,
            &BilinearBudget::default(),
        )
        .unwrap();
        // Tail term e₃⊗e₃* has norm exactly 1 — not strictly below 1,
        // consistent with the space being 3-dimensional.
        assert_eq!(cert.tail.upper, 1.0);
        assert!(!cert.valid);
    }

    #[test]
    fn functional_replacement_mirrors_the_vector_side() {
        let f = mercedes(l2(2));
        let replacements = alloc::vec![f.functional(0).clone(), f.functional(1).clone()];
        let cert = dimension_bound_functionals(
            &f,
            &replacements,
            BoundMode::Exact,
            &BilinearBudget::default(),
        )
        .unwrap();
        assert!((cert.tail.upper - 2.0 / 3.0).abs() < 1e-12);
        assert!(cert.valid);
        assert_eq!(cert.method, DimensionMethod::Cor37b);
    }

    #[test]
    fn replacement_count_must_not_exceed_the_frame() {
        let f = canonical(l2(2));
        let replacements: Vec<Vector> = (0..3).map(|_| Vector::zero(f.space())).collect();
        assert!(matches!(
            dimension_bound_vectors(
                &f,
                &replacements,
                BoundMode::Exact,
                &BilinearBudget::default()
            ),
            Err(Error::LengthMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn non_frames_are_rejected_up_front() {
        let s = l2(2);
        let f = FramePair::new(
            s,
            alloc::vec![(Vector::unit(s, 0), Functional::unit(s, 0))],
        )
        .unwrap();
        assert!(matches!(
            remark38_minimal_n(&f, false, &BilinearBudget::default()),
            Err(Error::NotAFrame { .. })
        ));
    }

    #[test]
    fn bounds_mode_tail_brackets_the_exact_one() {
        let f = mercedes(l2(2));
        let budget = BilinearBudget::default();
        let replacements = alloc::vec![f.vector(0).clone()];
        let exact =
            dimension_bound_vectors(&f, &replacements, BoundMode::Exact, &budget).unwrap();
        let bounds =
            dimension_bound_vectors(&f, &replacements, BoundMode::Bounds, &budget).unwrap();
        assert!(bounds.tail.lower <= exact.tail.upper + 1e-12);
        assert!(exact.tail.upper <= bounds.tail.upper + 1e-12);
    }
}
