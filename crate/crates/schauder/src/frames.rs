//! Frame pairs, the frame identity, and the two frame constants.
//!
//! A [`FramePair`] is any finite sequence of (vector, functional) pairs
//! on one space — frameness is a *property* checked by
//! [`validate_frame`], not a construction invariant, because several
//! computations (the absolute-summability constant in particular) are
//! meaningful for arbitrary pair sequences.
//!
//! For real scalars the absolute-summability constant has a sign
//! characterization that everything here builds on:
//!
//! ```text
//!   sup_{x,y*} Σₙ |bₙ*(x)| · |y*(aₙ)| / (‖x‖‖y*‖)
//!     = max_{s ∈ {±1}^M} ‖Σₙ sₙ · aₙ ⊗ bₙ*‖_{p→p}
//! ```
//!
//! because `Σ|uₙ| = max_s Σ sₙuₙ` and the two suprema interchange. The
//! same reduction applies verbatim to arbitrary term matrices `Dₙ`, so
//! the workhorse [`abs_bilinear_norm`] takes a term list and is reused
//! by the perturbation criteria and the dimension certificates.

use alloc::vec;
use alloc::vec::Vec;

use crate::bound::ConstantBound;
use crate::defaults;
use crate::error::{Error, Result};
use crate::math;
use crate::matrix::Matrix;
use crate::rng::Rng;
use crate::space::{
    self, AscentParams, Exponent, Functional, Operator, PNormSpace, Vector,
};

/// A finite sequence of (vector, functional) pairs on one space.
#[derive(Debug, Clone, PartialEq)]
pub struct FramePair {
    space: PNormSpace,
    pairs: Vec<(Vector, Functional)>,
}

impl FramePair {
    /// Wraps a pair sequence; every element must live on `space`.
    pub fn new(space: PNormSpace, pairs: Vec<(Vector, Functional)>) -> Result<Self> {
        for (v, f) in &pairs {
            if v.space() != space || f.space() != space {
                return Err(Error::SpaceMismatch);
            }
        }
        Ok(FramePair { space, pairs })
    }

    /// The common space.
    pub fn space(&self) -> PNormSpace {
        self.space
    }

    /// Number of pairs `M`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Is the sequence empty?
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// All pairs in order.
    pub fn pairs(&self) -> &[(Vector, Functional)] {
        &self.pairs
    }

    /// Vector of pair `n` (0-based).
    pub fn vector(&self, n: usize) -> &Vector {
        &self.pairs[n].0
    }

    /// Functional of pair `n` (0-based).
    pub fn functional(&self, n: usize) -> &Functional {
        &self.pairs[n].1
    }

    /// Rank-one synthesis term `aₙ ⊗ bₙ*` of pair `n`.
    pub fn term(&self, n: usize) -> Matrix {
        let (v, f) = &self.pairs[n];
        Matrix::outer(v.coords(), f.coords())
    }

    /// All synthesis terms in order.
    pub fn terms(&self) -> Vec<Matrix> {
        (0..self.len()).map(|n| self.term(n)).collect()
    }

    /// Full synthesis operator `Σₙ aₙ ⊗ bₙ*`.
    pub fn synthesis(&self) -> Matrix {
        let d = self.space.dim();
        let mut acc = Matrix::zeros(d, d);
        for n in 0..self.len() {
            acc = acc.add(&self.term(n));
        }
        acc
    }

    /// Checks the frame identity at tolerance `tol`, erroring otherwise.
    pub fn ensure_frame(&self, tol: f64) -> Result<()> {
        let report = validate_frame(self, tol);
        if report.is_frame {
            Ok(())
        } else {
            Err(Error::NotAFrame {
                residual: report.residual,
                tol,
            })
        }
    }
}

/// Outcome of a frame-identity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// Certified upper bound on `‖Σ aₙ ⊗ bₙ* − I‖_{p→p}`.
    pub residual: f64,
    /// Tolerance the residual was compared against.
    pub tol: f64,
    /// `residual ≤ tol`.
    pub is_frame: bool,
}

/// Measures how far the pair sequence is from satisfying the frame
/// identity `Σ aₙ ⊗ bₙ* = I`, reporting a conservative residual.
pub fn validate_frame(f: &FramePair, tol: f64) -> ValidationReport {
    let residual_matrix = f.synthesis().minus_identity();
    let residual =
        space::matrix_p_norm(f.space().p(), &residual_matrix, &AscentParams::default()).upper;
    ValidationReport {
        residual,
        tol,
        is_frame: residual <= tol,
    }
}

/// The frame constant: the largest operator norm among the partial-sum
/// operators `Σ_{k≤n} aₖ ⊗ bₖ*`, `n = 1..M`.
///
/// Requires the input to be a frame (gate at
/// [`defaults::EMITTED_FRAME_TOL`], so pipeline-emitted frames are
/// accepted). Exact for `p ∈ {1, 2, ∞}`; a certified interval otherwise.
/// For a frame the last partial sum is the identity, so the value is
/// always at least `1` up to the frame residual.
pub fn frame_constant(f: &FramePair) -> Result<ConstantBound> {
    f.ensure_frame(defaults::EMITTED_FRAME_TOL)?;
    let params = AscentParams::default();
    let d = f.space().dim();
    let mut partial = Matrix::zeros(d, d);
    let mut best: Option<ConstantBound> = None;
    for n in 0..f.len() {
        partial = partial.add(&f.term(n));
        let norm = space::matrix_p_norm(f.space().p(), &partial, &params);
        best = Some(match best {
            None => norm,
            Some(b) => b.max(norm),
        });
    }
    best.ok_or(Error::NotAFrame {
        residual: 1.0,
        tol: defaults::EMITTED_FRAME_TOL,
    })
}

/// Whether to compute an exact value or certified bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundMode {
    /// Exhaustive sign enumeration: exact, but needs `p ∈ {1, 2, ∞}`
    /// and at most `enum_cap` terms.
    Exact,
    /// Greedy lower bound plus summed/factorized upper bound; works for
    /// any `p` and any number of terms.
    Bounds,
}

/// Budgets for the sign-pattern searches.
#[derive(Debug, Clone, Copy)]
pub struct BilinearBudget {
    /// Cap on the number of terms for exact enumeration (`2^M` patterns).
    pub enum_cap: usize,
    /// Random restarts of the greedy sign-flip search in bounds mode,
    /// in addition to the all-plus start.
    pub greedy_restarts: usize,
    /// Seed for the restarts.
    pub seed: u64,
    /// Search parameters for operator norms at non-closed-form exponents.
    pub ascent: AscentParams,
}

impl Default for BilinearBudget {
    fn default() -> Self {
        BilinearBudget {
            enum_cap: defaults::ENUM_CAP,
            greedy_restarts: 4,
            seed: defaults::DEFAULT_SEED,
            ascent: AscentParams::default(),
        }
    }
}

fn signed_sum(terms: &[Matrix], signs: &[f64], d: usize) -> Matrix {
    let mut acc = Matrix::zeros(d, d);
    for (t, &s) in terms.iter().zip(signs) {
        acc.add_scaled(t, s);
    }
    acc
}

/// Greedy sign-flip search for a lower bound on
/// `max_s ‖Σ sₙ Dₙ‖`. Every evaluated configuration yields a certified
/// lower bound (the norm's own lower end), so the maximum found is one.
fn greedy_sign_lower(
    p: Exponent,
    terms: &[Matrix],
    d: usize,
    budget: &BilinearBudget,
) -> f64 {
    if terms.is_empty() {
        return 0.0;
    }
    let eval = |signs: &[f64]| -> f64 {
        space::matrix_p_norm(p, &signed_sum(terms, signs, d), &budget.ascent).lower
    };
    let mut rng = Rng::new(budget.seed);
    let mut best = 0.0f64;
    for restart in 0..=budget.greedy_restarts {
        let mut signs: Vec<f64> = if restart == 0 {
            vec![1.0; terms.len()]
        } else {
            (0..terms.len()).map(|_| rng.sign()).collect()
        };
        let mut current = eval(&signs);
        // Flip passes until a full pass yields no improvement.
        for _pass in 0..32 {
            let mut improved = false;
            for i in 0..signs.len() {
                signs[i] = -signs[i];
                let v = eval(&signs);
                if v > current * (1.0 + 1e-13) + 1e-300 {
                    current = v;
                    improved = true;
                } else {
                    signs[i] = -signs[i];
                }
            }
            if !improved {
                break;
            }
        }
        best = best.max(current);
    }
    best
}

/// `max_{s ∈ {±1}^M} ‖Σₙ sₙ Dₙ‖_{p→p}` for arbitrary square term
/// matrices `Dₙ` — the absolute bilinear norm of the family.
///
/// In [`BoundMode::Exact`] every one of the `2^M` sign patterns is
/// enumerated with the matrix rebuilt from scratch per pattern (no
/// incremental-update drift); requires `p ∈ {1, 2, ∞}` and
/// `M ≤ budget.enum_cap`. In [`BoundMode::Bounds`] the lower end comes
/// from a greedy sign-flip search and the upper end from the triangle
/// inequality `Σₙ ‖Dₙ‖`.
pub fn abs_bilinear_norm(
    space: PNormSpace,
    terms: &[Matrix],
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<ConstantBound> {
    let d = space.dim();
    for t in terms {
        if !t.is_square() || t.rows() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: t.rows(),
            });
        }
    }
    match mode {
        BoundMode::Exact => {
            if !space.p().has_exact_operator_norm() {
                return Err(Error::ExactNormUnavailable);
            }
            if terms.len() > budget.enum_cap {
                return Err(Error::EnumerationCapExceeded {
                    terms: terms.len(),
                    cap: budget.enum_cap,
                });
            }
            let m = terms.len();
            let mut best = 0.0f64;
            let mut signs = vec![1.0f64; m];
            for mask in 0u64..(1u64 << m) {
                for (n, s) in signs.iter_mut().enumerate() {
                    *s = if mask >> n & 1 == 1 { -1.0 } else { 1.0 };
                }
                let norm =
                    space::matrix_p_norm(space.p(), &signed_sum(terms, &signs, d), &budget.ascent);
                best = best.max(norm.upper);
            }
            Ok(ConstantBound::exact(best))
        }
        BoundMode::Bounds => {
            let lower = greedy_sign_lower(space.p(), terms, d, budget);
            let mut upper = 0.0f64;
            for t in terms {
                upper += space::matrix_p_norm(space.p(), t, &budget.ascent).upper;
            }
            Ok(ConstantBound::interval(lower.min(upper), upper))
        }
    }
}

/// Crude upper bound `Σₙ ‖aₙ‖ · ‖bₙ*‖` measured at the given exponent.
fn crude_sum(f: &FramePair, p: Exponent) -> f64 {
    let q = p.dual();
    f.pairs()
        .iter()
        .map(|(v, fun)| space::pnorm(p, v.coords()) * space::pnorm(q, fun.coords()))
        .sum()
}

/// Factorized upper bound on the absolute-summability constant through
/// the stacked analysis operators: split `Σ |bₙ*(x)| |y*(aₙ)|` by Hölder
/// into two operator norms that have closed forms at the given exponent.
fn factorized_upper(f: &FramePair, p: Exponent) -> f64 {
    let m = f.len();
    let d = f.space().dim();
    let mut a_stack = Matrix::zeros(m, d);
    let mut b_stack = Matrix::zeros(m, d);
    for n in 0..m {
        for j in 0..d {
            a_stack.set(n, j, f.vector(n).coords()[j]);
            b_stack.set(n, j, f.functional(n).coords()[j]);
        }
    }
    let max_row_l1 = |s: &Matrix| -> f64 {
        let mut best = 0.0f64;
        for i in 0..s.rows() {
            best = best.max(s.row(i).iter().map(|&v| math::abs(v)).sum());
        }
        best
    };
    match p {
        // ℓ²: ‖(bₙ*(x))‖₂ ≤ σ_max(B)‖x‖₂ and ‖(y*(aₙ))‖₂ ≤ σ_max(A)‖y‖₂.
        Exponent::Finite(pv) if pv == 2.0 => {
            space::sigma_max(&b_stack) * space::sigma_max(&a_stack)
        }
        // ℓ¹: Σₙ|bₙ*(x)| ≤ (max col sum of B)‖x‖₁,
        //     maxₙ|y*(aₙ)| ≤ (maxₙ ‖aₙ‖₁)‖y‖_∞.
        Exponent::Finite(pv) if pv == 1.0 => {
            space::max_col_abs_sum(&b_stack) * max_row_l1(&a_stack)
        }
        // ℓ^∞: maxₙ|bₙ*(x)| ≤ (maxₙ ‖bₙ‖₁)‖x‖_∞,
        //      Σₙ|y*(aₙ)| ≤ (max col sum of A)‖y‖₁.
        Exponent::Infinity => max_row_l1(&b_stack) * space::max_col_abs_sum(&a_stack),
        // Other exponents: interpolate the ℓ¹ and ℓ^∞ constants,
        // L(p) ≤ L(1)^{1/p} · L(∞)^{1−1/p}.
        Exponent::Finite(pv) => {
            let u1 = factorized_upper(f, Exponent::Finite(1.0)).min(crude_sum(f, Exponent::Finite(1.0)));
            let uinf = factorized_upper(f, Exponent::Infinity).min(crude_sum(f, Exponent::Infinity));
            math::powf(u1, 1.0 / pv) * math::powf(uinf, 1.0 - 1.0 / pv)
        }
    }
}

/// The absolute-summability constant of a pair sequence: the least `A`
/// with `Σₙ |bₙ*(x)| · |y*(aₙ)| ≤ A‖x‖‖y*‖`, computed through the sign
/// characterization `max_{s} ‖Σ sₙ aₙ ⊗ bₙ*‖`.
///
/// Exact mode enumerates all `2^M` sign patterns (`p ∈ {1, 2, ∞}`,
/// `M ≤ budget.enum_cap`). Bounds mode returns a certified interval
/// whose upper end is the smaller of the crude sum `Σ‖aₙ‖‖bₙ*‖` and a
/// Hölder factorization through the stacked analysis operators; it never
/// exceeds the crude sum.
pub fn besselian_constant(
    f: &FramePair,
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<ConstantBound> {
    match mode {
        BoundMode::Exact => abs_bilinear_norm(f.space(), &f.terms(), mode, budget),
        BoundMode::Bounds => {
            let terms = f.terms();
            let lower = greedy_sign_lower(f.space().p(), &terms, f.space().dim(), budget);
            let crude = crude_sum(f, f.space().p());
            let upper = crude.min(factorized_upper(f, f.space().p()));
            Ok(ConstantBound::interval(lower.min(upper), upper))
        }
    }
}

/// Sampled lower-bound diagnostic for the absolute-summability constant:
/// draws `samples` random pairs `(x, y*)` and returns the largest
/// observed ratio `Σₙ |bₙ*(x)||y*(aₙ)| / (‖x‖‖y*‖)`.
///
/// Every reported ratio is a true lower bound on the constant, so the
/// maximum must stay below any certified upper bound — that containment
/// is the cross-check this diagnostic exists for.
pub fn besselian_diagnostic(f: &FramePair, samples: usize, seed: u64) -> f64 {
    let d = f.space().dim();
    let mut rng = Rng::new(seed);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let x: Vec<f64> = (0..d).map(|_| rng.symmetric()).collect();
        let y: Vec<f64> = (0..d).map(|_| rng.symmetric()).collect();
        let nx = space::pnorm(f.space().p(), &x);
        let ny = space::pnorm(f.space().dual_exponent(), &y);
        if nx <= 1e-300 || ny <= 1e-300 {
            continue;
        }
        let mut acc = 0.0;
        for (v, fun) in f.pairs() {
            let bx: f64 = fun.coords().iter().zip(&x).map(|(a, b)| a * b).sum();
            let ya: f64 = v.coords().iter().zip(&y).map(|(a, b)| a * b).sum();
            acc += math::abs(bx) * math::abs(ya);
        }
        best = best.max(acc / (nx * ny));
    }
    best
}

/// Which replacement a witness certifies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WitnessDirection {
    /// The vectors were replaced: `wₙ = R(xₙ)`.
    Vectors,
    /// The functionals were replaced: `zₙ* = yₙ* ∘ R`.
    Functionals,
    /// One operator witnesses both replacements.
    Both,
}

/// An invertible operator certifying that two frames are images of one
/// another, with the inverse held explicitly and its quality on record.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceWitness {
    forward: Operator,
    inverse: Operator,
    residual: f64,
    direction: WitnessDirection,
}

impl EquivalenceWitness {
    /// Certifies the pair: accepts only when
    /// `‖forward · inverse − I‖ ≤ tol` (conservative upper bound).
    pub fn certify(
        forward: Operator,
        inverse: Operator,
        direction: WitnessDirection,
        tol: f64,
    ) -> Result<Self> {
        if forward.space() != inverse.space() {
            return Err(Error::SpaceMismatch);
        }
        let product = forward.matrix().mul(inverse.matrix()).minus_identity();
        let residual =
            space::matrix_p_norm(forward.space().p(), &product, &AscentParams::default()).upper;
        if residual > tol {
            return Err(Error::WitnessResidual { residual, tol });
        }
        Ok(EquivalenceWitness {
            forward,
            inverse,
            residual,
            direction,
        })
    }

    /// The witnessing operator `T`.
    pub fn forward(&self) -> &Operator {
        &self.forward
    }

    /// The certified inverse `R ≈ T⁻¹`.
    pub fn inverse(&self) -> &Operator {
        &self.inverse
    }

    /// Certified `‖T·R − I‖` at acceptance time.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Which replacement this witnesses.
    pub fn direction(&self) -> WitnessDirection {
        self.direction
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l2(dim: usize) -> PNormSpace {
        PNormSpace::new(dim, Exponent::Finite(2.0)).unwrap()
    }

    pub(crate) fn canonical(space: PNormSpace) -> FramePair {
        let pairs = (0..space.dim())
            .map(|i| (Vector::unit(space, i), Functional::unit(space, i)))
            .collect();
        FramePair::new(space, pairs).unwrap()
    }

    /// Three unit vectors at mutual angle 120° in the plane with
    /// functionals `(2/3)aₙᵀ` — the standard tight frame on ℝ².
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
    fn canonical_basis_is_a_frame_with_zero_residual() {
        for p in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
            let f = canonical(PNormSpace::new(3, p).unwrap());
            let report = validate_frame(&f, defaults::FRAME_TOL);
            assert_eq!(report.residual, 0.0);
            assert!(report.is_frame);
        }
    }

    #[test]
    fn repeated_basis_vector_is_not_a_frame() {
        let s = l2(2);
        let pairs = vec![(Vector::unit(s, 0), Functional::unit(s, 0))];
        let f = FramePair::new(s, pairs).unwrap();
        let report = validate_frame(&f, defaults::FRAME_TOL);
        // Synthesis is diag(1, 0); distance to the identity is 1.
        assert!((report.residual - 1.0).abs() < 1e-14);
        assert!(!report.is_frame);
    }

    #[test]
    fn mercedes_is_a_frame() {
        let f = mercedes(l2(2));
        let report = validate_frame(&f, defaults::FRAME_TOL);
        assert!(report.is_frame, "residual {}", report.residual);
    }

    #[test]
    fn frame_constant_canonical_is_exactly_one() {
        for p in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
            let f = canonical(PNormSpace::new(4, p).unwrap());
            let k = frame_constant(&f).unwrap();
            assert!(k.exact);
            assert_eq!(k.upper, 1.0);
        }
    }

    #[test]
    fn frame_constant_mercedes_is_one() {
        // Partial sums: first has spectrum {2/3, 0}, second {1, 1/3},
        // third is the identity — the max operator norm is 1.
        let f = mercedes(l2(2));
        let k = frame_constant(&f).unwrap();
        assert!((k.upper - 1.0).abs() < 1e-12, "K = {}", k.upper);
    }

    #[test]
    fn frame_constant_rejects_non_frames() {
        let s = l2(2);
        let pairs = vec![(Vector::unit(s, 0), Functional::unit(s, 0))];
        let f = FramePair::new(s, pairs).unwrap();
        assert!(matches!(frame_constant(&f), Err(Error::NotAFrame { .. })));
    }

    #[test]
    fn besselian_canonical_is_exactly_one() {
        for p in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
            let f = canonical(PNormSpace::new(3, p).unwrap());
            let exact = besselian_constant(&f, BoundMode::Exact, &BilinearBudget::default()).unwrap();
            assert!(exact.exact);
            assert_eq!(exact.upper, 1.0);
            // Bounds mode must bracket it; here the factorization is tight.
            let bounds =
                besselian_constant(&f, BoundMode::Bounds, &BilinearBudget::default()).unwrap();
            assert!(bounds.lower <= 1.0 + 1e-12 && 1.0 <= bounds.upper + 1e-12);
            assert!((bounds.upper - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn besselian_mercedes_is_one() {
        let f = mercedes(l2(2));
        let l = besselian_constant(&f, BoundMode::Exact, &BilinearBudget::default()).unwrap();
        assert!((l.upper - 1.0).abs() < 1e-12, "L = {}", l.upper);
    }

    #[test]
    fn besselian_single_scaled_pair() {
        // One pair (e₁, 2e₁*): both sign patterns give a rank-one
        // operator of norm 2 (this sequence is not a frame — the
        // constant is defined for any pair sequence).
        let s = l2(2);
        let pairs = vec![(
            Vector::unit(s, 0),
            Functional::new(s, vec![2.0, 0.0]).unwrap(),
        )];
        let f = FramePair::new(s, pairs).unwrap();
        let l = besselian_constant(&f, BoundMode::Exact, &BilinearBudget::default()).unwrap();
        assert_eq!(l.upper, 2.0);
    }

    #[test]
    fn besselian_bounds_never_exceed_crude_sum() {
        let f = mercedes(l2(2));
        let crude: f64 = f
            .pairs()
            .iter()
            .map(|(v, fun)| v.norm() * fun.norm())
            .sum();
        let b = besselian_constant(&f, BoundMode::Bounds, &BilinearBudget::default()).unwrap();
        assert!(b.upper <= crude + 1e-9);
        // And the bounds bracket the exact value.
        let exact = besselian_constant(&f, BoundMode::Exact, &BilinearBudget::default()).unwrap();
        assert!(b.lower <= exact.upper + 1e-12 && exact.upper <= b.upper + 1e-12);
    }

    #[test]
    fn exact_mode_enforces_its_preconditions() {
        let s = PNormSpace::new(2, Exponent::Finite(3.0)).unwrap();
        let f = canonical(s);
        assert!(matches!(
            besselian_constant(&f, BoundMode::Exact, &BilinearBudget::default()),
            Err(Error::ExactNormUnavailable)
        ));

        let s2 = l2(2);
        let many: Vec<_> = (0..15)
            .map(|i| (Vector::unit(s2, i % 2), Functional::unit(s2, i % 2)))
            .collect();
        let f2 = FramePair::new(s2, many).unwrap();
        assert!(matches!(
            besselian_constant(&f2, BoundMode::Exact, &BilinearBudget::default()),
            Err(Error::EnumerationCapExceeded { terms: 15, cap: 14 })
        ));
    }

    #[test]
    fn abs_bilinear_empty_is_zero() {
        let s = l2(2);
        let b = abs_bilinear_norm(s, &[], BoundMode::Exact, &BilinearBudget::default()).unwrap();
        assert_eq!(b.upper, 0.0);
    }

    #[test]
    fn diagnostic_stays_below_the_certified_constant() {
        let f = mercedes(l2(2));
        let l = besselian_constant(&f, BoundMode::Exact, &BilinearBudget::default()).unwrap();
        let ratio = besselian_diagnostic(&f, 2000, defaults::DEFAULT_SEED);
        assert!(ratio <= l.upper + 1e-9, "ratio {ratio} vs L {}", l.upper);
        assert!(ratio > 0.5, "sampling should come close to L = 1");
    }

    #[test]
    fn diagnostic_is_deterministic() {
        let f = mercedes(l2(2));
        assert_eq!(
            besselian_diagnostic(&f, 500, 3),
            besselian_diagnostic(&f, 500, 3)
        );
    }

    #[test]
    fn witness_certification_checks_the_product() {
        let s = l2(2);
        let t = Operator::new(
            s,
            Matrix::from_rows(&[vec![1.1, 0.0], vec![0.0, 1.0]]).unwrap(),
        )
        .unwrap();
        let r = Operator::new(
            s,
            Matrix::from_rows(&[vec![1.0 / 1.1, 0.0], vec![0.0, 1.0]]).unwrap(),
        )
        .unwrap();
        let w = EquivalenceWitness::certify(
            t.clone(),
            r,
            WitnessDirection::Both,
            defaults::WITNESS_TOL,
        )
        .unwrap();
        assert!(w.residual() <= defaults::WITNESS_TOL);

        // The identity is not an inverse of T.
        let bad = EquivalenceWitness::certify(
            t,
            Operator::identity(s),
            WitnessDirection::Both,
            defaults::WITNESS_TOL,
        );
        assert!(matches!(bad, Err(Error::WitnessResidual { .. })));
    }
}
