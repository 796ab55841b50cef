//! Perturbation criteria, the transfer operator, certified Neumann
//! inversion, and emission of corrected frames with certificates.
//!
//! The question answered here: given a frame `(aₙ, bₙ*)` and a candidate
//! replacement `(xₙ, yₙ*)` for every pair, is the candidate again (after
//! a correction) a frame? Five summable criteria decide it, each of the
//! form *value < 1*:
//!
//! * [`criterion_thm31`] — reconstruction criterion `Q`, mixing the
//!   functional drift `‖yₙ*−bₙ*‖·‖xₙ‖` with the relative vector drift
//!   `2K·‖xₙ−aₙ‖/‖aₙ‖` (frame constant `K` of the base).
//! * [`criterion_cor34`] — the plain summable bound
//!   `Σ ‖yₙ*‖‖xₙ−aₙ‖ + ‖yₙ*−bₙ*‖‖aₙ‖`.
//! * [`criterion_thm33`] — the sharp absolute-summability value `α`:
//!   the sign-pattern norm of the difference terms
//!   `Dₙ = (xₙ−aₙ)⊗yₙ* + aₙ⊗(yₙ*−bₙ*)`.
//! * [`criterion_cor35`] / [`criterion_cor36`] — `α` specialized to a
//!   vectors-only / functionals-only replacement. Both run the identical
//!   code path as `thm33` on the substituted candidate, so their values
//!   agree bit-for-bit with the corresponding substitution.
//!
//! A satisfied criterion certifies that the transfer operator
//! `T = Σ xₙ ⊗ yₙ*` is invertible with `‖T − I‖ < 1`; its Neumann series
//! inverse `R` then corrects the candidate into two genuine frames,
//! `(xₙ, yₙ*∘R)` and `(R·xₙ, yₙ*)`, emitted together with `T`, `R`,
//! explicit error bounds, and an invertibility witness.

use alloc::vec::Vec;

use crate::bound::ConstantBound;
use crate::defaults;
use crate::error::{Error, Result};
use crate::frames::{
    abs_bilinear_norm, besselian_constant, frame_constant, validate_frame, BilinearBudget,
    BoundMode, EquivalenceWitness, FramePair, WitnessDirection,
};
use crate::matrix::Matrix;
use crate::space::{self, AscentParams, Functional, Operator, PNormSpace, Vector};

/// A base frame together with a candidate replacement pair sequence of
/// the same length on the same space.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationCandidate {
    base: FramePair,
    pairs: Vec<(Vector, Functional)>,
}

impl PerturbationCandidate {
    /// Pairs a base frame with candidate pairs; lengths and spaces must
    /// match.
    pub fn new(base: FramePair, pairs: Vec<(Vector, Functional)>) -> Result<Self> {
        if pairs.len() != base.len() {
            return Err(Error::LengthMismatch {
                expected: base.len(),
                got: pairs.len(),
            });
        }
        for (x, y) in &pairs {
            if x.space() != base.space() || y.space() != base.space() {
                return Err(Error::SpaceMismatch);
            }
        }
        Ok(PerturbationCandidate { base, pairs })
    }

    /// The trivial candidate that replaces every pair with itself
    /// (every criterion evaluates to exactly zero on it).
    pub fn unchanged(base: FramePair) -> Self {
        let pairs = base.pairs().to_vec();
        PerturbationCandidate { base, pairs }
    }

    /// The base frame `(aₙ, bₙ*)`.
    pub fn base(&self) -> &FramePair {
        &self.base
    }

    /// The common space.
    pub fn space(&self) -> PNormSpace {
        self.base.space()
    }

    /// Number of pairs `M`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Is the candidate empty?
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Candidate pairs in order.
    pub fn pairs(&self) -> &[(Vector, Functional)] {
        &self.pairs
    }

    /// Candidate vector `xₙ` (0-based).
    pub fn vector(&self, n: usize) -> &Vector {
        &self.pairs[n].0
    }

    /// Candidate functional `yₙ*` (0-based).
    pub fn functional(&self, n: usize) -> &Functional {
        &self.pairs[n].1
    }
}

/// Which perturbation criterion a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Reconstruction criterion with the frame-constant weighting.
    Thm31,
    /// Plain summable drift bound.
    Cor34,
    /// Sharp absolute-summability value of the difference terms.
    Thm33,
    /// Vectors-only replacement (functionals held fixed).
    Cor35,
    /// Functionals-only replacement (vectors held fixed).
    Cor36,
}

impl Criterion {
    /// Stable identifier used in reports and on the command line.
    pub fn id(self) -> &'static str {
        match self {
            Criterion::Thm31 => "thm31",
            Criterion::Cor34 => "cor34",
            Criterion::Thm33 => "thm33",
            Criterion::Cor35 => "cor35",
            Criterion::Cor36 => "cor36",
        }
    }
}

impl core::fmt::Display for Criterion {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.id())
    }
}

impl core::str::FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm31" => Ok(Criterion::Thm31),
            "cor34" => Ok(Criterion::Cor34),
            "thm33" => Ok(Criterion::Thm33),
            "cor35" => Ok(Criterion::Cor35),
            "cor36" => Ok(Criterion::Cor36),
            _ => Err(Error::InvalidParameter(
                "unknown criterion id (expected thm31|cor34|thm33|cor35|cor36)",
            )),
        }
    }
}

/// Outcome of evaluating one criterion on one candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriterionReport {
    /// Which criterion was evaluated.
    pub criterion: Criterion,
    /// The computed value (certified interval for exponents without
    /// closed-form norms).
    pub value: ConstantBound,
    /// Strictly satisfied: the conservative upper end is `< 1`.
    pub satisfied: bool,
    /// `1 − value.upper`; negative when unsatisfied.
    pub margin: f64,
}

fn finish(criterion: Criterion, value: ConstantBound) -> CriterionReport {
    CriterionReport {
        criterion,
        value,
        satisfied: value.upper < 1.0,
        margin: 1.0 - value.upper,
    }
}

/// Reconstruction criterion: with `K` the frame constant of the base,
///
/// ```text
/// Q = Σₙ ‖yₙ*−bₙ*‖·‖xₙ‖
///   + K · Σ_{aₙ≠0} 2‖xₙ−aₙ‖/‖aₙ‖
///   + Σ_{aₙ=0} ‖bₙ*‖·‖xₙ‖
/// ```
///
/// where `aₙ = 0` is decided at [`defaults::ZERO_VECTOR_TOL`] (the
/// relative term is meaningless against a zero base vector). `Q < 1`
/// certifies that the corrected candidate is a frame. When `K` is an
/// interval the value is one too; `satisfied` reads the upper end.
pub fn criterion_thm31(c: &PerturbationCandidate) -> Result<CriterionReport> {
    let k = frame_constant(c.base())?;
    let p = c.space().p();
    let q = c.space().dual_exponent();

    let mut functional_drift = 0.0f64; // Σ ‖yₙ*−bₙ*‖·‖xₙ‖
    let mut relative_drift = 0.0f64; //   Σ 2‖xₙ−aₙ‖/‖aₙ‖ over aₙ ≠ 0
    let mut zero_branch = 0.0f64; //      Σ ‖bₙ*‖·‖xₙ‖ over aₙ = 0
    for n in 0..c.len() {
        let a = c.base().vector(n);
        let b = c.base().functional(n);
        let x = c.vector(n);
        let y = c.functional(n);
        functional_drift += space::pnorm(q, y.sub(b).coords()) * space::pnorm(p, x.coords());
        let a_norm = space::pnorm(p, a.coords());
        if a_norm <= defaults::ZERO_VECTOR_TOL {
            zero_branch += space::pnorm(q, b.coords()) * space::pnorm(p, x.coords());
        } else {
            relative_drift += 2.0 * space::pnorm(p, x.sub(a).coords()) / a_norm;
        }
    }

    let upper = functional_drift + k.upper * relative_drift + zero_branch;
    let value = if k.exact || relative_drift == 0.0 {
        ConstantBound::exact(upper)
    } else {
        let lower = functional_drift + k.lower * relative_drift + zero_branch;
        ConstantBound::interval(lower, upper)
    };
    Ok(finish(Criterion::Thm31, value))
}

/// Plain summable drift bound `Σₙ ‖yₙ*‖·‖xₙ−aₙ‖ + ‖yₙ*−bₙ*‖·‖aₙ‖`.
///
/// Always an exact value (vector and dual norms have closed forms at
/// every exponent). Dominates [`criterion_thm33`] term by term.
pub fn criterion_cor34(c: &PerturbationCandidate) -> Result<CriterionReport> {
    c.base().ensure_frame(defaults::EMITTED_FRAME_TOL)?;
    let p = c.space().p();
    let q = c.space().dual_exponent();
    let mut sum = 0.0f64;
    for n in 0..c.len() {
        let a = c.base().vector(n);
        let b = c.base().functional(n);
        let x = c.vector(n);
        let y = c.functional(n);
        sum += space::pnorm(q, y.coords()) * space::pnorm(p, x.sub(a).coords())
            + space::pnorm(q, y.sub(b).coords()) * space::pnorm(p, a.coords());
    }
    Ok(finish(Criterion::Cor34, ConstantBound::exact(sum)))
}

/// Shared core of the three absolute-summability criteria. All three
/// funnel through this one function so that substituting `yₙ* := bₙ*`
/// (or `xₙ := aₙ`) into the general criterion reproduces the specialized
/// ones bit for bit.
fn abs_criterion(
    criterion: Criterion,
    c: &PerturbationCandidate,
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<CriterionReport> {
    c.base().ensure_frame(defaults::EMITTED_FRAME_TOL)?;
    let space = c.space();
    let p = space.p();
    let q = space.dual_exponent();

    let mut terms = Vec::with_capacity(c.len());
    // Triangle bound through the rank-one factors: each Dₙ splits as
    // (xₙ−aₙ)⊗yₙ* + aₙ⊗(yₙ*−bₙ*), and a rank-one u⊗v* has induced norm
    // exactly ‖u‖_p·‖v‖_q. This keeps the bounds-mode upper end sound
    // and dominated by the plain summable bound at every exponent.
    let mut rank_one_sum = 0.0f64;
    for n in 0..c.len() {
        let a = c.base().vector(n);
        let b = c.base().functional(n);
        let x = c.vector(n);
        let y = c.functional(n);
        let dx = x.sub(a);
        let dy = y.sub(b);
        let term = Matrix::outer(dx.coords(), y.coords()).add(&Matrix::outer(a.coords(), dy.coords()));
        terms.push(term);
        rank_one_sum += space::pnorm(q, y.coords()) * space::pnorm(p, dx.coords())
            + space::pnorm(q, dy.coords()) * space::pnorm(p, a.coords());
    }

    let raw = abs_bilinear_norm(space, &terms, mode, budget)?;
    let value = match mode {
        BoundMode::Exact => raw,
        BoundMode::Bounds => {
            let upper = raw.upper.min(rank_one_sum);
            ConstantBound::interval(raw.lower.min(upper), upper)
        }
    };
    Ok(finish(criterion, value))
}

/// Sharp absolute-summability value `α`: the sign-pattern norm
/// `max_s ‖Σ sₙ Dₙ‖` of the difference terms
/// `Dₙ = (xₙ−aₙ)⊗yₙ* + aₙ⊗(yₙ*−bₙ*)`.
///
/// `α < 1` certifies the corrected candidate is a frame whose
/// absolute-summability constant obeys the bound checked by
/// [`besselian_certificate`]. Exact mode needs `p ∈ {1, 2, ∞}` and at
/// most `budget.enum_cap` pairs.
pub fn criterion_thm33(
    c: &PerturbationCandidate,
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<CriterionReport> {
    abs_criterion(Criterion::Thm33, c, mode, budget)
}

/// [`criterion_thm33`] specialized to a vectors-only replacement: the
/// candidate keeps every `bₙ*` and replaces the vectors with `xₙ`,
/// leaving `Dₙ = (xₙ−aₙ)⊗bₙ*`.
pub fn criterion_cor35(
    base: &FramePair,
    vectors: &[Vector],
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<CriterionReport> {
    if vectors.len() != base.len() {
        return Err(Error::LengthMismatch {
            expected: base.len(),
            got: vectors.len(),
        });
    }
    let pairs = vectors
        .iter()
        .zip(base.pairs())
        .map(|(x, (_, b))| (x.clone(), b.clone()))
        .collect::<Vec<_>>();
    let c = PerturbationCandidate::new(base.clone(), pairs)?;
    abs_criterion(Criterion::Cor35, &c, mode, budget)
}

/// [`criterion_thm33`] specialized to a functionals-only replacement:
/// the candidate keeps every `aₙ` and replaces the functionals with
/// `yₙ*`, leaving `Dₙ = aₙ⊗(yₙ*−bₙ*)`.
pub fn criterion_cor36(
    base: &FramePair,
    functionals: &[Functional],
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<CriterionReport> {
    if functionals.len() != base.len() {
        return Err(Error::LengthMismatch {
            expected: base.len(),
            got: functionals.len(),
        });
    }
    let pairs = functionals
        .iter()
        .zip(base.pairs())
        .map(|(y, (a, _))| (a.clone(), y.clone()))
        .collect::<Vec<_>>();
    let c = PerturbationCandidate::new(base.clone(), pairs)?;
    abs_criterion(Criterion::Cor36, &c, mode, budget)
}

/// The transfer operator `T = Σₙ xₙ ⊗ yₙ*` of a candidate.
///
/// On the trivial candidate this is the identity (up to the base frame's
/// own residual); a satisfied criterion certifies `‖T − I‖ < 1`.
pub fn build_transfer(c: &PerturbationCandidate) -> Operator {
    let d = c.space().dim();
    let mut acc = Matrix::zeros(d, d);
    for (x, y) in c.pairs() {
        acc = acc.add(&Matrix::outer(x.coords(), y.coords()));
    }
    Operator::new(c.space(), acc).expect("candidate pairs share the candidate's space")
}

/// A certified Neumann-series inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct NeumannInverse {
    /// The partial sum `R = Σ_{k≤m} (I−T)^k`.
    pub inverse: Operator,
    /// Geometric tail bound on `‖R − T⁻¹‖` (the certificate).
    pub error_bound: f64,
    /// Series terms taken beyond the identity (`m`).
    pub iterations: usize,
}

/// Inverts `T` by its Neumann series `Σ_k (I−T)^k`, truncated once the
/// geometric tail bound `Q^{m+1}/(1−Q)` drops to `tol`.
///
/// `contraction` is the caller's certified bound `Q` on `‖T − I‖`; it
/// must lie in `[0, 1)` and dominate the measured norm of `T − I`
/// (conservative upper end, slack `1e−12`) or the call is rejected —
/// a series summed under an understated contraction would carry a
/// worthless certificate.
pub fn neumann_inverse(t: &Operator, contraction: f64, tol: f64) -> Result<NeumannInverse> {
    if !(0.0..1.0).contains(&contraction) {
        return Err(Error::ContractionOutOfRange { contraction });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter("Neumann tolerance must be positive"));
    }
    let d = t.space().dim();
    let deviation = Matrix::identity(d).sub(t.matrix()); // I − T
    let measured = space::matrix_p_norm(t.space().p(), &deviation, &AscentParams::default());
    if measured.upper > contraction + 1e-12 {
        return Err(Error::ContractionUnderestimates {
            claimed: contraction,
            measured: measured.upper,
        });
    }

    let mut inverse = Matrix::identity(d);
    let mut power = deviation.clone();
    let mut iterations = 0usize;
    let mut tail = if contraction == 0.0 {
        0.0
    } else {
        contraction / (1.0 - contraction)
    };
    while tail > tol {
        if iterations >= defaults::NEUMANN_ITERATION_CAP {
            return Err(Error::IterationCapExceeded {
                cap: defaults::NEUMANN_ITERATION_CAP,
            });
        }
        inverse = inverse.add(&power);
        power = power.mul(&deviation);
        iterations += 1;
        tail *= contraction;
    }
    Ok(NeumannInverse {
        inverse: Operator::new(t.space(), inverse).expect("series preserves the shape"),
        error_bound: tail,
        iterations,
    })
}

/// The transfer operator of a certified perturbation, bundled with its
/// contraction bound and Neumann inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferOperator {
    /// `T = Σ xₙ ⊗ yₙ*`.
    pub forward: Operator,
    /// Contraction bound `Q ≥ ‖T − I‖` the series was summed under.
    pub contraction: f64,
    /// Neumann partial-sum inverse `R`.
    pub inverse: Operator,
    /// Certified bound on `‖R − T⁻¹‖`.
    pub inverse_error: f64,
    /// Series terms taken beyond the identity.
    pub iterations: usize,
    /// Measured upper bound on `‖T·R − I‖`.
    pub residual: f64,
}

/// The emitted result of a certified perturbation: two corrected frames
/// and the operator connecting them to the candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedFrames {
    /// The criterion evaluation this emission rests on.
    pub report: CriterionReport,
    /// `T`, its contraction bound, and its certified inverse `R`.
    pub transfer: TransferOperator,
    /// The frame keeping the candidate vectors: `(xₙ, zₙ* = yₙ*∘R)`.
    pub frame_xz: FramePair,
    /// The frame keeping the candidate functionals: `(wₙ = R·xₙ, yₙ*)`.
    pub frame_wy: FramePair,
    /// Invertibility witness for the single `T` serving both frames.
    pub witness: EquivalenceWitness,
    /// `false` when emission was forced past an unsatisfied criterion;
    /// such output is experimental and carries no validity claim beyond
    /// the re-validation both frames still must pass.
    pub certified: bool,
}

/// Emits the corrected frames `(xₙ, yₙ*∘R)` and `(R·xₙ, yₙ*)` for a
/// candidate whose criterion report is satisfied.
///
/// `tol` is the Neumann truncation tolerance (the default is
/// [`defaults::NEUMANN_TOL`]). With `allow_uncertified`, an unsatisfied
/// report may be overridden: the contraction is then taken from the
/// measured `‖T − I‖` instead of the criterion value, the output is
/// marked uncertified, and the call still fails if `T` does not
/// measurably contract. Both emitted frames must re-validate at
/// [`defaults::EMITTED_FRAME_TOL`] and the witness at
/// [`defaults::WITNESS_TOL`]; violations are reported as errors, never
/// silently dropped.
pub fn emit_perturbed_frames(
    c: &PerturbationCandidate,
    report: &CriterionReport,
    tol: f64,
    allow_uncertified: bool,
) -> Result<PerturbedFrames> {
    let space = c.space();
    let t = build_transfer(c);

    let certified = report.satisfied;
    let contraction = if certified {
        report.value.upper
    } else if allow_uncertified {
        let measured =
            space::matrix_p_norm(space.p(), &t.matrix().minus_identity(), &AscentParams::default());
        if measured.upper >= 1.0 {
            return Err(Error::ContractionOutOfRange {
                contraction: measured.upper,
            });
        }
        measured.upper
    } else {
        return Err(Error::UnsatisfiedCriterion {
            value: report.value.upper,
        });
    };

    let series = neumann_inverse(&t, contraction, tol)?;
    let r = series.inverse.clone();

    let mut xz = Vec::with_capacity(c.len());
    let mut wy = Vec::with_capacity(c.len());
    for (x, y) in c.pairs() {
        xz.push((x.clone(), r.compose_functional(y)));
        wy.push((r.apply(x), y.clone()));
    }
    let frame_xz = FramePair::new(space, xz)?;
    let frame_wy = FramePair::new(space, wy)?;
    for frame in [&frame_xz, &frame_wy] {
        let check = validate_frame(frame, defaults::EMITTED_FRAME_TOL);
        if !check.is_frame {
            return Err(Error::EmittedFrameResidual {
                residual: check.residual,
                tol: defaults::EMITTED_FRAME_TOL,
            });
        }
    }

    let witness = EquivalenceWitness::certify(
        t.clone(),
        r.clone(),
        WitnessDirection::Both,
        defaults::WITNESS_TOL,
    )?;
    let transfer = TransferOperator {
        forward: t,
        contraction,
        inverse: r,
        inverse_error: series.error_bound,
        iterations: series.iterations,
        residual: witness.residual(),
    };
    Ok(PerturbedFrames {
        report: *report,
        transfer,
        frame_xz,
        frame_wy,
        witness,
        certified,
    })
}

/// Certificate that both emitted frames stay absolutely summable within
/// the landing bound `(α + L)·‖R‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselianCertificate {
    /// Absolute-summability constant of the `(xₙ, zₙ*)` frame.
    pub frame_xz_constant: ConstantBound,
    /// Absolute-summability constant of the `(wₙ, yₙ*)` frame.
    pub frame_wy_constant: ConstantBound,
    /// `(α.upper + L.upper)·‖R‖.upper` plus
    /// [`defaults::CERTIFICATE_SLACK`].
    pub rhs: f64,
    /// Did both constants come in at or under `rhs`?
    pub holds: bool,
}

/// Checks the absolute-summability certificate on emitted frames:
/// each new constant must be at most `(α + L)·‖R‖` (conservative ends
/// everywhere, plus [`defaults::CERTIFICATE_SLACK`]), where `α` is the
/// criterion value and `L` the base frame's constant.
///
/// Applies to emissions driven by the summability criteria; the
/// reconstruction criterion's `Q` does not bound the summability of the
/// difference terms, so such reports are rejected. A violated inequality
/// is an honest `holds = false`, not an error.
pub fn besselian_certificate(
    pf: &PerturbedFrames,
    alpha: &ConstantBound,
    base_l: &ConstantBound,
    mode: BoundMode,
    budget: &BilinearBudget,
) -> Result<BesselianCertificate> {
    if pf.report.criterion == Criterion::Thm31 {
        return Err(Error::InvalidParameter(
            "summability certificate requires a summability criterion (cor34/thm33/cor35/cor36)",
        ));
    }
    let space = pf.frame_xz.space();
    let r_norm = space::matrix_p_norm(space.p(), pf.transfer.inverse.matrix(), &budget.ascent);
    let frame_xz_constant = besselian_constant(&pf.frame_xz, mode, budget)?;
    let frame_wy_constant = besselian_constant(&pf.frame_wy, mode, budget)?;
    let rhs = (alpha.upper + base_l.upper) * r_norm.upper + defaults::CERTIFICATE_SLACK;
    let holds = frame_xz_constant.upper <= rhs && frame_wy_constant.upper <= rhs;
    Ok(BesselianCertificate {
        frame_xz_constant,
        frame_wy_constant,
        rhs,
        holds,
    })
}
