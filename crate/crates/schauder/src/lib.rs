//! Finite-dimensional Schauder frames on `ℓᵖ` spaces, with certified
//! perturbation criteria and targeted frame constructions.
//!
//! A *frame pair* is a finite sequence of (vector, functional) pairs
//! `(aₙ, bₙ*)` on `ℝᵈ` equipped with a p-norm. The sequence is a *frame*
//! when the rank-one synthesis operators sum to the identity,
//! `Σₙ aₙ ⊗ bₙ* = I`, so every `x` reconstructs as `x = Σₙ bₙ*(x) aₙ`.
//! Two scalar quantities govern how robust that reconstruction is:
//!
//! * the **frame constant** `K`: the largest operator norm among the
//!   partial-sum operators `Σ_{k≤n} aₖ ⊗ bₖ*`, and
//! * the **absolute-summability constant** `L`: the least `A` with
//!   `Σₙ |bₙ*(x)| · |y*(aₙ)| ≤ A·‖x‖·‖y*‖` for all `x`, `y*`.
//!
//! The crate answers three families of questions:
//!
//! 1. **Constants** — compute `K` and `L`, exactly for `p ∈ {1, 2, ∞}`
//!    and as certified `[lower, upper]` intervals otherwise
//!    ([`frames`]).
//! 2. **Perturbation** — given a candidate replacement `(xₙ, yₙ*)` for
//!    each pair, decide by one of five summable criteria whether the
//!    candidate is again a frame, and if so emit the corrected frames
//!    together with an invertible transfer operator and explicit error
//!    bounds ([`perturbation`]).
//! 3. **Construction** — interleave zero-vector pairs into a frame and
//!    perturb them onto prescribed subspaces, yielding frames whose
//!    designated vectors span a chosen `V` and whose functionals span a
//!    chosen `W` ([`construction`]).
//!
//! Every computed bound is conservative: downstream decisions always
//! consume the upper end of an interval, so a reported "criterion
//! satisfied" or "frame valid" verdict never rests on an optimistic
//! estimate. The [`oracle`] module re-implements the core numerics with
//! deliberately different algorithms (elimination instead of Neumann
//! series, bisection instead of Jacobi sweeps, exhaustive enumeration
//! instead of closed forms) and exists purely to cross-validate the main
//! path in tests.
//!
//! The crate is `no_std`-compatible (`alloc` required): disable the
//! default `std` feature and enable `libm` to route the scalar math
//! through the pure-Rust port.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_docs)]
// Index loops and explicit float-equality dispatch on the exponent read
// clearest in the numerical kernels; the iterator rewrites clippy
// suggests would obscure the matrix index arithmetic they mirror.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::redundant_guards)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("schauder requires either the `std` or the `libm` feature");

pub mod bound;
pub mod construction;
pub mod defaults;
pub mod dimension;
pub mod error;
pub mod frames;
pub mod generate;
mod math;
pub mod matrix;
pub mod oracle;
pub mod perturbation;
pub mod rng;
pub mod space;

pub use bound::ConstantBound;
pub use construction::{
    build_interleaved, choose_scalars, construct_targeted_frames, ConstructionOutcome,
    FunctionalSubspace, IndexInterleaving, ScalarChoice, SpanReport, VectorSubspace,
};
pub use dimension::{
    dimension_bound_functionals, dimension_bound_vectors, remark38_minimal_n,
    DimensionCertificate, DimensionMethod,
};
pub use error::{Error, Result};
pub use generate::{canonical_frame, mercedes_frame, random_frame, tight_frame};
pub use frames::{
    abs_bilinear_norm, besselian_constant, besselian_diagnostic, frame_constant, validate_frame,
    BilinearBudget, BoundMode, EquivalenceWitness, FramePair, ValidationReport, WitnessDirection,
};
pub use matrix::Matrix;
pub use perturbation::{
    besselian_certificate, build_transfer, criterion_cor34, criterion_cor35, criterion_cor36,
    criterion_thm31, criterion_thm33, emit_perturbed_frames, neumann_inverse, BesselianCertificate,
    Criterion, CriterionReport, NeumannInverse, PerturbationCandidate, PerturbedFrames,
    TransferOperator,
};
pub use space::{
    functional_norm, operator_norm, operator_norm_with, vector_norm, AscentParams, Exponent,
    Functional, Operator, PNormSpace, Vector,
};
