//! Command-line front end: JSON in, JSON report out, deterministic for
//! fixed inputs and seeds.
//!
//! Exit codes: 0 on success, 2 when a checked criterion is unsatisfied,
//! 1 on input errors (malformed JSON is reported with its position).

mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use io::{
    exponent_from_arg, matrix_rows, read_json, BoundJson, CheckReport, ConstantsReport,
    ConstructReport, DimensionReport, FrameJson, InputError, InputResult, PerturbReport,
    PerturbationJson, SpansJson, SubspaceJson, SummabilityReport, ValidateReport,
};
use schauder::{
    besselian_certificate, besselian_constant, besselian_diagnostic, canonical_frame,
    construct_targeted_frames, criterion_cor34, criterion_cor35, criterion_cor36, criterion_thm33,
    criterion_thm31, emit_perturbed_frames, frame_constant, random_frame, remark38_minimal_n,
    tight_frame, validate_frame, BilinearBudget, BoundMode, Criterion, CriterionReport, Error,
    Functional, IndexInterleaving, PNormSpace, PerturbationCandidate, Vector,
};

#[derive(Parser)]
#[command(
    name = "schauder",
    version,
    about = "Finite frame toolkit over p-normed coordinate spaces: validation, \
             constants, perturbation certificates, dimension bounds, and targeted \
             constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the frame identity Σ aₙ⊗bₙ* = I and report the residual.
    Validate {
        /// Frame JSON file.
        frame: PathBuf,
        /// Residual tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Report the partial-sum constant K, the summability constant L,
    /// the frame residual, and a sampled summability diagnostic.
    Constants {
        /// Frame JSON file.
        frame: PathBuf,
        /// Use exhaustive sign enumeration (exact at p ∈ {1, 2, ∞}).
        #[arg(long, conflicts_with = "bounds")]
        exact: bool,
        /// Use certified lower/upper bounds (the default).
        #[arg(long)]
        bounds: bool,
        /// Residual tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Sample count for the diagnostic ratio.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Seed for the diagnostic sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate a perturbation criterion; exit 2 when it is unsatisfied.
    Check {
        /// Perturbation JSON file ({"base": frame, "candidate": [{"x","y"}]}).
        perturbation: PathBuf,
        /// Criterion id: thm31, cor34, thm33, cor35, or cor36.
        #[arg(long, default_value = "thm31")]
        criterion: String,
        /// Use exhaustive sign enumeration (exact at p ∈ {1, 2, ∞}).
        #[arg(long, conflicts_with = "bounds")]
        exact: bool,
        /// Use certified lower/upper bounds (the default).
        #[arg(long)]
        bounds: bool,
    },
    /// Evaluate a criterion and emit both corrected frames with the
    /// transfer operator, its inverse, and the equivalence witness.
    Perturb {
        /// Perturbation JSON file.
        perturbation: PathBuf,
        /// Criterion id: thm31, cor34, thm33, cor35, or cor36.
        #[arg(long, default_value = "thm31")]
        criterion: String,
        /// Use exhaustive sign enumeration (exact at p ∈ {1, 2, ∞}).
        #[arg(long, conflicts_with = "bounds")]
        exact: bool,
        /// Use certified lower/upper bounds (the default).
        #[arg(long)]
        bounds: bool,
        /// Neumann series tail tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Emit even when the criterion is unsatisfied, provided the
        /// measured ‖T−I‖ still permits inversion.
        #[arg(long)]
        force: bool,
    },
    /// Scan for the least N certifying that N pairs already suffice for
    /// the space dimension.
    Dimension {
        /// Frame JSON file.
        frame: PathBuf,
        /// Use per-tail sign enumeration instead of the crude norm-product sum.
        #[arg(long)]
        sharp: bool,
    },
    /// Interleave new pairs into a frame so the inserted directions span
    /// the requested subspaces, with a criterion value scheduled by θ.
    Construct {
        /// Base frame JSON file.
        #[arg(long)]
        frame: PathBuf,
        /// Target vector subspace JSON ({"space", "basis": [[...]]}).
        #[arg(long = "V")]
        v: PathBuf,
        /// Target functional subspace JSON ({"space", "basis": [[...]]}).
        #[arg(long = "W")]
        w: PathBuf,
        /// 1-based insert positions in the final sequence, e.g. 2,4.
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
        /// Criterion weight in (0, 1); the criterion value lands at θ(1−2^−|I|).
        #[arg(long)]
        theta: f64,
        /// Certify summability (cor34 path) instead of reconstruction (thm31 path).
        #[arg(long)]
        besselian: bool,
    },
    /// Generate a seeded frame and print its JSON.
    Gen {
        /// Space dimension.
        #[arg(long)]
        dim: usize,
        /// Number of pairs (defaults to the dimension).
        #[arg(long)]
        count: Option<usize>,
        /// Norm exponent: a number ≥ 1 or "inf".
        #[arg(long, default_value = "2")]
        p: String,
        /// canonical | tight | random.
        #[arg(long, default_value = "canonical")]
        kind: String,
        /// Generator seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn mode_from_flags(exact: bool) -> BoundMode {
    if exact {
        BoundMode::Exact
    } else {
        BoundMode::Bounds
    }
}

fn evaluate_criterion(
    c: &PerturbationCandidate,
    name: &str,
    mode: BoundMode,
    budget: &BilinearBudget,
) -> InputResult<CriterionReport> {
    match name {
        "thm31" => Ok(criterion_thm31(c)?),
        "cor34" => Ok(criterion_cor34(c)?),
        "thm33" => Ok(criterion_thm33(c, mode, budget)?),
        "cor35" => {
            let xs: Vec<Vector> = (0..c.len()).map(|n| c.vector(n).clone()).collect();
            Ok(criterion_cor35(c.base(), &xs, mode, budget)?)
        }
        "cor36" => {
            let ys: Vec<Functional> = (0..c.len()).map(|n| c.functional(n).clone()).collect();
            Ok(criterion_cor36(c.base(), &ys, mode, budget)?)
        }
        other => Err(InputError(format!(
            "unknown criterion \"{other}\" (expected thm31, cor34, thm33, cor35, or cor36)"
        ))),
    }
}

fn check_report(report: &CriterionReport) -> CheckReport {
    CheckReport {
        criterion: report.criterion.to_string(),
        value: BoundJson::from_core(report.value),
        satisfied: report.satisfied,
        margin: report.margin,
    }
}

fn cmd_validate(frame: &Path, tol: f64) -> InputResult<u8> {
    let f = read_json::<FrameJson>(frame)?.to_core()?;
    let check = validate_frame(&f, tol);
    print!(
        "{}",
        io::render(&ValidateReport {
            residual: check.residual,
            tol: check.tol,
            is_frame: check.is_frame,
        })
    );
    Ok(if check.is_frame { 0 } else { 2 })
}

fn cmd_constants(
    frame: &Path,
    exact: bool,
    tol: f64,
    samples: usize,
    seed: u64,
) -> InputResult<u8> {
    let f = read_json::<FrameJson>(frame)?.to_core()?;
    let budget = BilinearBudget::default();
    let k = frame_constant(&f)?;
    let l = besselian_constant(&f, mode_from_flags(exact), &budget)?;
    let report = ConstantsReport {
        k: BoundJson::from_core(k),
        l: BoundJson::from_core(l),
        residual: validate_frame(&f, tol).residual,
        diagnostic: besselian_diagnostic(&f, samples, seed),
    };
    print!("{}", io::render(&report));
    Ok(0)
}

fn cmd_check(perturbation: &Path, criterion: &str, exact: bool) -> InputResult<u8> {
    let c = read_json::<PerturbationJson>(perturbation)?.to_core()?;
    let report = evaluate_criterion(&c, criterion, mode_from_flags(exact), &BilinearBudget::default())?;
    print!("{}", io::render(&check_report(&report)));
    Ok(if report.satisfied { 0 } else { 2 })
}

fn cmd_perturb(
    perturbation: &Path,
    criterion: &str,
    exact: bool,
    tol: f64,
    force: bool,
) -> InputResult<u8> {
    let c = read_json::<PerturbationJson>(perturbation)?.to_core()?;
    let mode = mode_from_flags(exact);
    let budget = BilinearBudget::default();
    let report = evaluate_criterion(&c, criterion, mode, &budget)?;

    if !report.satisfied && !force {
        eprintln!(
            "criterion {} unsatisfied (value {} ≥ 1); pass --force to emit anyway",
            report.criterion, report.value.upper
        );
        print!("{}", io::render(&check_report(&report)));
        return Ok(2);
    }

    let emitted = match emit_perturbed_frames(&c, &report, tol, force) {
        Ok(frames) => frames,
        Err(e @ (Error::UnsatisfiedCriterion { .. } | Error::ContractionOutOfRange { .. })) => {
            eprintln!("error: {e}");
            return Ok(2);
        }
        Err(e) => return Err(e.into()),
    };

    let summability = if report.criterion == Criterion::Thm31 {
        None
    } else {
        let base_l = besselian_constant(c.base(), mode, &budget)?;
        let cert = besselian_certificate(&emitted, &report.value, &base_l, mode, &budget)?;
        Some(SummabilityReport {
            alpha: BoundJson::from_core(report.value),
            base_l: BoundJson::from_core(base_l),
            frame_xz_constant: BoundJson::from_core(cert.frame_xz_constant),
            frame_wy_constant: BoundJson::from_core(cert.frame_wy_constant),
            rhs: cert.rhs,
            holds: cert.holds,
        })
    };

    let report_json = PerturbReport {
        criterion: report.criterion.to_string(),
        value: BoundJson::from_core(report.value),
        satisfied: report.satisfied,
        certified: emitted.certified,
        contraction: emitted.transfer.contraction,
        t: matrix_rows(emitted.transfer.forward.matrix()),
        r: matrix_rows(emitted.transfer.inverse.matrix()),
        inverse_error: emitted.transfer.inverse_error,
        iterations: emitted.transfer.iterations,
        witness_residual: emitted.witness.residual(),
        frame_xz: FrameJson::from_core(&emitted.frame_xz),
        frame_wy: FrameJson::from_core(&emitted.frame_wy),
        summability,
    };
    print!("{}", io::render(&report_json));
    Ok(0)
}

fn cmd_dimension(frame: &Path, sharp: bool) -> InputResult<u8> {
    let f = read_json::<FrameJson>(frame)?.to_core()?;
    let cert = remark38_minimal_n(&f, sharp, &BilinearBudget::default())?;
    let report = DimensionReport {
        n: cert.n,
        tail: BoundJson::from_core(cert.tail),
        method: cert.method.id().to_string(),
        valid: cert.valid,
    };
    print!("{}", io::render(&report));
    Ok(0)
}

fn cmd_construct(
    frame: &Path,
    v: &Path,
    w: &Path,
    indices: &[usize],
    theta: f64,
    besselian: bool,
) -> InputResult<u8> {
    let f = read_json::<FrameJson>(frame)?.to_core()?;
    let v = read_json::<SubspaceJson>(v)?.to_vectors()?;
    let w = read_json::<SubspaceJson>(w)?.to_functionals()?;
    let total = f.len() + indices.len();
    let idx = IndexInterleaving::new(total, indices)?;
    let out = construct_targeted_frames(&f, &v, &w, &idx, theta, besselian)?;
    let report = ConstructReport {
        criterion: out.frames.report.criterion.to_string(),
        value: BoundJson::from_core(out.frames.report.value),
        theta: out.scalars.theta,
        scalars: out.scalars.scalars.clone(),
        predicted_sum: out.scalars.predicted_sum,
        frame_xz: FrameJson::from_core(&out.frames.frame_xz),
        frame_wy: FrameJson::from_core(&out.frames.frame_wy),
        spans: SpansJson::from_core(&out.spans),
    };
    print!("{}", io::render(&report));
    Ok(0)
}

fn cmd_gen(dim: usize, count: Option<usize>, p: &str, kind: &str, seed: u64) -> InputResult<u8> {
    let space = PNormSpace::new(dim, exponent_from_arg(p)?)?;
    let count = count.unwrap_or(dim);
    let f = match kind {
        "canonical" => {
            if count != dim {
                return Err(InputError(format!(
                    "canonical frames have exactly one pair per dimension; \
                     --count {count} conflicts with --dim {dim}"
                )));
            }
            canonical_frame(space)
        }
        "tight" => tight_frame(space, count, seed)?,
        "random" => random_frame(space, count, seed)?,
        other => {
            return Err(InputError(format!(
                "unknown kind \"{other}\" (expected canonical, tight, or random)"
            )))
        }
    };
    print!("{}", io::render(&FrameJson::from_core(&f)));
    Ok(0)
}

fn run(cli: Cli) -> InputResult<u8> {
    match &cli.command {
        Command::Validate { frame, tol } => cmd_validate(frame, *tol),
        Command::Constants {
            frame,
            exact,
            bounds: _,
            tol,
            samples,
            seed,
        } => cmd_constants(frame, *exact, *tol, *samples, *seed),
        Command::Check {
            perturbation,
            criterion,
            exact,
            bounds: _,
        } => cmd_check(perturbation, criterion, *exact),
        Command::Perturb {
            perturbation,
            criterion,
            exact,
            bounds: _,
            tol,
            force,
        } => cmd_perturb(perturbation, criterion, *exact, *tol, *force),
        Command::Dimension { frame, sharp } => cmd_dimension(frame, *sharp),
        Command::Construct {
            frame,
            v,
            w,
            indices,
            theta,
            besselian,
        } => cmd_construct(frame, v, w, indices, *theta, *besselian),
        Command::Gen {
            dim,
            count,
            p,
            kind,
            seed,
        } => cmd_gen(*dim, *count, p, kind, *seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
