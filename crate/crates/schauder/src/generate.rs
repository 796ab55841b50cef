//! Seeded frame generators for tests, benchmarks, and the CLI.
//!
//! All generators are deterministic in their seed and parameters, so any
//! frame a test or a command line produced can be reproduced exactly.

use alloc::vec::Vec;

use crate::defaults;
use crate::error::{Error, Result};
use crate::frames::{validate_frame, FramePair};
use crate::math;
use crate::matrix::{self, Matrix};
use crate::rng::Rng;
use crate::space::{Exponent, Functional, PNormSpace, Vector};

/// Attempts per generator call before giving up on drawing a
/// well-conditioned random frame (each attempt is a fresh draw from the
/// same deterministic stream).
const DRAW_ATTEMPTS: usize = 32;

/// The canonical pair sequence `(eₙ, eₙ*)` — the frame every space has.
pub fn canonical_frame(space: PNormSpace) -> FramePair {
    let pairs = (0..space.dim())
        .map(|i| (Vector::unit(space, i), Functional::unit(space, i)))
        .collect();
    FramePair::new(space, pairs).expect("canonical pairs share their space")
}

/// Three unit vectors at mutual 120° in the plane, paired with
/// `bₙ* = (2/3)·aₙᵀ` — the smallest equal-norm tight frame that is not a
/// basis. The synthesis identity `Σ (2/3)·aₙ⊗aₙᵀ = I` holds at every
/// exponent; the frame and summability constants equal 1 only at `p = 2`.
pub fn mercedes_frame(p: Exponent) -> Result<FramePair> {
    let space = PNormSpace::new(2, p)?;
    let r3 = math::sqrt(3.0);
    let dirs = [[1.0, 0.0], [-0.5, r3 / 2.0], [-0.5, -r3 / 2.0]];
    let mut pairs = Vec::with_capacity(3);
    for d in dirs {
        let a = Vector::new(space, d.to_vec())?;
        let b = Functional::new(space, d.iter().map(|c| c * 2.0 / 3.0).collect())?;
        pairs.push((a, b));
    }
    FramePair::new(space, pairs)
}

fn draw_matrix(rng: &mut Rng, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<f64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.symmetric()).collect())
        .collect();
    Matrix::from_rows(&data).expect("drawn rows share their length")
}

fn column_pairs(space: PNormSpace, a: &Matrix, b: &Matrix) -> Result<FramePair> {
    let mut pairs = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let va: Vec<f64> = (0..a.rows()).map(|i| a.at(i, j)).collect();
        let vb: Vec<f64> = (0..b.rows()).map(|i| b.at(i, j)).collect();
        pairs.push((Vector::new(space, va)?, Functional::new(space, vb)?));
    }
    FramePair::new(space, pairs)
}

/// Draws a Parseval tight frame of `count ≥ dim` pairs: a random matrix
/// is polar-normalized (`aₙ = (G·Gᵀ)^{−1/2}·gₙ`), which makes the frame
/// vectors' outer products with themselves resolve the identity, and the
/// functionals are the vectors' own coordinates.
pub fn tight_frame(space: PNormSpace, count: usize, seed: u64) -> Result<FramePair> {
    let d = space.dim();
    if count < d {
        return Err(Error::InvalidParameter(
            "a frame needs at least as many pairs as the dimension",
        ));
    }
    let mut rng = Rng::new(seed);
    let mut last_condition = f64::INFINITY;
    for _ in 0..DRAW_ATTEMPTS {
        let g = draw_matrix(&mut rng, d, count);
        let s = g.mul(&g.transpose());
        let (eigs, basis) = matrix::sym_eigen(&s);
        let lambda_max = eigs.iter().fold(0.0f64, |acc, &x| acc.max(x));
        let lambda_min = eigs.iter().fold(f64::INFINITY, |acc, &x| acc.min(x));
        if !(lambda_min > lambda_max * 1e-10 && lambda_max > 0.0) {
            last_condition = if lambda_min > 0.0 {
                lambda_max / lambda_min
            } else {
                f64::INFINITY
            };
            continue;
        }
        // S^{−1/2} = V · diag(λ^{−1/2}) · Vᵀ.
        let mut scaled = basis.clone();
        for j in 0..d {
            let inv_root = 1.0 / math::sqrt(eigs[j]);
            for i in 0..d {
                scaled.set(i, j, scaled.at(i, j) * inv_root);
            }
        }
        let inv_root_s = scaled.mul(&basis.transpose());
        let a = inv_root_s.mul(&g);
        let frame = column_pairs(space, &a, &a)?;
        if validate_frame(&frame, defaults::FRAME_TOL).is_frame {
            return Ok(frame);
        }
    }
    Err(Error::IllConditioned {
        condition: last_condition,
    })
}

/// Draws a frame with independently random vectors: the analysis side is
/// a random matrix corrected by right-inverse completion
/// (`B = B₀ + Yᵀ·A` with `(A·Aᵀ)·Y = I − A·B₀ᵀ`), which enforces the
/// synthesis identity `A·Bᵀ = I` exactly up to solver rounding.
pub fn random_frame(space: PNormSpace, count: usize, seed: u64) -> Result<FramePair> {
    let d = space.dim();
    if count < d {
        return Err(Error::InvalidParameter(
            "a frame needs at least as many pairs as the dimension",
        ));
    }
    let mut rng = Rng::new(seed);
    for _ in 0..DRAW_ATTEMPTS {
        let a = draw_matrix(&mut rng, d, count);
        let b0 = draw_matrix(&mut rng, d, count).scale(0.5);
        let gram = a.mul(&a.transpose());
        let rhs = Matrix::identity(d).sub(&a.mul(&b0.transpose()));
        let y = match matrix::solve(&gram, &rhs) {
            Ok(y) => y,
            Err(_) => continue,
        };
        let b = b0.add(&y.transpose().mul(&a));
        let frame = column_pairs(space, &a, &b)?;
        if validate_frame(&frame, defaults::FRAME_TOL).is_frame {
            return Ok(frame);
        }
    }
    Err(Error::IllConditioned {
        condition: f64::INFINITY,
    })
}
