//! p-normed coordinate spaces and the vectors, functionals, and
//! operators living on them.
//!
//! A [`PNormSpace`] is `ℝᵈ` carrying the norm `‖x‖_p`; its dual carries
//! `‖·‖_q` with `1/p + 1/q = 1` (`q = ∞` for `p = 1` and vice versa).
//! The exponent `p = ∞` is a distinguished value, never a large float.
//!
//! Operator norms are exact for `p ∈ {1, 2, ∞}` (column sums, largest
//! singular value, row sums). For other exponents no closed form exists,
//! so [`operator_norm`] returns a certified interval: the lower end from
//! a deterministic seeded ascent, the upper end from the interpolation
//! bound `‖T‖_p ≤ ‖T‖₁^{1/p} · ‖T‖_∞^{1−1/p}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::bound::ConstantBound;
use crate::defaults;
use crate::error::{Error, Result};
use crate::math;
use crate::matrix::{self, Matrix};
use crate::rng::Rng;

/// Norm exponent: a finite `p ≥ 1` or `∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    /// Finite exponent `p ∈ [1, ∞)`.
    Finite(f64),
    /// The supremum norm.
    Infinity,
}

impl Exponent {
    /// Classifies a float as an exponent; `f64::INFINITY` maps to
    /// [`Exponent::Infinity`], anything below 1 or NaN is rejected.
    pub fn from_f64(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            Err(Error::InvalidExponent { p })
        } else if p.is_infinite() {
            Ok(Exponent::Infinity)
        } else {
            Ok(Exponent::Finite(p))
        }
    }

    /// The dual exponent `q` with `1/p + 1/q = 1`.
    pub fn dual(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// Numeric value (`∞` as `f64::INFINITY`).
    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// Do closed-form operator norms exist for this exponent?
    pub fn has_exact_operator_norm(self) -> bool {
        matches!(self, Exponent::Infinity) || matches!(self, Exponent::Finite(p) if p == 1.0 || p == 2.0)
    }
}

impl core::fmt::Display for Exponent {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// `ℝᵈ` with the `p`-norm. Cheap to copy; equality means same dimension
/// and same exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PNormSpace {
    dim: usize,
    p: Exponent,
}

impl PNormSpace {
    /// A `dim`-dimensional space (`dim ≥ 1`) with the given exponent.
    /// Finite exponents must satisfy `1 ≤ p < ∞` (below 1 the triangle
    /// inequality fails and nothing here is a norm); `∞` is spelled
    /// [`Exponent::Infinity`].
    pub fn new(dim: usize, p: Exponent) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("space dimension must be at least 1"));
        }
        if let Exponent::Finite(x) = p {
            if x.is_nan() || x < 1.0 || x.is_infinite() {
                return Err(Error::InvalidParameter(
                    "finite norm exponents must satisfy 1 ≤ p < ∞",
                ));
            }
        }
        Ok(PNormSpace { dim, p })
    }

    /// Dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Norm exponent `p`.
    pub fn p(&self) -> Exponent {
        self.p
    }

    /// Exponent of the dual norm.
    pub fn dual_exponent(&self) -> Exponent {
        self.p.dual()
    }
}

/// The `p`-norm of a coordinate slice.
pub(crate) fn pnorm(p: Exponent, coords: &[f64]) -> f64 {
    match p {
        Exponent::Infinity => coords.iter().fold(0.0, |acc, &v| acc.max(math::abs(v))),
        Exponent::Finite(p) if p == 1.0 => coords.iter().map(|&v| math::abs(v)).sum(),
        Exponent::Finite(p) if p == 2.0 => {
            math::sqrt(coords.iter().map(|&v| v * v).sum::<f64>())
        }
        Exponent::Finite(p) => {
            // Scale by the max to keep powf well away from overflow.
            let mx = coords.iter().fold(0.0f64, |acc, &v| acc.max(math::abs(v)));
            if mx == 0.0 {
                return 0.0;
            }
            let sum: f64 = coords
                .iter()
                .map(|&v| math::powf(math::abs(v) / mx, p))
                .sum();
            mx * math::powf(sum, 1.0 / p)
        }
    }
}

fn ensure_coords(space: &PNormSpace, coords: &[f64]) -> Result<()> {
    if coords.len() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            got: coords.len(),
        });
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter("coordinates must be finite"));
    }
    Ok(())
}

/// A vector in a [`PNormSpace`], measured by `‖·‖_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    space: PNormSpace,
    coords: Vec<f64>,
}

impl Vector {
    /// Wraps coordinates after checking length and finiteness.
    pub fn new(space: PNormSpace, coords: Vec<f64>) -> Result<Self> {
        ensure_coords(&space, &coords)?;
        Ok(Vector { space, coords })
    }

    /// The zero vector.
    pub fn zero(space: PNormSpace) -> Self {
        Vector {
            space,
            coords: vec![0.0; space.dim()],
        }
    }

    /// The `i`-th standard basis vector (`0 ≤ i < d`).
    pub fn unit(space: PNormSpace, i: usize) -> Self {
        assert!(i < space.dim(), "basis index out of range");
        let mut coords = vec![0.0; space.dim()];
        coords[i] = 1.0;
        Vector { space, coords }
    }

    /// The space this vector lives in.
    pub fn space(&self) -> PNormSpace {
        self.space
    }

    /// Coordinate slice.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// `‖self‖_p`.
    pub fn norm(&self) -> f64 {
        vector_norm(self)
    }

    /// `self − other`; the spaces must match.
    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.space, other.space, "vector spaces differ");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Vector {
            space: self.space,
            coords,
        }
    }

    /// `factor · self`.
    pub fn scale(&self, factor: f64) -> Vector {
        Vector {
            space: self.space,
            coords: self.coords.iter().map(|c| factor * c).collect(),
        }
    }
}

/// A linear functional on a [`PNormSpace`], measured by the dual norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional {
    space: PNormSpace,
    coords: Vec<f64>,
}

impl Functional {
    /// Wraps coefficient coordinates after checking length and finiteness.
    pub fn new(space: PNormSpace, coords: Vec<f64>) -> Result<Self> {
        ensure_coords(&space, &coords)?;
        Ok(Functional { space, coords })
    }

    /// The zero functional.
    pub fn zero(space: PNormSpace) -> Self {
        Functional {
            space,
            coords: vec![0.0; space.dim()],
        }
    }

    /// The `i`-th coordinate functional `eᵢ*`.
    pub fn unit(space: PNormSpace, i: usize) -> Self {
        assert!(i < space.dim(), "basis index out of range");
        let mut coords = vec![0.0; space.dim()];
        coords[i] = 1.0;
        Functional { space, coords }
    }

    /// The space this functional acts on.
    pub fn space(&self) -> PNormSpace {
        self.space
    }

    /// Coefficient slice.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Dual norm `‖self‖_q`.
    pub fn norm(&self) -> f64 {
        functional_norm(self)
    }

    /// Applies the functional: `Σᵢ fᵢ xᵢ`.
    pub fn apply(&self, v: &Vector) -> f64 {
        assert_eq!(self.space, v.space, "functional applied across spaces");
        self.coords
            .iter()
            .zip(&v.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `self − other`; the spaces must match.
    pub fn sub(&self, other: &Functional) -> Functional {
        assert_eq!(self.space, other.space, "functional spaces differ");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Functional {
            space: self.space,
            coords,
        }
    }

    /// `factor · self`.
    pub fn scale(&self, factor: f64) -> Functional {
        Functional {
            space: self.space,
            coords: self.coords.iter().map(|c| factor * c).collect(),
        }
    }
}

/// `‖v‖_p`.
pub fn vector_norm(v: &Vector) -> f64 {
    pnorm(v.space.p(), &v.coords)
}

/// Dual norm `‖f‖_q` of a functional's coefficient vector.
pub fn functional_norm(f: &Functional) -> f64 {
    pnorm(f.space.dual_exponent(), &f.coords)
}

/// A linear operator on a [`PNormSpace`], stored as a dense `d × d`
/// matrix acting on coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: PNormSpace,
    matrix: Matrix,
}

impl Operator {
    /// Wraps a square matrix of the space's dimension.
    pub fn new(space: PNormSpace, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: matrix.rows(),
            });
        }
        Ok(Operator { space, matrix })
    }

    /// The identity operator.
    pub fn identity(space: PNormSpace) -> Self {
        Operator {
            space,
            matrix: Matrix::identity(space.dim()),
        }
    }

    /// The space the operator acts on.
    pub fn space(&self) -> PNormSpace {
        self.space
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Applies the operator to a vector.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.space, v.space, "operator applied across spaces");
        Vector {
            space: self.space,
            coords: self.matrix.apply(&v.coords),
        }
    }

    /// Pre-composes a functional: returns `f ∘ self`.
    pub fn compose_functional(&self, f: &Functional) -> Functional {
        assert_eq!(self.space, f.space, "functional composed across spaces");
        Functional {
            space: self.space,
            coords: self.matrix.apply_transpose(&f.coords),
        }
    }

    /// Operator composition `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Operator) -> Operator {
        assert_eq!(self.space, rhs.space, "operators composed across spaces");
        Operator {
            space: self.space,
            matrix: self.matrix.mul(&rhs.matrix),
        }
    }

    /// Induced norm with default search parameters; see [`operator_norm`].
    pub fn norm(&self) -> ConstantBound {
        operator_norm(self)
    }
}

/// Parameters for the deterministic lower-bound search used on exponents
/// without closed-form operator norms.
#[derive(Debug, Clone, Copy)]
pub struct AscentParams {
    /// PRNG seed for the random starting points (default 0).
    pub seed: u64,
    /// Number of random starting points added to the `d` canonical ones.
    pub starts: usize,
    /// Iteration cap per starting point.
    pub max_iters: usize,
}

impl Default for AscentParams {
    fn default() -> Self {
        AscentParams {
            seed: defaults::DEFAULT_SEED,
            starts: 24,
            max_iters: 128,
        }
    }
}

/// Induced operator norm `‖T‖_{p→p}` with the default search parameters.
///
/// Exact (degenerate interval, `exact = true`) for `p ∈ {1, 2, ∞}`;
/// otherwise a certified interval whose lower end comes from a seeded
/// nonlinear power-method ascent and whose upper end is the
/// interpolation bound `‖T‖₁^{1/p} · ‖T‖_∞^{1−1/p}`.
pub fn operator_norm(op: &Operator) -> ConstantBound {
    operator_norm_with(op, &AscentParams::default())
}

/// [`operator_norm`] with explicit search parameters.
pub fn operator_norm_with(op: &Operator, params: &AscentParams) -> ConstantBound {
    matrix_p_norm(op.space.p(), &op.matrix, params)
}

/// Largest column absolute sum: the exact `1 → 1` induced norm.
pub(crate) fn max_col_abs_sum(m: &Matrix) -> f64 {
    let mut best = 0.0f64;
    for j in 0..m.cols() {
        let mut acc = 0.0;
        for i in 0..m.rows() {
            acc += math::abs(m.at(i, j));
        }
        best = best.max(acc);
    }
    best
}

/// Largest row absolute sum: the exact `∞ → ∞` induced norm.
pub(crate) fn max_row_abs_sum(m: &Matrix) -> f64 {
    let mut best = 0.0f64;
    for i in 0..m.rows() {
        let mut acc = 0.0;
        for j in 0..m.cols() {
            acc += math::abs(m.at(i, j));
        }
        best = best.max(acc);
    }
    best
}

/// Largest singular value via a symmetric Jacobi eigensolve of the Gram
/// matrix on the smaller side.
pub(crate) fn sigma_max(m: &Matrix) -> f64 {
    let gram = if m.rows() >= m.cols() {
        m.transpose().mul(m)
    } else {
        m.mul(&m.transpose())
    };
    let (eigs, _) = matrix::sym_eigen(&gram);
    let lam = eigs.iter().fold(0.0f64, |acc, &l| acc.max(l));
    math::sqrt(lam)
}

/// `‖M‖_{p→p}` for a raw square matrix.
pub(crate) fn matrix_p_norm(p: Exponent, m: &Matrix, params: &AscentParams) -> ConstantBound {
    debug_assert!(m.is_square());
    match p {
        Exponent::Finite(pv) if pv == 1.0 => ConstantBound::exact(max_col_abs_sum(m)),
        Exponent::Infinity => ConstantBound::exact(max_row_abs_sum(m)),
        Exponent::Finite(pv) if pv == 2.0 => ConstantBound::exact(sigma_max(m)),
        Exponent::Finite(pv) => {
            let n1 = max_col_abs_sum(m);
            let ninf = max_row_abs_sum(m);
            let upper = math::powf(n1, 1.0 / pv) * math::powf(ninf, 1.0 - 1.0 / pv);
            let lower = ascent_lower(pv, m, params).min(upper);
            ConstantBound::interval(lower, upper)
        }
    }
}

/// Deterministic lower bound on `‖M‖_{p→p}` by the nonlinear power
/// method: alternate `y = Mx`, `z = Mᵀ ψ_p(y)`, `x = ψ_q(z)` normalized,
/// where `ψ_r(v)ᵢ = sign(vᵢ)|vᵢ|^{r−1}`. Every iterate's `‖Mx‖_p` with
/// `‖x‖_p = 1` is a valid lower bound; the iteration is monotone, and
/// canonical plus seeded random starts guard against bad basins.
fn ascent_lower(p: f64, m: &Matrix, params: &AscentParams) -> f64 {
    let d = m.rows();
    let q = p / (p - 1.0);
    let mut rng = Rng::new(params.seed);
    let mut best = 0.0f64;

    let psi = |v: &[f64], r: f64| -> Vec<f64> {
        v.iter()
            .map(|&x| {
                if x == 0.0 {
                    0.0
                } else {
                    let mag = math::powf(math::abs(x), r - 1.0);
                    if x > 0.0 {
                        mag
                    } else {
                        -mag
                    }
                }
            })
            .collect()
    };

    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(d + params.starts);
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        starts.push(e);
    }
    for _ in 0..params.starts {
        starts.push((0..d).map(|_| rng.symmetric()).collect());
    }

    let pexp = Exponent::Finite(p);
    for mut x in starts {
        let nx = pnorm(pexp, &x);
        if nx == 0.0 {
            continue;
        }
        for c in &mut x {
            *c /= nx;
        }
        let mut prev = -1.0f64;
        for _ in 0..params.max_iters {
            let y = m.apply(&x);
            let g = pnorm(pexp, &y);
            best = best.max(g);
            if g == 0.0 || g <= prev * (1.0 + 1e-13) {
                break;
            }
            prev = g;
            let yhat: Vec<f64> = y.iter().map(|v| v / g).collect();
            let z = m.apply_transpose(&psi(&yhat, p));
            let mut xnew = psi(&z, q);
            let nz = pnorm(pexp, &xnew);
            if nz == 0.0 {
                break;
            }
            for c in &mut xnew {
                *c /= nz;
            }
            x = xnew;
        }
    }
    best
}
