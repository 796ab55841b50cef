//! Independent reference implementations for cross-validating the main
//! computation path in tests.
//!
//! Everything here is deliberately implemented *differently* from the
//! production modules and shares no numerical helper with them:
//!
//! * [`direct_inverse`] — Gauss-Jordan elimination with a condition
//!   estimate and residual check, against the Neumann-series inverse;
//! * [`sign_enum_bilinear`] — recursive exhaustive enumeration of all
//!   `2^M` sign patterns, against the closed-form/enumeration hybrid in
//!   the frames module;
//! * [`ball_vertex_norm`] — operator norms for `p ∈ {1, ∞}` by literally
//!   maximizing over the extreme points of the unit ball, against the
//!   column/row-sum formulas;
//! * [`spectral_norm_bisect`] — largest singular value via Householder
//!   tridiagonalization plus Sturm-sequence bisection, against the
//!   Jacobi eigensolver;
//! * [`dense_ascent_lower`] — projected-gradient ascent with line
//!   search for general `p`, against the nonlinear power method.
//!
//! The implementations favour obviousness over speed; none of them is
//! exposed through the CLI.

use alloc::vec;
use alloc::vec::Vec;

use crate::defaults;
use crate::error::{Error, Result};
use crate::math;
use crate::matrix::Matrix;
use crate::space::Exponent;

// ---------------------------------------------------------------------
// Self-contained scalar/vector/matrix helpers (no sharing with the main
// path beyond the raw `Matrix` data accessors).
// ---------------------------------------------------------------------

/// Minimal multiplicative congruential generator (Lehmer, modulus 2^64)
/// — intentionally a different generator from the crate-wide PRNG.
struct OracleRng(u64);

impl OracleRng {
    fn new(seed: u64) -> Self {
        OracleRng(seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493) | 1)
    }
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0
    }
    fn symmetric(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)) * 2.0 - 1.0
    }
}

type Grid = Vec<Vec<f64>>;

fn to_grid(m: &Matrix) -> Grid {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn grid_zeros(rows: usize, cols: usize) -> Grid {
    vec![vec![0.0; cols]; rows]
}

fn grid_matvec(a: &Grid, x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

/// Gram matrix `AᵀA` accumulated column-by-column (a different loop
/// order from the production matrix product).
fn grid_gram(a: &Grid) -> Grid {
    let n = a.first().map_or(0, |r| r.len());
    let mut g = grid_zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let mut acc = 0.0;
            for row in a {
                acc += row[j] * row[k];
            }
            g[j][k] = acc;
            g[k][j] = acc;
        }
    }
    g
}

fn vec_pnorm(p: Exponent, x: &[f64]) -> f64 {
    match p {
        Exponent::Infinity => x.iter().fold(0.0f64, |a, &v| a.max(math::abs(v))),
        Exponent::Finite(pv) if pv == 1.0 => x.iter().map(|&v| math::abs(v)).sum(),
        Exponent::Finite(pv) if pv == 2.0 => math::sqrt(x.iter().map(|&v| v * v).sum::<f64>()),
        Exponent::Finite(pv) => {
            let sum: f64 = x.iter().map(|&v| math::powf(math::abs(v), pv)).sum();
            math::powf(sum, 1.0 / pv)
        }
    }
}

// ---------------------------------------------------------------------
// Symmetric eigenvalues by tridiagonalization + Sturm bisection.
// ---------------------------------------------------------------------

/// Householder reduction of a symmetric grid to tridiagonal form;
/// returns `(diagonal, off-diagonal)`.
fn tridiagonalize(a: &Grid) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut m = a.clone();
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let mut x = vec![0.0; len];
        for i in 0..len {
            x[i] = m[k + 1 + i][k];
        }
        let xnorm = math::sqrt(x.iter().map(|v| v * v).sum::<f64>());
        if xnorm <= 1e-300 {
            continue;
        }
        let alpha = if x[0] >= 0.0 { -xnorm } else { xnorm };
        let mut v = x;
        v[0] -= alpha;
        let vnorm = math::sqrt(v.iter().map(|c| c * c).sum::<f64>());
        if vnorm <= 1e-300 {
            continue;
        }
        for c in &mut v {
            *c /= vnorm;
        }
        // Apply H = I − 2vvᵀ to the trailing block: A ← H A H.
        let base = k + 1;
        let mut w = vec![0.0; len];
        for i in 0..len {
            let mut acc = 0.0;
            for j in 0..len {
                acc += m[base + i][base + j] * v[j];
            }
            w[i] = acc;
        }
        let beta: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        for i in 0..len {
            for j in 0..len {
                m[base + i][base + j] +=
                    -2.0 * v[i] * w[j] - 2.0 * w[i] * v[j] + 4.0 * beta * v[i] * v[j];
            }
        }
        m[k + 1][k] = alpha;
        m[k][k + 1] = alpha;
        for i in (k + 2)..n {
            m[i][k] = 0.0;
            m[k][i] = 0.0;
        }
    }
    let diag = (0..n).map(|i| m[i][i]).collect();
    let off = (0..n.saturating_sub(1)).map(|i| m[i + 1][i]).collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`
/// (Sturm sequence on the LDLᵀ recurrence).
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 0.0;
    for i in 0..diag.len() {
        q = if i == 0 {
            diag[0] - x
        } else {
            (diag[i] - x) - off[i - 1] * off[i - 1] / q
        };
        if math::abs(q) < 1e-300 {
            // A singular pivot means `x` hits an eigenvalue of the leading
            // block exactly. Treat it as 0⁻ so the hit is counted and the
            // next step divides by a nonzero — otherwise an exact hit
            // reports one eigenvalue too few and bisection walks past it.
            q = -1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Extreme eigenvalues of a symmetric grid by bisection; returns
/// `(λ_min, λ_max)` certified to a relative width of ~1e−15.
fn extreme_eigs_bisect(a: &Grid) -> (f64, f64) {
    let n = a.len();
    if n == 1 {
        return (a[0][0], a[0][0]);
    }
    let (diag, off) = tridiagonalize(a);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += math::abs(off[i - 1]);
        }
        if i + 1 < n {
            r += math::abs(off[i]);
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let scale = math::abs(lo).max(math::abs(hi)).max(1e-300);

    let bisect = |mut a: f64, mut b: f64, all_below: bool| -> f64 {
        for _ in 0..120 {
            if b - a <= 1e-16 * scale {
                break;
            }
            let mid = 0.5 * (a + b);
            let c = count_below(&diag, &off, mid);
            let go_down = if all_below { c == n } else { c == 0 };
            if all_below {
                if go_down {
                    b = mid;
                } else {
                    a = mid;
                }
            } else if go_down {
                a = mid;
            } else {
                b = mid;
            }
        }
        if all_below {
            b
        } else {
            a
        }
    };

    let lam_max = bisect(lo, hi, true);
    let lam_min = bisect(lo, hi, false);
    (lam_min, lam_max)
}

/// Largest singular value via tridiagonalization + bisection on the Gram
/// matrix. Independent of the Jacobi-based production implementation.
pub fn spectral_norm_bisect(m: &Matrix) -> f64 {
    let g = grid_gram(&to_grid(m));
    if g.is_empty() {
        return 0.0;
    }
    let (_, lam_max) = extreme_eigs_bisect(&g);
    math::sqrt(lam_max.max(0.0))
}

// ---------------------------------------------------------------------
// Direct inverse.
// ---------------------------------------------------------------------

/// Dense inverse by Gauss-Jordan elimination with partial pivoting.
///
/// Fails with [`Error::Singular`] on a vanishing pivot, with
/// [`Error::IllConditioned`] when the 2-norm condition estimate reaches
/// `1e12` or the residual `‖T·R − I‖_∞` exceeds `1e−10`; a returned
/// inverse is therefore always certified.
pub fn direct_inverse(t: &Matrix) -> Result<Matrix> {
    if !t.is_square() {
        return Err(Error::InvalidParameter("inverse needs a square matrix"));
    }
    let n = t.rows();
    let a = to_grid(t);

    // Condition estimate from the extreme singular values.
    let gram = grid_gram(&a);
    let (lam_min, lam_max) = extreme_eigs_bisect(&gram);
    if lam_min <= 0.0 {
        return Err(Error::Singular);
    }
    let cond = math::sqrt(lam_max / lam_min);
    if cond >= 1e12 {
        return Err(Error::IllConditioned { condition: cond });
    }

    // Gauss-Jordan on [A | I].
    let mut w = a.clone();
    let mut inv: Grid = (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[i] = 1.0;
            row
        })
        .collect();
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if math::abs(w[r][col]) > math::abs(w[piv][col]) {
                piv = r;
            }
        }
        if math::abs(w[piv][col]) <= 1e-300 {
            return Err(Error::Singular);
        }
        w.swap(col, piv);
        inv.swap(col, piv);
        let d = w[col][col];
        for j in 0..n {
            w[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = w[r][col];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                w[r][j] -= f * w[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }

    // Residual check ‖T·R − I‖_∞.
    let mut residual = 0.0f64;
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            let mut acc = 0.0;
            for (k, inv_row) in inv.iter().enumerate() {
                acc += a[i][k] * inv_row[j];
            }
            if i == j {
                acc -= 1.0;
            }
            row_sum += math::abs(acc);
        }
        residual = residual.max(row_sum);
    }
    if residual > 1e-10 {
        return Err(Error::IllConditioned { condition: cond });
    }

    let rows: Vec<Vec<f64>> = inv;
    Matrix::from_rows(&rows)
}

// ---------------------------------------------------------------------
// Exhaustive enumerations.
// ---------------------------------------------------------------------

fn grid_op_norm(p: Exponent, g: &Grid) -> Result<f64> {
    let n = g.len();
    match p {
        Exponent::Finite(pv) if pv == 1.0 => {
            // Column sums, accumulated per-row into a running vector —
            // a different traversal from the production column loop.
            let mut cols = vec![0.0f64; n];
            for row in g {
                for (c, v) in cols.iter_mut().zip(row) {
                    *c += math::abs(*v);
                }
            }
            Ok(cols.iter().fold(0.0f64, |a, &b| a.max(b)))
        }
        Exponent::Infinity => {
            let mut best = 0.0f64;
            for row in g {
                best = best.max(row.iter().map(|&v| math::abs(v)).sum());
            }
            Ok(best)
        }
        Exponent::Finite(pv) if pv == 2.0 => {
            let gram = grid_gram(g);
            let (_, lam_max) = extreme_eigs_bisect(&gram);
            Ok(math::sqrt(lam_max.max(0.0)))
        }
        _ => Err(Error::ExactNormUnavailable),
    }
}

/// Maximum over all `2^M` sign patterns `s ∈ {±1}^M` of the exact
/// operator norm `‖Σₙ sₙ Dₙ‖_{p→p}`, by depth-first recursion with a
/// fresh accumulator copy per branch (no incremental updates, so no
/// rounding drift across patterns).
///
/// Preconditions: `M ≤ 20`, `p ∈ {1, 2, ∞}`, square terms of equal size.
pub fn sign_enum_bilinear(p: Exponent, terms: &[Matrix]) -> Result<f64> {
    if terms.len() > defaults::ORACLE_ENUM_CAP {
        return Err(Error::EnumerationCapExceeded {
            terms: terms.len(),
            cap: defaults::ORACLE_ENUM_CAP,
        });
    }
    let Some(first) = terms.first() else {
        return Ok(0.0);
    };
    if !first.is_square() {
        return Err(Error::InvalidParameter("sign enumeration needs square terms"));
    }
    let n = first.rows();
    for t in terms {
        if t.rows() != n || t.cols() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: t.rows(),
            });
        }
    }
    let grids: Vec<Grid> = terms.iter().map(to_grid).collect();

    fn recurse(p: Exponent, grids: &[Grid], k: usize, acc: Grid, best: &mut f64) -> Result<()> {
        if k == grids.len() {
            let norm = grid_op_norm(p, &acc)?;
            if norm > *best {
                *best = norm;
            }
            return Ok(());
        }
        let mut plus = acc.clone();
        for (pr, tr) in plus.iter_mut().zip(&grids[k]) {
            for (pv, tv) in pr.iter_mut().zip(tr) {
                *pv += tv;
            }
        }
        recurse(p, grids, k + 1, plus, best)?;
        let mut minus = acc;
        for (mr, tr) in minus.iter_mut().zip(&grids[k]) {
            for (mv, tv) in mr.iter_mut().zip(tr) {
                *mv -= tv;
            }
        }
        recurse(p, grids, k + 1, minus, best)
    }

    let mut best = 0.0;
    recurse(p, &grids, 0, grid_zeros(n, n), &mut best)?;
    Ok(best)
}

/// Operator norm for `p ∈ {1, ∞}` by enumerating the extreme points of
/// the unit ball: `±eⱼ` for the `ℓ¹` ball, the `2^d` sign vectors for
/// the `ℓ^∞` ball. Requires `d ≤ 6`.
pub fn ball_vertex_norm(m: &Matrix, p: Exponent) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::InvalidParameter("vertex enumeration needs a square matrix"));
    }
    let d = m.rows();
    if d > defaults::ORACLE_VERTEX_DIM_CAP {
        return Err(Error::InvalidParameter(
            "vertex enumeration is capped at dimension 6",
        ));
    }
    let g = to_grid(m);
    match p {
        Exponent::Finite(pv) if pv == 1.0 => {
            let mut best = 0.0f64;
            for j in 0..d {
                for sign in [1.0, -1.0] {
                    let mut x = vec![0.0; d];
                    x[j] = sign;
                    let y = grid_matvec(&g, &x);
                    best = best.max(vec_pnorm(Exponent::Finite(1.0), &y));
                }
            }
            Ok(best)
        }
        Exponent::Infinity => {
            let mut best = 0.0f64;
            for mask in 0..(1u32 << d) {
                let x: Vec<f64> = (0..d)
                    .map(|j| if mask >> j & 1 == 1 { -1.0 } else { 1.0 })
                    .collect();
                let y = grid_matvec(&g, &x);
                best = best.max(vec_pnorm(Exponent::Infinity, &y));
            }
            Ok(best)
        }
        _ => Err(Error::InvalidParameter(
            "vertex enumeration covers p in {1, inf} only",
        )),
    }
}

/// Lower bound on `‖M‖_{p→p}` for finite `p > 1` by projected-gradient
/// ascent with backtracking line search from `starts` seeded random
/// points. Every evaluation is at a unit vector, so the maximum found is
/// a valid lower bound on the norm.
pub fn dense_ascent_lower(m: &Matrix, p: f64, starts: usize, seed: u64) -> f64 {
    assert!(m.is_square() && p > 1.0 && p.is_finite());
    let d = m.rows();
    let g = to_grid(m);
    let pexp = Exponent::Finite(p);
    let mut rng = OracleRng::new(seed);
    let mut best = 0.0f64;

    let transpose_matvec = |x: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; d];
        for (i, row) in g.iter().enumerate() {
            for (o, r) in out.iter_mut().zip(row) {
                *o += x[i] * r;
            }
        }
        out
    };

    for _ in 0..starts {
        let mut x: Vec<f64> = (0..d).map(|_| rng.symmetric()).collect();
        let nx = vec_pnorm(pexp, &x);
        if nx == 0.0 {
            continue;
        }
        for c in &mut x {
            *c /= nx;
        }
        let mut val = vec_pnorm(pexp, &grid_matvec(&g, &x));
        best = best.max(val);
        for _ in 0..40 {
            let y = grid_matvec(&g, &x);
            let gy = vec_pnorm(pexp, &y);
            if gy == 0.0 {
                break;
            }
            let psi: Vec<f64> = y
                .iter()
                .map(|&v| {
                    let s = v / gy;
                    if s == 0.0 {
                        0.0
                    } else if s > 0.0 {
                        math::powf(s, p - 1.0)
                    } else {
                        -math::powf(-s, p - 1.0)
                    }
                })
                .collect();
            let dir = transpose_matvec(&psi);
            let mut improved = false;
            for eta in [1.0, 0.25, 0.0625, 1.0 / 256.0] {
                let cand: Vec<f64> = x.iter().zip(&dir).map(|(a, b)| a + eta * b).collect();
                let nc = vec_pnorm(pexp, &cand);
                if nc == 0.0 {
                    continue;
                }
                let unit: Vec<f64> = cand.iter().map(|c| c / nc).collect();
                let v = vec_pnorm(pexp, &grid_matvec(&g, &unit));
                if v > val * (1.0 + 1e-14) {
                    x = unit;
                    val = v;
                    improved = true;
                    break;
                }
            }
            best = best.max(val);
            if !improved {
                break;
            }
        }
    }
    best
}
