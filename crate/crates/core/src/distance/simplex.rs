//! Dense tableau simplex for `max cᵀx  s.t.  Ax ≤ b, x ≥ 0` with `b ≥ 0`.
//!
//! The origin is feasible, so there is no phase one. Entering columns follow
//! Dantzig's rule; after a run of degenerate pivots the solver switches to
//! Bland's rule until the objective moves again.

use alloc::vec;
use alloc::vec::Vec;

const PIVOT_EPS: f64 = 1e-11;
const STALL_LIMIT: usize = 64;
const PERTURB: f64 = 1e-9;
const NORM_REFRESH: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpError {
    Unbounded,
    IterationLimit { objective: f64 },
}

#[derive(Clone, Debug)]
pub(crate) struct LpSolution {
    pub x: Vec<f64>,
    /// Optimal dual values, one per row of `A`.
    pub duals: Vec<f64>,
    pub objective: f64,
}

/// `rows[i]` lists the nonzero `(column, value)` entries of row `i` of `A`.
pub(crate) fn maximize(c: &[f64], rows: &[Vec<(usize, f64)>], b: &[f64]) -> Result<LpSolution, LpError> {
    let nv = c.len();
    let m = rows.len();
    debug_assert_eq!(b.len(), m);
    debug_assert!(b.iter().all(|&v| v >= 0.0));
    let width = nv + m + 1;
    let rhs = width - 1;
    let mut t = vec![0.0; (m + 1) * width];
    for (i, row) in rows.iter().enumerate() {
        for &(j, v) in row {
            t[i * width + j] += v;
        }
        t[i * width + nv + i] = 1.0;
        t[i * width + rhs] = b[i] + PERTURB * (1.0 + { let x = i as f64 * 0.618_033_988_749_895; x - libm::floor(x) });
    }
    for (j, &cj) in c.iter().enumerate() {
        t[m * width + j] = -cj;
    }
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    let scale = 1.0 + c.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let rc_eps = 1e-11 * scale;
    let maxiter = 200 * (nv + m) + 1000;
    let mut stalled = 0usize;
    let mut pivot_row = vec![0.0; width];
    let mut norms = vec![1.0f64; width - 1];

    for iter in 0..maxiter {
        let obj = &t[m * width..(m + 1) * width - 1];
        let entering = if stalled >= STALL_LIMIT {
            obj.iter().position(|&v| v < -rc_eps)
        } else {
            if iter % NORM_REFRESH == 0 {
                norms.iter_mut().for_each(|v| *v = 1.0);
                for r in 0..m {
                    for (j, nv2) in norms.iter_mut().enumerate() {
                        let a = t[r * width + j];
                        *nv2 += a * a;
                    }
                }
            }
            let obj = &t[m * width..(m + 1) * width - 1];
            obj.iter()
                .enumerate()
                .filter(|(_, &v)| v < -rc_eps)
                .map(|(j, &v)| (j, v / libm::sqrt(norms[j])))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(j, _)| j)
        };
        let Some(col) = entering else {
            // the slack columns hold B⁻¹, so the basic solution for the
            // unperturbed right-hand side is B⁻¹b
            let mut x = vec![0.0; nv];
            let mut objective = 0.0;
            for (r, &bv) in basis.iter().enumerate() {
                let row = &t[r * width + nv..r * width + nv + m];
                let value = row.iter().zip(b).map(|(a, bi)| a * bi).sum::<f64>().max(0.0);
                if bv < nv {
                    x[bv] = value;
                    objective += c[bv] * value;
                }
            }
            let duals = t[m * width + nv..m * width + nv + m].to_vec();
            return Ok(LpSolution {
                x,
                duals,
                objective,
            });
        };

        let mut leave: Option<(usize, f64)> = None;
        for r in 0..m {
            let a = t[r * width + col];
            if a > PIVOT_EPS {
                let ratio = t[r * width + rhs] / a;
                leave = match leave {
                    Some((lr, lratio)) if lratio < ratio || (lratio == ratio && basis[lr] < basis[r]) => {
                        Some((lr, lratio))
                    }
                    _ => Some((r, ratio)),
                };
            }
        }
        let Some((row, ratio)) = leave else {
            return Err(LpError::Unbounded);
        };

        let before = t[m * width + rhs];
        let p = t[row * width + col];
        for (dst, src) in pivot_row.iter_mut().zip(&t[row * width..(row + 1) * width]) {
            *dst = src / p;
        }
        pivot_row[col] = 1.0;
        for r in 0..=m {
            if r == row {
                continue;
            }
            let factor = t[r * width + col];
            if factor == 0.0 {
                continue;
            }
            let target = &mut t[r * width..(r + 1) * width];
            for (dst, &src) in target.iter_mut().zip(&pivot_row) {
                if src != 0.0 {
                    *dst -= factor * src;
                }
            }
            target[col] = 0.0;
        }
        t[row * width..(row + 1) * width].copy_from_slice(&pivot_row);
        basis[row] = col;
        // rhs stays non-negative up to round-off
        if t[row * width + rhs] < 0.0 {
            t[row * width + rhs] = 0.0;
        }

        if ratio <= 0.0 || t[m * width + rhs] <= before {
            stalled += 1;
        } else {
            stalled = 0;
        }
    }
    Err(LpError::IterationLimit {
        objective: t[m * width + rhs],
    })
}
