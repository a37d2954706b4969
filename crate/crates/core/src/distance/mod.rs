//! Exact ℓ∞ distance to submodularity on small ground sets.
//!
//! The distance is the optimum of
//!
//! ```text
//! min t  s.t.  |g(S) − f(S)| ≤ t for all S,  cross gaps of g ≤ 0
//! ```
//!
//! Writing `g = f + y − t` with `0 ≤ y ≤ 2t` leaves only the cross rows and
//! the box rows. The solver works on the LP dual, whose origin is feasible:
//! weights `λ_p ≥ 0` on cross pairs and `μ_S ≥ 0` on sets, maximizing
//! `Σ λ_p gap_f(p)`. The primal `y, t` are read off the optimal tableau.
//!
//! Every result is certified. The nearest table is re-verified to be
//! submodular, and the optimum is bracketed by the weighted-pair bound
//! [`Certificate::bound`] computed from the dual weights.

mod simplex;

use alloc::vec;
use alloc::vec::Vec;

use crate::constraints::{enumerate_pairs, first_cross_violation, ConstraintClass, ConstraintPair};
use crate::filter::offset;
use crate::function::{to_explicit, ExplicitFunction, SetFunction};
use crate::subset::{full_mask, require_at_most};
use crate::{Error, Result};

use simplex::{maximize, LpError};

/// Largest ground set handled by [`exact_distance`] and [`certify_gap`].
pub const DISTANCE_LIMIT: usize = 9;

/// Default optimality tolerance.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Cross-gap tolerance used when verifying the nearest function.
const SUBMODULAR_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceResult {
    /// Optimal distance (the distance actually achieved by `nearest`).
    pub t_star: f64,
    /// Certified lower bound; `t_star − lower_bound ≤ tol`.
    pub lower_bound: f64,
    /// A submodular function at distance `t_star` from the input.
    pub nearest: ExplicitFunction,
    /// The dual weights proving `lower_bound`.
    pub certificate: Certificate,
}

/// Weighted constraint pairs proving a lower bound on the distance.
///
/// For weights `w_p ≥ 0` and any submodular `g`,
/// `Σ_p w_p gap_f(p) ≤ Σ_S |c(S)|·max_S |f(S) − g(S)|` where `c(S)` is the
/// net coefficient of `S` in `Σ_p w_p (𝟙[A∪B] + 𝟙[A∩B] − 𝟙[A] − 𝟙[B])`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub n: usize,
    pub pairs: Vec<(ConstraintPair, f64)>,
    /// The bound implied for the function the certificate was built from.
    pub bound: f64,
}

impl Certificate {
    fn from_pairs(table: &ExplicitFunction, pairs: Vec<(ConstraintPair, f64)>) -> Self {
        let mut cert = Self {
            n: table.ground_size(),
            pairs,
            bound: 0.0,
        };
        cert.bound = cert.evaluate(table);
        cert
    }

    /// The bound this certificate implies for `f`.
    pub fn evaluate<F: SetFunction + ?Sized>(&self, f: &F) -> f64 {
        assert_eq!(f.ground_size(), self.n);
        let mut coef = vec![0.0; 1 << self.n];
        let mut weighted_gap = 0.0;
        for &(p, w) in &self.pairs {
            weighted_gap += w * p.gap(f);
            coef[p.union() as usize] += w;
            coef[p.intersection() as usize] += w;
            coef[p.a as usize] -= w;
            coef[p.b as usize] -= w;
        }
        let mass: f64 = coef.iter().map(|c| c.abs()).sum();
        if mass > 0.0 {
            weighted_gap / mass
        } else {
            0.0
        }
    }

    /// The distinct sets the certificate touches, in increasing bitmask order.
    pub fn support(&self) -> Vec<u64> {
        let mut sets: Vec<u64> = self
            .pairs
            .iter()
            .flat_map(|(p, _)| [p.a, p.b, p.union(), p.intersection()])
            .collect();
        sets.sort_unstable();
        sets.dedup();
        sets
    }
}

/// Exact distance of `f` to the nearest submodular function.
pub fn exact_distance<F: SetFunction + ?Sized>(f: &F, tol: f64) -> Result<DistanceResult> {
    let n = f.ground_size();
    require_at_most(n, DISTANCE_LIMIT, "exact distance")?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("distance tolerance must be positive"));
    }
    let table = to_explicit(f)?;
    distance_of_table(&table, tol)
}

fn distance_of_table(table: &ExplicitFunction, tol: f64) -> Result<DistanceResult> {
    let n = table.ground_size();
    let values = table.table();
    let sets = 1usize << n;
    let pairs: Vec<ConstraintPair> = enumerate_pairs(n, ConstraintClass::Cross)?.collect();
    let gaps: Vec<f64> = pairs.iter().map(|p| p.gap(table)).collect();

    if gaps.iter().all(|&g| g <= 0.0) {
        return Ok(DistanceResult {
            t_star: 0.0,
            lower_bound: 0.0,
            nearest: table.clone(),
            certificate: Certificate::from_pairs(table, Vec::new()),
        });
    }

    // columns: λ_p for each cross pair, then μ_S; rows: one per set, then t
    let np = pairs.len();
    let mut rows: Vec<Vec<(usize, f64)>> = (0..sets).map(|s| vec![(np + s, -1.0)]).collect();
    for (j, p) in pairs.iter().enumerate() {
        rows[p.union() as usize].push((j, -1.0));
        rows[p.intersection() as usize].push((j, -1.0));
        rows[p.a as usize].push((j, 1.0));
        rows[p.b as usize].push((j, 1.0));
    }
    rows.push((0..sets).map(|s| (np + s, 2.0)).collect());
    let mut rhs = vec![0.0; sets];
    rhs.push(1.0);
    let mut c = gaps.clone();
    c.resize(np + sets, 0.0);

    let sol = match maximize(&c, &rows, &rhs) {
        Ok(sol) => sol,
        Err(LpError::IterationLimit { objective }) => {
            return Err(Error::NonConvergence {
                lower: objective.max(0.0),
                upper: crate::filter::distance_bound(n, gaps.iter().copied().fold(0.0, f64::max)),
            })
        }
        Err(LpError::Unbounded) => unreachable!("the distance LP is always feasible"),
    };

    let t = sol.duals[sets];
    let mut nearest: Vec<f64> = (0..sets).map(|s| values[s] + sol.duals[s] - t).collect();
    let mut g = ExplicitFunction::new(n, nearest.clone())?;
    // round-off can leave tiny cross violations; a filter of that size fixes them
    if let Some(v) = first_cross_violation(&g, SUBMODULAR_TOL) {
        let worst = crate::constraints::epsilon_of_table(&g, ConstraintClass::Cross).epsilon;
        debug_assert!(v.gap <= worst);
        for (s, val) in nearest.iter_mut().enumerate() {
            *val += offset(n, worst, s.count_ones() as usize);
        }
        g = ExplicitFunction::new(n, nearest)?;
        debug_assert!(first_cross_violation(&g, SUBMODULAR_TOL).is_none());
    }
    let upper = g.linf_distance(table);

    let weighted: Vec<(ConstraintPair, f64)> = pairs
        .iter()
        .zip(&sol.x)
        .filter(|(_, &w)| w > 1e-13)
        .map(|(&p, &w)| (p, w))
        .collect();
    let certificate = Certificate::from_pairs(table, weighted);
    let single = gaps.iter().copied().fold(0.0, f64::max) / 4.0;
    let lower = certificate.bound.max(single);

    let slack = tol * (1.0 + upper.abs());
    if upper - lower > slack || lower - upper > slack || (sol.objective - certificate.bound).abs() > slack {
        return Err(Error::NonConvergence { lower, upper });
    }
    Ok(DistanceResult {
        t_star: upper.max(0.0),
        lower_bound: lower,
        nearest: g,
        certificate,
    })
}

/// A certificate that `f` is at least `alpha`-far from submodularity, or
/// `None` when its distance is below `alpha`.
///
/// Single pairs are tried first, complementary pairs `{A, [n]∖A}` before
/// general incomparable pairs, each giving `gap/4`; the LP dual is the
/// fallback and is exact.
pub fn certify_gap<F: SetFunction + ?Sized>(f: &F, alpha: f64) -> Result<Option<Certificate>> {
    let n = f.ground_size();
    require_at_most(n, DISTANCE_LIMIT, "gap certification")?;
    let table = to_explicit(f)?;
    if alpha <= 0.0 {
        return Ok(Some(Certificate::from_pairs(&table, Vec::new())));
    }
    let slack = crate::TOLERANCE * (1.0 + alpha);
    let full = full_mask(n);
    let complementary = (1..full).filter(|&a| a < full & !a).map(|a| ConstraintPair::new(a, full & !a));
    let singles = complementary.chain(enumerate_pairs(n, ConstraintClass::Full)?);
    for p in singles {
        if p.gap(&table) / 4.0 >= alpha - slack {
            return Ok(Some(Certificate::from_pairs(&table, vec![(p, 1.0)])));
        }
    }
    let result = distance_of_table(&table, DEFAULT_TOL)?;
    if result.certificate.bound >= alpha - DEFAULT_TOL * (1.0 + alpha) {
        Ok(Some(result.certificate))
    } else {
        Ok(None)
    }
}
