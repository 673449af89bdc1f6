//! Brute-force reference computations for the test suite.
//!
//! Nothing here reuses the optimisers or the exact arithmetic of the other
//! modules; each function recomputes its quantity from the definition.

use std::f64::consts::PI;

use rayon::prelude::*;
use thiserror::Error;

use crate::cyclotomic::{sign_sum_numeric, SignVector};
use crate::frames::Frame;
use crate::geometry::{ConvexPolygon, EdgeSet, Vec2};

pub const MAX_DISCREPANCY_M: usize = 24;
pub const MAX_BRUTE_FORCE_M: usize = 20;
pub const SOLUTION_THRESHOLD: f64 = 1e-9;
const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("edge {index} has length {length}, expected 1")]
    NonUnitEdges { index: usize, length: f64 },
    #[error("m = {m} exceeds the brute-force limit {max}")]
    MTooLarge { m: usize, max: usize },
}

/// Grid estimates of the two Lipschitz constants.
///
/// `lower` is the smallest sampled quotient, so it never falls below the true
/// lower constant; `upper` is the largest sampled `‖Ax‖` over unit `x`, so it
/// never exceeds the true upper constant. Both converge as the grid refines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledLipschitz {
    pub lower: f64,
    pub upper: f64,
}

pub fn sampled_lipschitz(frame: &Frame, n_theta: usize, n_t: usize) -> SampledLipschitz {
    let n_theta = n_theta.max(1);
    let n_t = n_t.max(2);
    let rows = frame.vectors();
    let abs_img =
        |p: Vec2| -> Vec<f64> { rows.iter().map(|a| (a.x * p.x + a.y * p.y).abs()).collect() };

    let per_theta: Vec<(f64, f64)> = (0..n_theta)
        .into_par_iter()
        .map(|k| {
            let theta = PI * k as f64 / n_theta as f64;
            let (c, s) = (theta.cos(), theta.sin());
            let x = Vec2 { x: c, y: s };
            let ax = abs_img(x);
            let norm_ax = ax.iter().map(|v| v * v).sum::<f64>().sqrt();
            let mut lo = f64::INFINITY;
            for i in 0..n_t {
                let t = i as f64 / (n_t - 1) as f64;
                let y = Vec2 {
                    x: -s * t,
                    y: c * t,
                };
                let ay = abs_img(y);
                let num: f64 = ax.iter().zip(&ay).map(|(p, q)| (p - q) * (p - q)).sum();
                let dist_sq = {
                    let d1 = (x.x - y.x).powi(2) + (x.y - y.y).powi(2);
                    let d2 = (x.x + y.x).powi(2) + (x.y + y.y).powi(2);
                    d1.min(d2)
                };
                lo = lo.min((num / dist_sq).sqrt());
            }
            (lo, norm_ax)
        })
        .collect();

    SampledLipschitz {
        lower: per_theta.iter().map(|p| p.0).fold(f64::INFINITY, f64::min),
        upper: per_theta.iter().map(|p| p.1).fold(0.0, f64::max),
    }
}

/// Largest vertex-to-vertex distance, by checking every pair.
pub fn brute_force_diameter(polygon: &ConvexPolygon) -> f64 {
    let vs = polygon.vertices();
    let mut best_sq = 0.0f64;
    for i in 0..vs.len() {
        for j in 0..i {
            let dx = vs[i].x - vs[j].x;
            let dy = vs[i].y - vs[j].y;
            best_sq = best_sq.max(dx * dx + dy * dy);
        }
    }
    best_sq.sqrt()
}

/// `max over ε ∈ {±1}^m of ‖Σ ε_j e_j‖` for unit vectors `e_j`.
pub fn discrepancy_max(edges: &EdgeSet) -> Result<f64, OracleError> {
    let e = edges.edges();
    let m = e.len();
    if m > MAX_DISCREPANCY_M {
        return Err(OracleError::MTooLarge {
            m,
            max: MAX_DISCREPANCY_M,
        });
    }
    if let Some((index, v)) = e
        .iter()
        .enumerate()
        .find(|(_, v)| (v.norm() - 1.0).abs() > UNIT_TOL)
    {
        return Err(OracleError::NonUnitEdges {
            index,
            length: v.norm(),
        });
    }
    if m == 0 {
        return Ok(0.0);
    }
    // ε and -ε give the same norm, so fix ε_1 = +1.
    let half = 1u64 << (m - 1);
    let best = (0..half)
        .into_par_iter()
        .map(|mask| {
            let (mut sx, mut sy) = (e[0].x, e[0].y);
            for (j, v) in e.iter().enumerate().skip(1) {
                if mask >> (j - 1) & 1 == 1 {
                    sx -= v.x;
                    sy -= v.y;
                } else {
                    sx += v.x;
                    sy += v.y;
                }
            }
            sx.hypot(sy)
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

/// Every sign vector whose floating-point sum `|Σ ε_j e^{ijπ/m}|` is below
/// [`SOLUTION_THRESHOLD`], in index order and without any identification.
pub fn brute_force_solutions(m: usize) -> Result<Vec<SignVector>, OracleError> {
    if m > MAX_BRUTE_FORCE_M {
        return Err(OracleError::MTooLarge {
            m,
            max: MAX_BRUTE_FORCE_M,
        });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    Ok((0..1u64 << m)
        .into_par_iter()
        .filter_map(|idx| {
            let eps = SignVector::from_index(m, idx);
            (sign_sum_numeric(&eps) < SOLUTION_THRESHOLD).then_some(eps)
        })
        .collect())
}
