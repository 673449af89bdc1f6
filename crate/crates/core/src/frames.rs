//! Lipschitz constants and condition numbers of the phaseless map
//! `x ↦ |Ax|` for `A ∈ ℝ^{m×2}`.
//!
//! Tight frames go through the edge-vector picture: with `e_j = f(a_j)`,
//! `β = (1 - max_u Σ|⟨e_j,u⟩| / Σ‖e_j‖)^{-1/2}`, which for irreducible frames
//! is `1/√(1 - 2 r(P))` for the polygon `P` with edges `e_j`. Everything else
//! uses a two-variable numeric search for the lower constant.

use std::f64::consts::PI;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde::Deserialize;
use thiserror::Error;

use crate::geometry::{
    half_to_edge, max_abs_projection_sum, polygon_from_edges, ratio_r, EdgeSet, PolarVector, Vec2,
    DEGENERATE_TOL, DIRECTION_TOL,
};
use crate::numfmt::round_sig;

/// Default relative tolerance for [`is_tight`].
pub const TIGHT_TOL: f64 = 1e-9;
/// Default `(θ, t)` grid for [`lower_lipschitz_numeric`].
pub const DEFAULT_GRID: (usize, usize) = (4096, 512);
/// Default bracket width at which refinement stops.
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("frame is not tight (|a-b| = {diag_gap:e}, |c| = {off_diag:e}, trace = {trace:e})")]
    NotTight {
        diag_gap: f64,
        off_diag: f64,
        trace: f64,
    },
    #[error("frame is reducible")]
    NotIrreducible,
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// Rows `a_1, …, a_m` of a measurement matrix `A ∈ ℝ^{m×2}`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
#[serde(transparent)]
pub struct Frame {
    vectors: Vec<Vec2>,
}

impl Frame {
    pub fn new(vectors: Vec<Vec2>) -> Self {
        Self { vectors }
    }

    pub fn vectors(&self) -> &[Vec2] {
        &self.vectors
    }

    pub fn m(&self) -> usize {
        self.vectors.len()
    }

    /// Entries of `Σ a_j a_jᵀ = [[a, c], [c, b]]`.
    pub fn gram(&self) -> (f64, f64, f64) {
        self.vectors.iter().fold((0.0, 0.0, 0.0), |(a, b, c), v| {
            (a + v.x * v.x, b + v.y * v.y, c + v.x * v.y)
        })
    }

    /// Each row replaced by its representative in the half-plane `𝒯`.
    pub fn to_half_plane(&self) -> Vec<PolarVector> {
        self.vectors
            .iter()
            .map(|&v| PolarVector::from_vec(v))
            .collect()
    }

    /// `{f(a_j)}` after moving each row into `𝒯`.
    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet::new(self.to_half_plane().into_iter().map(half_to_edge).collect())
    }

    pub fn rotated(&self, theta: f64) -> Self {
        Self::new(self.vectors.iter().map(|v| v.rotate(theta)).collect())
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new(self.vectors.iter().map(|&v| v * k).collect())
    }

    pub fn sum_sq_norms(&self) -> f64 {
        self.vectors.iter().map(|v| v.norm_sq()).sum()
    }
}

impl From<Vec<Vec2>> for Frame {
    fn from(v: Vec<Vec2>) -> Self {
        Self::new(v)
    }
}

/// `|⟨a_j, x⟩|` for every row.
pub fn phaseless_map(frame: &Frame, x: Vec2) -> Vec<f64> {
    frame.vectors.iter().map(|a| a.dot(x).abs()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightnessCertificate {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub tight: bool,
}

/// Tight iff `|a - b| ≤ tol·(a+b)` and `|c| ≤ tol·(a+b)`.
pub fn is_tight(frame: &Frame, tol: f64) -> TightnessCertificate {
    let (a, b, c) = frame.gram();
    let trace = a + b;
    TightnessCertificate {
        a,
        b,
        c,
        tight: (a - b).abs() <= tol * trace && c.abs() <= tol * trace,
    }
}

/// No zero row and no two rows parallel.
pub fn is_irreducible(frame: &Frame) -> bool {
    let total = frame.sum_sq_norms();
    if frame
        .vectors
        .iter()
        .any(|v| v.norm_sq() <= DEGENERATE_TOL * total || *v == Vec2::ZERO)
    {
        return false;
    }
    let mut angles: Vec<f64> = frame
        .vectors
        .iter()
        .map(|v| v.angle().rem_euclid(PI))
        .collect();
    angles.sort_by(f64::total_cmp);
    let adjacent_clash = angles.windows(2).any(|w| w[1] - w[0] <= DIRECTION_TOL);
    let wrap_clash = angles.len() > 1 && angles[0] + PI - angles[angles.len() - 1] <= DIRECTION_TOL;
    !(adjacent_clash || wrap_clash)
}

/// Largest eigenvalue of the 2×2 Gram matrix.
fn gram_eigen_max(frame: &Frame) -> f64 {
    let (a, b, c) = frame.gram();
    let half_gap = 0.5 * (a - b);
    0.5 * (a + b) + half_gap.hypot(c)
}

/// `U_A = ‖A‖₂`.
pub fn upper_lipschitz(frame: &Frame) -> f64 {
    gram_eigen_max(frame).max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactTight,
    ExactReduced,
    Numeric,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactTight => "exact_tight",
            Method::ExactReduced => "exact_reduced",
            Method::Numeric => "numeric",
        }
    }
}

/// A pair `(x, y)`, `‖x‖ = 1`, `y ⟂ x`, `‖y‖ ≤ 1`, attaining the lower
/// Lipschitz quotient.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, Deserialize)]
pub struct Witness {
    pub x: Vec2,
    pub y: Vec2,
}

impl Witness {
    fn from_angle(theta: f64, t: f64) -> Self {
        let x = Vec2::from_angle(theta);
        Self { x, y: x.perp() * t }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub m: usize,
    pub upper: f64,
    pub lower: f64,
    /// `+∞` when the lower constant vanishes.
    pub beta: f64,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl Serialize for ConditionReport {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        #[serde(untagged)]
        enum Beta {
            Finite(f64),
            Text(&'static str),
        }
        let r9 = |v: Vec2| [round_sig(v.x), round_sig(v.y)];
        let mut s = ser.serialize_struct("ConditionReport", 6)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("U", &round_sig(self.upper))?;
        s.serialize_field("L", &round_sig(self.lower))?;
        let beta = if self.beta.is_finite() {
            Beta::Finite(round_sig(self.beta))
        } else {
            Beta::Text("inf")
        };
        s.serialize_field("beta", &beta)?;
        s.serialize_field("method", self.method.as_str())?;
        let witness = self
            .witness
            .map(|w| serde_json::json!({ "x": r9(w.x), "y": r9(w.y) }));
        s.serialize_field("witness", &witness)?;
        s.end()
    }
}

/// `‖|Ax| - |Ay|‖ / dist(x, y)` for unit `x` and `y ⟂ x`; the distance
/// is then `√(1 + ‖y‖²)`.
pub fn lower_quotient(frame: &Frame, x: Vec2, y: Vec2) -> f64 {
    let diff: f64 = frame
        .vectors
        .iter()
        .map(|a| {
            let d = a.dot(x).abs() - a.dot(y).abs();
            d * d
        })
        .sum();
    diff.sqrt() / (1.0 + y.norm_sq()).sqrt()
}

/// Merge same-direction edges into their sum and drop zero edges.
fn merge_edges(edges: &EdgeSet) -> Vec<Vec2> {
    let floor = DEGENERATE_TOL * edges.total_length();
    let mut sorted: Vec<Vec2> = edges
        .edges()
        .iter()
        .copied()
        .filter(|e| e.norm() > floor)
        .collect();
    sorted.sort_by(|a, b| a.angle_positive().total_cmp(&b.angle_positive()));
    let mut merged: Vec<Vec2> = Vec::with_capacity(sorted.len());
    for e in sorted {
        match merged.last_mut() {
            Some(last) if e.angle_positive() - last.angle_positive() <= DIRECTION_TOL => *last += e,
            _ => merged.push(e),
        }
    }
    if merged.len() > 1 {
        let first = merged[0].angle_positive();
        let last = merged[merged.len() - 1].angle_positive();
        if first + 2.0 * PI - last <= DIRECTION_TOL {
            let tail = merged.pop().unwrap();
            merged[0] += tail;
        }
    }
    merged
}

/// Maps the maximizing edge-side direction `u = (sin 2θ, cos 2θ)` back to the
/// frame-side pair `x = (cos θ, sin θ)`, `y = x^⊥`.
fn witness_from_edge_direction(u: Vec2) -> Witness {
    let theta = 0.5 * u.x.atan2(u.y);
    Witness::from_angle(theta, 1.0)
}

/// Exact condition number of a tight frame.
pub fn condition_number_tight(frame: &Frame) -> Result<ConditionReport, FrameError> {
    let cert = is_tight(frame, TIGHT_TOL);
    if !cert.tight {
        return Err(FrameError::NotTight {
            diag_gap: (cert.a - cert.b).abs(),
            off_diag: cert.c.abs(),
            trace: cert.a + cert.b,
        });
    }
    let m = frame.m();
    let c = 0.5 * (cert.a + cert.b);
    if c <= 0.0 {
        return Ok(ConditionReport {
            m,
            upper: 0.0,
            lower: 0.0,
            beta: f64::INFINITY,
            method: Method::ExactReduced,
            witness: None,
        });
    }
    let upper = c.sqrt();
    let edges = frame.edge_set();
    let proj = max_abs_projection_sum(edges.edges())?;
    let witness = Some(witness_from_edge_direction(proj.direction));

    let irreducible =
        edges.len() >= 3 && edges.all_nonzero() && edges.pairwise_distinct_directions();
    let (beta, method) = if irreducible {
        match polygon_from_edges(&edges) {
            Ok(p) => (beta_from_ratio(ratio_r(&p)), Method::ExactTight),
            Err(_) => (reduced_beta(&edges)?, Method::ExactReduced),
        }
    } else {
        (reduced_beta(&edges)?, Method::ExactReduced)
    };
    let lower = if beta.is_finite() { upper / beta } else { 0.0 };
    Ok(ConditionReport {
        m,
        upper,
        lower,
        beta,
        method,
        witness,
    })
}

/// `β = 1/√(1 - 2r)`, infinite once `2r` reaches 1.
pub fn beta_from_ratio(r: f64) -> f64 {
    let gap = 1.0 - 2.0 * r;
    if gap <= 1e-15 {
        f64::INFINITY
    } else {
        1.0 / gap.sqrt()
    }
}

/// β of a tight frame whose edge set has zero or repeated-direction edges:
/// merge, then use the reduced polygon, or the projection formula when
/// fewer than three edges survive.
fn reduced_beta(edges: &EdgeSet) -> Result<f64, FrameError> {
    let merged = EdgeSet::new(merge_edges(edges));
    if merged.len() >= 3 {
        if let Ok(p) = polygon_from_edges(&merged) {
            return Ok(beta_from_ratio(ratio_r(&p)));
        }
    }
    let total = edges.total_length();
    if total == 0.0 {
        return Ok(f64::INFINITY);
    }
    let proj = max_abs_projection_sum(edges.edges())?;
    Ok(beta_from_ratio(0.5 * proj.value / total))
}

/// Minimizer of the lower Lipschitz quotient over the `(θ, t)` chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericLower {
    pub value: f64,
    pub theta: f64,
    pub t: f64,
}

impl NumericLower {
    pub fn witness(&self) -> Witness {
        Witness::from_angle(self.theta, self.t)
    }
}

/// Per-direction sums: with `x = (cos θ, sin θ)`, `α = ‖Ax‖²`,
/// `γ = ‖Ax^⊥‖²`, `s = Σ |⟨a_j,x⟩⟨a_j,x^⊥⟩|`, the squared quotient at
/// `y = t·x^⊥` is `(α + γt² - 2st) / (1 + t²)`.
#[derive(Clone, Copy)]
struct Slice {
    alpha: f64,
    gamma: f64,
    s: f64,
}

impl Slice {
    fn at(frame: &Frame, theta: f64) -> Self {
        let x = Vec2::from_angle(theta);
        let xp = x.perp();
        let mut out = Slice {
            alpha: 0.0,
            gamma: 0.0,
            s: 0.0,
        };
        for a in &frame.vectors {
            let p = a.dot(x);
            let q = a.dot(xp);
            out.alpha += p * p;
            out.gamma += q * q;
            out.s += (p * q).abs();
        }
        out
    }

    fn q2(&self, t: f64) -> f64 {
        (self.alpha + self.gamma * t * t - 2.0 * self.s * t) / (1.0 + t * t)
    }

    /// `q2` is unimodal on `[0, 1]`: its derivative has numerator
    /// `2(s t² + (γ-α) t - s)`, with exactly one positive root.
    fn min_over_t(&self, tol: f64) -> (f64, f64) {
        let (t, v) = golden_min(|t| self.q2(t), 0.0, 1.0, tol);
        let ends = [(0.0, self.q2(0.0)), (1.0, self.q2(1.0)), (t, v)];
        ends.into_iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(t, v)| (v, t))
            .unwrap()
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search of a unimodal function on `[lo, hi]`.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    [(x1, f1), (x2, f2), (mid, fm)]
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

/// Numeric `L_A`: minimum of `‖|Ax| - |Ay|‖ / √(1+t²)` over `x = (cos θ, sin θ)`,
/// `y = t·x^⊥`, `θ ∈ [0, π)`, `t ∈ [0, 1]`.
///
/// In the plane `y ⟂ x` forces `y = ±t·x^⊥`, and `|A(-y)| = |Ay|`, so the
/// half range `t ≥ 0` loses nothing; likewise `θ` and `θ + π` give the same
/// quotient. A coarse `n_theta × n_t` grid picks candidate cells, then a
/// golden-section search on `θ` (with the inner minimization over `t`
/// re-solved at every trial angle) narrows each bracket below `refine_tol`.
pub fn lower_lipschitz_numeric(
    frame: &Frame,
    grid: (usize, usize),
    refine_tol: f64,
) -> NumericLower {
    let (n_theta, n_t) = (grid.0.max(8), grid.1.max(2));
    let (a, b, c) = frame.gram();
    let trace = a + b;
    if trace <= 0.0 || a * b - c * c <= 1e-12 * trace * trace {
        return NumericLower {
            value: 0.0,
            theta: 0.0,
            t: 0.0,
        };
    }
    let step = PI / n_theta as f64;
    let grid_min: Vec<(f64, f64)> = (0..n_theta)
        .map(|k| {
            let slice = Slice::at(frame, k as f64 * step);
            (0..n_t)
                .map(|i| {
                    let t = i as f64 / (n_t - 1) as f64;
                    (slice.q2(t), t)
                })
                .min_by(|x, y| x.0.total_cmp(&y.0))
                .unwrap()
        })
        .collect();

    let mut best = grid_min
        .iter()
        .enumerate()
        .map(|(k, &(v, t))| (v, k as f64 * step, t))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .unwrap();

    // Local minima of the θ profile, best first.
    let mut cells: Vec<usize> = (0..n_theta)
        .filter(|&k| {
            let prev = grid_min[(k + n_theta - 1) % n_theta].0;
            let next = grid_min[(k + 1) % n_theta].0;
            grid_min[k].0 <= prev && grid_min[k].0 <= next
        })
        .collect();
    cells.sort_by(|&i, &j| grid_min[i].0.total_cmp(&grid_min[j].0));
    cells.truncate(8);

    for k in cells {
        let centre = k as f64 * step;
        let profile = |theta: f64| Slice::at(frame, theta).min_over_t(refine_tol).0;
        let (theta, _) = golden_min(profile, centre - step, centre + step, refine_tol);
        let (v, t) = Slice::at(frame, theta).min_over_t(refine_tol);
        if v < best.0 {
            best = (v, theta, t);
        }
    }
    NumericLower {
        value: best.0.max(0.0).sqrt(),
        theta: best.1.rem_euclid(PI),
        t: best.2,
    }
}

/// Exact route for tight frames, numeric route otherwise.
pub fn condition_number(frame: &Frame) -> ConditionReport {
    condition_number_with(frame, DEFAULT_GRID, DEFAULT_REFINE_TOL)
}

pub fn condition_number_with(
    frame: &Frame,
    grid: (usize, usize),
    refine_tol: f64,
) -> ConditionReport {
    if is_tight(frame, TIGHT_TOL).tight {
        if let Ok(report) = condition_number_tight(frame) {
            return report;
        }
    }
    let upper = upper_lipschitz(frame);
    let lower = lower_lipschitz_numeric(frame, grid, refine_tol);
    let beta = if lower.value > 0.0 {
        upper / lower.value
    } else {
        f64::INFINITY
    };
    ConditionReport {
        m: frame.m(),
        upper,
        lower: lower.value,
        beta,
        method: Method::Numeric,
        witness: (lower.value > 0.0).then(|| lower.witness()),
    }
}

/// β of the harmonic frame `E_m`.
pub fn beta_harmonic(m: usize) -> f64 {
    assert!(m >= 3, "harmonic frames need m >= 3");
    let mf = m as f64;
    let ratio = if m.is_multiple_of(2) {
        2.0 / (mf * (PI / mf).sin())
    } else {
        1.0 / (mf * (PI / (2.0 * mf)).sin())
    };
    1.0 / (1.0 - ratio).sqrt()
}

/// `1/√(1 - 1/(m sin(π/2m)))`, a lower bound on β for every `A ∈ ℝ^{m×2}`.
pub fn beta_min_bound(m: usize) -> f64 {
    assert!(m >= 3, "bound needs m >= 3");
    let mf = m as f64;
    1.0 / (1.0 - 1.0 / (mf * (PI / (2.0 * mf)).sin())).sqrt()
}

/// The bound is attained exactly when `m` has an odd factor; for powers of
/// two every matrix does strictly worse.
pub fn min_bound_attained(m: usize) -> bool {
    !m.is_power_of_two()
}

/// `(√(π/(π-2)), √(4/(4-π)))`: floors on β over all `m` for real and
/// complex matrices.
pub fn universal_lower_bounds() -> (f64, f64) {
    ((PI / (PI - 2.0)).sqrt(), (4.0 / (4.0 - PI)).sqrt())
}

/// Upper bound on `L_A²`: `½ (1 - 1/(m sin(π/2m))) Σ ‖a_j‖²`.
pub fn lower_constant_sq_bound(frame: &Frame) -> f64 {
    let mf = frame.m() as f64;
    0.5 * (1.0 - 1.0 / (mf * (PI / (2.0 * mf)).sin())) * frame.sum_sq_norms()
}
