//! Planar vectors, the half-plane parametrization of frame vectors, and
//! convex polygons built from their edge vectors.
//!
//! The central map is [`half_to_edge`]: a frame vector `t (cos φ, sin φ)` with
//! `φ ∈ (0, π]` is sent to the edge vector `t² (cos 2φ, sin 2φ)`. It is a
//! bijection between the half-plane `𝒯` (upper half-plane without the
//! positive x-axis, plus the origin) and the whole plane, with inverse
//! [`edge_to_half`].

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for the zero-sum test on floating edge sets.
pub const ZERO_SUM_TOL: f64 = 1e-9;
/// Two edge directions closer than this (radians, modulo 2π) count as equal.
pub const DIRECTION_TOL: f64 = 1e-12;
/// Edges shorter than this fraction of the total length count as zero.
pub const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("half-plane angle {0} is outside (0, π]")]
    AngleOutOfRange(f64),
    #[error("negative or non-finite magnitude {0}")]
    BadMagnitude(f64),
    #[error("edge vectors do not sum to zero (residual {residual:e}, total length {total:e})")]
    ZeroSumViolation { residual: f64, total: f64 },
    #[error("edge {index} is the zero vector")]
    DegenerateEdge { index: usize },
    #[error("edges {first} and {second} share a direction")]
    RepeatedDirection { first: usize, second: usize },
    #[error("a polygon needs at least 3 edges, got {0}")]
    TooFewEdges(usize),
    #[error("direction is not a unit vector (norm {0})")]
    NonUnitDirection(f64),
    #[error("edge set is empty")]
    EmptyEdgeSet,
    #[error("vertices do not form a strictly convex counterclockwise polygon")]
    NotStrictlyConvex,
}

/// A point or vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at angle `theta`.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: c, y: s }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Self::from_angle(theta) * r
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Angle in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Angle in `[0, 2π)`.
    pub fn angle_positive(self) -> f64 {
        let a = self.angle();
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }

    /// Counterclockwise rotation by `theta`.
    pub fn rotate(self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Rotation by +π/2.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl std::iter::Sum for Vec2 {
    fn sum<I: Iterator<Item = Vec2>>(iter: I) -> Vec2 {
        iter.fold(Vec2::ZERO, Add::add)
    }
}

/// A vector of the half-plane `𝒯` written as `t (cos φ, sin φ)`.
///
/// `t ≥ 0` and `φ ∈ (0, π]`; the zero vector is stored as `(0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarVector {
    t: f64,
    phi: f64,
}

impl PolarVector {
    pub fn new(t: f64, phi: f64) -> Result<Self, GeometryError> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(GeometryError::BadMagnitude(t));
        }
        if !(phi > 0.0 && phi <= PI) {
            return Err(GeometryError::AngleOutOfRange(phi));
        }
        if t == 0.0 {
            return Ok(Self::ZERO);
        }
        Ok(Self { t, phi })
    }

    pub const ZERO: PolarVector = PolarVector { t: 0.0, phi: PI };

    /// Representative of `±v` inside `𝒯`.
    pub fn from_vec(v: Vec2) -> Self {
        if v.x == 0.0 && v.y == 0.0 {
            return Self::ZERO;
        }
        let mut phi = v.angle();
        if phi <= 0.0 {
            phi += PI;
        }
        Self { t: v.norm(), phi }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_vec(self) -> Vec2 {
        Vec2::polar(self.t, self.phi)
    }
}

/// The map `f(t, φ) = t² (cos 2φ, sin 2φ)`.
pub fn half_to_edge(a: PolarVector) -> Vec2 {
    if a.t == 0.0 {
        return Vec2::ZERO;
    }
    Vec2::polar(a.t * a.t, 2.0 * a.phi)
}

/// Inverse of [`half_to_edge`].
pub fn edge_to_half(e: Vec2) -> PolarVector {
    if e.x == 0.0 && e.y == 0.0 {
        return PolarVector::ZERO;
    }
    let mut phi = 0.5 * e.angle();
    if phi <= 0.0 {
        phi += PI;
    }
    PolarVector {
        t: e.norm().sqrt(),
        phi,
    }
}

/// An ordered list of planar edge vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet {
    edges: Vec<Vec2>,
}

impl EdgeSet {
    pub fn new(edges: Vec<Vec2>) -> Self {
        Self { edges }
    }

    pub fn edges(&self) -> &[Vec2] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn sum(&self) -> Vec2 {
        self.edges.iter().copied().sum()
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.norm()).sum()
    }

    /// `‖Σ e_j‖ ≤ 1e-9 · Σ ‖e_j‖`.
    pub fn zero_sum(&self) -> bool {
        self.sum().norm() <= ZERO_SUM_TOL * self.total_length()
    }

    pub fn all_nonzero(&self) -> bool {
        self.first_degenerate().is_none()
    }

    pub fn pairwise_distinct_directions(&self) -> bool {
        self.first_repeated_direction().is_none()
    }

    fn first_degenerate(&self) -> Option<usize> {
        let floor = DEGENERATE_TOL * self.total_length();
        self.edges
            .iter()
            .position(|e| e.norm() <= floor || (e.x == 0.0 && e.y == 0.0))
    }

    fn first_repeated_direction(&self) -> Option<(usize, usize)> {
        let mut order: Vec<(f64, usize)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.angle_positive(), i))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in order.windows(2) {
            if w[1].0 - w[0].0 <= DIRECTION_TOL {
                return Some(pair(w[0].1, w[1].1));
            }
        }
        if let (Some(first), Some(last)) = (order.first(), order.last()) {
            if order.len() > 1 && first.0 + TAU - last.0 <= DIRECTION_TOL {
                return Some(pair(first.1, last.1));
            }
        }
        None
    }
}

fn pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl From<Vec<Vec2>> for EdgeSet {
    fn from(edges: Vec<Vec2>) -> Self {
        Self::new(edges)
    }
}

/// A strictly convex polygon given by its counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

impl ConvexPolygon {
    /// Wraps counterclockwise vertices after checking strict convexity.
    pub fn from_vertices(vertices: Vec<Vec2>) -> Result<Self, GeometryError> {
        let m = vertices.len();
        if m < 3 {
            return Err(GeometryError::TooFewEdges(m));
        }
        let poly = Self { vertices };
        if !poly.is_strictly_convex() {
            return Err(GeometryError::NotStrictlyConvex);
        }
        Ok(poly)
    }

    pub fn m(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Edge vectors `v_{j+1} - v_j`, cyclically.
    pub fn edges(&self) -> Vec<Vec2> {
        let m = self.vertices.len();
        (0..m)
            .map(|j| self.vertices[(j + 1) % m] - self.vertices[j])
            .collect()
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet::new(self.edges())
    }

    fn is_strictly_convex(&self) -> bool {
        let edges = self.edges();
        let m = edges.len();
        let scale = edges.iter().map(|e| e.norm_sq()).fold(0.0, f64::max);
        let turns_left = (0..m).all(|j| edges[j].cross(edges[(j + 1) % m]) > 1e-14 * scale);
        // Exactly one full turn of edge directions.
        let mut winding = 0.0;
        for j in 0..m {
            let a = edges[j];
            let b = edges[(j + 1) % m];
            winding += a.cross(b).atan2(a.dot(b));
        }
        turns_left && (winding - TAU).abs() < 1e-6
    }

    /// Image under `v ↦ k·v`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&v| v * k).collect(),
        }
    }

    pub fn translated(&self, offset: Vec2) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&v| v + offset).collect(),
        }
    }

    pub fn centroid_of_vertices(&self) -> Vec2 {
        self.vertices.iter().copied().sum::<Vec2>() * (1.0 / self.m() as f64)
    }

    /// Vertex index pairs `(i, j)`, `i < j`, at distance within `rel_tol · diam`
    /// of the diameter.
    pub fn diameter_pairs(&self, rel_tol: f64) -> Vec<(usize, usize)> {
        let d = diameter(self);
        let m = self.m();
        let mut pairs = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if self.vertices[i].distance(self.vertices[j]) >= d - rel_tol * d {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }
}

/// Builds the strictly convex polygon with the given edge vectors.
///
/// Edges are sorted by direction angle in `[0, 2π)` and accumulated from the
/// origin, so the first vertex is `(0, 0)`.
pub fn polygon_from_edges(edges: &EdgeSet) -> Result<ConvexPolygon, GeometryError> {
    if edges.len() < 3 {
        return Err(GeometryError::TooFewEdges(edges.len()));
    }
    if let Some(index) = edges.first_degenerate() {
        return Err(GeometryError::DegenerateEdge { index });
    }
    if !edges.zero_sum() {
        return Err(GeometryError::ZeroSumViolation {
            residual: edges.sum().norm(),
            total: edges.total_length(),
        });
    }
    if let Some((first, second)) = edges.first_repeated_direction() {
        return Err(GeometryError::RepeatedDirection { first, second });
    }
    let mut sorted = edges.edges().to_vec();
    sorted.sort_by(|a, b| a.angle_positive().total_cmp(&b.angle_positive()));
    let mut vertices = Vec::with_capacity(sorted.len());
    let mut cursor = Vec2::ZERO;
    for e in &sorted[..sorted.len() - 1] {
        vertices.push(cursor);
        cursor += *e;
    }
    vertices.push(cursor);
    ConvexPolygon::from_vertices(vertices)
}

pub fn perimeter(p: &ConvexPolygon) -> f64 {
    p.edges().iter().map(|e| e.norm()).sum()
}

/// Largest vertex-to-vertex distance.
pub fn diameter(p: &ConvexPolygon) -> f64 {
    let v = p.vertices();
    let mut best = 0.0f64;
    for (i, a) in v.iter().enumerate() {
        for b in &v[i + 1..] {
            best = best.max(a.distance(*b));
        }
    }
    best
}

fn support(p: &ConvexPolygon, u: Vec2) -> f64 {
    p.vertices()
        .iter()
        .map(|x| x.dot(u))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Width `h(P, u) + h(P, -u)` in the unit direction `u`.
pub fn support_width(p: &ConvexPolygon, u: Vec2) -> Result<f64, GeometryError> {
    let n = u.norm();
    if (n - 1.0).abs() > 1e-12 {
        return Err(GeometryError::NonUnitDirection(n));
    }
    Ok(support(p, u) + support(p, -u))
}

/// Result of maximizing `Σ |⟨e_j, u⟩|` over unit `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionMax {
    pub value: f64,
    pub direction: Vec2,
}

/// Exact maximum of `h(ψ) = Σ_j |⟨e_j, (cos ψ, sin ψ)⟩|` over `ψ ∈ [0, π)`.
///
/// Between consecutive zeros of the summands `h` is `A cos ψ + B sin ψ` for
/// fixed signs, so the maximum sits at a breakpoint or at the peak of one of
/// those sinusoids. Zero-sum is not required.
pub fn max_abs_projection_sum(edges: &[Vec2]) -> Result<ProjectionMax, GeometryError> {
    if edges.is_empty() {
        return Err(GeometryError::EmptyEdgeSet);
    }
    let h = |psi: f64| {
        let u = Vec2::from_angle(psi);
        edges.iter().map(|e| e.dot(u).abs()).sum::<f64>()
    };
    let mut breaks: Vec<f64> = edges
        .iter()
        .filter(|e| e.x != 0.0 || e.y != 0.0)
        .map(|e| (e.angle() + 0.5 * PI).rem_euclid(PI))
        .collect();
    if breaks.is_empty() {
        return Ok(ProjectionMax {
            value: 0.0,
            direction: Vec2::new(1.0, 0.0),
        });
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);

    let mut candidates: Vec<f64> = breaks.clone();
    let k = breaks.len();
    for i in 0..k {
        let lo = breaks[i];
        let hi = if i + 1 < k {
            breaks[i + 1]
        } else {
            breaks[0] + PI
        };
        let mid = Vec2::from_angle(0.5 * (lo + hi));
        let (a, b) = edges.iter().fold((0.0, 0.0), |(a, b), e| {
            let s = if e.dot(mid) >= 0.0 { 1.0 } else { -1.0 };
            (a + s * e.x, b + s * e.y)
        });
        if a == 0.0 && b == 0.0 {
            continue;
        }
        let mut peak = b.atan2(a);
        while peak < lo {
            peak += TAU;
        }
        if peak <= hi {
            candidates.push(peak);
        }
    }

    let evaluated: Vec<(f64, f64)> = candidates
        .into_iter()
        .map(|psi| {
            let psi = canonical_half_turn(psi);
            (psi, h(psi))
        })
        .collect();
    let best = evaluated.iter().map(|c| c.1).fold(0.0, f64::max);
    let psi = evaluated
        .iter()
        .filter(|c| c.1 >= best - 1e-12 * best)
        .map(|c| c.0)
        .fold(f64::INFINITY, f64::min);
    Ok(ProjectionMax {
        value: best,
        direction: Vec2::from_angle(psi),
    })
}

fn canonical_half_turn(psi: f64) -> f64 {
    let r = psi.rem_euclid(PI);
    if PI - r < 1e-13 {
        0.0
    } else {
        r
    }
}

/// `diam(P) / perim(P)`.
pub fn ratio_r(p: &ConvexPolygon) -> f64 {
    diameter(p) / perimeter(p)
}

/// The same ratio through the projection formula
/// `max_u Σ|⟨e_j, u⟩| / (2 Σ ‖e_j‖)`.
pub fn ratio_r_from_projection(p: &ConvexPolygon) -> f64 {
    let edges = p.edges();
    let proj = max_abs_projection_sum(&edges).expect("polygon has edges");
    proj.value / (2.0 * perimeter(p))
}
