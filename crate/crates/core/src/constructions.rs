//! Named frames and polygons: harmonic frames, the optimal polygon and frame
//! attached to a vanishing sign vector, the optimal quadrilateral and its
//! frame for `m = 4`, and the frame/polygon correspondence itself.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{sign_sum_is_zero, SignVector};
use crate::frames::{
    condition_number_tight, is_irreducible, is_tight, Frame, FrameError, TIGHT_TOL,
};
use crate::geometry::{
    diameter, edge_to_half, half_to_edge, perimeter, polygon_from_edges, ratio_r, ConvexPolygon,
    EdgeSet, GeometryError, PolarVector, Vec2,
};
use crate::numfmt::round_sig;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("sign vector {0} does not give a vanishing sum")]
    NotASolution(SignVector),
    #[error("m = {0} is a power of two; the sign-vector construction needs an odd factor")]
    NoOddFactor(usize),
    #[error("frame is not tight")]
    NotTight,
    #[error("frame is reducible")]
    NotIrreducible,
    #[error("polygon is not strictly convex: {0}")]
    NotStrictlyConvex(GeometryError),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

pub fn has_odd_factor(m: usize) -> bool {
    m >= 3 && !m.is_power_of_two()
}

/// `E_m`: rows `(cos kπ/m, sin kπ/m)`, `k = 0..m`.
pub fn harmonic_frame(m: usize) -> Frame {
    assert!(m >= 3, "harmonic frames need m >= 3");
    Frame::new(
        (0..m)
            .map(|k| Vec2::from_angle(k as f64 * PI / m as f64))
            .collect(),
    )
}

/// `μ_j = (cos jπ/m, sin jπ/m)`.
pub fn mu(j: usize, m: usize) -> Vec2 {
    Vec2::from_angle(j as f64 * PI / m as f64)
}

/// `ν_j = (cos jπ/2m, sin jπ/2m)`.
pub fn nu(j: usize, m: usize) -> Vec2 {
    Vec2::from_angle(j as f64 * PI / (2 * m) as f64)
}

/// `ν_j` rotated by `+π/2`.
pub fn nu_perp(j: usize, m: usize) -> Vec2 {
    Vec2::from_angle(j as f64 * PI / (2 * m) as f64 + 0.5 * PI)
}

fn check_sign(eps: &SignVector) -> Result<(), ConstructionError> {
    if !has_odd_factor(eps.m()) {
        return Err(ConstructionError::NoOddFactor(eps.m()));
    }
    if !sign_sum_is_zero(eps) {
        return Err(ConstructionError::NotASolution(eps.clone()));
    }
    Ok(())
}

/// Polygon with edges `ε_j μ_j`; equilateral with unit edges.
pub fn optimal_polygon_from_sign(eps: &SignVector) -> Result<ConvexPolygon, ConstructionError> {
    check_sign(eps)?;
    let m = eps.m();
    let edges = eps
        .signs()
        .iter()
        .enumerate()
        .map(|(i, &s)| mu(i + 1, m) * f64::from(s))
        .collect();
    polygon_from_edges(&EdgeSet::new(edges)).map_err(ConstructionError::NotStrictlyConvex)
}

/// `ν_j` where `ε_j = +1`, `ν_j^⊥` where `ε_j = -1`.
pub fn optimal_frame_from_sign(eps: &SignVector) -> Result<Frame, ConstructionError> {
    check_sign(eps)?;
    let m = eps.m();
    Ok(Frame::new(
        eps.signs()
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                if s > 0 {
                    nu(i + 1, m)
                } else {
                    nu_perp(i + 1, m)
                }
            })
            .collect(),
    ))
}

/// Polygon whose edges are the images `f(a_j)` of a tight irreducible frame.
pub fn frame_to_polygon(frame: &Frame) -> Result<ConvexPolygon, ConstructionError> {
    if !is_tight(frame, TIGHT_TOL).tight {
        return Err(ConstructionError::NotTight);
    }
    if !is_irreducible(frame) {
        return Err(ConstructionError::NotIrreducible);
    }
    polygon_from_edges(&frame.edge_set()).map_err(ConstructionError::NotStrictlyConvex)
}

/// Frame `{f^{-1}(e_j)}` for the edges of a strictly convex polygon.
pub fn polygon_to_frame(polygon: &ConvexPolygon) -> Frame {
    Frame::new(
        polygon
            .edges()
            .into_iter()
            .map(|e| edge_to_half(e).to_vec())
            .collect(),
    )
}

/// The optimal `4 × 2` matrix `E_4'`.
pub fn optimal_frame_m4() -> Frame {
    let s = (2.0 * (PI / 12.0).sin()).sqrt();
    Frame::new(vec![
        Vec2::new(-1.0, 0.0),
        Vec2::from_angle(2.0 * PI / 3.0),
        Vec2::polar(s, 3.0 * PI / 8.0),
        Vec2::polar(s, 7.0 * PI / 24.0),
    ])
}

/// Edge set of the optimal quadrilateral, with the two short edges scaled by
/// `2 sin(π/12)`.
pub fn optimal_quadrilateral_edges() -> EdgeSet {
    let s = 2.0 * (PI / 12.0).sin();
    EdgeSet::new(vec![
        Vec2::new(1.0, 0.0),
        Vec2::from_angle(4.0 * PI / 3.0),
        Vec2::polar(s, 3.0 * PI / 4.0),
        Vec2::polar(s, 7.0 * PI / 12.0),
    ])
}

pub fn optimal_quadrilateral() -> ConvexPolygon {
    polygon_from_edges(&optimal_quadrilateral_edges()).expect("optimal quadrilateral is convex")
}

/// `1/(2m sin(π/2m))`, the ratio of every optimal polygon when `m` has an
/// odd factor.
pub fn optimal_ratio(m: usize) -> f64 {
    let mf = m as f64;
    1.0 / (2.0 * mf * (PI / (2.0 * mf)).sin())
}

/// Polygon and frame attached to one vanishing sign vector.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalPair {
    pub sign: SignVector,
    pub polygon: ConvexPolygon,
    pub frame: Frame,
    pub beta: f64,
    pub r: f64,
}

impl OptimalPair {
    pub fn from_sign(eps: &SignVector) -> Result<Self, ConstructionError> {
        let polygon = optimal_polygon_from_sign(eps)?;
        let frame = optimal_frame_from_sign(eps)?;
        let beta = condition_number_tight(&frame)?.beta;
        let r = ratio_r(&polygon);
        Ok(Self {
            sign: eps.clone(),
            polygon,
            frame,
            beta,
            r,
        })
    }

    /// `max/min edge length - 1`.
    pub fn edge_length_spread(&self) -> f64 {
        let lengths: Vec<f64> = self.polygon.edges().iter().map(|e| e.norm()).collect();
        let max = lengths.iter().copied().fold(0.0, f64::max);
        let min = lengths.iter().copied().fold(f64::INFINITY, f64::min);
        max / min - 1.0
    }
}

/// JSON form of a polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonRecord {
    pub m: usize,
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<[f64; 2]>,
    pub diameter: f64,
    pub perimeter: f64,
    pub r: f64,
}

fn r9(v: Vec2) -> [f64; 2] {
    [round_sig(v.x), round_sig(v.y)]
}

impl From<&ConvexPolygon> for PolygonRecord {
    fn from(p: &ConvexPolygon) -> Self {
        Self {
            m: p.m(),
            vertices: p.vertices().iter().copied().map(r9).collect(),
            edges: p.edges().into_iter().map(r9).collect(),
            diameter: round_sig(diameter(p)),
            perimeter: round_sig(perimeter(p)),
            r: round_sig(ratio_r(p)),
        }
    }
}

/// JSON form of an [`OptimalPair`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalPairRecord {
    pub m: usize,
    pub sign: SignVector,
    pub vertices: Vec<[f64; 2]>,
    pub frame: Vec<[f64; 2]>,
    pub beta: f64,
    pub r: f64,
}

impl From<&OptimalPair> for OptimalPairRecord {
    fn from(p: &OptimalPair) -> Self {
        Self {
            m: p.sign.m(),
            sign: p.sign.clone(),
            vertices: p.polygon.vertices().iter().copied().map(r9).collect(),
            frame: p.frame.vectors().iter().copied().map(r9).collect(),
            beta: round_sig(p.beta),
            r: round_sig(p.r),
        }
    }
}

/// Frame angles reduced modulo π, sorted.
pub fn angles_mod_pi(frame: &Frame) -> Vec<f64> {
    let mut a: Vec<f64> = frame
        .vectors()
        .iter()
        .map(|v| {
            let t = v.angle().rem_euclid(PI);
            if PI - t < 1e-13 {
                0.0
            } else {
                t
            }
        })
        .collect();
    a.sort_by(f64::total_cmp);
    a
}

/// Whether two angle multisets modulo π agree within `tol`.
pub fn same_angles_mod_pi(a: &[f64], b: &[f64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|&x| {
        let hit = b.iter().enumerate().position(|(i, &y)| {
            let d = (x - y).rem_euclid(PI);
            !used[i] && d.min(PI - d) <= tol
        });
        match hit {
            Some(i) => {
                used[i] = true;
                true
            }
            None => false,
        }
    })
}

/// Whether some common rotation carries the angles of `a` onto those of `b`
/// (modulo π, per-vector sign ignored).
pub fn same_up_to_rotation(a: &Frame, b: &Frame, tol: f64) -> bool {
    let aa = angles_mod_pi(a);
    let bb = angles_mod_pi(b);
    if aa.len() != bb.len() || aa.is_empty() {
        return aa.len() == bb.len();
    }
    bb.iter().any(|&target| {
        let rot = target - aa[0];
        let rotated: Vec<f64> = aa.iter().map(|x| (x + rot).rem_euclid(PI)).collect();
        same_angles_mod_pi(&rotated, &bb, tol)
    })
}

/// `f(ν_j) = μ_j` and `f(ν_j^⊥) = -μ_j`.
pub fn nu_images(j: usize, m: usize) -> (Vec2, Vec2) {
    (
        half_to_edge(PolarVector::from_vec(nu(j, m))),
        half_to_edge(PolarVector::from_vec(nu_perp(j, m))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_solution_classes, shift};
    use crate::frames::{beta_min_bound, condition_number_tight};

    fn sv(s: &[i8]) -> SignVector {
        SignVector::new(s.to_vec()).unwrap()
    }

    fn vclose(a: Vec2, b: Vec2, tol: f64) -> bool {
        (a.x - b.x).abs() <= tol && (a.y - b.y).abs() <= tol
    }

    #[test]
    fn harmonic_examples() {
        let e3 = harmonic_frame(3);
        let s = 3f64.sqrt() / 2.0;
        let expect = [Vec2::new(1.0, 0.0), Vec2::new(0.5, s), Vec2::new(-0.5, s)];
        for (a, b) in e3.vectors().iter().zip(expect) {
            assert!(vclose(*a, b, 1e-15));
        }
        let h = 0.5f64.sqrt();
        assert!(vclose(
            harmonic_frame(4).vectors()[1],
            Vec2::new(h, h),
            1e-15
        ));
        for m in 3..=20 {
            let c = is_tight(&harmonic_frame(m), 1e-12);
            assert!(c.tight);
            assert!((c.a - m as f64 / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn named_unit_vectors() {
        assert!(vclose(mu(3, 3), Vec2::new(-1.0, 0.0), 1e-15));
        assert!(vclose(nu(2, 3), Vec2::new(0.5, 3f64.sqrt() / 2.0), 1e-15));
        for m in 3..=12 {
            for j in 1..=m {
                let (a, b) = nu_images(j, m);
                assert!(vclose(a, mu(j, m), 1e-14), "m={m} j={j}");
                assert!(vclose(b, -mu(j, m), 1e-14), "m={m} j={j}");
            }
        }
    }

    #[test]
    fn triangle_from_sign() {
        let p = optimal_polygon_from_sign(&sv(&[1, -1, 1])).unwrap();
        let s = 3f64.sqrt() / 2.0;
        let edges = p.edges();
        assert!(vclose(edges[0], Vec2::new(0.5, s), 1e-15));
        assert!(vclose(edges[1], Vec2::new(-1.0, 0.0), 1e-15));
        assert!(vclose(edges[2], Vec2::new(0.5, -s), 1e-15));
        assert!((ratio_r(&p) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn sign_guards() {
        assert!(matches!(
            optimal_polygon_from_sign(&sv(&[1, 1, 1, 1])),
            Err(ConstructionError::NoOddFactor(4))
        ));
        assert!(matches!(
            optimal_frame_from_sign(&sv(&[1, 1, 1])),
            Err(ConstructionError::NotASolution(_))
        ));
    }

    #[test]
    fn triangle_frame_from_sign() {
        let f = optimal_frame_from_sign(&sv(&[1, -1, 1])).unwrap();
        let deg = |d: f64| Vec2::from_angle(d.to_radians());
        for (a, b) in f.vectors().iter().zip([deg(30.0), deg(150.0), deg(90.0)]) {
            assert!(vclose(*a, b, 1e-15));
        }
        let beta = condition_number_tight(&f).unwrap().beta;
        assert!((beta - 3f64.sqrt()).abs() < 1e-13);
        assert!((beta - beta_min_bound(3)).abs() < 1e-13);
    }

    #[test]
    fn odd_primes_give_rotated_harmonic_frames() {
        for m in [3usize, 5, 7, 11, 13] {
            let classes = enumerate_solution_classes(m, Default::default()).unwrap();
            assert_eq!(classes.len(), 1);
            let f = optimal_frame_from_sign(&classes[0].canonical).unwrap();
            assert!(same_up_to_rotation(&f, &harmonic_frame(m), 1e-12), "m={m}");
        }
        // m = 9 has a class that is not harmonic.
        let classes = enumerate_solution_classes(9, Default::default()).unwrap();
        let harmonic = classes
            .iter()
            .filter(|c| {
                same_up_to_rotation(
                    &optimal_frame_from_sign(&c.canonical).unwrap(),
                    &harmonic_frame(9),
                    1e-12,
                )
            })
            .count();
        assert_eq!(harmonic, 1);
    }

    #[test]
    fn shift_rotates_frame_clockwise() {
        for m in [5usize, 6, 9, 12] {
            for class in enumerate_solution_classes(m, Default::default()).unwrap() {
                let eps = class.canonical;
                let f = optimal_frame_from_sign(&eps).unwrap();
                let g = optimal_frame_from_sign(&shift(&eps)).unwrap();
                let rotated = f.rotated(-PI / (2 * m) as f64);
                assert!(same_angles_mod_pi(
                    &angles_mod_pi(&rotated),
                    &angles_mod_pi(&g),
                    1e-12
                ));
            }
        }
    }

    #[test]
    fn correspondence_roundtrip() {
        let tri = optimal_polygon_from_sign(&sv(&[1, -1, 1])).unwrap();
        let f = polygon_to_frame(&tri);
        assert!((condition_number_tight(&f).unwrap().beta - 3f64.sqrt()).abs() < 1e-13);

        let frame = optimal_frame_m4();
        let p = frame_to_polygon(&frame).unwrap();
        let back = polygon_to_frame(&p);
        assert!(same_angles_mod_pi(
            &angles_mod_pi(&frame),
            &angles_mod_pi(&back),
            1e-12
        ));
        let mut n1: Vec<f64> = frame.vectors().iter().map(|v| v.norm()).collect();
        let mut n2: Vec<f64> = back.vectors().iter().map(|v| v.norm()).collect();
        n1.sort_by(f64::total_cmp);
        n2.sort_by(f64::total_cmp);
        for (a, b) in n1.iter().zip(&n2) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn correspondence_errors() {
        let skew = Frame::new(vec![
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ]);
        assert!(matches!(
            frame_to_polygon(&skew),
            Err(ConstructionError::NotTight)
        ));
        let reducible = Frame::new(vec![
            Vec2::new(1.0, 0.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(0.0, -1.0),
        ]);
        assert!(matches!(
            frame_to_polygon(&reducible),
            Err(ConstructionError::NotIrreducible)
        ));
    }

    #[test]
    fn quadrilateral_matches_frame_images() {
        let frame_edges = optimal_frame_m4().edge_set();
        let expect = optimal_quadrilateral_edges();
        for (a, b) in frame_edges.edges().iter().zip(expect.edges()) {
            assert!(vclose(*a, *b, 1e-15), "{a:?} vs {b:?}");
        }
        let r = ratio_r(&frame_to_polygon(&optimal_frame_m4()).unwrap());
        assert!((r - 1.0 / (2.0 + 6f64.sqrt() - 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn pairs_are_equilateral_and_optimal() {
        for m in [3usize, 5, 6, 7, 9, 12, 15] {
            for class in enumerate_solution_classes(m, Default::default()).unwrap() {
                let pair = OptimalPair::from_sign(&class.canonical).unwrap();
                assert!(pair.edge_length_spread() <= 1e-12);
                assert!((pair.r - optimal_ratio(m)).abs() <= 1e-12, "m={m}");
                assert!((pair.beta - beta_min_bound(m)).abs() <= 1e-10, "m={m}");
                assert!((pair.beta - 1.0 / (1.0 - 2.0 * pair.r).sqrt()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn polygon_record_json() {
        let p = optimal_polygon_from_sign(&sv(&[1, -1, 1])).unwrap();
        let rec = PolygonRecord::from(&p);
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["m"], 3);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
        assert_eq!(v["r"].as_f64().unwrap(), 0.333333333);
        assert_eq!(v["diameter"].as_f64().unwrap(), 1.0);
    }
}
