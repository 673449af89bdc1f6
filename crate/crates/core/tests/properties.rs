mod common;

use std::f64::consts::{PI, TAU};

use optiframe::constructions::{
    optimal_frame_from_sign, optimal_polygon_from_sign, polygon_to_frame,
};
use optiframe::cyclotomic::{sign_sum_is_zero, SignVector};
use optiframe::enumeration::{canonical_form, flip, orbit, shift};
use optiframe::frames::{condition_number, condition_number_tight, Frame};
use optiframe::geometry::{
    diameter, edge_to_half, half_to_edge, max_abs_projection_sum, perimeter, polygon_from_edges,
    ratio_r, support_width, ConvexPolygon, PolarVector, Vec2,
};
use proptest::prelude::*;

fn polygon_case() -> impl Strategy<Value = ConvexPolygon> {
    (3usize..25, any::<u64>())
        .prop_map(|(m, seed)| common::random_polygon(&mut common::rng(seed), m))
}

fn tight_frame_case() -> impl Strategy<Value = Frame> {
    (3usize..9, any::<u64>())
        .prop_map(|(m, seed)| common::random_tight_frame(&mut common::rng(seed), m))
}

fn sign_case(max_m: usize) -> impl Strategy<Value = SignVector> {
    (3usize..=max_m).prop_flat_map(|m| {
        proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], m)
            .prop_map(|s| SignVector::new(s).unwrap())
    })
}

fn pow(eps: &SignVector, k: usize, op: fn(&SignVector) -> SignVector) -> SignVector {
    (0..k).fold(eps.clone(), |e, _| op(&e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn half_plane_roundtrip(t in 1e-3f64..10.0, phi in 1e-6f64..=PI) {
        let a = PolarVector::new(t, phi).unwrap();
        let back = edge_to_half(half_to_edge(a));
        prop_assert!((back.t() - a.t()).abs() <= 1e-12 * (1.0 + t));
        prop_assert!((back.phi() - a.phi()).abs() <= 1e-12 || (a.phi() - PI).abs() < 1e-9);
        let v = back.to_vec();
        let w = a.to_vec();
        prop_assert!(v.distance(w) <= 1e-12 * (1.0 + t) || v.distance(-w) <= 1e-12 * (1.0 + t));
    }

    #[test]
    fn edge_roundtrip(x in -50.0f64..50.0, y in -50.0f64..50.0) {
        let e = Vec2::new(x, y);
        let back = half_to_edge(edge_to_half(e));
        prop_assert!(back.distance(e) <= 1e-12 * (1.0 + e.norm()));
    }

    #[test]
    fn polygon_starts_at_origin(p in polygon_case()) {
        prop_assert_eq!(p.vertices()[0], Vec2::ZERO);
    }

    #[test]
    fn diameter_is_half_projection_max(p in polygon_case()) {
        let proj = max_abs_projection_sum(&p.edges()).unwrap().value;
        prop_assert!((diameter(&p) - proj / 2.0).abs() <= 1e-9 * perimeter(&p));
    }

    #[test]
    fn width_bounded_by_diameter(p in polygon_case()) {
        let d = diameter(&p);
        let mut best = 0.0f64;
        for k in 0..4096 {
            let u = Vec2::from_angle(TAU * k as f64 / 4096.0);
            let w = support_width(&p, u).unwrap();
            prop_assert!(w <= d * (1.0 + 1e-12));
            best = best.max(w);
        }
        prop_assert!((best - d).abs() <= 1e-6 * d);
    }

    #[test]
    fn ratio_is_similarity_invariant(
        p in polygon_case(),
        k in 0.01f64..100.0,
        theta in 0.0f64..TAU,
        dx in -5.0f64..5.0,
        dy in -5.0f64..5.0,
    ) {
        let r = ratio_r(&p);
        prop_assert!((ratio_r(&p.scaled(k)) - r).abs() <= 1e-12);
        prop_assert!((ratio_r(&p.translated(Vec2::new(dx, dy))) - r).abs() <= 1e-12);
        let rotated = ConvexPolygon::from_vertices(p.vertices().iter().map(|v| v.rotate(theta)).collect()).unwrap();
        prop_assert!((ratio_r(&rotated) - r).abs() <= 1e-12);
        // Reflecting in the x-axis reverses orientation; restore counter-clockwise order.
        let mut mirrored: Vec<Vec2> = p.vertices().iter().map(|v| Vec2::new(v.x, -v.y)).collect();
        mirrored.reverse();
        let mirrored = ConvexPolygon::from_vertices(mirrored).unwrap();
        prop_assert!((ratio_r(&mirrored) - r).abs() <= 1e-12);
    }

    #[test]
    fn ratio_matches_beta_through_correspondence(p in polygon_case()) {
        let f = polygon_to_frame(&p);
        let beta = condition_number_tight(&f).unwrap().beta;
        prop_assert!((beta - 1.0 / (1.0 - 2.0 * ratio_r(&p)).sqrt()).abs() <= 1e-9 * beta);
    }

    #[test]
    fn beta_ignores_row_signs(f in tight_frame_case(), mask in any::<u32>()) {
        let flipped = Frame::new(
            f.vectors().iter().enumerate()
                .map(|(j, &v)| if mask >> j & 1 == 1 { -v } else { v })
                .collect(),
        );
        let a = condition_number(&f);
        let b = condition_number(&flipped);
        prop_assert!((a.upper - b.upper).abs() <= 1e-12 * a.upper);
        prop_assert!((a.lower - b.lower).abs() <= 1e-12 * a.upper);
        prop_assert!((a.beta - b.beta).abs() <= 1e-12 * a.beta);
    }

    #[test]
    fn beta_ignores_rotation(f in tight_frame_case(), theta in 0.0f64..TAU) {
        let a = condition_number(&f);
        let b = condition_number(&f.rotated(theta));
        prop_assert!((a.upper - b.upper).abs() <= 1e-12 * a.upper);
        prop_assert!((a.lower - b.lower).abs() <= 1e-12 * a.upper);
        prop_assert!((a.beta - b.beta).abs() <= 1e-12 * a.beta);
    }

    #[test]
    fn shift_flip_relation(eps in sign_case(12), k in 0usize..24) {
        let m = eps.m();
        let k = k % (2 * m);
        let lhs = pow(&flip(&eps), k, shift);
        let rhs = flip(&pow(&eps, 2 * m - k, shift));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(pow(&eps, 2 * m, shift), eps.clone());
        prop_assert_eq!(flip(&flip(&eps)), eps);
    }

    #[test]
    fn solutions_closed_under_group(eps in sign_case(12)) {
        let z = sign_sum_is_zero(&eps);
        prop_assert_eq!(sign_sum_is_zero(&shift(&eps)), z);
        prop_assert_eq!(sign_sum_is_zero(&flip(&eps)), z);
        prop_assert_eq!(sign_sum_is_zero(&eps.negated()), z);
    }

    #[test]
    fn orbit_is_consistent(eps in sign_case(14)) {
        let o = orbit(&eps);
        prop_assert!(o.len() <= 4 * eps.m());
        prop_assert!(o.len().is_multiple_of(2));
        let c = canonical_form(&eps);
        prop_assert!(o.contains(&c));
        for member in &o {
            prop_assert_eq!(canonical_form(member), c.clone());
        }
    }
}

#[test]
fn optimal_constructions_from_every_solution() {
    for m in [3usize, 5, 6, 7, 9, 10] {
        for idx in 0..1u64 << m {
            let eps = SignVector::from_index(m, idx);
            if !sign_sum_is_zero(&eps) {
                continue;
            }
            let p = optimal_polygon_from_sign(&eps).unwrap();
            let f = optimal_frame_from_sign(&eps).unwrap();
            let beta = condition_number_tight(&f).unwrap().beta;
            assert!((beta - 1.0 / (1.0 - 2.0 * ratio_r(&p)).sqrt()).abs() <= 1e-12);
            let from_frame = polygon_from_edges(&f.edge_set()).unwrap();
            assert!((ratio_r(&from_frame) - ratio_r(&p)).abs() <= 1e-12);
        }
    }
}
