#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use optiframe::constructions::polygon_to_frame;
use optiframe::frames::Frame;
use optiframe::geometry::{polygon_from_edges, ConvexPolygon, EdgeSet, Vec2};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sorted distinct angles in `[0, 2π)` with every gap below `π`, so that
/// positive weights on them can sum to zero.
fn spread_angles(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    loop {
        let mut a: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..TAU)).collect();
        a.sort_by(f64::total_cmp);
        let gaps = (0..m).map(|i| {
            if i + 1 < m {
                a[i + 1] - a[i]
            } else {
                a[0] + TAU - a[m - 1]
            }
        });
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for g in gaps {
            lo = lo.min(g);
            hi = hi.max(g);
        }
        if lo > 1e-3 && hi < PI - 0.05 {
            return a;
        }
    }
}

/// Random edge set with positive lengths on random directions, closed up by
/// adding the residual to the two directions whose cone contains it.
pub fn random_closed_edges(rng: &mut ChaCha8Rng, m: usize) -> EdgeSet {
    let angles = spread_angles(rng, m);
    let mut lengths: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..2.0)).collect();
    let dirs: Vec<Vec2> = angles.iter().map(|&a| Vec2::from_angle(a)).collect();
    let s: Vec2 = dirs.iter().zip(&lengths).map(|(d, &l)| *d * l).sum();
    let target = -s;
    for j in 0..m {
        let (u, v) = (dirs[j], dirs[(j + 1) % m]);
        let det = u.cross(v);
        let a = target.cross(v) / det;
        let b = u.cross(target) / det;
        if a >= 0.0 && b >= 0.0 {
            lengths[j] += a;
            lengths[(j + 1) % m] += b;
            break;
        }
    }
    EdgeSet::new(dirs.iter().zip(&lengths).map(|(d, &l)| *d * l).collect())
}

pub fn random_polygon(rng: &mut ChaCha8Rng, m: usize) -> ConvexPolygon {
    polygon_from_edges(&random_closed_edges(rng, m)).expect("closed edge set is convex")
}

/// Tight irreducible frame with a random common rotation and scale.
pub fn random_tight_frame(rng: &mut ChaCha8Rng, m: usize) -> Frame {
    let f = polygon_to_frame(&random_polygon(rng, m));
    f.rotated(rng.gen_range(0.0..TAU))
        .scaled(rng.gen_range(0.5..2.0))
}

pub fn random_frame(rng: &mut ChaCha8Rng, m: usize) -> Frame {
    Frame::new(
        (0..m)
            .map(|_| Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
}

pub fn random_unit_edges(rng: &mut ChaCha8Rng, m: usize) -> EdgeSet {
    EdgeSet::new(
        (0..m)
            .map(|_| Vec2::from_angle(rng.gen_range(0.0..TAU)))
            .collect(),
    )
}
