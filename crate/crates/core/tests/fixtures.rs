//! Checks the shipped files under `data/` against freshly computed values.
//! Set `OPTIFRAME_REGEN_FIXTURES=1` to rewrite them instead.

use std::fs;
use std::path::{Path, PathBuf};

use optiframe::constructions::{
    frame_to_polygon, harmonic_frame, optimal_frame_m4, OptimalPair, OptimalPairRecord,
};
use optiframe::enumeration::{enumerate_solution_classes, EnumerateOptions};
use optiframe::frames::{condition_number_tight, Frame};
use optiframe::geometry::ratio_r;
use optiframe::numfmt::round_sig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct FrameFixture {
    name: String,
    m: usize,
    frame: Vec<[f64; 2]>,
    #[serde(rename = "U")]
    upper: f64,
    #[serde(rename = "L")]
    lower: f64,
    beta: f64,
    r: f64,
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn frame_fixture(name: &str, f: &Frame) -> FrameFixture {
    let rep = condition_number_tight(f).unwrap();
    FrameFixture {
        name: name.to_string(),
        m: f.m(),
        frame: f
            .vectors()
            .iter()
            .map(|v| [round_sig(v.x), round_sig(v.y)])
            .collect(),
        upper: round_sig(rep.upper),
        lower: round_sig(rep.lower),
        beta: round_sig(rep.beta),
        r: round_sig(ratio_r(&frame_to_polygon(f).unwrap())),
    }
}

fn expected_files() -> Vec<(PathBuf, String)> {
    let dir = data_dir();
    let mut out = Vec::new();
    let mut frames: Vec<(String, Frame)> = (3..=15)
        .map(|m| (format!("E{m}"), harmonic_frame(m)))
        .collect();
    frames.push(("E4prime".into(), optimal_frame_m4()));
    for (name, f) in &frames {
        let json = serde_json::to_string_pretty(&frame_fixture(name, f)).unwrap() + "\n";
        out.push((dir.join("frames").join(format!("{name}.json")), json));
    }
    for m in (3..=15).filter(|m: &usize| !m.is_power_of_two()) {
        let records: Vec<OptimalPairRecord> =
            enumerate_solution_classes(m, EnumerateOptions::default())
                .unwrap()
                .iter()
                .map(|c| OptimalPairRecord::from(&OptimalPair::from_sign(&c.canonical).unwrap()))
                .collect();
        let json = serde_json::to_string_pretty(&records).unwrap() + "\n";
        out.push((dir.join("optimal").join(format!("m{m}.json")), json));
    }
    let csv: String = optimal_frame_m4()
        .vectors()
        .iter()
        .map(|v| format!("{:?},{:?}\n", v.x, v.y))
        .collect();
    out.push((dir.join("e4prime.csv"), csv));
    out
}

#[test]
fn shipped_fixtures_are_current() {
    let regen = std::env::var_os("OPTIFRAME_REGEN_FIXTURES").is_some();
    for (path, body) in expected_files() {
        if regen {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, &body).unwrap();
            continue;
        }
        let on_disk = fs::read_to_string(&path).unwrap_or_else(|e| {
            panic!(
                "{}: {e}; rerun with OPTIFRAME_REGEN_FIXTURES=1",
                path.display()
            )
        });
        if path.extension().is_some_and(|e| e == "json") {
            let a: serde_json::Value = serde_json::from_str(&on_disk).unwrap();
            let b: serde_json::Value = serde_json::from_str(&body).unwrap();
            assert_eq!(a, b, "{}", path.display());
        } else {
            assert_eq!(on_disk, body, "{}", path.display());
        }
    }
}

#[test]
fn frame_fixtures_reproduce_beta() {
    let dir = data_dir().join("frames");
    let e4p: FrameFixture =
        serde_json::from_str(&fs::read_to_string(dir.join("E4prime.json")).unwrap()).unwrap();
    assert!((e4p.beta - 1.71226506).abs() < 1e-8);
    let e4: FrameFixture =
        serde_json::from_str(&fs::read_to_string(dir.join("E4.json")).unwrap()).unwrap();
    assert!((e4.beta - 1.84775907).abs() < 1e-8);
    for name in ["E3", "E5", "E7", "E12", "E15"] {
        let fx: FrameFixture =
            serde_json::from_str(&fs::read_to_string(dir.join(format!("{name}.json"))).unwrap())
                .unwrap();
        let f = Frame::new(
            fx.frame
                .iter()
                .map(|p| optiframe::geometry::Vec2::new(p[0], p[1]))
                .collect(),
        );
        let beta = condition_number_tight(&f).unwrap().beta;
        assert!((beta - fx.beta).abs() <= 1e-7 * fx.beta, "{name}");
    }
}
