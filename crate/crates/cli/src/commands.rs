use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use optiframe::constructions::{
    harmonic_frame, optimal_frame_from_sign, optimal_frame_m4, optimal_polygon_from_sign,
    optimal_quadrilateral, PolygonRecord,
};
use optiframe::cyclotomic::SignVector;
use optiframe::enumeration::{
    class_count, enumerate_solution_classes, literature_count, ClassReport, EnumerateOptions,
    SignClass, MAX_ENUMERATION_M,
};
use optiframe::frames::{beta_min_bound, condition_number, ConditionReport, Frame};
use optiframe::geometry::{diameter, perimeter, ratio_r, ConvexPolygon, Vec2};
use optiframe::numfmt::{fmt_fixed, fmt_sig, round_sig};
use serde::Serialize;

use crate::svg;

fn check_m(m: usize) -> Result<()> {
    ensure!(
        (3..=MAX_ENUMERATION_M).contains(&m),
        "m must be between 3 and {MAX_ENUMERATION_M}, got {m}"
    );
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let body = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

pub fn enumerate(m: usize, raw: bool, json: Option<&Path>) -> Result<()> {
    check_m(m)?;
    let classes = enumerate_solution_classes(m, EnumerateOptions { keep_members: raw })?;
    if m.is_power_of_two() {
        println!("0 classes (m is a power of two; see literature values)");
    } else {
        println!("{} classes", classes.len());
    }
    for (k, c) in classes.iter().enumerate() {
        println!("class {k}: {} (orbit size {})", c.canonical, c.orbit_size);
        if let Some(members) = &c.raw_members {
            for member in members {
                println!("  {member}");
            }
        }
    }
    if let Some(path) = json {
        write_json(path, &ClassReport::new(m, &classes))?;
    }
    Ok(())
}

/// `1/(2m sin(π/2m))` written out for a given `m`.
fn ratio_symbol(m: usize) -> String {
    match m {
        3 => "1/3".into(),
        4 => "1/(2+√6−√2)".into(),
        _ => format!("1/({} sin(π/{}))", 2 * m, 2 * m),
    }
}

struct TableRow {
    m: usize,
    classes: usize,
    beta_min: Option<f64>,
    r_min: Option<f64>,
    r_symbolic: String,
    note: String,
}

fn table_row(m: usize) -> Result<TableRow> {
    let count = class_count(m)?;
    let note = match literature_count(m) {
        Some(n) => format!("count from literature: {n}"),
        None if count.power_of_two => "power of two".into(),
        None => String::new(),
    };
    let (beta_min, r_min, r_symbolic) = if !count.power_of_two {
        let r = 1.0 / (2.0 * m as f64 * (PI / (2.0 * m as f64)).sin());
        (Some(beta_min_bound(m)), Some(r), ratio_symbol(m))
    } else if m == 4 {
        let beta = condition_number(&optimal_frame_m4()).beta;
        (
            Some(beta),
            Some(ratio_r(&optimal_quadrilateral())),
            ratio_symbol(4),
        )
    } else {
        (None, None, "-".into())
    };
    Ok(TableRow {
        m,
        classes: count.count,
        beta_min,
        r_min,
        r_symbolic,
        note,
    })
}

pub fn table(max_m: usize, csv: bool) -> Result<()> {
    check_m(max_m)?;
    let rows = (3..=max_m).map(table_row).collect::<Result<Vec<_>>>()?;
    if csv {
        let mut w = csv::Writer::from_writer(std::io::stdout());
        w.write_record(["m", "classes", "beta_min", "r_min", "r_symbolic", "note"])?;
        for r in &rows {
            let num = |v: Option<f64>| v.map_or(String::new(), fmt_sig);
            w.write_record([
                r.m.to_string(),
                r.classes.to_string(),
                num(r.beta_min),
                num(r.r_min),
                r.r_symbolic.clone(),
                r.note.clone(),
            ])?;
        }
        w.flush()?;
        return Ok(());
    }
    println!("m, classes, beta_min, r_min");
    for r in &rows {
        let beta = r.beta_min.map_or("-".to_string(), |b| fmt_fixed(b, 7));
        let mut line = format!("{}, {}, {}, {}", r.m, r.classes, beta, r.r_symbolic);
        if !r.note.is_empty() {
            line.push_str(", ");
            line.push_str(&r.note);
        }
        println!("{line}");
    }
    Ok(())
}

/// Sign vector for class `k`, after the power-of-two checks.
fn select_class(m: usize, k: usize) -> Result<SignClass> {
    check_m(m)?;
    if m.is_power_of_two() {
        bail!("m = {m}: no optimal construction from sign vectors (known from literature, out of scope)");
    }
    let mut classes = enumerate_solution_classes(m, EnumerateOptions::default())?;
    ensure!(
        k < classes.len(),
        "class index {k} out of range: m = {m} has {} classes",
        classes.len()
    );
    Ok(classes.swap_remove(k))
}

fn check_m4_class(k: usize) -> Result<()> {
    ensure!(
        k == 0,
        "class index {k} out of range: m = 4 has one optimal configuration"
    );
    Ok(())
}

pub fn polygon(m: usize, k: usize, svg_path: Option<&Path>, json: Option<&Path>) -> Result<()> {
    let (polygon, sign) = if m == 4 {
        check_m4_class(k)?;
        (optimal_quadrilateral(), None)
    } else {
        let class = select_class(m, k)?;
        (
            optimal_polygon_from_sign(&class.canonical)?,
            Some(class.canonical),
        )
    };
    print_polygon(&polygon, sign.as_ref());
    if let Some(path) = svg_path {
        fs::write(path, svg::polygon_svg(&polygon))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = json {
        write_json(path, &PolygonRecord::from(&polygon))?;
    }
    Ok(())
}

fn print_polygon(p: &ConvexPolygon, sign: Option<&SignVector>) {
    println!("m = {}", p.m());
    if let Some(s) = sign {
        println!("sign = {s}");
    }
    println!("diameter = {}", fmt_sig(diameter(p)));
    println!("perimeter = {}", fmt_sig(perimeter(p)));
    println!("r = {}", fmt_sig(ratio_r(p)));
    println!("vertices:");
    for v in p.vertices() {
        println!("  {} {}", fmt_fixed(v.x, 9), fmt_fixed(v.y, 9));
    }
}

#[derive(Serialize)]
struct FrameRecord<'a> {
    m: usize,
    sign: Option<&'a SignVector>,
    frame: Vec<[f64; 2]>,
    condition: &'a ConditionReport,
}

fn degrees_mod_180(v: Vec2) -> f64 {
    let d = v.angle().to_degrees().rem_euclid(180.0);
    if 180.0 - d < 1e-9 {
        0.0
    } else {
        d
    }
}

pub fn frame(m: usize, k: usize, svg_path: Option<&Path>, json: Option<&Path>) -> Result<()> {
    let (frame, sign) = if m == 4 {
        check_m4_class(k)?;
        (optimal_frame_m4(), None)
    } else {
        let class = select_class(m, k)?;
        (
            optimal_frame_from_sign(&class.canonical)?,
            Some(class.canonical),
        )
    };
    let report = condition_number(&frame);
    println!("m = {}", frame.m());
    if let Some(s) = &sign {
        println!("sign = {s}");
    }
    println!("beta = {}", fmt_sig(report.beta));
    println!("vectors:");
    for v in frame.vectors() {
        println!(
            "  {} {}  ({}°)",
            fmt_fixed(v.x, 9),
            fmt_fixed(v.y, 9),
            fmt_fixed(degrees_mod_180(*v), 6)
        );
    }
    if let Some(path) = svg_path {
        fs::write(path, svg::frame_svg(&frame))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = json {
        let record = FrameRecord {
            m: frame.m(),
            sign: sign.as_ref(),
            frame: frame
                .vectors()
                .iter()
                .map(|v| [round_sig(v.x), round_sig(v.y)])
                .collect(),
            condition: &report,
        };
        write_json(path, &record)?;
    }
    Ok(())
}

/// Rows of a headerless two-column CSV file; blank lines and lines starting
/// with `#` are skipped.
pub fn read_matrix(path: &Path) -> Result<Frame> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("{}: malformed CSV", path.display()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        ensure!(
            record.len() == 2,
            "{}: row {} has {} columns, expected 2",
            path.display(),
            line + 1,
            record.len()
        );
        let parse = |s: &str| -> Result<f64> {
            let v: f64 = s.parse().with_context(|| {
                format!("{}: row {}: not a number: {s:?}", path.display(), line + 1)
            })?;
            ensure!(
                v.is_finite(),
                "{}: row {}: non-finite entry",
                path.display(),
                line + 1
            );
            Ok(v)
        };
        rows.push(Vec2::new(parse(&record[0])?, parse(&record[1])?));
    }
    ensure!(
        rows.len() >= 2,
        "{}: need at least two rows",
        path.display()
    );
    Ok(Frame::new(rows))
}

pub fn beta(path: &Path) -> Result<()> {
    let frame = read_matrix(path)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&condition_number(&frame))?
    );
    Ok(())
}

pub fn harmonic(m: usize) -> Result<()> {
    ensure!(m >= 3, "harmonic frames need m >= 3, got {m}");
    println!(
        "{}",
        serde_json::to_string_pretty(&condition_number(&harmonic_frame(m)))?
    );
    Ok(())
}
