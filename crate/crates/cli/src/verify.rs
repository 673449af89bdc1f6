//! Deterministic consistency suites behind `optiframe verify`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use clap::ValueEnum;
use optiframe::constructions::{
    frame_to_polygon, harmonic_frame, optimal_frame_from_sign, optimal_frame_m4,
    optimal_polygon_from_sign, optimal_quadrilateral,
};
use optiframe::cyclotomic::{sign_sum_is_zero, sign_sum_numeric, SignVector};
use optiframe::enumeration::{class_count, enumerate_solution_classes, orbit, EnumerateOptions};
use optiframe::frames::{
    beta_harmonic, beta_min_bound, condition_number, condition_number_tight,
    universal_lower_bounds, Frame,
};
use optiframe::geometry::{diameter, max_abs_projection_sum, perimeter, ratio_r};
use optiframe::oracle::{
    brute_force_diameter, brute_force_solutions, discrepancy_max, sampled_lipschitz,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Class counts for 3 ≤ m ≤ 15.
    Table1,
    /// Condition number of every optimal frame against the closed form.
    Mincond,
    /// The m = 4 frames and quadrilateral.
    Quadrilateral,
    /// Harmonic frame condition numbers for 3 ≤ m ≤ 12.
    Harmonic,
    /// Exact, floating-point and brute-force solution sets.
    Solutions,
    /// Diameter routines on every optimal polygon.
    Diameter,
    /// Sign discrepancy against the projection maximum.
    Discrepancy,
    /// Sampled Lipschitz constants bracket the exact ones.
    Lipschitz,
    /// Every suite above.
    All,
}

#[derive(Debug)]
pub struct VerificationFailed(pub Vec<String>);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} check(s) failed: {}", self.0.len(), self.0.join("; "))
    }
}

impl std::error::Error for VerificationFailed {}

type SuiteBody = fn(&mut Checks);

struct Checks {
    failed: Vec<String>,
}

impl Checks {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        let name = name.into();
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            self.failed.push(name);
        }
    }
}

fn optimal_signs(max_m: usize) -> Vec<SignVector> {
    (3..=max_m)
        .filter(|m: &usize| !m.is_power_of_two())
        .flat_map(|m| enumerate_solution_classes(m, EnumerateOptions::default()).unwrap())
        .map(|c| c.canonical)
        .collect()
}

fn table1(c: &mut Checks) {
    let want = [1, 0, 1, 1, 1, 0, 2, 1, 1, 2, 1, 1, 5];
    for (m, &n) in (3..=15).zip(&want) {
        let got = class_count(m).map(|r| r.count).unwrap_or(usize::MAX);
        c.check(format!("m = {m}: {n} classes"), got == n);
    }
}

fn mincond(c: &mut Checks) {
    let floor = universal_lower_bounds().0;
    for eps in optimal_signs(15) {
        let m = eps.m();
        let beta = condition_number_tight(&optimal_frame_from_sign(&eps).unwrap())
            .unwrap()
            .beta;
        let target = 1.0 / (1.0 - 1.0 / (m as f64 * (PI / (2.0 * m as f64)).sin())).sqrt();
        c.check(
            format!("m = {m} {eps}: β = {beta:.10}"),
            (beta - target).abs() <= 1e-10 && beta >= floor - 1e-9,
        );
    }
}

fn quadrilateral(c: &mut Checks) {
    let b4 = condition_number(&harmonic_frame(4)).beta;
    let b4p = condition_number(&optimal_frame_m4()).beta;
    c.check(
        "β(E_4) = √(2+√2)",
        (b4 - (2.0 + 2f64.sqrt()).sqrt()).abs() <= 1e-12,
    );
    c.check(
        "β(E_4') = √(1+√2/2+√6/2)",
        (b4p - (1.0 + 2f64.sqrt() / 2.0 + 6f64.sqrt() / 2.0).sqrt()).abs() <= 1e-12,
    );
    c.check("β(E_4') < β(E_4)", b4p < b4);
    let want_r = 1.0 / (2.0 + 6f64.sqrt() - 2f64.sqrt());
    let r = ratio_r(&frame_to_polygon(&optimal_frame_m4()).unwrap());
    c.check("r(E_4') = 1/(2+√6−√2)", (r - want_r).abs() <= 1e-12);
    c.check(
        "optimal quadrilateral ratio",
        (ratio_r(&optimal_quadrilateral()) - want_r).abs() <= 1e-12,
    );
}

fn harmonic(c: &mut Checks) {
    for m in 3..=12 {
        let beta = condition_number(&harmonic_frame(m)).beta;
        c.check(
            format!("β(E_{m}) = {beta:.10}"),
            (beta - beta_harmonic(m)).abs() <= 1e-9,
        );
        if m % 2 == 0 && !m.is_power_of_two() {
            c.check(
                format!("β(E_{m}) exceeds the minimum for m = {m}"),
                beta_harmonic(m) > beta_min_bound(m) + 1e-6,
            );
        }
    }
}

fn solutions(c: &mut Checks) {
    for m in 3..=12usize {
        let agree = (0..1u64 << m).all(|i| {
            let eps = SignVector::from_index(m, i);
            sign_sum_is_zero(&eps) == (sign_sum_numeric(&eps) < 1e-9)
        });
        c.check(format!("m = {m}: exact and floating tests agree"), agree);
    }
    for m in 3..=14usize {
        let raw: BTreeSet<SignVector> = brute_force_solutions(m).unwrap().into_iter().collect();
        let orbits: BTreeSet<SignVector> =
            enumerate_solution_classes(m, EnumerateOptions::default())
                .unwrap()
                .iter()
                .flat_map(|k| orbit(&k.canonical))
                .collect();
        c.check(
            format!("m = {m}: brute force equals class orbits"),
            raw == orbits,
        );
    }
}

fn diameter_suite(c: &mut Checks) {
    let mut polygons = vec![optimal_quadrilateral()];
    polygons.extend(
        optimal_signs(15)
            .iter()
            .map(|e| optimal_polygon_from_sign(e).unwrap()),
    );
    for p in &polygons {
        let d = diameter(p);
        let half_proj = max_abs_projection_sum(&p.edges()).unwrap().value / 2.0;
        c.check(
            format!("m = {}: diameter {d:.10}", p.m()),
            (d - brute_force_diameter(p)).abs() <= 1e-12 * d
                && (d - half_proj).abs() <= 1e-9 * perimeter(p),
        );
    }
}

fn discrepancy(c: &mut Checks) {
    for eps in optimal_signs(15) {
        let edges = optimal_polygon_from_sign(&eps).unwrap().edge_set();
        let d = discrepancy_max(&edges).unwrap();
        let p = max_abs_projection_sum(edges.edges()).unwrap().value;
        c.check(
            format!("m = {} {eps}: discrepancy {d:.10}", eps.m()),
            (d - p).abs() <= 1e-10,
        );
    }
}

fn lipschitz(c: &mut Checks) {
    let mut frames: Vec<(String, Frame)> = (3..=15)
        .map(|m| (format!("E_{m}"), harmonic_frame(m)))
        .collect();
    frames.push(("E_4'".into(), optimal_frame_m4()));
    for (name, f) in frames {
        let exact = condition_number_tight(&f).unwrap();
        let s = sampled_lipschitz(&f, 2048, 129);
        c.check(
            format!("{name}: L ≤ L̂ and Û ≤ U"),
            exact.lower <= s.lower + 1e-12 && s.upper <= exact.upper + 1e-12,
        );
    }
}

pub fn run(suite: Suite) -> anyhow::Result<()> {
    let mut c = Checks { failed: Vec::new() };
    let all = suite == Suite::All;
    let suites: [(Suite, SuiteBody); 8] = [
        (Suite::Table1, table1),
        (Suite::Mincond, mincond),
        (Suite::Quadrilateral, quadrilateral),
        (Suite::Harmonic, harmonic),
        (Suite::Solutions, solutions),
        (Suite::Diameter, diameter_suite),
        (Suite::Discrepancy, discrepancy),
        (Suite::Lipschitz, lipschitz),
    ];
    for (s, body) in suites {
        if all || s == suite {
            body(&mut c);
        }
    }
    if c.failed.is_empty() {
        println!("all checks passed");
        Ok(())
    } else {
        Err(VerificationFailed(c.failed).into())
    }
}
