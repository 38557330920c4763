use super::config::*;
use super::exact::{error_norms, NormKind};
use super::output::{convergence_csv, profile_csv, LineChart, Series};
use super::study::{exact_profile, run_convergence_study, run_experiment, run_reference, DEFAULT_LADDER};
use super::HarnessError;
use crate::model::{equilibrium, make_ruijgrok_wu};
use crate::spatial::BoundaryState;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

const NAMES: [&str; 17] = [
    "test1",
    "1a-ars222",
    "1a-bpr442",
    "1b",
    "1b-rarefied",
    "2a",
    "2a-short",
    "2a-long",
    "2a-short-rarefied",
    "2a-long-rarefied",
    "2b",
    "2b-rarefied",
    "2b-alpha0.5",
    "2b-alpha0.75",
    "3a",
    "3b",
    "1a",
];

pub fn preset_names() -> &'static [&'static str] {
    &NAMES
}

pub fn paper_test_ids() -> &'static [&'static str] {
    &["1a", "1b", "2a", "2a-short", "2a-long", "2b", "3a", "3b"]
}

fn base(name: &str, model: ModelSpec, x: (f64, f64), n: usize, bc: BcSpec, eps: f64) -> ExperimentConfig {
    ExperimentConfig {
        name: name.into(),
        model,
        scheme: SchemeSpec::ImplicitDiffusion,
        tableau: "BPR343".into(),
        grid: GridSpec { x_min: x.0, x_max: x.1, n },
        bc,
        epsilon: eps,
        alpha: AlphaSpec::Constant { value: 1.0 },
        lambda_cfl: 0.5,
        t_final: 0.1,
        initial: InitialSpec::Sine,
        exact: None,
        spatial: None,
        outputs: OutputSpec::default(),
    }
}

fn smooth(name: &str, n: usize) -> ExperimentConfig {
    let mut c = base(name, ModelSpec::LinearGt { a_drift: 1.0 }, (-PI, PI), n, BcSpec::Periodic, 1e-6);
    c.exact = Some(ExactSpec::LinearAdvdiff);
    c
}

fn linear_riemann(name: &str, eps: f64) -> ExperimentConfig {
    let bc = BcSpec::InflowOutflow { left: Some(BoundaryState { u: 4.0, v: 4.0 }), right: None };
    let mut c = base(name, ModelSpec::LinearGt { a_drift: 1.0 }, (-10.0, 10.0), 100, bc, eps);
    c.t_final = 3.0;
    c.initial = InitialSpec::Riemann { x0: 0.0, left: 4.0, right: 2.0, momentum: MomentumSpec::Zero };
    if eps <= 1e-4 {
        c.exact = Some(ExactSpec::RiemannErf { rho_l: 4.0, rho_r: 2.0 });
    }
    c
}

fn maxwellian(name: &str, eps: f64, t: f64) -> ExperimentConfig {
    let v_l = equilibrium(&make_ruijgrok_wu(), 1.0, eps).expect("equilibrium of the left state");
    let bc = BcSpec::InflowOutflow { left: Some(BoundaryState { u: 1.0, v: v_l }), right: None };
    let mut c = base(name, ModelSpec::RuijgrokWu, (-10.0, 10.0), 100, bc, eps);
    c.t_final = t;
    c.tableau = "BPR442".into();
    c.initial = InitialSpec::Riemann { x0: 0.0, left: 1.0, right: 2.0, momentum: MomentumSpec::Equilibrium };
    c
}

fn square(name: &str, eps: f64, alpha: AlphaSpec, lambda: f64, t: f64) -> ExperimentConfig {
    let mut c = base(name, ModelSpec::RuijgrokWu, (-0.5, 0.5), 200, BcSpec::Reflecting, eps);
    c.alpha = alpha;
    c.lambda_cfl = lambda;
    c.t_final = t;
    c.initial = InitialSpec::SquareWave { half_width: 0.125, inside: 1.0, outside: 0.0 };
    c
}

/// Named configuration reproducing one benchmark run.
pub fn preset(name: &str) -> Result<ExperimentConfig, HarnessError> {
    let c = match name {
        "test1" => smooth(name, 40),
        "1a" | "1a-bpr442" => {
            let mut c = smooth("1a-bpr442", 40);
            c.tableau = "BPR442".into();
            c.lambda_cfl = 1.0;
            c
        }
        "1a-ars222" => {
            let mut c = smooth(name, 40);
            c.tableau = "ARS222".into();
            c.lambda_cfl = 1.0;
            c
        }
        "1b" => linear_riemann(name, 1e-6),
        "1b-rarefied" => linear_riemann(name, 0.5),
        "2a" | "2a-long" => maxwellian("2a-long", 1e-6, 2.0),
        "2a-short" => maxwellian(name, 1e-6, 0.2),
        "2a-long-rarefied" => maxwellian(name, 0.4, 2.0),
        "2a-short-rarefied" => maxwellian(name, 0.4, 0.2),
        "2b-rarefied" => square(name, 0.7, AlphaSpec::Constant { value: 0.0 }, 0.5, 0.2),
        "2b" | "2b-alpha0.5" => square("2b-alpha0.5", 1e-8, AlphaSpec::Constant { value: 0.5 }, 0.8, 0.5),
        "2b-alpha0.75" => square(name, 1e-8, AlphaSpec::Constant { value: 0.75 }, 0.8, 0.5),
        "3a" => square(name, 1e-8, AlphaSpec::SmoothTanh { alpha0: 1e-6 }, 0.5, 0.05),
        "3b" => square(name, 1e-8, AlphaSpec::Step { left: 0.0, right: 1.0 }, 0.5, 0.18),
        _ => {
            return Err(HarnessError::Validation(format!(
                "unknown preset `{name}`; known: {}",
                NAMES.join(", ")
            )))
        }
    };
    Ok(c)
}

/// Files written by [`run_paper_test`] and one summary line per run.
#[derive(Debug, Clone, Default)]
pub struct PaperTestReport {
    pub id: String,
    pub files: Vec<PathBuf>,
    pub summary: Vec<String>,
}

struct Job {
    preset: &'static str,
    tableaus: &'static [&'static str],
    reference_dx: Option<f64>,
}

fn jobs(id: &str) -> Result<Vec<Job>, HarnessError> {
    let j = |preset, tableaus, reference_dx| Job { preset, tableaus, reference_dx };
    Ok(match id {
        "1a" => vec![j("1a-ars222", &["ARS222"], None), j("1a-bpr442", &["BPR442"], None)],
        "1b" => vec![
            j("1b", &["ARS111", "BPR442", "BPR343"], Some(0.001)),
            j("1b-rarefied", &["ARS111", "BPR442", "BPR343"], Some(0.001)),
        ],
        "2a" | "2a-long" => vec![
            j("2a-long", &["BPR442", "BPR343"], Some(0.04)),
            j("2a-long-rarefied", &["BPR442", "BPR343"], Some(0.04)),
        ],
        "2a-short" => vec![
            j("2a-short", &["BPR442", "BPR343"], Some(0.04)),
            j("2a-short-rarefied", &["BPR442", "BPR343"], Some(0.04)),
        ],
        "2b" => vec![
            j("2b-rarefied", &["BPR343"], Some(0.001)),
            j("2b-alpha0.5", &["BPR343"], Some(0.001)),
            j("2b-alpha0.75", &["BPR343"], Some(0.001)),
        ],
        "3a" => vec![j("3a", &["BPR343"], Some(0.001))],
        "3b" => vec![j("3b", &["BPR343"], Some(0.001))],
        _ => {
            return Err(HarnessError::Validation(format!(
                "unknown test `{id}`; known: {}",
                paper_test_ids().join(", ")
            )))
        }
    })
}

fn write(dir: &Path, name: &str, text: &str, report: &mut PaperTestReport) -> Result<(), HarnessError> {
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    report.files.push(path);
    Ok(())
}

/// Run every configuration of one benchmark and write CSV profiles and SVG
/// figures (plus convergence tables for `1a`) into `out_dir`. References
/// are skipped when `with_reference` is false.
pub fn run_paper_test(id: &str, out_dir: &Path, with_reference: bool) -> Result<PaperTestReport, HarnessError> {
    let jobs = jobs(id)?;
    std::fs::create_dir_all(out_dir)?;
    let mut report = PaperTestReport { id: id.into(), ..Default::default() };
    if id == "1a" {
        let c = preset("test1")?;
        let tabs = ["ARS111", "CK222", "BPR343", "BPR442"];
        let reports = run_convergence_study(&c, &tabs, &DEFAULT_LADDER)?;
        for r in &reports {
            let last = r.rows.last().expect("ladder is not empty");
            report.summary.push(format!(
                "test1 {}: N = {} error_rho = {:.4e} order_rho = {:.4} error_j = {:.4e} order_j = {:.4}",
                r.tableau,
                last.n,
                last.error_rho,
                last.order_rho.unwrap_or(f64::NAN),
                last.error_j,
                last.order_j.unwrap_or(f64::NAN)
            ));
        }
        write(out_dir, "test1_convergence.csv", &convergence_csv(&c, &reports), &mut report)?;
    }
    for job in jobs {
        run_job(&job, out_dir, with_reference, &mut report)?;
    }
    Ok(report)
}

fn run_job(job: &Job, dir: &Path, with_reference: bool, report: &mut PaperTestReport) -> Result<(), HarnessError> {
    let config = preset(job.preset)?;
    let x = config.grid()?.centers();
    let dx = config.grid()?.dx;
    let mut cols: Vec<(String, Vec<f64>)> = vec![("x".into(), x.clone())];
    let mut runs = Vec::new();
    for tab in job.tableaus {
        let mut c = config.clone();
        c.tableau = tab.to_string();
        let out = run_experiment(&c)?;
        let last = out.trajectory.last().clone();
        cols.push((format!("u_{tab}"), last.u.clone()));
        cols.push((format!("v_{tab}"), last.v.clone()));
        runs.push((tab, last, out.trajectory.diagnostics));
    }
    let t = runs[0].1.t;
    let mut meta = vec![
        ("t".to_string(), format!("{t:.10e}")),
        ("dt".to_string(), format!("{:.10e}", runs[0].2.dt)),
        ("steps".to_string(), runs[0].2.steps.to_string()),
    ];
    let mut overlays: Vec<(&str, Vec<f64>, Option<Vec<f64>>)> = Vec::new();
    if let Some(exact) = exact_profile(&config, t) {
        let (r, j) = exact?;
        overlays.push(("exact", r, j));
    }
    if let (Some(fdx), true) = (job.reference_dx, with_reference) {
        let mut c = config.clone();
        c.tableau = job.tableaus.last().expect("jobs name a tableau").to_string();
        let r = run_reference(&c, fdx)?;
        meta.push(("reference".into(), format!("{} with {} cells, lambda_cfl {}", c.tableau, r.fine_n, r.lambda_cfl)));
        overlays.push(("ref", r.u, Some(r.v)));
    }
    for (tab, last, diag) in &runs {
        let mut line = format!("{} {tab}: steps = {} dt = {:.4e}", job.preset, diag.steps, diag.dt);
        for (label, u, _) in &overlays {
            let e = error_norms(&last.u, u, dx, NormKind::L1)?;
            line.push_str(&format!(" L1(u - {label}) = {e:.4e}"));
        }
        for w in &diag.warnings {
            line.push_str(&format!(" [warning: {w}]"));
        }
        report.summary.push(line);
    }
    for (label, u, v) in &overlays {
        cols.push((format!("u_{label}"), u.clone()));
        if let Some(v) = v {
            cols.push((format!("v_{label}"), v.clone()));
        }
    }
    if !matches!(config.alpha, AlphaSpec::Constant { .. }) {
        cols.push(("alpha".into(), x.iter().map(|&x| config.alpha.at(x)).collect()));
    }
    let refs: Vec<(&str, &[f64])> = cols.iter().map(|(n, v)| (n.as_str(), v.as_slice())).collect();
    write(dir, &format!("{}.csv", job.preset), &profile_csv(&config, &meta, &refs), report)?;
    for (var, label) in [("u", "density"), ("v", "momentum")] {
        let mut chart = LineChart::new(&format!("{} {label} at t = {t:.3}", job.preset), "x", var);
        for (tab, last, _) in &runs {
            let y = if var == "u" { &last.u } else { &last.v };
            chart = chart.with(Series::points(tab, &x, y));
        }
        for (l, u, v) in &overlays {
            let y = if var == "u" { Some(u) } else { v.as_ref() };
            if let Some(y) = y {
                chart = chart.with(Series::line(l, &x, y));
            }
        }
        write(dir, &format!("{}_{var}.svg", job.preset), &chart.to_svg(), report)?;
    }
    Ok(())
}
