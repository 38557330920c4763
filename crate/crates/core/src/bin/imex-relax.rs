use clap::{Parser, Subcommand};
use imex_relax::harness::{
    convergence_csv, exact_profile, preset, profile_csv, run_convergence_study, run_experiment, run_paper_test,
    ExperimentConfig, HarnessError, LineChart, Series, DEFAULT_LADDER,
};
use imex_relax::tableaux::{check_additional_order, check_order, load_pair, ConditionReport};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "imex-relax", version, about = "IMEX Runge-Kutta solver for 1-D relaxation systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect Butcher tableaux.
    Tableau {
        #[command(subcommand)]
        action: TableauCmd,
    },
    /// Run one experiment described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Convergence study on the smooth linear problem.
    Converge {
        #[arg(long, default_value = "test1")]
        preset: String,
        /// Comma-separated tableau names or files.
        #[arg(long, value_delimiter = ',', default_value = "ARS111,CK222,BPR343,BPR442")]
        tableaus: Vec<String>,
        /// Comma-separated cell counts.
        #[arg(long, value_delimiter = ',')]
        cells: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce one of the benchmark problems.
    PaperTest {
        id: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Skip the fine-grid reference runs.
        #[arg(long)]
        no_reference: bool,
    },
    /// Print a preset as a config file.
    Preset { name: String },
}

#[derive(Subcommand)]
enum TableauCmd {
    /// Check order conditions; exits with 1 if any fails.
    Check {
        tableau: String,
        #[arg(long)]
        order: Option<usize>,
        /// Also check the additional stiff-limit conditions.
        #[arg(long)]
        additional: bool,
    },
}

fn print_conditions(title: &str, r: &[ConditionReport]) -> bool {
    println!("{title}");
    for c in r {
        println!(
            "  {:<18} value {:>+.15e}  expected {:>+.15e}  residual {:.3e}  {}",
            c.condition_id,
            c.value,
            c.expected,
            c.residual,
            if c.satisfied { "ok" } else { "FAIL" }
        );
    }
    r.iter().all(|c| c.satisfied)
}

fn tableau_check(name: &str, order: Option<usize>, additional: bool) -> Result<bool, HarnessError> {
    let bad = |e: imex_relax::tableaux::TableauError| HarnessError::Validation(e.to_string());
    let pair = load_pair(name).map_err(bad)?;
    let class = pair.classify().map_err(bad)?;
    println!("{}: {:?}, {} stages, ISA {}, GSA {}", pair.label(), class, pair.stages(), pair.is_isa(), pair.is_gsa());
    let p = order.unwrap_or(pair.declared_order.min(3));
    let mut ok = print_conditions(&format!("order conditions up to {p}"), &check_order(&pair, p).map_err(bad)?);
    if additional {
        let q = p.min(2);
        ok &= print_conditions(
            &format!("additional conditions up to {q}"),
            &check_additional_order(&pair, q).map_err(bad)?,
        );
    }
    Ok(ok)
}

fn write(path: &PathBuf, text: &str) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn run_config(path: &PathBuf) -> Result<(), HarnessError> {
    let config = ExperimentConfig::load(path)?;
    let out = run_experiment(&config)?;
    let d = &out.trajectory.diagnostics;
    let last = out.trajectory.last();
    println!(
        "{}: t = {} after {} steps, dt = {:.4e}, picard {} total / {} max, {:.3?}",
        if config.name.is_empty() { "run" } else { &config.name },
        last.t,
        d.steps,
        d.dt,
        d.picard_total,
        d.picard_max,
        d.wall_time
    );
    for w in &d.warnings {
        eprintln!("warning: {w}");
    }
    let x = out.centers();
    let mut cols: Vec<(String, Vec<f64>)> = vec![("x".into(), x.clone())];
    for s in &out.trajectory.snapshots[1..out.trajectory.snapshots.len() - 1] {
        cols.push((format!("u_t{}", s.t), s.u.clone()));
        cols.push((format!("v_t{}", s.t), s.v.clone()));
    }
    cols.push(("u".into(), last.u.clone()));
    cols.push(("v".into(), last.v.clone()));
    let mut exact_u = None;
    if let Some(e) = exact_profile(&config, last.t) {
        let (r, j) = e?;
        let dx = out.resolved.disc.grid.dx;
        let l1 = imex_relax::harness::error_norms(&last.u, &r, dx, imex_relax::harness::NormKind::L1)?;
        println!("L1 error of u against the exact solution: {l1:.6e}");
        cols.push(("u_exact".into(), r.clone()));
        if let Some(j) = j {
            cols.push(("v_exact".into(), j));
        }
        exact_u = Some(r);
    }
    if let Some(p) = &config.outputs.csv {
        let meta = vec![("t".to_string(), format!("{:.10e}", last.t)), ("steps".to_string(), d.steps.to_string())];
        let refs: Vec<(&str, &[f64])> = cols.iter().map(|(n, v)| (n.as_str(), v.as_slice())).collect();
        write(p, &profile_csv(&config, &meta, &refs))?;
    }
    if let Some(p) = &config.outputs.svg {
        let mut chart = LineChart::new(&format!("u at t = {:.4}", last.t), "x", "u").with(Series::points("numerical", &x, &last.u));
        if let Some(r) = &exact_u {
            chart = chart.with(Series::line("exact", &x, r));
        }
        write(p, &chart.to_svg())?;
    }
    Ok(())
}

fn converge(name: &str, tableaus: &[String], cells: Option<Vec<usize>>, out: Option<PathBuf>) -> Result<(), HarnessError> {
    let config = preset(name)?;
    let ladder = cells.unwrap_or_else(|| DEFAULT_LADDER.to_vec());
    let tabs: Vec<&str> = tableaus.iter().map(String::as_str).collect();
    let reports = run_convergence_study(&config, &tabs, &ladder)?;
    for r in &reports {
        println!("{} ({} norm)", r.tableau, r.norm.label());
        println!("  {:>5} {:>11} {:>11} {:>8} {:>11} {:>8}", "N", "dt", "err rho", "order", "err j", "order");
        let o = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
        for row in &r.rows {
            println!(
                "  {:>5} {:>11.4e} {:>11.4e} {:>8} {:>11.4e} {:>8}",
                row.n,
                row.dt,
                row.error_rho,
                o(row.order_rho),
                row.error_j,
                o(row.order_j)
            );
        }
    }
    if let Some(dir) = out {
        write(&dir.join(format!("{name}_convergence.csv")), &convergence_csv(&config, &reports))?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.command {
        Command::Tableau { action: TableauCmd::Check { tableau, order, additional } } => {
            let ok = tableau_check(&tableau, order, additional)?;
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Run { config } => run_config(&config)?,
        Command::Converge { preset, tableaus, cells, out } => converge(&preset, &tableaus, cells, out)?,
        Command::PaperTest { id, out, no_reference } => {
            let report = run_paper_test(&id, &out, !no_reference)?;
            for line in &report.summary {
                println!("{line}");
            }
            for f in &report.files {
                println!("wrote {}", f.display());
            }
        }
        Command::Preset { name } => println!("{}", preset(&name)?.to_json()),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
