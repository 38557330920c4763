use super::config::{ExactSpec, ExperimentConfig, Resolved};
use super::exact::{error_norms, exact_linear_advdiff, exact_riemann_erf, NormKind};
use super::HarnessError;
use crate::integrator::{cfl_number, run, RecordPolicy, Trajectory};
use crate::model::ModelKind;
use crate::spatial::Grid1D;
use rayon::prelude::*;

pub const DEFAULT_LADDER: [usize; 5] = [40, 80, 160, 320, 640];

/// A finished run together with its resolved setup.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub config: ExperimentConfig,
    pub resolved: Resolved,
    pub trajectory: Trajectory,
}

impl Outcome {
    pub fn centers(&self) -> Vec<f64> {
        self.resolved.disc.grid.centers()
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Outcome, HarnessError> {
    let resolved = config.resolve()?;
    let record = if config.outputs.snapshot_times.is_empty() {
        RecordPolicy::Final
    } else {
        RecordPolicy::Times(config.outputs.snapshot_times.clone())
    };
    let label = if config.name.is_empty() { config.tableau.clone() } else { config.name.clone() };
    let trajectory = run(
        &resolved.initial,
        resolved.scheme,
        &resolved.pair,
        &resolved.disc,
        config.lambda_cfl,
        config.t_final,
        &record,
    )
    .map_err(|e| HarnessError::run(format!("{label} (n = {})", config.grid.n), e))?;
    Ok(Outcome { config: config.clone(), resolved, trajectory })
}

/// Exact `(ρ, j)` at time `t` on the configured grid, if the config pairs
/// with one. The Riemann solution carries no momentum.
pub fn exact_profile(config: &ExperimentConfig, t: f64) -> Option<Result<(Vec<f64>, Option<Vec<f64>>), HarnessError>> {
    let exact = config.exact?;
    let grid = match config.grid() {
        Ok(g) => g,
        Err(e) => return Some(Err(e)),
    };
    let x = grid.centers();
    Some(match exact {
        ExactSpec::LinearAdvdiff => {
            let drift = match config.model() {
                Ok(m) => match m.kind {
                    ModelKind::LinearGt { a_drift } => a_drift,
                    _ => return Some(Err(HarnessError::Unsupported("the linear exact solution needs the linear model".into()))),
                },
                Err(e) => return Some(Err(e)),
            };
            x.iter()
                .map(|&x| exact_linear_advdiff(x, t, drift))
                .collect::<Result<Vec<_>, _>>()
                .map(|p| {
                    let (r, j): (Vec<f64>, Vec<f64>) = p.into_iter().unzip();
                    (r, Some(j))
                })
        }
        ExactSpec::RiemannErf { rho_l, rho_r } => x
            .iter()
            .map(|&x| exact_riemann_erf(x, t, rho_l, rho_r))
            .collect::<Result<Vec<_>, _>>()
            .map(|r| (r, None)),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub dt: f64,
    pub error_rho: f64,
    pub order_rho: Option<f64>,
    pub error_j: f64,
    pub order_j: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub tableau: String,
    pub norm: NormKind,
    pub labels: [String; 2],
    pub rows: Vec<ConvergenceRow>,
}

/// `p = log₂(E_k / E_{k+1})`; the first entry has no order.
pub fn observed_orders(errors: &[f64]) -> Vec<Option<f64>> {
    let mut out = vec![None];
    out.extend(errors.windows(2).map(|w| Some((w[0] / w[1]).log2())));
    out.truncate(errors.len());
    out
}

/// One report per tableau, rows in ladder order. All `(tableau, N)` runs
/// are independent and execute in parallel.
pub fn run_convergence_study(
    config: &ExperimentConfig,
    tableaus: &[&str],
    ladder: &[usize],
) -> Result<Vec<ConvergenceReport>, HarnessError> {
    if config.exact.is_none() {
        return Err(HarnessError::Validation("a convergence study needs an exact solution".into()));
    }
    let jobs: Vec<(usize, usize)> =
        (0..tableaus.len()).flat_map(|t| (0..ladder.len()).map(move |k| (t, k))).collect();
    let mut results = jobs
        .par_iter()
        .map(|&(t, k)| {
            let mut c = config.with_cells(ladder[k]);
            c.tableau = tableaus[t].to_string();
            c.outputs = Default::default();
            let out = run_experiment(&c)?;
            let last = out.trajectory.last();
            let (rho, j) = exact_profile(&c, last.t).expect("checked above")?;
            let er = error_norms(&last.u, &rho, out.resolved.disc.grid.dx, NormKind::LinfRelative)?;
            let ej = match j {
                Some(j) => error_norms(&last.v, &j, out.resolved.disc.grid.dx, NormKind::LinfRelative)?,
                None => f64::NAN,
            };
            Ok(((t, k), (out.trajectory.diagnostics.dt, er, ej)))
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    results.sort_by_key(|r| r.0);
    let mut reports = Vec::new();
    for (t, name) in tableaus.iter().enumerate() {
        let mine: Vec<_> = results.iter().filter(|r| r.0 .0 == t).map(|r| r.1).collect();
        let er: Vec<f64> = mine.iter().map(|m| m.1).collect();
        let ej: Vec<f64> = mine.iter().map(|m| m.2).collect();
        let (or, oj) = (observed_orders(&er), observed_orders(&ej));
        let rows = (0..mine.len())
            .map(|k| ConvergenceRow {
                n: ladder[k],
                dt: mine[k].0,
                error_rho: er[k],
                order_rho: or[k],
                error_j: ej[k],
                order_j: oj[k],
            })
            .collect();
        reports.push(ConvergenceReport {
            tableau: name.to_string(),
            norm: NormKind::LinfRelative,
            labels: ["rho".into(), "j".into()],
            rows,
        });
    }
    Ok(reports)
}

/// Fine-grid solution restricted to the coarse cell centres.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub fine_n: usize,
    /// `λ` the fine run used; see [`run_reference`].
    pub lambda_cfl: f64,
    pub t: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Run `config` on cells of width about `fine_dx` and interpolate the final
/// state back to the coarse grid. If the configured `λ` would put the fine
/// run above CFL number 1, it is reduced to reach 0.9.
pub fn run_reference(config: &ExperimentConfig, fine_dx: f64) -> Result<Reference, HarnessError> {
    if !(fine_dx > 0.0) {
        return Err(HarnessError::Validation(format!("fine_dx must be positive, got {fine_dx}")));
    }
    let coarse = config.grid()?;
    let fine_n = (coarse.length() / fine_dx).round().max(1.0) as usize;
    let mut fine = config.with_cells(fine_n);
    fine.outputs = Default::default();
    fine.lambda_cfl = reference_lambda(&fine)?;
    let out = run_experiment(&fine)?;
    let last = out.trajectory.last();
    let (u, v) = if fine_n == coarse.n {
        (last.u.clone(), last.v.clone())
    } else {
        let fg = out.resolved.disc.grid;
        (restrict_cubic(&fg, &last.u, &coarse), restrict_cubic(&fg, &last.v, &coarse))
    };
    Ok(Reference { fine_n, lambda_cfl: fine.lambda_cfl, t: last.t, u, v })
}

/// The configured `λ`, reduced while the hyperbolic CFL number of the
/// initial step exceeds [`MAX_REFERENCE_CFL`]. Refining at fixed `λ` can
/// raise the discrete speeds in the rarefied regime past what the coarse
/// run needed.
fn reference_lambda(config: &ExperimentConfig) -> Result<f64, HarnessError> {
    let r = config.resolve()?;
    let dx = r.disc.grid.dx;
    let cfl = |l: f64| cfl_number(r.scheme, &r.pair, &r.disc, l * dx, &r.initial.u);
    let mut lambda = config.lambda_cfl;
    let mut c = cfl(lambda);
    if c <= MAX_REFERENCE_CFL {
        return Ok(lambda);
    }
    while c > REDUCED_CFL {
        lambda *= REDUCED_CFL / c;
        c = cfl(lambda);
    }
    Ok(lambda)
}

const MAX_REFERENCE_CFL: f64 = 1.0;
const REDUCED_CFL: f64 = 0.9;

/// Four-point Lagrange interpolation of cell-centred `values` on `fine` at
/// the centres of `coarse`. Stencils are shifted inward at the boundary.
pub fn restrict_cubic(fine: &Grid1D, values: &[f64], coarse: &Grid1D) -> Vec<f64> {
    let n = fine.n as isize;
    coarse
        .centers()
        .iter()
        .map(|&x| {
            let s = (x - fine.x_min) / fine.dx - 0.5;
            let i0 = (s.floor() as isize - 1).clamp(0, n - 4);
            let xs: Vec<f64> = (0..4).map(|k| fine.center((i0 + k) as usize)).collect();
            (0..4)
                .map(|k| {
                    let mut l = 1.0;
                    for m in 0..4 {
                        if m != k {
                            l *= (x - xs[m]) / (xs[k] - xs[m]);
                        }
                    }
                    l * values[(i0 + k as isize) as usize]
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_from_errors() {
        let o = observed_orders(&[1.0, 0.25, 0.125]);
        assert_eq!(o, vec![None, Some(2.0), Some(1.0)]);
        assert_eq!(observed_orders(&[]), Vec::<Option<f64>>::new());
    }

    #[test]
    fn restriction_reproduces_cubics() {
        let fine = Grid1D::new(-1.0, 2.0, 300).unwrap();
        let coarse = Grid1D::new(-1.0, 2.0, 16).unwrap();
        let p = |x: f64| 1.0 - x + 0.5 * x * x * x;
        let f: Vec<f64> = fine.centers().into_iter().map(p).collect();
        let r = restrict_cubic(&fine, &f, &coarse);
        for (x, v) in coarse.centers().iter().zip(&r) {
            assert!((p(*x) - v).abs() < 1e-12);
        }
        assert_eq!(restrict_cubic(&fine, &f, &fine), f);
    }
}
