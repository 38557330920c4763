use super::{step_with_stats, Discretization, IntegratorError, SchemeVariant, StepperState};
use crate::tableaux::ImexPair;
use std::time::{Duration, Instant};

/// Which states a [`run`] keeps besides the initial one.
#[derive(Debug, Clone, PartialEq)]
pub enum RecordPolicy {
    Final,
    /// The final state plus the given intermediate times. Steps are shortened
    /// to land on each of them exactly.
    Times(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunDiagnostics {
    pub steps: usize,
    pub dt: f64,
    /// Largest LLF speed bound used by any step.
    pub max_speed: f64,
    pub picard_total: usize,
    pub picard_max: usize,
    pub wall_time: Duration,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    pub diagnostics: RunDiagnostics,
}

impl Trajectory {
    pub fn last(&self) -> &Snapshot {
        self.snapshots.last().expect("a trajectory always holds the initial state")
    }
}

fn snapshot(s: &StepperState) -> Snapshot {
    Snapshot { t: s.t, u: s.u.clone(), v: s.v.clone() }
}

/// Integrate from `initial.t` to `t_final` with `Δt = lambda_cfl·dx`.
pub fn run(
    initial: &StepperState,
    scheme: SchemeVariant,
    pair: &ImexPair,
    disc: &Discretization,
    lambda_cfl: f64,
    t_final: f64,
    record: &RecordPolicy,
) -> Result<Trajectory, IntegratorError> {
    let start = Instant::now();
    if !(lambda_cfl > 0.0 && lambda_cfl.is_finite()) {
        return Err(IntegratorError::Invalid(format!("lambda_cfl must be positive, got {lambda_cfl}")));
    }
    let t0 = initial.t;
    if !(t_final >= t0) {
        return Err(IntegratorError::Invalid(format!("t_final = {t_final} precedes t0 = {t0}")));
    }
    if scheme.baseline().is_some() && pair.stages() > 2 {
        return Err(IntegratorError::Invalid(format!(
            "baselines are first order; {} has {} stages",
            pair.name,
            pair.stages()
        )));
    }
    if let Some(bad) = initial.u.iter().find(|&&u| !(disc.model.p_prime(u) > 0.0)) {
        return Err(IntegratorError::Invalid(format!("p'(u) must be positive, fails at u = {bad}")));
    }
    let dt = lambda_cfl * disc.grid.dx;
    let mut diag = RunDiagnostics { dt, ..Default::default() };
    if scheme.baseline().is_none() && !pair.is_gsa() && disc.eps() < 1e-6 {
        diag.warnings.push(format!(
            "{} is not globally stiffly accurate; the scheme is not guaranteed to be asymptotic preserving at eps = {:e}",
            pair.name,
            disc.eps()
        ));
    }
    let mut stops: Vec<f64> = match record {
        RecordPolicy::Final => vec![],
        RecordPolicy::Times(ts) => ts.iter().copied().filter(|&t| t > t0 && t < t_final).collect(),
    };
    stops.sort_by(f64::total_cmp);
    stops.dedup();
    stops.push(t_final);

    let mut snaps = vec![snapshot(initial)];
    let mut state = initial.clone();
    for &stop in &stops {
        // steps of dt from the segment start; the last one lands on `stop`
        let seg0 = state.t;
        let span = stop - seg0;
        if span <= 0.0 {
            continue;
        }
        let k = ((span / dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        for j in 0..k {
            let h = if j + 1 == k { stop - state.t } else { dt };
            let (mut next, stats) = step_with_stats(&state, scheme, pair, disc, h).map_err(|e| match e {
                IntegratorError::BlowUp { .. } => e,
                other => IntegratorError::Step { t: state.t, step: diag.steps + 1, source: Box::new(other) },
            })?;
            diag.steps += 1;
            next.t = if j + 1 == k { stop } else { seg0 + (j + 1) as f64 * dt };
            let too_big = disc
                .blowup_threshold
                .is_some_and(|th| next.u.iter().any(|x| x.abs() > th));
            if !next.is_finite() || too_big {
                return Err(IntegratorError::BlowUp { t: next.t, step: diag.steps });
            }
            diag.max_speed = diag.max_speed.max(stats.speed);
            diag.picard_total += stats.picard;
            diag.picard_max = diag.picard_max.max(stats.picard);
            state = next;
        }
        snaps.push(snapshot(&state));
    }
    diag.wall_time = start.elapsed();
    Ok(Trajectory { snapshots: snaps, diagnostics: diag })
}
