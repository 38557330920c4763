//! Time stepping: the unified IMEX Runge–Kutta scheme with explicit or
//! implicit diffusion, first-order baselines, and the run loop.

mod baseline;
mod coeffs;
mod imex;
mod run;
mod speeds;

pub use baseline::{step_baseline, BaselineKind, PhiKind};
pub use imex::{step_implicit_diffusion, step_unified};
pub use run::{run, RecordPolicy, RunDiagnostics, Snapshot, Trajectory};
pub use speeds::{characteristic_speeds, characteristic_speeds_with, pair_factors, SpeedKind};

use crate::linalg::LinalgError;
use crate::model::{equilibrium, ModelError, RelaxationModel, ScalingParams};
use crate::spatial::{fill_ghosts, BoundaryCondition, Field, FieldKind, Grid1D, SpatialError};
use crate::tableaux::ImexPair;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegratorError {
    #[error("numerical blow-up at t = {t} (step {step})")]
    BlowUp { t: f64, step: usize },
    #[error("invalid setup: {0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Spatial(#[from] SpatialError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("step {step} at t = {t} failed: {source}")]
    Step { t: f64, step: usize, source: Box<IntegratorError> },
}

impl IntegratorError {
    pub fn is_blow_up(&self) -> bool {
        match self {
            IntegratorError::BlowUp { .. } => true,
            IntegratorError::Step { source, .. } => source.is_blow_up(),
            _ => false,
        }
    }
}

/// Scheme family used by [`run`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeVariant {
    UnifiedExplicitDiffusion,
    ImplicitDiffusion,
    BaselineAdditive,
    BaselinePartitioned,
    BaselineHybrid(PhiKind),
}

impl SchemeVariant {
    pub fn baseline(&self) -> Option<BaselineKind> {
        match *self {
            SchemeVariant::BaselineAdditive => Some(BaselineKind::Additive),
            SchemeVariant::BaselinePartitioned => Some(BaselineKind::Partitioned),
            SchemeVariant::BaselineHybrid(phi) => Some(BaselineKind::Hybrid(phi)),
            _ => None,
        }
    }
}

/// Spatial orders: WENO reconstruction order and central diffusion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpatialOrders {
    pub weno: usize,
    pub diffusion: usize,
}

impl SpatialOrders {
    /// WENO5 throughout; fourth-order diffusion for third-order pairs and
    /// second-order diffusion otherwise.
    pub fn for_pair(pair: &ImexPair) -> Self {
        let diffusion = if pair.declared_order >= 3 { 4 } else { 2 };
        Self { weno: 5, diffusion }
    }

    pub fn halo(&self) -> usize {
        if self.weno >= 5 {
            3
        } else {
            2
        }
    }
}

/// Everything a step needs besides the state and the pair.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub model: RelaxationModel,
    pub grid: Grid1D,
    pub bc: BoundaryCondition,
    pub scaling: ScalingParams,
    pub orders: SpatialOrders,
    /// Treat `max |u|` above this as blow-up (besides NaN/Inf).
    pub blowup_threshold: Option<f64>,
}

impl Discretization {
    pub fn new(
        model: RelaxationModel,
        grid: Grid1D,
        bc: BoundaryCondition,
        scaling: ScalingParams,
        orders: SpatialOrders,
    ) -> Result<Self, IntegratorError> {
        if scaling.alpha.len() != grid.n {
            return Err(IntegratorError::Invalid(format!(
                "alpha has {} entries for {} cells",
                scaling.alpha.len(),
                grid.n
            )));
        }
        if ![1, 3, 5].contains(&orders.weno) || ![2, 4].contains(&orders.diffusion) {
            return Err(IntegratorError::Invalid(format!("unsupported spatial orders {orders:?}")));
        }
        Ok(Self { model, grid, bc, scaling, orders, blowup_threshold: None })
    }

    pub fn halo(&self) -> usize {
        self.orders.halo()
    }

    pub fn eps(&self) -> f64 {
        self.scaling.epsilon
    }

    pub(crate) fn ghosted(&self, values: &[f64], kind: FieldKind) -> Field {
        let mut f = Field::from_interior(values, self.halo());
        fill_ghosts(&mut f, kind, &self.bc);
        f
    }

    /// Pointwise flux of a ghost-filled state, odd at walls.
    pub(crate) fn flux_field(&self, src: &Field, f: impl Fn(f64) -> f64) -> Field {
        let mut out = Field::map(src, f);
        if matches!(self.bc, BoundaryCondition::Reflecting) {
            out.mirror_odd();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepperState {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub t: f64,
}

impl StepperState {
    pub fn new(u: Vec<f64>, v: Vec<f64>, t: f64) -> Result<Self, IntegratorError> {
        if u.len() != v.len() {
            return Err(IntegratorError::Invalid(format!("u has {} cells, v has {}", u.len(), v.len())));
        }
        Ok(Self { u, v, t })
    }

    /// `u` sampled at the cell centres with `v` at its equilibrium.
    pub fn at_equilibrium(
        model: &RelaxationModel,
        grid: &Grid1D,
        eps: f64,
        u0: impl Fn(f64) -> f64,
    ) -> Result<Self, IntegratorError> {
        let u: Vec<f64> = grid.centers().into_iter().map(u0).collect();
        let v = u.iter().map(|&x| equilibrium(model, x, eps)).collect::<Result<_, _>>()?;
        Ok(Self { u, v, t: 0.0 })
    }

    pub fn is_finite(&self) -> bool {
        self.u.iter().chain(&self.v).all(|x| x.is_finite())
    }
}

/// Per-cell scalar coefficients of each stage, for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct StageContext {
    pub zeta: Vec<f64>,
    /// `kappa[i][cell] = Δt·aᵢᵢ/ε^(1+α)`.
    pub kappa: Vec<Vec<f64>>,
    /// `mu[i][cell] = Δt²aᵢᵢ²ε^(1−α)/(ε^(1+α) + Δt·aᵢᵢ)`, the diffusion
    /// weight of the implicit-diffusion elliptic solve.
    pub mu: Vec<Vec<f64>>,
    pub xi: Vec<f64>,
}

impl StageContext {
    pub fn new(pair: &ImexPair, scaling: &ScalingParams, dt: f64) -> Self {
        let eps = scaling.epsilon;
        let e1: Vec<f64> = scaling.alpha.iter().map(|a| eps.powf(1.0 + a)).collect();
        let nu: Vec<f64> = scaling.alpha.iter().map(|a| eps.powf(1.0 - a)).collect();
        let diag: Vec<f64> = (0..pair.stages()).map(|i| pair.implicit().a(i, i)).collect();
        Self {
            zeta: e1.iter().map(|e| e / dt).collect(),
            kappa: diag.iter().map(|a| e1.iter().map(|e| dt * a / e).collect()).collect(),
            mu: diag
                .iter()
                .map(|a| e1.iter().zip(&nu).map(|(e, n)| dt * dt * a * a * n / (e + dt * a)).collect())
                .collect(),
            xi: e1.iter().map(|e| dt / (e + dt)).collect(),
        }
    }
}

/// Hyperbolic CFL number `Δt·λ/dx` of one step from `u`, where `λ` is the
/// LLF speed bound the scheme would use.
pub fn cfl_number(scheme: SchemeVariant, pair: &ImexPair, disc: &Discretization, dt: f64, u: &[f64]) -> f64 {
    let kind = if scheme.baseline().is_some() { SpeedKind::FirstOrder } else { SpeedKind::GeneralPair(pair) };
    imex::llf_bound(kind, disc, dt, u) * dt / disc.grid.dx
}

/// One step of the chosen scheme.
pub fn step(
    state: &StepperState,
    scheme: SchemeVariant,
    pair: &ImexPair,
    disc: &Discretization,
    dt: f64,
) -> Result<StepperState, IntegratorError> {
    Ok(step_with_stats(state, scheme, pair, disc, dt)?.0)
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct StepStats {
    pub picard: usize,
    pub speed: f64,
}

pub(crate) fn step_with_stats(
    state: &StepperState,
    scheme: SchemeVariant,
    pair: &ImexPair,
    disc: &Discretization,
    dt: f64,
) -> Result<(StepperState, StepStats), IntegratorError> {
    match scheme {
        SchemeVariant::UnifiedExplicitDiffusion => imex::imex_step(state, pair, disc, dt, false),
        SchemeVariant::ImplicitDiffusion => imex::imex_step(state, pair, disc, dt, true),
        _ => baseline::baseline_step(state, scheme.baseline().unwrap(), disc, dt),
    }
}
