use super::HarnessError;
use crate::integrator::{Discretization, PhiKind, SchemeVariant, SpatialOrders, StepperState};
use crate::model::{equilibrium, make_custom, make_linear_gt, make_ruijgrok_wu, RelaxationModel, ScalingParams};
use crate::spatial::{BoundaryCondition, BoundaryState, Grid1D};
use crate::tableaux::{load_pair, ImexPair};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    LinearGt { a_drift: f64 },
    RuijgrokWu,
    Custom { f: String, p: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeSpec {
    Unified,
    ImplicitDiffusion,
    BaselineAdditive,
    BaselinePartitioned,
    BaselineHybridMin,
    BaselineHybridTanh,
}

impl From<SchemeSpec> for SchemeVariant {
    fn from(s: SchemeSpec) -> Self {
        match s {
            SchemeSpec::Unified => SchemeVariant::UnifiedExplicitDiffusion,
            SchemeSpec::ImplicitDiffusion => SchemeVariant::ImplicitDiffusion,
            SchemeSpec::BaselineAdditive => SchemeVariant::BaselineAdditive,
            SchemeSpec::BaselinePartitioned => SchemeVariant::BaselinePartitioned,
            SchemeSpec::BaselineHybridMin => SchemeVariant::BaselineHybrid(PhiKind::MinEps2),
            SchemeSpec::BaselineHybridTanh => SchemeVariant::BaselineHybrid(PhiKind::TanhEps2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BcSpec {
    Periodic,
    Reflecting,
    InflowOutflow {
        #[serde(default)]
        left: Option<BoundaryState>,
        #[serde(default)]
        right: Option<BoundaryState>,
    },
}

impl From<BcSpec> for BoundaryCondition {
    fn from(b: BcSpec) -> Self {
        match b {
            BcSpec::Periodic => BoundaryCondition::Periodic,
            BcSpec::Reflecting => BoundaryCondition::Reflecting,
            BcSpec::InflowOutflow { left, right } => BoundaryCondition::InflowOutflow { left, right },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlphaSpec {
    Constant { value: f64 },
    /// `α₀ + (1 + tanh(20(x + 0.1)))/2`, clipped to `[0, 1]`.
    SmoothTanh { alpha0: f64 },
    /// `left` for `x < 0`, `right` otherwise.
    Step { left: f64, right: f64 },
}

impl AlphaSpec {
    pub fn at(&self, x: f64) -> f64 {
        match *self {
            AlphaSpec::Constant { value } => value,
            AlphaSpec::SmoothTanh { alpha0 } => (alpha0 + 0.5 * (1.0 + (20.0 * (x + 0.1)).tanh())).clamp(0.0, 1.0),
            AlphaSpec::Step { left, right } => {
                if x < 0.0 {
                    left
                } else {
                    right
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentumSpec {
    Zero,
    Equilibrium,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSpec {
    /// `u = sin x` with the first Chapman–Enskog momentum
    /// `v = f(u) − ε^(1−α) p(u)ₓ`.
    Sine,
    Riemann { x0: f64, left: f64, right: f64, momentum: MomentumSpec },
    /// `u = inside` for `|x| < half_width`, `outside` elsewhere, `v = 0`.
    SquareWave { half_width: f64, inside: f64, outside: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExactSpec {
    /// `ρ = e^(−t) sin(x − t)` of the limit equation with drift 1.
    LinearAdvdiff,
    RiemannErf { rho_l: f64, rho_r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpatialSpec {
    pub weno: usize,
    pub diffusion: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub svg: Option<PathBuf>,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    pub model: ModelSpec,
    pub scheme: SchemeSpec,
    pub tableau: String,
    pub grid: GridSpec,
    pub bc: BcSpec,
    pub epsilon: f64,
    pub alpha: AlphaSpec,
    pub lambda_cfl: f64,
    pub t_final: f64,
    pub initial: InitialSpec,
    #[serde(default)]
    pub exact: Option<ExactSpec>,
    /// Overrides the order pairing chosen from the tableau.
    #[serde(default)]
    pub spatial: Option<SpatialSpec>,
    #[serde(default)]
    pub outputs: OutputSpec,
}

/// A validated configuration ready to run.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub pair: ImexPair,
    pub scheme: SchemeVariant,
    pub disc: Discretization,
    pub initial: StepperState,
}

fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::Validation(msg.into())
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let c: Self = serde_json::from_str(text).map_err(|e| invalid(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs always serialize")
    }

    /// Same configuration on `n` cells.
    pub fn with_cells(&self, n: usize) -> Self {
        let mut c = self.clone();
        c.grid.n = n;
        c
    }

    pub fn grid(&self) -> Result<Grid1D, HarnessError> {
        Grid1D::new(self.grid.x_min, self.grid.x_max, self.grid.n).map_err(|e| invalid(e.to_string()))
    }

    pub fn model(&self) -> Result<RelaxationModel, HarnessError> {
        Ok(match &self.model {
            ModelSpec::LinearGt { a_drift } => make_linear_gt(*a_drift),
            ModelSpec::RuijgrokWu => make_ruijgrok_wu(),
            ModelSpec::Custom { f, p } => make_custom(f, p).map_err(|e| invalid(e.to_string()))?,
        })
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        self.grid()?;
        self.model()?;
        load_pair(&self.tableau).map_err(|e| invalid(e.to_string()))?;
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(invalid(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        match self.alpha {
            AlphaSpec::Constant { value: a } | AlphaSpec::SmoothTanh { alpha0: a } => {
                if !(0.0..=1.0).contains(&a) {
                    return Err(invalid(format!("alpha {a} outside [0, 1]")));
                }
            }
            AlphaSpec::Step { left, right } => {
                if !(0.0..=1.0).contains(&left) || !(0.0..=1.0).contains(&right) {
                    return Err(invalid("step alpha values must lie in [0, 1]"));
                }
            }
        }
        if !(self.lambda_cfl > 0.0 && self.lambda_cfl.is_finite()) {
            return Err(invalid(format!("lambda_cfl must be positive, got {}", self.lambda_cfl)));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(invalid(format!("t_final must be nonnegative, got {}", self.t_final)));
        }
        if let Some(s) = self.spatial {
            if ![1, 3, 5].contains(&s.weno) || ![2, 4].contains(&s.diffusion) {
                return Err(invalid(format!("unsupported spatial orders weno {} diffusion {}", s.weno, s.diffusion)));
            }
        }
        if self.outputs.snapshot_times.iter().any(|t| !t.is_finite()) {
            return Err(invalid("snapshot times must be finite"));
        }
        if let InitialSpec::SquareWave { half_width, .. } = self.initial {
            if !(half_width > 0.0) {
                return Err(invalid("square wave half width must be positive"));
            }
        }
        Ok(())
    }

    /// Build the pair, discretization and initial state.
    pub fn resolve(&self) -> Result<Resolved, HarnessError> {
        self.validate()?;
        let pair = load_pair(&self.tableau).map_err(|e| invalid(e.to_string()))?;
        let grid = self.grid()?;
        let model = self.model()?;
        let alpha: Vec<f64> = grid.centers().iter().map(|&x| self.alpha.at(x)).collect();
        let scaling = ScalingParams::new(self.epsilon, alpha).map_err(|e| invalid(e.to_string()))?;
        let orders = match self.spatial {
            Some(s) => SpatialOrders { weno: s.weno, diffusion: s.diffusion },
            None => SpatialOrders::for_pair(&pair),
        };
        let disc = Discretization::new(model, grid, self.bc.into(), scaling, orders)
            .map_err(|e| invalid(e.to_string()))?;
        let initial = initial_state(&self.initial, &disc)?;
        Ok(Resolved { pair, scheme: self.scheme.into(), disc, initial })
    }
}

fn initial_state(spec: &InitialSpec, disc: &Discretization) -> Result<StepperState, HarnessError> {
    let grid = &disc.grid;
    let model = &disc.model;
    let eps = disc.eps();
    let x = grid.centers();
    let eq = |u: f64| equilibrium(model, u, eps).map_err(|e| invalid(e.to_string()));
    let (u, v) = match *spec {
        InitialSpec::Sine => {
            let u: Vec<f64> = x.iter().map(|x| x.sin()).collect();
            // exact p(u)ₓ = p′(u) cos x
            let v = x
                .iter()
                .zip(&disc.scaling.alpha)
                .map(|(x, a)| {
                    let u = x.sin();
                    Ok(eq(u)? - eps.powf(1.0 - a) * model.p_prime(u) * x.cos())
                })
                .collect::<Result<Vec<_>, HarnessError>>()?;
            (u, v)
        }
        InitialSpec::Riemann { x0, left, right, momentum } => {
            let u: Vec<f64> = x.iter().map(|&x| if x < x0 { left } else { right }).collect();
            let v = match momentum {
                MomentumSpec::Zero => vec![0.0; u.len()],
                MomentumSpec::Equilibrium => u.iter().map(|&u| eq(u)).collect::<Result<_, _>>()?,
            };
            (u, v)
        }
        InitialSpec::SquareWave { half_width, inside, outside } => {
            let u: Vec<f64> = x.iter().map(|x| if x.abs() < half_width { inside } else { outside }).collect();
            (u, vec![0.0; x.len()])
        }
    };
    StepperState::new(u, v, 0.0).map_err(|e| invalid(e.to_string()))
}
