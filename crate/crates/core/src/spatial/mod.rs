//! Uniform cell-centred grids, ghost cells, WENO upwind flux differences and
//! central stencils for the diffusion terms.

mod central;
mod weno;

pub use central::{
    assemble_diffusion_operator, central_first_derivative, central_second_derivative,
    face_gradients, DiffusionOperator, Side,
};
pub use weno::{upwind_face_fluxes, upwind_flux_divergence};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpatialError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("halo of width {have} is too small; the operator needs {need}")]
    InsufficientHalo { need: usize, have: usize },
    #[error("unsupported order {0}")]
    Order(usize),
    #[error("length mismatch: {0}")]
    Length(String),
}

pub const MIN_CELLS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self, SpatialError> {
        if n < MIN_CELLS {
            return Err(SpatialError::Grid(format!("need at least {MIN_CELLS} cells, got {n}")));
        }
        let dx = (x_max - x_min) / n as f64;
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(SpatialError::Grid(format!("bad bounds [{x_min}, {x_max}]")));
        }
        Ok(Self { x_min, x_max, n, dx })
    }

    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.center(i)).collect()
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }
}

/// A fixed boundary state (density and momentum).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryState {
    pub u: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    Periodic,
    /// `Some(state)` fixes the ghost cells on that side (inflow);
    /// `None` extrapolates the first interior value (outflow).
    InflowOutflow { left: Option<BoundaryState>, right: Option<BoundaryState> },
    Reflecting,
}

/// How a field behaves under ghost filling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    /// `u`: even mirror at walls, `state.u` at inflow.
    Density,
    /// `v`: odd mirror at walls, `state.v` at inflow.
    Momentum,
}

/// Interior values plus a ghost halo of width `g` on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    data: Vec<f64>,
    n: usize,
    g: usize,
}

impl Field {
    pub fn zeros(n: usize, g: usize) -> Self {
        Self { data: vec![0.0; n + 2 * g], n, g }
    }

    pub fn from_interior(values: &[f64], g: usize) -> Self {
        let mut f = Self::zeros(values.len(), g);
        f.interior_mut().copy_from_slice(values);
        f
    }

    /// Evaluate `f` on every entry of `src`, ghosts included.
    pub fn map(src: &Field, f: impl Fn(f64) -> f64) -> Self {
        Self { data: src.data.iter().map(|&v| f(v)).collect(), n: src.n, g: src.g }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn halo(&self) -> usize {
        self.g
    }

    pub fn interior(&self) -> &[f64] {
        &self.data[self.g..self.g + self.n]
    }

    pub fn interior_mut(&mut self) -> &mut [f64] {
        let g = self.g;
        &mut self.data[g..g + self.n]
    }

    /// Whole array including ghosts; index `i + g` holds cell `i`.
    pub fn raw(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: isize) -> f64 {
        self.data[(i + self.g as isize) as usize]
    }

    #[inline]
    pub fn set(&mut self, i: isize, v: f64) {
        let k = (i + self.g as isize) as usize;
        self.data[k] = v;
    }

    /// Overwrite the ghosts with the odd mirror of the interior (used for
    /// flux fields so that the wall flux vanishes).
    pub fn mirror_odd(&mut self) {
        let (n, g) = (self.n as isize, self.g as isize);
        for k in 0..g {
            let l = -self.get(k);
            self.set(-1 - k, l);
            let r = -self.get(n - 1 - k);
            self.set(n + k, r);
        }
    }

    pub fn require_halo(&self, need: usize) -> Result<(), SpatialError> {
        if self.g < need {
            Err(SpatialError::InsufficientHalo { need, have: self.g })
        } else {
            Ok(())
        }
    }
}

/// Populate the halo of `field` according to `bc`.
pub fn fill_ghosts(field: &mut Field, kind: FieldKind, bc: &BoundaryCondition) {
    let (n, g) = (field.n as isize, field.g as isize);
    if n == 0 {
        return;
    }
    match bc {
        BoundaryCondition::Periodic => {
            for k in 0..g {
                let l = field.get((n - 1 - k).rem_euclid(n));
                field.set(-1 - k, l);
                let r = field.get(k.rem_euclid(n));
                field.set(n + k, r);
            }
        }
        BoundaryCondition::Reflecting => {
            let sign = match kind {
                FieldKind::Density => 1.0,
                FieldKind::Momentum => -1.0,
            };
            for k in 0..g {
                let l = sign * field.get(k.min(n - 1));
                field.set(-1 - k, l);
                let r = sign * field.get((n - 1 - k).max(0));
                field.set(n + k, r);
            }
        }
        BoundaryCondition::InflowOutflow { left, right } => {
            let pick = |s: &BoundaryState| match kind {
                FieldKind::Density => s.u,
                FieldKind::Momentum => s.v,
            };
            let lv = left.as_ref().map_or(field.get(0), pick);
            let rv = right.as_ref().map_or(field.get(n - 1), pick);
            for k in 0..g {
                field.set(-1 - k, lv);
                field.set(n + k, rv);
            }
        }
    }
}

/// Total variation of the interior values.
pub fn total_variation(values: &[f64]) -> f64 {
    values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}
