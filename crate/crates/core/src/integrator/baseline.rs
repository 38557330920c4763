//! First-order implicit-explicit Euler splittings.
//!
//! All three share `uⁿ⁺¹ = uⁿ − Δt vⁿₓ` and differ in the time level of
//! `p(u)ₓ` in the relaxation equation, which is solved pointwise for `vⁿ⁺¹`.

use super::imex::llf_bound;
use super::speeds::SpeedKind;
use super::{Discretization, IntegratorError, StepStats, StepperState};
use crate::spatial::{central_first_derivative, upwind_flux_divergence, Field, FieldKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiKind {
    /// `φ(ε) = min(ε², 1)`
    MinEps2,
    /// `φ(ε) = tanh(ε²)`
    TanhEps2,
}

impl PhiKind {
    pub fn phi(&self, eps: f64) -> f64 {
        match self {
            PhiKind::MinEps2 => (eps * eps).min(1.0),
            PhiKind::TanhEps2 => (eps * eps).tanh(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    /// `p(uⁿ)ₓ`
    Additive,
    /// `p(uⁿ⁺¹)ₓ`
    Partitioned,
    /// `φ p(uⁿ)ₓ + (1 − φ) p(uⁿ⁺¹)ₓ`
    Hybrid(PhiKind),
}

impl BaselineKind {
    /// Weight of the old time level.
    pub fn phi(&self, eps: f64) -> f64 {
        match self {
            BaselineKind::Additive => 1.0,
            BaselineKind::Partitioned => 0.0,
            BaselineKind::Hybrid(k) => k.phi(eps),
        }
    }
}

pub fn step_baseline(
    state: &StepperState,
    kind: BaselineKind,
    disc: &Discretization,
    dt: f64,
) -> Result<StepperState, IntegratorError> {
    Ok(baseline_step(state, kind, disc, dt)?.0)
}

pub(crate) fn baseline_step(
    state: &StepperState,
    kind: BaselineKind,
    disc: &Discretization,
    dt: f64,
) -> Result<(StepperState, StepStats), IntegratorError> {
    let grid = &disc.grid;
    let (n, dx, eps) = (grid.n, grid.dx, disc.eps());
    if state.u.len() != n || state.v.len() != n {
        return Err(IntegratorError::Invalid(format!("state does not match the {n}-cell grid")));
    }
    let model = &disc.model;
    let order = disc.orders;
    let lam = llf_bound(SpeedKind::FirstOrder, disc, dt, &state.u);
    let un = disc.ghosted(&state.u, FieldKind::Density);
    let vn = disc.ghosted(&state.v, FieldKind::Momentum);
    let dv = upwind_flux_divergence(&vn, Some(&un), lam, order.weno, dx)?;
    let u1: Vec<f64> = state.u.iter().zip(&dv).map(|(u, d)| u - dt * d).collect();

    let grad = |f: &Field| -> Result<Vec<f64>, IntegratorError> {
        let p = Field::map(f, |x| model.p(x));
        Ok(central_first_derivative(&p, order.diffusion, dx)?)
    };
    let p_old = grad(&un)?;
    let p_new = grad(&disc.ghosted(&u1, FieldKind::Density))?;
    let phi = kind.phi(eps);
    let v1 = (0..n)
        .map(|c| {
            let a = disc.scaling.alpha[c];
            let zeta = eps.powf(1.0 + a) / dt;
            let nu = eps.powf(1.0 - a);
            let p = phi * p_old[c] + (1.0 - phi) * p_new[c];
            let rhs = (zeta * state.v[c] - nu * p + model.g(u1[c])) / (zeta + 1.0);
            model.relax_solve(rhs, 1.0 / (zeta + 1.0), eps).map_err(IntegratorError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let out = StepperState { u: u1, v: v1, t: state.t + dt };
    Ok((out, StepStats { picard: 0, speed: lam }))
}
