//! Driving the integrator directly: build a discretization, inspect the
//! discrete characteristic speeds, and take steps by hand.

use imex_relax::integrator::{
    characteristic_speeds, step, Discretization, SchemeVariant, SpatialOrders, SpeedKind, StepperState,
};
use imex_relax::model::{make_ruijgrok_wu, ScalingParams};
use imex_relax::spatial::{BoundaryCondition, Grid1D};
use imex_relax::tableaux::builtin;

fn main() {
    let pair = builtin("BPR343").unwrap();
    for eps in [1.0, 1e-2, 1e-6] {
        let (lp, lm) = characteristic_speeds(SpeedKind::GeneralPair(&pair), 0.01, eps, 1.0, 1.0);
        println!("eps = {eps:e}: speeds ({lp:.4}, {lm:.4})");
    }

    let n = 64;
    let grid = Grid1D::new(0.0, 1.0, n).unwrap();
    let model = make_ruijgrok_wu();
    let scaling = ScalingParams::uniform(1e-3, 0.5, n).unwrap();
    let disc = Discretization::new(model, grid, BoundaryCondition::Periodic, scaling, SpatialOrders::for_pair(&pair)).unwrap();
    let u0 = |x: f64| 1.0 + 0.5 * (2.0 * std::f64::consts::PI * x).sin();
    let mut state = StepperState::at_equilibrium(&disc.model, &grid, 1e-3, u0).unwrap();
    let dt = 0.4 * grid.dx;
    for _ in 0..50 {
        state = step(&state, SchemeVariant::ImplicitDiffusion, &pair, &disc, dt).unwrap();
    }
    let mass: f64 = state.u.iter().sum::<f64>() * grid.dx;
    println!("t = {:.4}: mass {mass:.14}, u range [{:.4}, {:.4}]", state.t,
        state.u.iter().cloned().fold(f64::MAX, f64::min), state.u.iter().cloned().fold(f64::MIN, f64::max));
}
