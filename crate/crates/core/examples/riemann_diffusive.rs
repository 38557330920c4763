//! Riemann problem for the linear model in the diffusive regime compared
//! with the erf solution of the limit equation.

use imex_relax::harness::{error_norms, exact_profile, preset, run_experiment, NormKind};

fn main() {
    for tableau in ["ARS111", "BPR442", "BPR343"] {
        let mut c = preset("1b").unwrap();
        c.tableau = tableau.into();
        let out = run_experiment(&c).unwrap();
        let last = out.trajectory.last();
        let (exact, _) = exact_profile(&c, last.t).unwrap().unwrap();
        let l1 = error_norms(&last.u, &exact, out.resolved.disc.grid.dx, NormKind::L1).unwrap();
        println!("{tableau}: {} steps, L1 error against erf {l1:.3e}", out.trajectory.diagnostics.steps);
    }
    let c = preset("1b").unwrap();
    let out = run_experiment(&c).unwrap();
    let x = out.centers();
    let (exact, _) = exact_profile(&c, 3.0).unwrap().unwrap();
    for i in (35..65).step_by(3) {
        println!("x = {:6.2}  u = {:.5}  erf = {:.5}", x[i], out.trajectory.last().u[i], exact[i]);
    }
}
