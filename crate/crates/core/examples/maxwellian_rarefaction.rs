//! Nonlinear model from two equilibrium states, rarefied and parabolic
//! regimes, against a finer same-scheme reference.

use imex_relax::harness::{error_norms, preset, run_experiment, run_reference, NormKind};

fn main() {
    for name in ["2a-short", "2a-short-rarefied"] {
        let c = preset(name).unwrap();
        let out = run_experiment(&c).unwrap();
        let r = run_reference(&c, 0.04).unwrap();
        let l1 = error_norms(&out.trajectory.last().u, &r.u, c.grid().unwrap().dx, NormKind::L1).unwrap();
        println!("{name}: eps = {}, L1 against {} cells = {l1:.3e}", c.epsilon, r.fine_n);
    }
}
