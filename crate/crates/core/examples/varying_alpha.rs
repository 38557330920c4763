//! Space-dependent scaling α(x): smooth and discontinuous profiles.

use imex_relax::harness::{error_norms, preset, run_experiment, run_reference, NormKind};

fn main() {
    for name in ["3a", "3b"] {
        let c = preset(name).unwrap();
        let x = c.grid().unwrap().centers();
        let a: Vec<String> = [0, 50, 90, 100, 110, 150, 199].iter().map(|&i| format!("{:.3}", c.alpha.at(x[i]))).collect();
        println!("{name}: alpha samples [{}]", a.join(", "));
        let out = run_experiment(&c).unwrap();
        let r = run_reference(&c, 0.001).unwrap();
        let l1 = error_norms(&out.trajectory.last().u, &r.u, c.grid().unwrap().dx, NormKind::L1).unwrap();
        println!("  t = {}, L1 against the 1000-cell reference {l1:.3e}", c.t_final);
    }
}
