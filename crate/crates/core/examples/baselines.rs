//! First-order additive, partitioned and hybrid IMEX Euler baselines
//! against the unified first-order pair.

use imex_relax::harness::{error_norms, exact_profile, preset, run_experiment, NormKind, SchemeSpec};

fn main() {
    for eps in [0.5, 1e-2, 1e-6] {
        println!("eps = {eps}");
        for scheme in [
            SchemeSpec::BaselineAdditive,
            SchemeSpec::BaselinePartitioned,
            SchemeSpec::BaselineHybridMin,
            SchemeSpec::BaselineHybridTanh,
            SchemeSpec::ImplicitDiffusion,
        ] {
            let mut c = preset("test1").unwrap().with_cells(160);
            c.epsilon = eps;
            c.scheme = scheme;
            c.tableau = "ARS111".into();
            let out = run_experiment(&c).unwrap();
            let last = out.trajectory.last();
            let (rho, _) = exact_profile(&c, last.t).unwrap().unwrap();
            let e = error_norms(&last.u, &rho, out.resolved.disc.grid.dx, NormKind::LinfRelative).unwrap();
            println!("  {scheme:?}: relative error against the limit solution {e:.3e}");
        }
    }
}
