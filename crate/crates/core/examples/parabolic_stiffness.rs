//! The unified variant treats diffusion explicitly and needs Δt ~ Δx² as
//! ε → 0; the implicit-diffusion variant runs at Δt = Δx/2 on every grid.

use imex_relax::harness::{preset, run_experiment, SchemeSpec};

fn stable(n: usize, scheme: SchemeSpec, lambda: f64) -> bool {
    let mut c = preset("1b").unwrap().with_cells(n);
    c.scheme = scheme;
    c.lambda_cfl = lambda;
    c.t_final = 1.0;
    run_experiment(&c).map(|o| o.trajectory.last().u.iter().all(|u| (1.9..=4.1).contains(u))).unwrap_or(false)
}

fn main() {
    for n in [50, 100, 200] {
        let dx = 20.0 / n as f64;
        let (mut lo, mut hi) = (1e-4, 0.5);
        for _ in 0..20 {
            let mid = (lo * hi as f64).sqrt();
            if stable(n, SchemeSpec::Unified, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        println!(
            "N = {n:4}: unified stable up to dt = {:.3e} (dt/dx^2 = {:.3}); implicit diffusion at dt = dx/2 stable: {}",
            lo * dx,
            lo / dx,
            stable(n, SchemeSpec::ImplicitDiffusion, 0.5)
        );
    }
}
