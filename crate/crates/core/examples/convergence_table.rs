//! Temporal convergence on the smooth linear problem with an exact
//! solution, ε = 1e-6 and Δt = Δx/2.

use imex_relax::harness::{preset, run_convergence_study, DEFAULT_LADDER};

fn main() {
    let config = preset("test1").unwrap();
    let reports = run_convergence_study(&config, &["ARS111", "CK222", "BPR343", "BPR442"], &DEFAULT_LADDER).unwrap();
    for r in reports {
        println!("{}", r.tableau);
        for row in r.rows {
            let o = |v: Option<f64>| v.map_or("     -".into(), |v| format!("{v:6.3}"));
            println!(
                "  N={:<4} rho {:.4e} {}   j {:.4e} {}",
                row.n,
                row.error_rho,
                o(row.order_rho),
                row.error_j,
                o(row.order_j)
            );
        }
    }
}
