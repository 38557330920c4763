//! Square wave under reflecting walls across the scaling regimes.

use imex_relax::harness::{preset, run_experiment};

fn main() {
    for name in ["2b-rarefied", "2b-alpha0.5", "2b-alpha0.75"] {
        let c = preset(name).unwrap();
        let out = run_experiment(&c).unwrap();
        let u = &out.trajectory.last().u;
        let x = out.centers();
        let (lo, hi) = u.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        let peak = x[u.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0];
        let mass: f64 = u.iter().sum::<f64>() * c.grid().unwrap().dx;
        println!("{name}: t = {}, u in [{lo:.4}, {hi:.4}], peak at x = {peak:.3}, mass {mass:.6}", c.t_final);
    }
}
