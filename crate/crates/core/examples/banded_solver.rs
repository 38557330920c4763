//! Banded and cyclic linear solves plus the implicit diffusion operator.

use imex_relax::linalg::{banded_solve, BandedMatrix};
use imex_relax::spatial::{assemble_diffusion_operator, BoundaryCondition, Grid1D};

fn main() {
    // cyclic tridiagonal system
    let n = 8;
    let mut m = BandedMatrix::zeros(n, 1, 1);
    for i in 0..n {
        m.add(i, i, 4.0);
        m.add(i, (i + 1) % n, -1.0);
        m.add(i, (i + n - 1) % n, -1.0);
    }
    let x = banded_solve(&m, &vec![2.0; n]).unwrap();
    println!("cyclic: cyclic = {}, x = {:?}", m.is_cyclic(), x);

    // I − μD₂ with the fourth-order stencil under periodic walls
    let grid = Grid1D::new(0.0, 1.0, 32).unwrap();
    let op = assemble_diffusion_operator(&vec![1e-3; 32], 4, &BoundaryCondition::Periodic, &grid).unwrap();
    let (kl, ku) = op.matrix.bandwidths();
    let rhs: Vec<f64> = grid.centers().iter().map(|x| (2.0 * std::f64::consts::PI * x).sin()).collect();
    let sol = op.matrix.factor().unwrap().solve(&rhs).unwrap();
    let damp = sol[8] / rhs[8];
    let want = 1.0 / (1.0 + 1e-3 * (2.0 * std::f64::consts::PI).powi(2));
    println!("diffusion operator bandwidths ({kl}, {ku}); damping {damp:.6} vs continuous {want:.6}");
}
