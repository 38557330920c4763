//! Independent limit-scheme oracles for the ε → 0 behaviour of one step.
#![allow(dead_code)]

use imex_relax::integrator::{
    characteristic_speeds_with, Discretization, SchemeVariant, SpatialOrders, SpeedKind, StepperState,
};
use imex_relax::model::{RelaxationModel, ScalingParams};
use imex_relax::spatial::{fill_ghosts, upwind_face_fluxes, BoundaryCondition, Field, FieldKind, Grid1D};
use imex_relax::tableaux::ImexPair;

pub fn periodic_disc(model: RelaxationModel, pair: &ImexPair, x: (f64, f64), n: usize, eps: f64, alpha: f64) -> Discretization {
    let grid = Grid1D::new(x.0, x.1, n).unwrap();
    let scaling = ScalingParams::uniform(eps, alpha, n).unwrap();
    Discretization::new(model, grid, BoundaryCondition::Periodic, scaling, SpatialOrders::for_pair(pair)).unwrap()
}

/// Dense periodic second-difference matrix of order 2 or 4.
pub fn d2_matrix(n: usize, dx: f64, order: usize) -> Vec<Vec<f64>> {
    let w: Vec<(isize, f64)> = match order {
        2 => vec![(-1, 1.0), (0, -2.0), (1, 1.0)],
        4 => vec![(-2, -1.0 / 12.0), (-1, 16.0 / 12.0), (0, -30.0 / 12.0), (1, 16.0 / 12.0), (2, -1.0 / 12.0)],
        _ => panic!("order {order}"),
    };
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for &(k, c) in &w {
            let j = (i as isize + k).rem_euclid(n as isize) as usize;
            row[j] += c / (dx * dx);
        }
    }
    m
}

pub fn matvec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs())).unwrap();
        m.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            if f != 0.0 {
                for j in k..n {
                    m[i][j] -= f * m[k][j];
                }
                b[i] -= f * b[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / m[i][i];
    }
    x
}

/// The stiff-limit schemes on a periodic grid, sharing only the WENO face
/// flux with the solver.
pub struct LimitOracle<'a> {
    pub pair: &'a ImexPair,
    pub disc: &'a Discretization,
    pub dt: f64,
    /// Coefficient `ε^(1−α)` of the diffusion term.
    pub nu: f64,
    pub lambda: f64,
    d2: Vec<Vec<f64>>,
}

impl<'a> LimitOracle<'a> {
    pub fn new(pair: &'a ImexPair, disc: &'a Discretization, dt: f64, un: &[f64]) -> Self {
        let alpha = disc.scaling.alpha[0];
        let eps = disc.eps();
        let c = un.iter().map(|&u| disc.model.f_prime(u).abs()).fold(0.0, f64::max);
        let pp = un.iter().map(|&u| disc.model.p_prime(u)).fold(0.0, f64::max);
        let (lp, lm) = characteristic_speeds_with(SpeedKind::GeneralPair(pair), dt, eps, alpha, c, pp);
        let d2 = d2_matrix(disc.grid.n, disc.grid.dx, disc.orders.diffusion);
        Self { pair, disc, dt, nu: eps.powf(1.0 - alpha), lambda: lp.abs().max(lm.abs()), d2 }
    }

    /// Upwind approximation of `f(u)ₓ`.
    pub fn df(&self, u: &[f64]) -> Vec<f64> {
        let g = self.disc.halo();
        let mut w = Field::from_interior(u, g);
        fill_ghosts(&mut w, FieldKind::Density, &BoundaryCondition::Periodic);
        let f = Field::map(&w, |x| self.disc.model.f(x));
        let faces = upwind_face_fluxes(&f, Some(&w), self.lambda, self.disc.orders.weno).unwrap();
        faces.windows(2).map(|h| (h[1] - h[0]) / self.disc.grid.dx).collect()
    }

    fn d2p(&self, u: &[f64]) -> Vec<f64> {
        let p: Vec<f64> = u.iter().map(|&x| self.disc.model.p(x)).collect();
        matvec(&self.d2, &p)
    }

    /// Explicit RK `(Ã, b̃)` for `uₜ + f(u)ₓ = ν p(u)ₓₓ`.
    pub fn explicit_step(&self, un: &[f64]) -> Vec<f64> {
        let e = self.pair.explicit();
        let s = self.pair.stages();
        let mut k: Vec<Vec<f64>> = Vec::new();
        for i in 0..s {
            let mut u = un.to_vec();
            for (j, kj) in k.iter().enumerate() {
                for (x, r) in u.iter_mut().zip(kj) {
                    *x += self.dt * e.a(i, j) * r;
                }
            }
            let du = self.df(&u);
            let dd = self.d2p(&u);
            k.push(du.iter().zip(&dd).map(|(a, b)| -a + self.nu * b).collect());
        }
        let mut out = un.to_vec();
        for (j, kj) in k.iter().enumerate() {
            for (x, r) in out.iter_mut().zip(kj) {
                *x += self.dt * e.b()[j] * r;
            }
        }
        out
    }

    /// IMEX RK with the convection explicit and the diffusion implicit.
    /// Requires a linear `p`.
    pub fn imex_step(&self, un: &[f64]) -> Vec<f64> {
        assert!(self.disc.model.p_is_linear());
        let (e, im) = (self.pair.explicit(), self.pair.implicit());
        let s = self.pair.stages();
        let n = un.len();
        let (mut kf, mut kd): (Vec<Vec<f64>>, Vec<Vec<f64>>) = (Vec::new(), Vec::new());
        for i in 0..s {
            let mut rhs = un.to_vec();
            for j in 0..i {
                for c in 0..n {
                    rhs[c] += self.dt * (-e.a(i, j) * kf[j][c] + im.a(i, j) * self.nu * kd[j][c]);
                }
            }
            let aii = im.a(i, i);
            let u = if aii == 0.0 {
                rhs
            } else {
                let m: Vec<Vec<f64>> = (0..n)
                    .map(|r| (0..n).map(|c| (r == c) as u8 as f64 - self.dt * aii * self.nu * self.d2[r][c]).collect())
                    .collect();
                gauss_solve(m, rhs)
            };
            kf.push(self.df(&u));
            kd.push(self.d2p(&u));
        }
        let mut out = un.to_vec();
        for j in 0..s {
            for c in 0..n {
                out[c] += self.dt * (-e.b()[j] * kf[j][c] + im.b()[j] * self.nu * kd[j][c]);
            }
        }
        out
    }
}

pub fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Worst L∞ gap between one solver step and the matching oracle over the
/// builtin pairs, α ∈ {0, 0.5, 1}, both models and both data sets.
pub fn ap_oracle_gaps(eps: f64, n: usize) -> Vec<(String, f64)> {
    use imex_relax::model::{make_linear_gt, make_ruijgrok_wu};
    use imex_relax::tableaux::{builtin, builtin_names};
    let mut out = Vec::new();
    for name in builtin_names() {
        let pair = builtin(name).unwrap();
        for alpha in [0.0, 0.5, 1.0] {
            for (mname, model) in [("linear", make_linear_gt(1.0)), ("rw", make_ruijgrok_wu())] {
                for data in ["smooth", "square"] {
                    let bounds = if data == "smooth" { (-std::f64::consts::PI, std::f64::consts::PI) } else { (-0.5, 0.5) };
                    let disc = periodic_disc(model.clone(), &pair, bounds, n, eps, alpha);
                    let x = disc.grid.centers();
                    let u: Vec<f64> = match data {
                        "smooth" => x.iter().map(|x| 1.0 + 0.5 * x.sin()).collect(),
                        _ => x.iter().map(|x| if x.abs() < 0.125 { 1.0 } else { 0.0 }).collect(),
                    };
                    let v: Vec<f64> = u.iter().map(|&u| model.f(u)).collect();
                    let st = StepperState::new(u.clone(), v, 0.0).unwrap();
                    let dx = disc.grid.dx;
                    let nu = eps.powf(1.0 - alpha);
                    for scheme in [SchemeVariant::UnifiedExplicitDiffusion, SchemeVariant::ImplicitDiffusion] {
                        // the explicit limit needs a parabolic step when ν is O(1)
                        let dt = match scheme {
                            SchemeVariant::UnifiedExplicitDiffusion => 0.5 * dx * (0.5 * dx / nu).min(1.0),
                            _ => 0.5 * dx,
                        };
                        let oracle = LimitOracle::new(&pair, &disc, dt, &u);
                        let got = imex_relax::integrator::step(&st, scheme, &pair, &disc, dt).unwrap();
                        let want = match scheme {
                            SchemeVariant::UnifiedExplicitDiffusion => oracle.explicit_step(&u),
                            _ => oracle.imex_step(&u),
                        };
                        let tag = if scheme == SchemeVariant::ImplicitDiffusion { "ID" } else { "UE" };
                        out.push((format!("{name} {tag} alpha={alpha} {mname} {data}"), linf(&got.u, &want)));
                    }
                }
            }
        }
    }
    out
}
