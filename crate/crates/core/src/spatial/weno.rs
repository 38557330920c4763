use super::{Field, SpatialError};

const WENO_EPS: f64 = 1e-6;

#[inline]
fn weight(d: f64, beta: f64) -> f64 {
    let t = WENO_EPS + beta;
    d / (t * t)
}

/// Fifth-order reconstruction at the right face of `c` from `a b c d e`.
#[inline]
fn weno5(a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    let q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
    let q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
    let q2 = (2.0 * c + 5.0 * d - e) / 6.0;
    let b0 = 13.0 / 12.0 * (a - 2.0 * b + c).powi(2) + 0.25 * (a - 4.0 * b + 3.0 * c).powi(2);
    let b1 = 13.0 / 12.0 * (b - 2.0 * c + d).powi(2) + 0.25 * (b - d).powi(2);
    let b2 = 13.0 / 12.0 * (c - 2.0 * d + e).powi(2) + 0.25 * (3.0 * c - 4.0 * d + e).powi(2);
    let (w0, w1, w2) = (weight(0.1, b0), weight(0.6, b1), weight(0.3, b2));
    (w0 * q0 + w1 * q1 + w2 * q2) / (w0 + w1 + w2)
}

/// Third-order reconstruction at the right face of `b` from `a b c`.
#[inline]
fn weno3(a: f64, b: f64, c: f64) -> f64 {
    let q0 = 0.5 * (3.0 * b - a);
    let q1 = 0.5 * (b + c);
    let w0 = weight(1.0 / 3.0, (b - a).powi(2));
    let w1 = weight(2.0 / 3.0, (c - b).powi(2));
    (w0 * q0 + w1 * q1) / (w0 + w1)
}

/// Conservative approximation of `∂ₓF` per interior cell, the difference
/// of [`upwind_face_fluxes`] divided by `dx`.
pub fn upwind_flux_divergence(
    flux: &Field,
    state: Option<&Field>,
    speed_bound: f64,
    order: usize,
    dx: f64,
) -> Result<Vec<f64>, SpatialError> {
    let faces = upwind_face_fluxes(flux, state, speed_bound, order)?;
    Ok(faces.windows(2).map(|f| (f[1] - f[0]) / dx).collect())
}

/// Numerical fluxes at the `n + 1` faces; face `k` sits between cells
/// `k − 1` and `k`.
///
/// Lax–Friedrichs splitting `F± = (F ± λw)/2` with `w = state` (or `w = 0`
/// when `state` is `None`); each signed part is reconstructed from its
/// upwind side with WENO-JS of the given order (1 is plain upwinding).
pub fn upwind_face_fluxes(
    flux: &Field,
    state: Option<&Field>,
    speed_bound: f64,
    order: usize,
) -> Result<Vec<f64>, SpatialError> {
    let need = match order {
        1 => 1,
        3 => 2,
        5 => 3,
        o => return Err(SpatialError::Order(o)),
    };
    flux.require_halo(need)?;
    if let Some(w) = state {
        w.require_halo(need)?;
        if w.len() != flux.len() {
            return Err(SpatialError::Length(format!(
                "flux has {} cells, state has {}",
                flux.len(),
                w.len()
            )));
        }
    }
    let n = flux.len() as isize;
    let lam = speed_bound;
    let plus = |i: isize| {
        let w = state.map_or(0.0, |w| w.get(i));
        0.5 * (flux.get(i) + lam * w)
    };
    let minus = |i: isize| {
        let w = state.map_or(0.0, |w| w.get(i));
        0.5 * (flux.get(i) - lam * w)
    };
    let face = |k: isize| -> f64 {
        let i = k - 1;
        match order {
            1 => plus(i) + minus(i + 1),
            3 => weno3(plus(i - 1), plus(i), plus(i + 1)) + weno3(minus(i + 2), minus(i + 1), minus(i)),
            _ => {
                weno5(plus(i - 2), plus(i - 1), plus(i), plus(i + 1), plus(i + 2))
                    + weno5(minus(i + 3), minus(i + 2), minus(i + 1), minus(i), minus(i - 1))
            }
        }
    };
    Ok((0..=n).map(face).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spatial::{fill_ghosts, BoundaryCondition, FieldKind, Grid1D};
    use std::f64::consts::PI;

    fn periodic(values: &[f64], g: usize) -> Field {
        let mut f = Field::from_interior(values, g);
        fill_ghosts(&mut f, FieldKind::Density, &BoundaryCondition::Periodic);
        f
    }

    #[test]
    fn constant_flux() {
        let f = periodic(&[2.5; 16], 3);
        for order in [1, 3, 5] {
            let d = upwind_flux_divergence(&f, Some(&f), 1.3, order, 0.1).unwrap();
            assert!(d.iter().all(|v| v.abs() < 1e-13));
        }
    }

    #[test]
    fn exact_on_linear_data() {
        let grid = Grid1D::new(0.0, 1.0, 20).unwrap();
        let mut w = Field::zeros(20, 3);
        for i in -3..23 {
            w.set(i, grid.x_min + (i as f64 + 0.5) * grid.dx);
        }
        for order in [1, 3, 5] {
            let d = upwind_flux_divergence(&w, Some(&w), 1.0, order, grid.dx).unwrap();
            assert!(d.iter().all(|v| (v - 1.0).abs() < 1e-12), "order {order}: {d:?}");
        }
    }

    fn sin_error(n: usize, order: usize) -> f64 {
        let grid = Grid1D::new(0.0, 2.0 * PI, n).unwrap();
        let w: Vec<f64> = grid.centers().iter().map(|x| x.sin()).collect();
        let f = periodic(&w, 3);
        let d = upwind_flux_divergence(&f, Some(&f), 1.0, order, grid.dx).unwrap();
        grid.centers()
            .iter()
            .zip(&d)
            .map(|(x, v)| (v - x.cos()).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn weno5_refinement_ratio() {
        let r = sin_error(80, 5) / sin_error(160, 5);
        assert!((24.0..=40.0).contains(&r), "ratio {r}");
    }

    #[test]
    fn periodic_conservation() {
        let vals: Vec<f64> = (0..32).map(|i| ((i * 37) % 11) as f64 - 3.0).collect();
        let f = periodic(&vals, 3);
        for order in [1, 3, 5] {
            let d = upwind_flux_divergence(&f, Some(&f), 2.0, order, 0.05).unwrap();
            let s: f64 = d.iter().sum::<f64>() * 0.05;
            assert!(s.abs() < 1e-12, "{s}");
        }
    }

    #[test]
    fn halo_checked() {
        let f = Field::from_interior(&[1.0; 10], 2);
        assert!(matches!(
            upwind_flux_divergence(&f, None, 1.0, 5, 0.1),
            Err(SpatialError::InsufficientHalo { need: 3, have: 2 })
        ));
        assert!(matches!(upwind_flux_divergence(&f, None, 1.0, 4, 0.1), Err(SpatialError::Order(4))));
    }
}
