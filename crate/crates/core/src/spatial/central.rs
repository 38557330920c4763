use super::{BoundaryCondition, Field, Grid1D, SpatialError};
use crate::linalg::BandedMatrix;

const D2_ORDER2: [f64; 3] = [1.0, -2.0, 1.0];
const D2_ORDER4: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
// third-order one-sided closures on offsets -1..=3 and -3..=1
const D2_LEFT: [f64; 5] = [11.0 / 12.0, -20.0 / 12.0, 6.0 / 12.0, 4.0 / 12.0, -1.0 / 12.0];
const D2_RIGHT: [f64; 5] = [-1.0 / 12.0, 4.0 / 12.0, 6.0 / 12.0, -20.0 / 12.0, 11.0 / 12.0];

/// First offset and weights (before the 1/dx² factor) of the second
/// difference at cell `i`.
fn d2_stencil(i: usize, n: usize, order: usize, periodic: bool) -> (isize, &'static [f64]) {
    if order == 2 {
        return (-1, &D2_ORDER2);
    }
    if !periodic && i == 0 {
        (-1, &D2_LEFT)
    } else if !periodic && i + 1 == n {
        (-3, &D2_RIGHT)
    } else {
        (-2, &D2_ORDER4)
    }
}

fn check_order(order: usize) -> Result<(), SpatialError> {
    match order {
        2 | 4 => Ok(()),
        o => Err(SpatialError::Order(o)),
    }
}

fn check_coefficients(mu: &[f64], n: usize, scale: Option<&[f64]>) -> Result<(), SpatialError> {
    if mu.len() != n || scale.is_some_and(|s| s.len() != n) {
        return Err(SpatialError::Length(format!("coefficients must have length {n}")));
    }
    if let Some(m) = mu.iter().find(|m| !(**m >= 0.0)) {
        return Err(SpatialError::Grid(format!("diffusion coefficient {m} is negative")));
    }
    Ok(())
}

const GRAD_ORDER2: [f64; 2] = [-1.0, 1.0];
const GRAD_ORDER4: [f64; 4] = [1.0 / 12.0, -15.0 / 12.0, 15.0 / 12.0, -1.0 / 12.0];
// boundary faces chosen so that differences reproduce the D2 closures
const GRAD_LEFT: [f64; 5] = [-10.0 / 12.0, 5.0 / 12.0, 9.0 / 12.0, -5.0 / 12.0, 1.0 / 12.0];
const GRAD_RIGHT: [f64; 5] = [-1.0 / 12.0, 5.0 / 12.0, -9.0 / 12.0, -5.0 / 12.0, 10.0 / 12.0];

/// First cell and weights (before the 1/dx factor) of the gradient at
/// face `k`, which separates cells `k − 1` and `k`.
fn grad_stencil(k: usize, n: usize, order: usize, periodic: bool) -> (isize, &'static [f64]) {
    let k = k as isize;
    if order == 2 {
        (k - 1, &GRAD_ORDER2)
    } else if !periodic && k == 0 {
        (-1, &GRAD_LEFT)
    } else if !periodic && k == n as isize {
        (k - 4, &GRAD_RIGHT)
    } else {
        (k - 2, &GRAD_ORDER4)
    }
}

/// Gradients at the `n + 1` faces whose differences, divided by dx, give
/// [`central_second_derivative`] at the same order and boundary treatment.
pub fn face_gradients(
    field: &Field,
    order: usize,
    bc: &BoundaryCondition,
    dx: f64,
) -> Result<Vec<f64>, SpatialError> {
    check_order(order)?;
    let periodic = matches!(bc, BoundaryCondition::Periodic);
    field.require_halo(if order == 4 && periodic { 2 } else { 1 })?;
    let n = field.len();
    Ok((0..=n)
        .map(|k| {
            let (start, w) = grad_stencil(k, n, order, periodic);
            let s: f64 = w.iter().enumerate().map(|(j, wj)| wj * field.get(start + j as isize)).sum();
            s / dx
        })
        .collect())
}

/// Central second derivative per interior cell. Periodic grids use the
/// interior stencil everywhere; otherwise the fourth-order stencil is
/// replaced by a third-order one-sided formula at the outermost cells, so
/// one ghost layer suffices.
pub fn central_second_derivative(
    field: &Field,
    order: usize,
    bc: &BoundaryCondition,
    dx: f64,
) -> Result<Vec<f64>, SpatialError> {
    check_order(order)?;
    let periodic = matches!(bc, BoundaryCondition::Periodic);
    field.require_halo(if order == 4 && periodic { 2 } else { 1 })?;
    let n = field.len();
    let inv = 1.0 / (dx * dx);
    Ok((0..n)
        .map(|i| {
            let (start, w) = d2_stencil(i, n, order, periodic);
            let base = i as isize + start;
            let s: f64 = w.iter().enumerate().map(|(k, wk)| wk * field.get(base + k as isize)).sum();
            s * inv
        })
        .collect())
}

/// Central first derivative of order 2 or 4 per interior cell.
pub fn central_first_derivative(field: &Field, order: usize, dx: f64) -> Result<Vec<f64>, SpatialError> {
    check_order(order)?;
    field.require_halo(order / 2)?;
    let n = field.len() as isize;
    Ok((0..n)
        .map(|i| {
            if order == 2 {
                (field.get(i + 1) - field.get(i - 1)) / (2.0 * dx)
            } else {
                (field.get(i - 2) - 8.0 * field.get(i - 1) + 8.0 * field.get(i + 1) - field.get(i + 2))
                    / (12.0 * dx)
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Banded representation of `x ↦ x − diag(μ)·D₂(diag(s)·x)` for the
/// unknowns of one interior field. Fixed (inflow) ghost values enter as an
/// affine term, see [`DiffusionOperator::boundary_rhs`].
#[derive(Debug, Clone)]
pub struct DiffusionOperator {
    pub matrix: BandedMatrix,
    boundary: Vec<(usize, Side, f64)>,
}

/// Assemble `I − diag(μ)·D₂` consistent with [`central_second_derivative`]
/// for a density-type field under `bc`.
pub fn assemble_diffusion_operator(
    mu: &[f64],
    order: usize,
    bc: &BoundaryCondition,
    grid: &Grid1D,
) -> Result<DiffusionOperator, SpatialError> {
    DiffusionOperator::assemble(mu, None, order, bc, grid)
}

impl DiffusionOperator {
    /// As [`assemble_diffusion_operator`], with the unknowns additionally
    /// scaled column-wise by `scale` before differencing.
    pub fn assemble(
        mu: &[f64],
        scale: Option<&[f64]>,
        order: usize,
        bc: &BoundaryCondition,
        grid: &Grid1D,
    ) -> Result<Self, SpatialError> {
        check_order(order)?;
        let n = grid.n;
        check_coefficients(mu, n, scale)?;
        let periodic = matches!(bc, BoundaryCondition::Periodic);
        let inv = 1.0 / (grid.dx * grid.dx);
        Self::build(grid, order, bc, scale, |i, out| {
            if mu[i] == 0.0 {
                return;
            }
            let (start, w) = d2_stencil(i, n, order, periodic);
            for (k, wk) in w.iter().enumerate() {
                out.push((i as isize + start + k as isize, -mu[i] * wk * inv));
            }
        })
    }

    /// Conservative form `x ↦ x − Δₓ(μ_f · ∇(diag(s)·x))`, with `mu_faces`
    /// holding one coefficient per face (`n + 1` entries) and the face
    /// gradients of [`face_gradients`]. For uniform μ this coincides with
    /// [`DiffusionOperator::assemble`].
    pub fn assemble_faces(
        mu_faces: &[f64],
        scale: Option<&[f64]>,
        order: usize,
        bc: &BoundaryCondition,
        grid: &Grid1D,
    ) -> Result<Self, SpatialError> {
        check_order(order)?;
        let n = grid.n;
        if mu_faces.len() != n + 1 {
            return Err(SpatialError::Length(format!("face coefficients must have length {}", n + 1)));
        }
        check_coefficients(&mu_faces[1..], n, scale)?;
        check_coefficients(&mu_faces[..n], n, None)?;
        let periodic = matches!(bc, BoundaryCondition::Periodic);
        let inv = 1.0 / (grid.dx * grid.dx);
        Self::build(grid, order, bc, scale, |i, out| {
            for (face, sign) in [(i + 1, -1.0), (i, 1.0)] {
                let m = mu_faces[face];
                if m == 0.0 {
                    continue;
                }
                let (start, w) = grad_stencil(face, n, order, periodic);
                for (k, wk) in w.iter().enumerate() {
                    out.push((start + k as isize, sign * m * wk * inv));
                }
            }
        })
    }

    /// Identity plus the entries produced by `row`, with out-of-range
    /// columns folded according to `bc`.
    fn build(
        grid: &Grid1D,
        order: usize,
        bc: &BoundaryCondition,
        scale: Option<&[f64]>,
        row: impl Fn(usize, &mut Vec<(isize, f64)>),
    ) -> Result<Self, SpatialError> {
        let n = grid.n;
        let periodic = matches!(bc, BoundaryCondition::Periodic);
        let half = if order == 2 { 1 } else if periodic { 2 } else { 3 };
        let mut m = BandedMatrix::zeros(n, half, half);
        let mut boundary = Vec::new();
        let ni = n as isize;
        let mut entries = Vec::new();
        for i in 0..n {
            m.add(i, i, 1.0);
            entries.clear();
            row(i, &mut entries);
            for &(j, c) in &entries {
                let target = if (0..ni).contains(&j) {
                    Some(j)
                } else {
                    let left = j < 0;
                    match bc {
                        BoundaryCondition::Periodic => Some(j.rem_euclid(ni)),
                        BoundaryCondition::Reflecting => Some(if left { -1 - j } else { 2 * ni - 1 - j }),
                        BoundaryCondition::InflowOutflow { left: l, right: r } => {
                            let fixed = if left { l.is_some() } else { r.is_some() };
                            if fixed {
                                boundary.push((i, if left { Side::Left } else { Side::Right }, c));
                                None
                            } else {
                                Some(if left { 0 } else { ni - 1 })
                            }
                        }
                    }
                };
                if let Some(j) = target {
                    let j = j as usize;
                    m.add(i, j, c * scale.map_or(1.0, |s| s[j]));
                }
            }
        }
        Ok(Self { matrix: m, boundary })
    }

    /// Affine part contributed by fixed ghost values (zero unless a side
    /// carries an inflow state).
    pub fn boundary_rhs(&self, left_ghost: f64, right_ghost: f64) -> Vec<f64> {
        let mut b = vec![0.0; self.matrix.dim()];
        for &(i, side, c) in &self.boundary {
            b[i] += c * match side {
                Side::Left => left_ghost,
                Side::Right => right_ghost,
            };
        }
        b
    }

    pub fn has_fixed_ghosts(&self) -> bool {
        !self.boundary.is_empty()
    }

    /// Apply the full affine operator.
    pub fn apply(&self, x: &[f64], left_ghost: f64, right_ghost: f64) -> Vec<f64> {
        let mut y = self.matrix.matvec(x);
        for (yi, bi) in y.iter_mut().zip(self.boundary_rhs(left_ghost, right_ghost)) {
            *yi += bi;
        }
        y
    }
}
