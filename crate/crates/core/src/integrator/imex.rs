use super::coeffs::{Extended, Sites};
use super::speeds::{speed_bound, SpeedKind};
use super::{Discretization, IntegratorError, StepStats, StepperState};
use crate::linalg::{fixed_point, FIXED_POINT_MAX_ITER, FIXED_POINT_TOL};
use crate::model::SourceKind;
use crate::spatial::{
    central_first_derivative, face_gradients, upwind_face_fluxes, BoundaryCondition, DiffusionOperator,
    FieldKind,
};
use crate::tableaux::ImexPair;

/// One step of the unified scheme with explicit diffusion.
pub fn step_unified(
    state: &StepperState,
    pair: &ImexPair,
    disc: &Discretization,
    dt: f64,
) -> Result<StepperState, IntegratorError> {
    Ok(imex_step(state, pair, disc, dt, false)?.0)
}

/// One step of the variant whose stage diffusion is solved implicitly.
pub fn step_implicit_diffusion(
    state: &StepperState,
    pair: &ImexPair,
    disc: &Discretization,
    dt: f64,
) -> Result<StepperState, IntegratorError> {
    Ok(imex_step(state, pair, disc, dt, true)?.0)
}

/// LLF speed bound for a step from `u`.
pub(crate) fn llf_bound(kind: SpeedKind, disc: &Discretization, dt: f64, u: &[f64]) -> f64 {
    let model = &disc.model;
    let field = disc.ghosted(u, FieldKind::Density);
    let (mut c, mut pp) = (0.0f64, 0.0f64);
    for &x in field.raw() {
        c = c.max(model.f_prime(x).abs());
        pp = pp.max(model.p_prime(x));
    }
    let mut alphas = disc.scaling.alpha.clone();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    alphas.iter().map(|&a| speed_bound(kind, dt, disc.eps(), a, c, pp)).fold(0.0, f64::max)
}

/// Face-to-cell difference `uⁿ − (Δt/dx)(H_{i+1} − H_i)`.
fn conservative_update(un: &[f64], faces: &[f64], dt: f64, dx: f64) -> Vec<f64> {
    let r = dt / dx;
    un.iter().zip(faces.windows(2)).map(|(u, h)| u - r * (h[1] - h[0])).collect()
}

/// Data of a completed stage.
struct Stage {
    g_cell: Vec<f64>,
    g_face: Vec<f64>,
    h_cell: Vec<f64>,
    h_face: Vec<f64>,
    p_cell: Vec<f64>,
    p_face: Vec<f64>,
}

pub(crate) fn imex_step(
    state: &StepperState,
    pair: &ImexPair,
    disc: &Discretization,
    dt: f64,
    implicit_p: bool,
) -> Result<(StepperState, StepStats), IntegratorError> {
    let grid = &disc.grid;
    let (n, dx, eps) = (grid.n, grid.dx, disc.eps());
    if state.u.len() != n || state.v.len() != n {
        return Err(IntegratorError::Invalid(format!("state does not match the {n}-cell grid")));
    }
    if !(dt > 0.0) {
        return Err(IntegratorError::Invalid(format!("time step must be positive, got {dt}")));
    }
    let model = &disc.model;
    let bc = &disc.bc;
    let orders = disc.orders;
    let quadratic = matches!(model.h_kind(eps), SourceKind::QuadraticInV { .. });
    let ext = Extended::new(pair);
    let s = ext.s;
    let periodic = matches!(bc, BoundaryCondition::Periodic);
    let sites = Sites::new(&ext, eps, &disc.scaling.alpha, dt, implicit_p, periodic);
    let lam = llf_bound(SpeedKind::GeneralPair(pair), disc, dt, &state.u);

    let un = disc.ghosted(&state.u, FieldKind::Density);
    let vn = disc.ghosted(&state.v, FieldKind::Momentum);
    let fv = upwind_face_fluxes(&vn, Some(&un), lam, orders.weno)?;

    // Hn constituent of a stage value V: cell values and face fluxes
    let hn_parts = |v: &[f64]| -> Result<(Vec<f64>, Vec<f64>), IntegratorError> {
        let vf = disc.ghosted(v, FieldKind::Momentum);
        let hf = disc.flux_field(&vf, |x| model.hn(x, eps));
        let faces = upwind_face_fluxes(&hf, None, lam, orders.weno)?;
        Ok((hf.interior().to_vec(), faces))
    };
    let p_parts = |u: &[f64]| -> Result<(Vec<f64>, Vec<f64>), IntegratorError> {
        let uf = disc.ghosted(u, FieldKind::Density);
        let pf = crate::spatial::Field::map(&uf, |x| model.p(x));
        let cell = central_first_derivative(&pf, orders.diffusion, dx)?;
        let faces = face_gradients(&pf, orders.diffusion, bc, dx)?;
        Ok((cell, faces))
    };
    let relax = |x: &[f64], i: usize| -> Result<Vec<f64>, IntegratorError> {
        x.iter()
            .enumerate()
            .map(|(c, &xc)| model.relax_solve(xc, sites.cell(c).eta[i * s + i], eps).map_err(Into::into))
            .collect()
    };

    let mut stages: Vec<Stage> = Vec::with_capacity(s);
    let mut picard = 0;
    let (mut u_last, mut v_last) = (Vec::new(), Vec::new());
    for i in 0..s {
        // known part of the V stage
        let x: Vec<f64> = (0..n)
            .map(|c| {
                let co = sites.cell(c);
                let mut r = co.beta[i] * state.v[c];
                for (k, st) in stages.iter().enumerate() {
                    let ik = i * s + k;
                    r += co.gamma[ik] * st.g_cell[c] + co.eta[ik] * st.h_cell[c] - co.delta[ik] * st.p_cell[c];
                }
                r
            })
            .collect();
        // known part of the U fluxes
        let mut hflux: Vec<f64> = (0..=n)
            .map(|f| {
                let co = sites.face(f);
                let mut r = co.cv[i] * fv[f];
                for (k, st) in stages.iter().enumerate() {
                    let ik = i * s + k;
                    r += co.cg[ik] * st.g_face[f] + co.ch[ik] * st.h_face[f] - co.cp[ik] * st.p_face[f];
                }
                r
            })
            .collect();
        let ii = i * s + i;
        let implicit_stage = implicit_p && ext.ai(i, i) != 0.0;

        let (u_i, v_i, h_parts, p_parts_i) = if !implicit_stage {
            let v_i = relax(&x, i)?;
            let h = if quadratic { Some(hn_parts(&v_i)?) } else { None };
            if let Some((_, hf)) = &h {
                for f in 0..=n {
                    hflux[f] += sites.face(f).ch[ii] * hf[f];
                }
            }
            let u_i = conservative_update(&state.u, &hflux, dt, dx);
            (u_i, v_i, h, None)
        } else {
            let mu_f: Vec<f64> = (0..=n).map(|f| dt * sites.face(f).cp[ii]).collect();
            let delta: Vec<f64> = (0..n).map(|c| sites.cell(c).delta[ii]).collect();
            let linear_p = model.p_is_linear();
            let jac_at = |u: &[f64]| -> Result<DiffusionOperator, IntegratorError> {
                let scale: Vec<f64> = u.iter().map(|&x| model.p_prime(x)).collect();
                Ok(DiffusionOperator::assemble_faces(&mu_f, Some(&scale), orders.diffusion, bc, grid)?)
            };
            let fixed_jac = if linear_p { Some(jac_at(&state.u)?.matrix.factor()?) } else { None };
            // one lagged-Jacobian correction of the stage equation
            let update = |um: &[f64]| -> Result<Vec<f64>, IntegratorError> {
                let (pc, pg) = p_parts(um)?;
                let mut faces = hflux.clone();
                if quadratic {
                    let xv: Vec<f64> = x.iter().zip(&delta).zip(&pc).map(|((x, d), p)| x - d * p).collect();
                    let (_, hf) = hn_parts(&relax(&xv, i)?)?;
                    for f in 0..=n {
                        faces[f] += sites.face(f).ch[ii] * hf[f];
                    }
                }
                for f in 0..=n {
                    faces[f] -= sites.face(f).cp[ii] * pg[f];
                }
                let target = conservative_update(&state.u, &faces, dt, dx);
                let res: Vec<f64> = um.iter().zip(&target).map(|(a, b)| a - b).collect();
                let corr = match &fixed_jac {
                    Some(lu) => lu.solve(&res)?,
                    None => jac_at(um)?.matrix.factor()?.solve(&res)?,
                };
                Ok(um.iter().zip(&corr).map(|(a, b)| a - b).collect())
            };
            let u_i = if linear_p && !quadratic {
                picard += 1;
                update(&state.u)?
            } else {
                let scale = 1.0 + state.u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                let (u, its) = fixed_point(update, &state.u, FIXED_POINT_TOL * scale, FIXED_POINT_MAX_ITER)?;
                picard += its;
                u
            };
            let pp = p_parts(&u_i)?;
            let xv: Vec<f64> = x.iter().zip(&delta).zip(&pp.0).map(|((x, d), p)| x - d * p).collect();
            let v_i = relax(&xv, i)?;
            let h = if quadratic { Some(hn_parts(&v_i)?) } else { None };
            (u_i, v_i, h, Some(pp))
        };

        let is_last = i + 1 == s;
        if !is_last {
            let uf = disc.ghosted(&u_i, FieldKind::Density);
            let gf = disc.flux_field(&uf, |x| model.g(x));
            let g_face = upwind_face_fluxes(&gf, Some(&uf), lam, orders.weno)?;
            let (p_cell, p_face) = match p_parts_i {
                Some(p) => p,
                None => p_parts(&u_i)?,
            };
            let (h_cell, h_face) = h_parts.unwrap_or_else(|| (vec![0.0; n], vec![0.0; n + 1]));
            stages.push(Stage { g_cell: gf.interior().to_vec(), g_face, h_cell, h_face, p_cell, p_face });
        }
        u_last = u_i;
        v_last = v_i;
    }
    let out = StepperState { u: u_last, v: v_last, t: state.t + dt };
    Ok((out, StepStats { picard, speed: lam }))
}
