mod common;

use imex_relax::integrator::*;
use imex_relax::model::{equilibrium, make_linear_gt, make_ruijgrok_wu, ScalingParams};
use imex_relax::spatial::{BoundaryCondition, BoundaryState, Grid1D};
use imex_relax::tableaux::{builtin, builtin_names};
use proptest::prelude::*;

const IMEX: [SchemeVariant; 2] = [SchemeVariant::UnifiedExplicitDiffusion, SchemeVariant::ImplicitDiffusion];

#[test]
fn constant_equilibrium_is_preserved() {
    for name in builtin_names() {
        let pair = builtin(name).unwrap();
        for eps in [0.7, 1e-3, 1e-8] {
            let model = make_ruijgrok_wu();
            let disc = common::periodic_disc(model.clone(), &pair, (0.0, 1.0), 32, eps, 1.0);
            let v0 = equilibrium(&model, 0.8, eps).unwrap();
            let st = StepperState::new(vec![0.8; 32], vec![v0; 32], 0.0).unwrap();
            for scheme in IMEX {
                let out = step(&st, scheme, &pair, &disc, 0.01).unwrap();
                assert!(common::linf(&out.u, &st.u) < 1e-13, "{name} {scheme:?} eps {eps}");
                assert!(common::linf(&out.v, &st.v) < 1e-12, "{name} {scheme:?} eps {eps}");
            }
        }
    }
}

#[test]
fn inflow_constant_state_is_preserved() {
    let pair = builtin("BPR343").unwrap();
    let grid = Grid1D::new(-1.0, 1.0, 40).unwrap();
    let bc = BoundaryCondition::InflowOutflow { left: Some(BoundaryState { u: 2.0, v: 2.0 }), right: None };
    let disc = Discretization::new(
        make_linear_gt(1.0),
        grid,
        bc,
        ScalingParams::uniform(1e-6, 1.0, 40).unwrap(),
        SpatialOrders::for_pair(&pair),
    )
    .unwrap();
    let st = StepperState::new(vec![2.0; 40], vec![2.0; 40], 0.0).unwrap();
    let out = step(&st, SchemeVariant::ImplicitDiffusion, &pair, &disc, 0.025).unwrap();
    assert!(common::linf(&out.u, &st.u) < 1e-12);
}

#[test]
fn hybrid_baseline_limits() {
    let pair = builtin("ARS111").unwrap();
    let x = |eps| {
        let d = common::periodic_disc(make_linear_gt(1.0), &pair, (-3.0, 3.0), 40, eps, 1.0);
        let c = d.grid.centers();
        let st = StepperState::new(c.iter().map(|x| x.sin()).collect(), c.iter().map(|x| x.cos()).collect(), 0.0).unwrap();
        (d, st)
    };
    let (d, st) = x(10.0);
    for phi in [PhiKind::MinEps2] {
        let h = step(&st, SchemeVariant::BaselineHybrid(phi), &pair, &d, 0.05).unwrap();
        let a = step(&st, SchemeVariant::BaselineAdditive, &pair, &d, 0.05).unwrap();
        assert_eq!(h, a);
    }
    let (d, st) = x(1e-8);
    for phi in [PhiKind::MinEps2, PhiKind::TanhEps2] {
        let h = step(&st, SchemeVariant::BaselineHybrid(phi), &pair, &d, 0.05).unwrap();
        let p = step(&st, SchemeVariant::BaselinePartitioned, &pair, &d, 0.05).unwrap();
        assert!(common::linf(&h.u, &p.u) < 1e-12 && common::linf(&h.v, &p.v) < 1e-12);
    }
}

#[test]
fn unified_blows_up_past_the_parabolic_limit() {
    let pair = builtin("BPR343").unwrap();
    let disc = common::periodic_disc(make_linear_gt(1.0), &pair, (-3.0, 3.0), 200, 1e-6, 1.0);
    let c = disc.grid.centers();
    let st = StepperState::new(c.iter().map(|x| x.sin()).collect(), c.iter().map(|x| x.sin() - x.cos()).collect(), 0.0).unwrap();
    let e = run(&st, SchemeVariant::UnifiedExplicitDiffusion, &pair, &disc, 0.5, 2.0, &RecordPolicy::Final).unwrap_err();
    assert!(e.is_blow_up(), "{e}");
    let ok = run(&st, SchemeVariant::ImplicitDiffusion, &pair, &disc, 0.5, 2.0, &RecordPolicy::Final).unwrap();
    assert!(ok.last().u.iter().all(|u| u.abs() <= 1.0));
}

#[test]
fn run_records_requested_times() {
    let pair = builtin("CK222").unwrap();
    let disc = common::periodic_disc(make_linear_gt(1.0), &pair, (-3.0, 3.0), 40, 1e-2, 1.0);
    let st = StepperState::new(vec![1.0; 40], vec![1.0; 40], 0.0).unwrap();
    let tr = run(&st, SchemeVariant::ImplicitDiffusion, &pair, &disc, 0.5, 0.5, &RecordPolicy::Times(vec![0.12, 0.3])).unwrap();
    let ts: Vec<f64> = tr.snapshots.iter().map(|s| s.t).collect();
    assert_eq!(ts, vec![0.0, 0.12, 0.3, 0.5]);
    assert!(run(&st, SchemeVariant::BaselineAdditive, &builtin("BPR343").unwrap(), &disc, 0.5, 0.5, &RecordPolicy::Final).is_err());
    assert!(run(&st, SchemeVariant::ImplicitDiffusion, &pair, &disc, -1.0, 0.5, &RecordPolicy::Final).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn periodic_mass_is_conserved(
        modes in proptest::collection::vec(-0.5f64..0.5, 6),
        eps_exp in -8i32..0,
        alpha in 0.0f64..=1.0,
        which in 0usize..5,
        rw in any::<bool>(),
    ) {
        let pair = builtin(builtin_names()[which]).unwrap();
        let model = if rw { make_ruijgrok_wu() } else { make_linear_gt(1.0) };
        let eps = 10f64.powi(eps_exp);
        let disc = common::periodic_disc(model, &pair, (0.0, 1.0), 48, eps, alpha);
        let x = disc.grid.centers();
        let tau = 2.0 * std::f64::consts::PI;
        let u: Vec<f64> = x.iter().map(|x| 1.0 + modes[..3].iter().enumerate().map(|(k, a)| a * (tau * (k + 1) as f64 * x).sin()).sum::<f64>()).collect();
        let v: Vec<f64> = x.iter().map(|x| modes[3..].iter().enumerate().map(|(k, a)| a * (tau * (k + 1) as f64 * x).cos()).sum::<f64>()).collect();
        let st = StepperState::new(u, v, 0.0).unwrap();
        let mass: f64 = st.u.iter().sum();
        for scheme in [SchemeVariant::ImplicitDiffusion, SchemeVariant::BaselinePartitioned] {
            if scheme.baseline().is_some() && pair.stages() > 2 { continue; }
            let dt = 0.2 * disc.grid.dx;
            let out = step(&st, scheme, &pair, &disc, dt).unwrap();
            let m: f64 = out.u.iter().sum();
            prop_assert!((m - mass).abs() <= 1e-12 * mass.abs(), "{scheme:?}: {} vs {}", m, mass);
        }
    }
}
