use imex_relax::harness::*;

#[test]
fn config_schema_is_strict() {
    let good = preset("1b").unwrap().to_json();
    assert!(ExperimentConfig::from_json(&good).is_ok());
    let extra = good.replacen("\"epsilon\"", "\"epsilonn\": 1.0, \"epsilon\"", 1);
    assert!(matches!(ExperimentConfig::from_json(&extra), Err(HarnessError::Validation(_))));
    let mut c = preset("1b").unwrap();
    c.grid.n = 4;
    assert!(c.validate().is_err());
    c = preset("1b").unwrap();
    c.tableau = "NOPE".into();
    assert_eq!(c.validate().unwrap_err().exit_code(), 2);
    c = preset("3a").unwrap();
    c.alpha = AlphaSpec::Constant { value: 1.5 };
    assert!(c.validate().is_err());
}

#[test]
fn reference_on_same_grid_is_the_direct_run() {
    let c = preset("3b").unwrap();
    let direct = run_experiment(&c).unwrap();
    let r = run_reference(&c, c.grid().unwrap().dx).unwrap();
    assert_eq!(r.fine_n, c.grid.n);
    assert_eq!(r.u, direct.trajectory.last().u);
    assert_eq!(r.v, direct.trajectory.last().v);
}

#[test]
fn fine_riemann_run_matches_erf() {
    let c = preset("1b").unwrap();
    let r = run_reference(&c, 0.001).unwrap();
    let (exact, _) = exact_profile(&c, r.t).unwrap().unwrap();
    let e = error_norms(&r.u, &exact, c.grid().unwrap().dx, NormKind::L1).unwrap();
    assert!(e <= 0.02, "L1 = {e}");
}

#[test]
fn square_wave_forms_a_right_moving_shock() {
    for name in ["2b-alpha0.5", "2b-alpha0.75"] {
        let c = preset(name).unwrap();
        let out = run_experiment(&c).unwrap();
        let last = out.trajectory.last();
        assert!(last.u.iter().all(|u| (-1e-3..=1.0 + 1e-3).contains(u)), "{name} unbounded");
        let x = out.centers();
        let jx: Vec<f64> = last.v.windows(2).map(|w| w[1] - w[0]).collect();
        let (imin, imax) = (0..jx.len()).fold((0, 0), |(a, b), i| {
            (if jx[i] < jx[a] { i } else { a }, if jx[i] > jx[b] { i } else { b })
        });
        // steep compression ahead of a gentler expansion
        assert!(imin > imax, "{name}");
        assert!(-jx[imin] > 2.0 * jx[imax], "{name}");
        assert!(x[imin] > 0.125, "{name}: front at {}", x[imin]);
    }
}

#[test]
fn convergence_orders_follow_from_errors() {
    let c = preset("test1").unwrap();
    let r = run_convergence_study(&c, &["ARS111", "BPR343"], &[40, 80, 160]).unwrap();
    assert_eq!(r.len(), 2);
    assert_eq!(r[0].tableau, "ARS111");
    for rep in &r {
        let e: Vec<f64> = rep.rows.iter().map(|x| x.error_rho).collect();
        let o: Vec<Option<f64>> = rep.rows.iter().map(|x| x.order_rho).collect();
        assert_eq!(o, observed_orders(&e));
        assert!(rep.rows[0].order_rho.is_none());
    }
    let csv = convergence_csv(&c, &r);
    assert!(csv.lines().any(|l| l == "tableau,N,dt,error_rho,order_rho,error_j,order_j"));
    assert!(csv.lines().filter(|l| l.starts_with('#')).any(|l| l.contains("\"tableau\"")));
    // a second run merges identically
    assert_eq!(run_convergence_study(&c, &["ARS111", "BPR343"], &[40, 80, 160]).unwrap(), r);
    let mut bad = c.clone();
    bad.exact = None;
    assert!(run_convergence_study(&bad, &["ARS111"], &[40]).is_err());
}

#[test]
fn csv_header_carries_the_config() {
    let c = preset("1a").unwrap();
    let csv = profile_csv(&c, &[("t".into(), "0.1".into())], &[("x", &[0.0, 1.0]), ("u", &[2.0, 3.5])]);
    let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, vec!["x,u", "0.0000000000e0,2.0000000000e0", "1.0000000000e0,3.5000000000e0"]);
    let json: String = csv
        .lines()
        .skip_while(|l| *l != "# config:")
        .skip(1)
        .take_while(|l| l.starts_with("#   "))
        .map(|l| &l[4..])
        .collect::<Vec<_>>()
        .join("\n");
    assert_eq!(ExperimentConfig::from_json(&json).unwrap(), c);
}

#[test]
fn paper_test_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_paper_test("3a", dir.path(), false).unwrap();
    assert!(r.files.iter().all(|f| f.exists()));
    assert!(r.files.iter().any(|f| f.extension().unwrap() == "svg"));
    assert!(run_paper_test("7z", dir.path(), false).is_err());
}
