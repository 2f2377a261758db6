use std::f64::consts::{FRAC_PI_2, PI};

use ruled_core::frenet::{integrate_frenet, CurvatureFn, FrenetCurve, FrenetOptions, FrenetSeed};
use ruled_core::ruled::RuledSurfaceGrid;
use ruled_core::synthesis::{build_surface, integrate_system, SynthesisParams, SystemKind};
use ruled_core::verification::{recompute_report, special_case_defects, SpecialCase, Tolerances};

const PASS_TOL: f64 = 1e-6;

fn curve(k1: CurvatureFn, k2: CurvatureFn, s1: f64, step: f64) -> FrenetCurve {
    integrate_frenet(&k1, &k2, &FrenetSeed::default(), (0.0, s1), step, &FrenetOptions::default()).unwrap()
}

fn surface(kind: SystemKind, params: &SynthesisParams, c: &FrenetCurve) -> RuledSurfaceGrid {
    let mut p = params.clone();
    p.step = Some(c.grid.step);
    build_surface(&integrate_system(kind, &p, c).unwrap(), c).unwrap()
}

fn general() -> SynthesisParams {
    SynthesisParams {
        d: Some(0.5.into()),
        v0: Some(0.3.into()),
        theta0: Some(0.5),
        phi0: Some(0.0),
        ..Default::default()
    }
}

fn wavy_k1() -> CurvatureFn {
    CurvatureFn::Sinusoid {
        amplitude: 0.2,
        frequency: 3.0,
        phase: 0.4,
        offset: 1.0,
    }
}

fn ratio_in_band(coarse: f64, fine: f64) -> bool {
    let r = coarse / fine;
    (3.5..=4.5).contains(&r)
}

#[test]
fn invariant_errors_converge_quadratically() {
    let errors: Vec<(f64, f64)> = [2e-3, 1e-3]
        .iter()
        .map(|&h| {
            let c = curve(wavy_k1(), 0.1.into(), 0.5, h);
            let s = surface(SystemKind::GeneralDV0, &general(), &c);
            let r = recompute_report(&s, &general(), SystemKind::GeneralDV0, &Tolerances::default()).unwrap();
            (r.quantity("d").unwrap().max_abs_error, r.quantity("v0").unwrap().max_abs_error)
        })
        .collect();
    assert!(ratio_in_band(errors[0].0, errors[1].0), "d errors {errors:?}");
    assert!(ratio_in_band(errors[0].1, errors[1].1), "v0 errors {errors:?}");
}

#[test]
fn special_case_defects_converge_quadratically() {
    let loc = SynthesisParams {
        n: Some(0.5.into()),
        c: Some(0.3),
        ..Default::default()
    };
    let asym = SynthesisParams {
        n: Some(2.0.into()),
        mu: Some(PI / 3.0),
        theta0: Some(0.5),
        ..Default::default()
    };
    let defect = |h: f64, case: SpecialCase| {
        let (kind, params, c) = match case {
            SpecialCase::LineOfCurvature => (SystemKind::LineOfCurvature, &loc, curve(wavy_k1(), 0.1.into(), 1.0, h)),
            _ => (SystemKind::AsymptoticLine, &asym, curve(wavy_k1(), (-0.5).into(), 1.0, h)),
        };
        let s = surface(kind, params, &c);
        special_case_defects(&s, &case, h).unwrap()[case.name()]
    };
    for case in [SpecialCase::LineOfCurvature, SpecialCase::AsymptoticLine] {
        let (coarse, fine) = (defect(2e-3, case), defect(1e-3, case));
        assert!(ratio_in_band(coarse, fine), "{}: {coarse:e} -> {fine:e}", case.name());
    }
}

#[test]
fn negative_controls_exceed_tolerance_hundredfold() {
    let c = curve(1.0.into(), 0.1.into(), 1.0, 1e-3);
    let generic = surface(SystemKind::GeneralDV0, &general(), &c);
    for case in [SpecialCase::Geodesic, SpecialCase::AsymptoticLine, SpecialCase::LineOfCurvature] {
        let d = special_case_defects(&generic, &case, 1e-3).unwrap()[case.name()];
        assert!(d > 100.0 * PASS_TOL, "{}: {d:e}", case.name());
    }
    let helix = curve(1.0.into(), 0.5.into(), 1.0, 1e-3);
    let s = surface(SystemKind::Cylinder, &SynthesisParams { theta0: Some(1.0), phi0: Some(0.5), ..Default::default() }, &helix);
    let off = SpecialCase::Helix { theta: 1.0, mu: 1.0 };
    assert!(special_case_defects(&s, &off, 1e-3).unwrap()["helix"] > 100.0 * PASS_TOL);
    let on = SpecialCase::Helix {
        theta: 1.0,
        mu: (1.0f64.sinh() / 2.0).atan(),
    };
    assert!(special_case_defects(&s, &on, 1e-3).unwrap()["helix"] < 1e-10);
}

#[test]
fn report_ignores_angle_provenance() {
    let c = curve(1.0.into(), 0.1.into(), 0.5, 1e-3);
    let s = surface(SystemKind::GeneralDV0, &general(), &c);
    assert!(s.provenance().is_some());
    let bare = s.with_rulings(s.rulings().to_vec()).unwrap();
    assert!(bare.provenance().is_none());
    let tol = Tolerances::default();
    assert_eq!(
        recompute_report(&s, &general(), SystemKind::GeneralDV0, &tol).unwrap(),
        recompute_report(&bare, &general(), SystemKind::GeneralDV0, &tol).unwrap()
    );
}

#[test]
fn geodesic_mode_keeps_angles_fixed() {
    let c = curve(1.0.into(), 0.1.into(), 1.0, 1e-3);
    let theta0 = ruled_core::synthesis::geodesic_theta(0.5, 1.0, 0.1).unwrap();
    let p = SynthesisParams {
        n: Some(0.5.into()),
        mu: Some(FRAC_PI_2),
        theta0: Some(theta0),
        phi0: Some(0.0),
        ..Default::default()
    };
    let s = surface(SystemKind::CurvatureAngle, &p, &c);
    let track = s.provenance().unwrap();
    assert!(track.samples().iter().all(|a| (a.theta - theta0).abs() < 1e-8 && a.phi.abs() < 1e-8));
    assert!(special_case_defects(&s, &SpecialCase::Geodesic, 1e-3).unwrap()["geodesic"] < 1e-6);
}

#[test]
fn mismatched_prescription_fails_verdict() {
    let c = curve(1.0.into(), 0.1.into(), 0.5, 1e-3);
    let s = surface(SystemKind::GeneralDV0, &general(), &c);
    let wrong = SynthesisParams {
        d: Some(0.5001.into()),
        ..general()
    };
    let r = recompute_report(&s, &wrong, SystemKind::GeneralDV0, &Tolerances::default()).unwrap();
    assert!(!r.pass);
    assert!(!r.quantity("d").unwrap().pass);
    assert!(r.quantity("v0").unwrap().pass);
}
