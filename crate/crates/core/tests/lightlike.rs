mod common;

use nullshock::lightlike::{
    characteristics, eos_h, lax_classify, shock_radius, shock_speed, sigma_from_sigma_bar,
    solve_lightlike, subluminal_comparison, trajectory, Branch, LaxClass,
};
use nullshock::matching::{Anchors, MatchedSolution};
use nullshock::Error;
use proptest::prelude::*;

#[test]
fn root_matches_the_bisection_oracle() {
    let root = solve_lightlike().unwrap();
    assert!((root.sigma - common::sigma2()).abs() < 1e-9);
    assert!((root.sigma - 0.63442).abs() <= 1e-4);
    assert!(root.residual.abs() <= 1e-12);
    assert!((root.sigma.sqrt() - 0.79650).abs() <= 1e-4);
}

#[test]
fn h_shape_on_a_grid() {
    assert_eq!(eos_h(0.0).unwrap(), 0.0);
    assert_eq!(eos_h(1.0).unwrap(), 1.0);
    let mut prev = 0.0;
    for i in 1..100 {
        let s = i as f64 / 100.0;
        let v = eos_h(s).unwrap();
        assert!((v - common::h(s)).abs() < 1e-15);
        assert!(v > prev && v < s);
        prev = v;
    }
}

#[test]
fn shock_speed_is_monotone() {
    let mut prev = shock_speed(0.0).unwrap();
    for i in 1..=100 {
        let s = shock_speed(i as f64 / 100.0).unwrap();
        assert!(s > prev);
        prev = s;
    }
}

#[test]
fn crossing_shock_at_the_lightlike_root() {
    let sigma = solve_lightlike().unwrap().sigma;
    let k = characteristics(sigma).unwrap();
    assert!(k.lambda_tov_plus < 1.0);
    assert_eq!(k.lambda_tov_plus_quoted, -0.45040);
    let lax = lax_classify(sigma).unwrap();
    assert_eq!(lax.classification, LaxClass::CrossingShock);
    assert!(lax.frw_characteristics_cross && lax.tov_characteristics_cross);
}

#[test]
fn gap_to_the_subluminal_family() {
    let c = subluminal_comparison().unwrap();
    assert!(c.distinct);
    assert_eq!((c.sigma2_quoted, c.sigma2_smoller_temple), (0.63442, 0.745));
}

#[test]
fn trajectory_rows_are_consistent() {
    let ms = MatchedSolution::lightlike(1.0, Anchors::default()).unwrap();
    let gam = common::gamma(common::h(ms.sigma), 1.0);
    let rows = trajectory(&ms, (0.0, 5.0), 100).unwrap();
    assert_eq!(rows.len(), 100);
    for row in &rows {
        assert!((row.rho * row.rbar * row.rbar - 3.0 * gam).abs() < 1e-12);
        let (rbar, r, _, rho) = common::frw_closed(ms.sigma, gam, 1.0, row.t);
        assert!((row.rbar - rbar).abs() < 1e-12 && (row.scale_factor - r).abs() < 1e-12);
        assert!((row.rho - rho).abs() < 1e-12);
        let h = 1e-5;
        let r_at = |t: f64| {
            shock_radius(&ms, t, Branch::Outgoing).unwrap()
                / common::frw_closed(ms.sigma, gam, 1.0, t).1
        };
        let fd = (r_at(row.t + h) - r_at(row.t - h)) / (2.0 * h);
        assert!((fd - row.r_dot).abs() < 1e-6);
        let fd = (shock_radius(&ms, row.t + h, Branch::Outgoing).unwrap()
            - shock_radius(&ms, row.t - h, Branch::Outgoing).unwrap())
            / (2.0 * h);
        assert!((fd - row.rbar_dot).abs() < 1e-6);
    }
}

#[test]
fn shock_speed_identity() {
    for sb in [0.1, 0.4, common::h(common::sigma2()), 1.0] {
        let lhs = (18.0 * std::f64::consts::PI * common::gamma(sb, 1.0)).sqrt();
        let rhs = 3.0 * (sb / common::q_poly(sb)).sqrt();
        assert!((lhs - rhs).abs() < 1e-12);
    }
}

#[test]
fn incoming_branch_and_bad_sigma_are_errors() {
    let ms = MatchedSolution::lightlike(1.0, Anchors::default()).unwrap();
    assert!(matches!(
        shock_radius(&ms, 0.0, Branch::Incoming),
        Err(Error::BranchError(_))
    ));
    assert!(matches!(eos_h(-0.1), Err(Error::BadSigma(_))));
    assert!(matches!(characteristics(0.0), Err(Error::BadSigma(_))));
    assert!(trajectory(&ms, (0.0, 1.0), 0).is_err());
}

proptest! {
    #[test]
    fn h_inverse_round_trips(sigma in 0.0f64..=1.0) {
        let sb = eos_h(sigma).unwrap();
        prop_assert!((sigma_from_sigma_bar(sb).unwrap() - sigma).abs() < 1e-12);
        prop_assert!((shock_speed(sigma).unwrap() - common::shock_speed(sigma)).abs() < 1e-14);
    }
}
