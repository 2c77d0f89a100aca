mod common;

use rand::Rng;

use sturmsep::integrate::{conjugate_test, integrate, InitialCondition};
use sturmsep::theorems::{reciprocal, verify_c21, verify_th0, verify_th00, verify_th2, verify_th3};
use sturmsep::zeros::ZeroTols;

/// The conjugacy iff: over random q = 0 problems, |P(b)| <= 1e-9 exactly
/// when the (0,1)-shot vanishes at b. Zero mismatches allowed.
#[test]
fn c21_iff_over_random_problems() {
    let mut r = common::rng(31);
    for case in 0..200 {
        let problem = common::random_qzero_problem(&mut r);
        let pb = problem.primitive_p(problem.b);
        let shot = conjugate_test(&problem, 1e-10).unwrap();
        let pb_zero = pb.abs() <= 1e-9;
        assert_eq!(
            pb_zero, shot.conjugate,
            "case {case}: P(b) = {pb}, u(b) = {}",
            shot.u_b
        );
        let rep = verify_c21(&problem, 1e-10).unwrap();
        assert!(rep.hypotheses_met() && rep.verified, "case {case}");
    }
}

/// Solution correspondence under the reciprocal transformation: (u, v)
/// solving the problem means (v, u) solves the swapped one.
#[test]
fn reciprocal_correspondence() {
    let mut r = common::rng(32);
    let mut checked = 0;
    while checked < 50 {
        // admissible: q one-signed and bounded away from zero
        let b = r.gen_range(1.0..2.5);
        let inv_p = sturmsep::problem::FunctionSpec::SignStep {
            pivot: b * r.gen_range(0.3..0.7),
            left: r.gen_range(-1.0..1.0_f64).signum() * r.gen_range(0.3..1.0),
            right: r.gen_range(-1.0..1.0_f64).signum() * r.gen_range(0.3..1.0),
        };
        let q = sturmsep::problem::FunctionSpec::Const {
            value: r.gen_range(-1.0..1.0_f64).signum() * r.gen_range(0.2..1.5),
        };
        let problem = sturmsep::problem::ProblemSpec::single("recip-random", 0.0, b, inv_p, q);
        let swapped = reciprocal(&problem).unwrap();
        // The double application needs 1/p one-signed too.
        if let sturmsep::problem::FunctionSpec::SignStep { left, right, .. } =
            problem.segments[0].inv_p
        {
            if left * right > 0.0 {
                assert_eq!(
                    reciprocal(&swapped).unwrap().segments,
                    problem.segments,
                    "involution"
                );
            }
        }

        let u0: f64 = r.gen_range(-1.0..1.0);
        let v0: f64 = r.gen_range(-1.0..1.0);
        if u0.abs() + v0.abs() < 0.1 {
            continue;
        }
        let t = integrate(&problem, InitialCondition::new(0.0, u0, v0), 1e-10).unwrap();
        let ts = integrate(&swapped, InitialCondition::new(0.0, v0, u0), 1e-10).unwrap();
        for i in 0..=200 {
            let x = b * i as f64 / 200.0;
            assert!((t.u(x) - ts.v(x)).abs() <= 1e-8 * (1.0 + t.u_scale()), "u/v at {x}");
            assert!((t.v(x) - ts.u(x)).abs() <= 1e-8 * (1.0 + t.v_scale()), "v/u at {x}");
        }
        checked += 1;
    }
}

#[test]
fn th0_verifier_on_both_paper_problems() {
    let tols = ZeroTols::default();
    for problem in [common::example21(), common::sgn_problem()] {
        let rep = verify_th0(&problem, 25, 7, 1e-10, &tols).unwrap();
        assert!(rep.hypotheses_met(), "{}: {:?}", problem.label, rep.hypotheses);
        assert!(rep.verified, "{}: {:?}", problem.label, rep.witnesses);
    }
}

#[test]
fn th2_verifier_on_tuned_fixture() {
    let problem = common::th2_fixture();
    let rep = verify_th2(&problem, 25, 3, 1e-10, &ZeroTols::default()).unwrap();
    assert!(rep.hypotheses_met(), "{:?}", rep.hypotheses);
    assert!(rep.verified, "{:?}", rep.witnesses);
    assert_eq!(rep.quantities["failures"], 0.0);
}

/// Whenever the th3 hypotheses pass, the proof identity must hold to 1e-7
/// relative.
#[test]
fn th3_identity_on_example21() {
    let rep = verify_th3(&common::example21(), 1e-7, &ZeroTols::default()).unwrap();
    assert!(rep.hypotheses_met());
    assert!(rep.verified);
    assert!(rep.quantities["int_pqu"].abs() <= 1e-7 * rep.quantities["int_abs_pqu"]);
}

#[test]
fn th00_verifier_on_two_turning_point_fixture() {
    let problem = common::th00_fixture();
    assert_eq!(problem.turning_points().unwrap().len(), 2);
    let rep = verify_th00(&problem, 1e-10, &ZeroTols::default()).unwrap();
    assert!(rep.hypotheses_met(), "{:?}", rep.hypotheses);
    assert!(rep.verified);
}

/// The cos(2x) profile's primitive vanishes mid-interval, so the
/// no-interior-zero hypothesis is structurally unsatisfiable there; the
/// verifier must say so rather than guess around it.
#[test]
fn th00_cos2x_profile_reports_unmet_hypotheses() {
    for lambda in [1.0, 4.0, 9.87, 25.0] {
        let problem = common::cos2x_problem(lambda);
        assert_eq!(problem.turning_points().unwrap().len(), 2);
        let rep = verify_th00(&problem, 1e-10, &ZeroTols::default()).unwrap();
        assert!(!rep.hypotheses_met(), "lambda = {lambda}");
        let zero_hyp = rep
            .hypotheses
            .iter()
            .find(|h| h.name == "anchor_has_no_interior_zero");
        assert!(zero_hyp.is_some_and(|h| !h.met), "lambda = {lambda}");
    }
}
