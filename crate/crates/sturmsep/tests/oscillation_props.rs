mod common;

use rand::Rng;

use sturmsep::integrate::{integrate, wronskian, InitialCondition};
use sturmsep::zeros::{classify_th0, interlace_check, locate_zeros, Verdict, ZeroTols};

/// Classical constant-p oscillatory problems obey Sturm separation: the
/// negative control for everything else in this suite.
#[test]
fn classical_separation_oracle() {
    let mut r = common::rng(21);
    let tols = ZeroTols::default();
    for case in 0..100 {
        let problem = common::random_classical_problem(&mut r);
        let theta1: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        let mut theta2: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        // keep the pair safely independent
        while (theta1 - theta2).sin().abs() < 0.05 {
            theta2 = r.gen_range(0.0..std::f64::consts::TAU);
        }
        let t1 = integrate(
            &problem,
            InitialCondition::new(0.0, theta1.cos(), theta1.sin()),
            1e-10,
        )
        .unwrap();
        let t2 = integrate(
            &problem,
            InitialCondition::new(0.0, theta2.cos(), theta2.sin()),
            1e-10,
        )
        .unwrap();
        let z1 = locate_zeros(&t1, &tols).unwrap();
        let z2 = locate_zeros(&t2, &tols).unwrap();
        let report = interlace_check(&z1, &z2, (problem.a, problem.b));
        assert_eq!(
            report.verdict,
            Verdict::Holds,
            "case {case}: witness {:?}",
            report.witness
        );
    }
}

/// Single-turning-point trichotomy, sampled broadly on Example 2.1.
#[test]
fn trichotomy_universality_on_example21() {
    let mut r = common::rng(22);
    let problem = common::example21();
    let tols = ZeroTols::default();
    let u1 = integrate(&problem, InitialCondition::new(0.0, 0.0, 1.0), 1e-10).unwrap();
    let z1 = locate_zeros(&u1, &tols).unwrap();
    let mut seen = [false; 3];
    for _ in 0..100 {
        let theta: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        if theta.cos().abs() < 0.05 {
            continue;
        }
        let u2 = integrate(
            &problem,
            InitialCondition::new(0.0, theta.cos(), theta.sin()),
            1e-10,
        )
        .unwrap();
        let class = classify_th0(&problem, &u1, &u2, &tols).unwrap();
        match class {
            sturmsep::zeros::Trichotomy::NoZeros => seen[0] = true,
            sturmsep::zeros::Trichotomy::SingleBounce { .. } => seen[1] = true,
            sturmsep::zeros::Trichotomy::TwoCrossings { .. } => seen[2] = true,
        }
        let z2 = locate_zeros(&u2, &tols).unwrap();
        let ssp = interlace_check(&z1, &z2, (problem.a, problem.b));
        assert_eq!(ssp.verdict, Verdict::Fails);
    }
    // zero-free and two-crossing classes are generic; both must appear
    assert!(seen[0] && seen[2], "classes seen: {seen:?}");
}

/// Same universality on the sgn-x problem from the opening example.
#[test]
fn trichotomy_universality_on_sgn_problem() {
    let mut r = common::rng(23);
    let problem = common::sgn_problem();
    let tols = ZeroTols::default();
    let u1 = integrate(&problem, InitialCondition::new(-1.0, 0.0, 1.0), 1e-10).unwrap();
    for _ in 0..100 {
        let theta: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        if theta.cos().abs() < 0.05 {
            continue;
        }
        let u2 = integrate(
            &problem,
            InitialCondition::new(-1.0, theta.cos(), theta.sin()),
            1e-10,
        )
        .unwrap();
        classify_th0(&problem, &u1, &u2, &tols).unwrap();
        let w = wronskian(&u1, &u2, -1.0).unwrap();
        assert!(w.abs() > 1e-9);
    }
}
