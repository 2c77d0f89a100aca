mod common;

use rand::Rng;

use sturmsep::integrate::{closed_form_lemma2, integrate, wronskian, InitialCondition};

#[test]
fn wronskian_constancy_random_problems() {
    let mut r = common::rng(11);
    for case in 0..50 {
        let problem = match case % 3 {
            0 => common::random_lemma_problem(&mut r).0,
            1 => common::random_qzero_problem(&mut r),
            _ => common::random_classical_problem(&mut r),
        };
        for _ in 0..3 {
            let theta1: f64 = r.gen_range(0.0..std::f64::consts::TAU);
            let theta2: f64 = r.gen_range(0.0..std::f64::consts::TAU);
            let t1 = integrate(
                &problem,
                InitialCondition::new(problem.a, theta1.cos(), theta1.sin()),
                1e-10,
            )
            .unwrap();
            let t2 = integrate(
                &problem,
                InitialCondition::new(problem.a, theta2.cos(), theta2.sin()),
                1e-10,
            )
            .unwrap();
            let w0 = wronskian(&t1, &t2, problem.a).unwrap();
            let tol = 1e-7 * (1.0 + w0.abs());
            for i in 0..=1000 {
                let x = problem.a + (problem.b - problem.a) * i as f64 / 1000.0;
                let w = wronskian(&t1, &t2, x).unwrap();
                assert!(
                    (w - w0).abs() <= tol,
                    "case {case}: drift {} at x = {x} ({})",
                    (w - w0).abs(),
                    problem.label
                );
            }
        }
    }
}

#[test]
fn linearity_of_the_flow() {
    let mut r = common::rng(12);
    for _ in 0..20 {
        let (problem, _) = common::random_lemma_problem(&mut r);
        let ic1 = InitialCondition::new(problem.a, 1.0, 0.0);
        let ic2 = InitialCondition::new(problem.a, 0.0, 1.0);
        let alpha: f64 = r.gen_range(-2.0..2.0);
        let beta: f64 = r.gen_range(-2.0..2.0);
        if alpha.abs() + beta.abs() < 1e-3 {
            continue;
        }
        let tol = 1e-10;
        let t1 = integrate(&problem, ic1, tol).unwrap();
        let t2 = integrate(&problem, ic2, tol).unwrap();
        let tc = integrate(
            &problem,
            InitialCondition::new(problem.a, alpha, beta),
            tol,
        )
        .unwrap();
        let scale = 1.0 + tc.u_scale().max(tc.v_scale());
        for i in 0..=200 {
            let x = problem.a + (problem.b - problem.a) * i as f64 / 200.0;
            let du = tc.u(x) - (alpha * t1.u(x) + beta * t2.u(x));
            let dv = tc.v(x) - (alpha * t1.v(x) + beta * t2.v(x));
            assert!(du.abs() <= 10.0 * tol * scale, "u at {x}: {du}");
            assert!(dv.abs() <= 10.0 * tol * scale, "v at {x}: {dv}");
        }
    }
}

#[test]
fn closed_form_oracle_small_sample() {
    let mut r = common::rng(13);
    for _ in 0..10 {
        let (problem, lambda) = common::random_lemma_problem(&mut r);
        let c1: f64 = r.gen_range(-1.0..1.0);
        let c2: f64 = r.gen_range(-1.0..1.0);
        if c1.abs() + c2.abs() < 1e-3 {
            continue;
        }
        let tol = 1e-10;
        let rl = lambda.sqrt();
        let t = integrate(
            &problem,
            InitialCondition::new(problem.a, c1, c2 * rl),
            tol,
        )
        .unwrap();
        let cf = closed_form_lemma2(&problem, lambda, c1, c2).unwrap();
        for i in 0..=400 {
            let x = problem.a + (problem.b - problem.a) * i as f64 / 400.0;
            let d = (t.u(x) - cf.u(x)).abs().max((t.v(x) - cf.v(x)).abs());
            assert!(d <= 100.0 * tol * (1.0 + rl), "{} at {x}: {d}", problem.label);
        }
    }
}

#[test]
fn reversibility_random_problems() {
    let mut r = common::rng(14);
    for _ in 0..20 {
        let (problem, _) = common::random_lemma_problem(&mut r);
        let tol = 1e-10;
        let fwd = integrate(&problem, InitialCondition::new(problem.a, 0.7, -0.4), tol).unwrap();
        let back = integrate(
            &problem,
            InitialCondition::new(problem.b, fwd.u(problem.b), fwd.v(problem.b)),
            tol,
        )
        .unwrap();
        let scale = 1.0 + fwd.u_scale().max(fwd.v_scale());
        assert!((back.u(problem.a) - 0.7).abs() <= 100.0 * tol * scale);
        assert!((back.v(problem.a) + 0.4).abs() <= 100.0 * tol * scale);
    }
}
