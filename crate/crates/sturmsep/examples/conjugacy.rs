//! With q = 0, the endpoints are conjugate exactly when the primitive of 1/p
//! vanishes at b. Shoot the (0, 1) solution for two profiles and compare.

use std::f64::consts::PI;

use sturmsep::integrate::conjugate_test;
use sturmsep::problem::{FunctionSpec, ProblemSpec, Wave};
use sturmsep::theorems::verify_c21;

fn main() {
    let cases = [
        ProblemSpec::single(
            "cos profile",
            0.0,
            PI,
            FunctionSpec::Trig { amplitude: 1.0, omega: 1.0, phase: 0.0, wave: Wave::Cos },
            FunctionSpec::zero(),
        ),
        ProblemSpec::single(
            "monotone profile",
            0.0,
            PI,
            FunctionSpec::Const { value: 1.0 },
            FunctionSpec::zero(),
        ),
        ProblemSpec::single(
            "sgn profile",
            -1.0,
            1.0,
            FunctionSpec::SignStep { pivot: 0.0, left: -1.0, right: 1.0 },
            FunctionSpec::zero(),
        ),
    ];

    for problem in cases {
        let pb = problem.primitive_p(problem.b);
        let shot = conjugate_test(&problem, 1e-10).unwrap();
        println!(
            "{:18} P(b) = {pb:+.3e}  u(b) = {:+.3e}  conjugate: {}",
            problem.label, shot.u_b, shot.conjugate
        );
        let rep = verify_c21(&problem, 1e-10).unwrap();
        println!("{:18} verifier agrees: {}", "", rep.verified);
    }
}
