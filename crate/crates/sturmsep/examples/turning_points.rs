//! Locate turning points (sign changes of 1/p) and tabulate the primitive
//! P(x) for a few profiles, including one where p passes through infinity.

use std::f64::consts::PI;

use sturmsep::problem::{FunctionSpec, ProblemSpec, Segment, Wave};

fn show(problem: &ProblemSpec) {
    println!("{}:", problem.label);
    for tp in problem.turning_points().unwrap() {
        println!("  turning point at {:.9}, direction {:+}", tp.location, tp.direction);
    }
    for i in 0..=8 {
        let x = problem.a + (problem.b - problem.a) * i as f64 / 8.0;
        println!("  P({x:+.4}) = {:+.6}", problem.primitive_p(x));
    }
}

fn main() {
    show(&ProblemSpec::single(
        "cos(2x) profile",
        0.0,
        PI,
        FunctionSpec::Trig { amplitude: 1.0, omega: 2.0, phase: 0.0, wave: Wave::Cos },
        FunctionSpec::zero(),
    ));

    show(&ProblemSpec::single(
        "sgn x profile",
        -1.0,
        1.0,
        FunctionSpec::SignStep { pivot: 0.0, left: -1.0, right: 1.0 },
        FunctionSpec::zero(),
    ));

    // p infinite in the middle third: 1/p = 0 there, no turning point.
    show(&ProblemSpec::new(
        "infinite middle block",
        0.0,
        3.0,
        vec![
            Segment {
                lo: 0.0,
                hi: 1.0,
                inv_p: FunctionSpec::Const { value: 1.0 },
                q: FunctionSpec::zero(),
            },
            Segment {
                lo: 1.0,
                hi: 2.0,
                inv_p: FunctionSpec::zero(),
                q: FunctionSpec::Const { value: 3.0 },
            },
            Segment {
                lo: 2.0,
                hi: 3.0,
                inv_p: FunctionSpec::Const { value: 1.0 },
                q: FunctionSpec::zero(),
            },
        ],
    ));
}
