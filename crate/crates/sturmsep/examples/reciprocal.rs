//! The reciprocal transformation swaps the roles of 1/p and q; a solution
//! (u, v) of the original problem gives the solution (v, u) of the swapped
//! one. Demonstrated numerically on a sign-changing profile.

use sturmsep::integrate::{integrate, InitialCondition};
use sturmsep::problem::{FunctionSpec, ProblemSpec};
use sturmsep::theorems::reciprocal;

fn main() {
    let problem = ProblemSpec::single(
        "original",
        0.0,
        2.0,
        FunctionSpec::SignStep { pivot: 0.8, left: -0.7, right: 0.9 },
        FunctionSpec::Const { value: 1.3 },
    );
    let swapped = reciprocal(&problem).unwrap();
    println!("swapped problem: {}", swapped.label);

    let t = integrate(&problem, InitialCondition::new(0.0, 0.4, -0.9), 1e-10).unwrap();
    let ts = integrate(&swapped, InitialCondition::new(0.0, -0.9, 0.4), 1e-10).unwrap();

    println!("{:>6} {:>12} {:>12} {:>10}", "x", "u", "v_swapped", "diff");
    let mut worst = 0.0_f64;
    for i in 0..=10 {
        let x = 2.0 * i as f64 / 10.0;
        let d = (t.u(x) - ts.v(x)).abs().max((t.v(x) - ts.u(x)).abs());
        worst = worst.max(d);
        println!("{x:6.2} {:12.6} {:12.6} {d:10.2e}", t.u(x), ts.v(x));
    }
    println!("max correspondence error: {worst:.2e}");
}
