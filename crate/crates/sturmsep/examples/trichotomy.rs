//! Integrate four named solutions of the reference problem with 1/p = cos x,
//! q = -cos x on [0, pi], print their zeros, and show how the separation
//! property fails there.

use std::f64::consts::PI;

use sturmsep::integrate::{integrate, InitialCondition};
use sturmsep::problem::{FunctionSpec, ProblemSpec, Wave};
use sturmsep::zeros::{classify_th0, interlace_check, locate_zeros, ZeroTols};

fn main() {
    let problem = ProblemSpec::single(
        "reference",
        0.0,
        PI,
        FunctionSpec::Trig { amplitude: 1.0, omega: 1.0, phase: 0.0, wave: Wave::Cos },
        FunctionSpec::Trig { amplitude: -1.0, omega: 1.0, phase: 0.0, wave: Wave::Cos },
    );
    let tols = ZeroTols::default();
    let s1 = 1.0_f64.sin();
    let c1 = 1.0_f64.cos();
    let named = [
        ("sin(sin x)", InitialCondition::new(0.0, 0.0, 1.0)),
        ("cos(sin x)", InitialCondition::new(0.0, 1.0, 0.0)),
        ("sin(1 - sin x)", InitialCondition::new(0.0, s1, -c1)),
        ("cos(sin x) - sin(sin x)", InitialCondition::new(0.0, 1.0, -1.0)),
    ];

    let mut sets = vec![];
    let mut trajs = vec![];
    for (name, ic) in named {
        let traj = integrate(&problem, ic, 1e-10).unwrap();
        let zeros = locate_zeros(&traj, &tols).unwrap();
        println!("{name:26} zeros: {:?}", zeros.positions());
        for e in &zeros.events {
            println!("{:30}{:?} at {:.12}", "", e.kind, e.x);
        }
        sets.push(zeros);
        trajs.push(traj);
    }

    let ssp = interlace_check(&sets[0], &sets[1], (0.0, PI));
    println!("\nseparation between the first two: {:?}", ssp.verdict);
    if let Some(w) = &ssp.witness {
        println!("witness: {w:?}");
    }

    // Every independent partner of sin(sin x) falls into the trichotomy.
    for j in 1..trajs.len() {
        let class = classify_th0(&problem, &trajs[0], &trajs[j], &tols).unwrap();
        println!("partner {j}: {class:?}");
    }
}
