//! Reduce an alternating chain of p-blocks and infinite-p q-blocks to its
//! three-term recurrence, then confirm that the ODE solution sampled at the
//! node points satisfies the recurrence exactly.

use sturmsep::integrate::{integrate, InitialCondition};
use sturmsep::problem::{FunctionSpec, ProblemSpec, Segment};
use sturmsep::recurrence::{atkinson_reduce, difference_residual, step};

fn main() {
    let widths = [0.5, 0.3, 0.8, 0.4, 0.6];
    let mut segments = vec![];
    let mut x = 0.0;
    for (i, w) in widths.iter().enumerate() {
        let (inv_p, q) = if i % 2 == 0 {
            (FunctionSpec::Const { value: 1.0 + 0.5 * i as f64 }, FunctionSpec::zero())
        } else {
            (FunctionSpec::zero(), FunctionSpec::Const { value: 2.0 - i as f64 })
        };
        segments.push(Segment { lo: x, hi: x + w, inv_p, q });
        x += w;
    }
    let problem = ProblemSpec::new("chain", 0.0, x, segments);

    let (partition, rec) = atkinson_reduce(&problem).unwrap();
    println!("node points: {:?}", partition.node_points);
    println!("c: {:?}", rec.c);
    println!("Q: {:?}", rec.q);

    let traj = integrate(&problem, InitialCondition::new(0.0, 0.3, 1.0), 1e-12).unwrap();
    let np = &partition.node_points;
    let poly = step(&rec, (traj.u(np[0]), traj.u(np[1]))).unwrap();
    for (k, y) in poly.values.iter().enumerate() {
        println!(
            "node {k} at x = {:.3}: u = {:+.9}, recurrence y = {:+.9}",
            np[k],
            traj.u(np[k]),
            y
        );
    }
    println!("difference residual: {:.2e}", difference_residual(&rec, &poly));
}
