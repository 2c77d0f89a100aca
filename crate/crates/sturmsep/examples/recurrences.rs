//! Three-term recurrences c_n y_{n+1} + c_{n-1} y_{n-1} = (c_n + c_{n-1} + Q_n) y_n:
//! the Fibonacci and period-two counterexamples to discrete separation, and
//! the all-positive-c regime where interlacing always holds.

use sturmsep::recurrence::{
    alternating_c, fibonacci, moulton_check, negated_alternator, polygon_zeros, step,
};
use sturmsep::zeros::interlace_check;

fn demo(name: &str, rec: &sturmsep::recurrence::Recurrence, s1: (f64, f64), s2: (f64, f64)) {
    let p1 = step(rec, s1).unwrap();
    let p2 = step(rec, s2).unwrap();
    let z1 = polygon_zeros(&p1).unwrap();
    let z2 = polygon_zeros(&p2).unwrap();
    let hi = -1.0 + (p1.values.len() - 1) as f64;
    let ssp = interlace_check(&z1, &z2, (-1.0, hi));
    println!("{name}: Moulton criterion {}", if moulton_check(rec) { "holds" } else { "fails" });
    println!("  y from {s1:?}: {:?}", p1.values);
    println!("  y from {s2:?}: {:?}", p2.values);
    println!("  polygon zeros: {:?} vs {:?}", z1.positions(), z2.positions());
    println!("  interlacing: {:?}", ssp.verdict);
    if let Some(w) = &ssp.witness {
        println!("  witness: {w:?}");
    }
}

fn main() {
    demo("fibonacci", &fibonacci(6), (0.0, 1.0), (-10.0, 6.0));
    println!();
    demo("alternating c, Q = 0", &alternating_c(6), (-1.0, 1.0), (1.0, 2.0));
    println!();
    demo("all c = 1, y_{n+1} = -y_{n-1}", &negated_alternator(6), (0.0, 1.0), (1.0, 1.0));
}
