//! Seeded generators and tuned fixtures shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sturmsep::integrate::{integrate, InitialCondition};
use sturmsep::problem::{FunctionSpec, ProblemSpec, Segment, Wave};
use sturmsep::recurrence::Recurrence;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn example21() -> ProblemSpec {
    ProblemSpec::single(
        "example-2.1",
        0.0,
        PI,
        FunctionSpec::Trig {
            amplitude: 1.0,
            omega: 1.0,
            phase: 0.0,
            wave: Wave::Cos,
        },
        FunctionSpec::Trig {
            amplitude: -1.0,
            omega: 1.0,
            phase: 0.0,
            wave: Wave::Cos,
        },
    )
}

/// 1/p = sgn x, q = -sgn x on [-1, 1]: P = |x| - 1.
pub fn sgn_problem() -> ProblemSpec {
    ProblemSpec::single(
        "sgn-x",
        -1.0,
        1.0,
        FunctionSpec::SignStep {
            pivot: 0.0,
            left: -1.0,
            right: 1.0,
        },
        FunctionSpec::SignStep {
            pivot: 0.0,
            left: 1.0,
            right: -1.0,
        },
    )
}

fn nonzero(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let v = r.gen_range(lo..hi);
    if r.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

fn scale_spec(f: &FunctionSpec, factor: f64) -> FunctionSpec {
    match f {
        FunctionSpec::Const { value } => FunctionSpec::Const {
            value: factor * value,
        },
        FunctionSpec::Trig {
            amplitude,
            omega,
            phase,
            wave,
        } => FunctionSpec::Trig {
            amplitude: factor * amplitude,
            omega: *omega,
            phase: *phase,
            wave: *wave,
        },
        FunctionSpec::SignStep { pivot, left, right } => FunctionSpec::SignStep {
            pivot: *pivot,
            left: factor * left,
            right: factor * right,
        },
        FunctionSpec::Poly { coefficients } => FunctionSpec::Poly {
            coefficients: coefficients.iter().map(|c| factor * c).collect(),
        },
    }
}

fn random_inv_p(r: &mut ChaCha8Rng, a: f64, b: f64) -> FunctionSpec {
    match r.gen_range(0..3) {
        0 => FunctionSpec::Const {
            value: nonzero(r, 0.2, 1.2),
        },
        1 => FunctionSpec::Trig {
            amplitude: nonzero(r, 0.3, 1.0),
            omega: r.gen_range(0.5..2.0),
            phase: r.gen_range(0.0..2.0 * PI),
            wave: if r.gen_bool(0.5) { Wave::Sin } else { Wave::Cos },
        },
        _ => FunctionSpec::SignStep {
            pivot: a + (b - a) * r.gen_range(0.3..0.7),
            left: nonzero(r, 0.3, 1.0),
            right: nonzero(r, 0.3, 1.0),
        },
    }
}

/// Problem with q = -lambda / p, so the closed form applies exactly.
/// sqrt(lambda) * sup|1/p| stays small enough for the cubic dense output
/// to hold 100 * tol accuracy.
pub fn random_lemma_problem(r: &mut ChaCha8Rng) -> (ProblemSpec, f64) {
    let b = r.gen_range(1.0..3.0);
    let inv_p = random_inv_p(r, 0.0, b);
    let lambda = r.gen_range(0.5..6.0);
    let q = scale_spec(&inv_p, -lambda);
    (
        ProblemSpec::single("lemma-random", 0.0, b, inv_p, q),
        lambda,
    )
}

/// q = 0 problems, one third of which have P(b) = 0 by construction.
pub fn random_qzero_problem(r: &mut ChaCha8Rng) -> ProblemSpec {
    let kind = r.gen_range(0..6);
    let (a, b, inv_p) = match kind {
        // symmetric SignStep: the integral cancels exactly
        0 | 1 => {
            let half = r.gen_range(0.5..1.5);
            let mag = nonzero(r, 0.3, 1.0);
            (
                -half,
                half,
                FunctionSpec::SignStep {
                    pivot: 0.0,
                    left: -mag,
                    right: mag,
                },
            )
        }
        // full half-period cosine: sin(pi) - sin(0) = 0
        2 => (
            0.0,
            PI,
            FunctionSpec::Trig {
                amplitude: nonzero(r, 0.3, 1.0),
                omega: 1.0,
                phase: 0.0,
                wave: Wave::Cos,
            },
        ),
        _ => {
            let b = r.gen_range(1.0..3.0);
            (0.0, b, random_inv_p(r, 0.0, b))
        }
    };
    ProblemSpec::single("qzero-random", a, b, inv_p, FunctionSpec::zero())
}

/// Alternating p-block / q-block problem for the Atkinson reduction:
/// starts and ends with a p-block, constants on every block.
pub fn random_alternating_problem(r: &mut ChaCha8Rng) -> ProblemSpec {
    let n_p = r.gen_range(2..=5);
    let mut segments = vec![];
    let mut x = 0.0;
    for i in 0..(2 * n_p - 1) {
        let w = r.gen_range(0.2..1.0);
        let (inv_p, q) = if i % 2 == 0 {
            (
                FunctionSpec::Const {
                    value: nonzero(r, 0.3, 1.5),
                },
                FunctionSpec::zero(),
            )
        } else {
            (
                FunctionSpec::zero(),
                FunctionSpec::Const {
                    value: nonzero(r, 0.5, 2.0),
                },
            )
        };
        segments.push(Segment {
            lo: x,
            hi: x + w,
            inv_p,
            q,
        });
        x += w;
    }
    let b = x;
    ProblemSpec::new("alternating-random", 0.0, b, segments)
}

/// Recurrence with all c positive (Moulton's regime) and arbitrary Q.
pub fn random_positive_c_recurrence(r: &mut ChaCha8Rng) -> Recurrence {
    let m = r.gen_range(5..=12);
    let c: Vec<f64> = (0..=m).map(|_| r.gen_range(0.2..2.0)).collect();
    let q: Vec<f64> = (0..m).map(|_| r.gen_range(-2.0..2.0)).collect();
    Recurrence::new(c, q).unwrap()
}

/// Classical constant-coefficient oscillatory problem: u'' + omega^2 u = 0.
pub fn random_classical_problem(r: &mut ChaCha8Rng) -> ProblemSpec {
    let len = r.gen_range(2.0..6.0);
    let omega2 = r.gen_range(0.5..9.0);
    ProblemSpec::single(
        "classical",
        0.0,
        len,
        FunctionSpec::Const { value: 1.0 },
        FunctionSpec::Const { value: -omega2 },
    )
}

/// SignStep fixture for the quasi-derivative separation: gamma tuned by
/// bisection so the (1, 0)-shot satisfies v(1) = 0. The root solves
/// tan(sqrt(gamma)) = -tanh(sqrt(gamma)), near gamma = 5.59.
pub fn th2_fixture() -> ProblemSpec {
    let build = |gamma: f64| {
        ProblemSpec::single(
            "th2-fixture",
            -1.0,
            1.0,
            FunctionSpec::SignStep {
                pivot: 0.0,
                left: -gamma,
                right: gamma,
            },
            FunctionSpec::Const { value: 1.0 },
        )
    };
    let v_end = |gamma: f64| {
        let p = build(gamma);
        let t = integrate(&p, InitialCondition::new(-1.0, 1.0, 0.0), 1e-12).unwrap();
        t.v(1.0)
    };
    let (mut lo, mut hi) = (4.0, 9.0);
    let (flo, fhi) = (v_end(lo), v_end(hi));
    assert!(flo * fhi < 0.0, "no bracket: v(1) = {flo}, {fhi}");
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if flo * v_end(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    build(0.5 * (lo + hi))
}

/// Two-turning-point profile with P > 0 strictly inside and P(b) = 1:
/// with lambda = pi^2 the anchor sin(pi P) vanishes only at the ends.
pub fn th00_fixture() -> ProblemSpec {
    let family = sturmsep::explore::ProfileFamily {
        name: "th00-fixture".into(),
        heights: vec![0.0, 0.6, 0.3, 1.0],
        lambda_grid: vec![PI * PI],
    };
    sturmsep::explore::build_problem(&family, PI * PI).unwrap()
}

/// The cos(2x) profile on [0, pi] with q = -lambda / p. Its primitive
/// P = sin(2x)/2 vanishes at pi/2, so every solution vanishing at a has an
/// interior zero there: the no-interior-zero hypothesis cannot hold for any
/// lambda.
pub fn cos2x_problem(lambda: f64) -> ProblemSpec {
    ProblemSpec::single(
        "cos2x",
        0.0,
        PI,
        FunctionSpec::Trig {
            amplitude: 1.0,
            omega: 2.0,
            phase: 0.0,
            wave: Wave::Cos,
        },
        FunctionSpec::Trig {
            amplitude: -lambda,
            omega: 2.0,
            phase: 0.0,
            wave: Wave::Cos,
        },
    )
}
