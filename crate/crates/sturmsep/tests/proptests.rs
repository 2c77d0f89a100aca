use proptest::prelude::*;

use sturmsep::problem::{FunctionSpec, ProblemSpec, Wave};
use sturmsep::quad::adaptive_simpson;

fn function_spec() -> impl Strategy<Value = FunctionSpec> {
    prop_oneof![
        (-2.0..2.0_f64).prop_map(|value| FunctionSpec::Const { value }),
        (
            -1.5..1.5_f64,
            0.3..3.0_f64,
            0.0..std::f64::consts::TAU,
            prop_oneof![Just(Wave::Sin), Just(Wave::Cos)],
        )
            .prop_map(|(amplitude, omega, phase, wave)| FunctionSpec::Trig {
                amplitude,
                omega,
                phase,
                wave,
            }),
        (0.2..0.8_f64, -1.5..1.5_f64, -1.5..1.5_f64).prop_map(|(pivot, left, right)| {
            FunctionSpec::SignStep { pivot, left, right }
        }),
        prop::collection::vec(-1.0..1.0_f64, 1..=4)
            .prop_map(|coefficients| FunctionSpec::Poly { coefficients }),
    ]
}

fn problem() -> impl Strategy<Value = ProblemSpec> {
    (function_spec(), function_spec(), 0.5..2.5_f64)
        .prop_map(|(inv_p, q, b)| ProblemSpec::single("prop", 0.0, b, inv_p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The closed-form primitive of 1/p agrees with adaptive quadrature,
    /// integrating piecewise between forced breakpoints.
    #[test]
    fn primitive_matches_quadrature(p in problem(), frac in 0.0..1.0_f64) {
        let x = p.a + frac * (p.b - p.a);
        let mut pts: Vec<f64> = p
            .forced_breakpoints()
            .into_iter()
            .filter(|t| *t < x)
            .collect();
        pts.insert(0, p.a);
        pts.push(x);
        let quad: f64 = pts
            .windows(2)
            .map(|w| {
                // nudge endpoint samples inward so SignStep pivots are read
                // from the correct side of the piece
                let delta = 1e-12 * (w[1] - w[0]);
                let (lo, hi) = (w[0] + delta, w[1] - delta);
                adaptive_simpson(|t| p.inv_p_at(t.clamp(lo, hi)), w[0], w[1], 1e-14)
            })
            .sum();
        let exact = p.primitive_p(x);
        prop_assert!(
            (exact - quad).abs() <= 1e-10 * (1.0 + exact.abs()),
            "exact {exact} vs quad {quad}"
        );
    }

    /// Turning points agree with a dense sign scan of 1/p.
    #[test]
    fn turning_points_match_sign_scan(p in problem()) {
        let tps = match p.turning_points() {
            Ok(t) => t,
            Err(_) => return Ok(()), // isolation violated; rejected upstream
        };
        let n = 10_000;
        let mut scan = vec![];
        let mut last: Option<(f64, i8)> = None;
        for i in 0..=n {
            let x = p.a + (p.b - p.a) * i as f64 / n as f64;
            let v = p.inv_p_at(x);
            let s = if v > 0.0 { 1 } else if v < 0.0 { -1 } else { 0 };
            if s == 0 {
                continue;
            }
            if let Some((px, ps)) = last {
                if ps != s {
                    scan.push(0.5 * (px + x));
                }
            }
            last = Some((x, s));
        }
        let h = (p.b - p.a) / n as f64;
        prop_assert_eq!(tps.len(), scan.len(), "tps {:?} vs scan {:?}", &tps, &scan);
        for (tp, sx) in tps.iter().zip(&scan) {
            // scan brackets the change within a few grid cells
            prop_assert!((tp.location - sx).abs() <= 200.0 * h,
                "tp {} vs scan {}", tp.location, sx);
        }
    }

    /// Problem JSON round-trips exactly.
    #[test]
    fn problem_serde_round_trip(p in problem()) {
        let text = serde_json::to_string(&p).unwrap();
        let back: ProblemSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(p, back);
    }
}
