//! Zero location and classification for solutions, interlacing checks and
//! the trichotomy of the single-turning-point theorem.
//!
//! Away from turning points a zero of a non-trivial solution forces a sign
//! change, so a tangential zero ("bounce") can sit only at a turning point;
//! one found anywhere else is surfaced as an error, never dropped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrate::Trajectory;
use crate::problem::{ProblemSpec, TurningPoint};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    Crossing,
    Tangential,
    Endpoint,
}

#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct ZeroEvent {
    pub x: f64,
    pub kind: ZeroKind,
    /// Bracket that isolates the zero (sign data at its ends for crossings).
    pub bracket: (f64, f64),
    pub associated_turning_point: Option<f64>,
}

/// Located zeros of one solution (or one polygon), sorted by position.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroSet {
    pub events: Vec<ZeroEvent>,
    /// Sup-norm of the solution the relative tolerances refer to.
    pub scale: f64,
    pub tol_zero: f64,
    pub tol_bounce: f64,
}

impl ZeroSet {
    pub fn positions(&self) -> Vec<f64> {
        self.events.iter().map(|e| e.x).collect()
    }

    pub fn interior(&self) -> impl Iterator<Item = &ZeroEvent> {
        self.events.iter().filter(|e| e.kind != ZeroKind::Endpoint)
    }

    pub fn count(&self, include_endpoints: bool) -> usize {
        self.events
            .iter()
            .filter(|e| include_endpoints || e.kind != ZeroKind::Endpoint)
            .count()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Deserialize)]
pub struct ZeroTols {
    /// Crossing refinement width and endpoint threshold, relative to
    /// sup-norm / interval length.
    pub tol_zero: f64,
    /// Bounce detection threshold, relative to the sup-norm of u.
    pub tol_bounce: f64,
}

impl Default for ZeroTols {
    fn default() -> Self {
        ZeroTols {
            tol_zero: 1e-10,
            tol_bounce: 1e-7,
        }
    }
}

impl Serialize for ZeroTols {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ZeroTols", 2)?;
        st.serialize_field("tol_zero", &self.tol_zero)?;
        st.serialize_field("tol_bounce", &self.tol_bounce)?;
        st.end()
    }
}

/// Locate and classify every zero of the u-component of `traj`.
///
/// Sign changes between adjacent nodes become crossings refined by bisection
/// on the interpolant; runs of below-threshold nodes with equal outer signs
/// become tangential zeros snapped to the nearest turning point. Since
/// turning points are forced nodes, a genuine bounce always has its vertex
/// on the grid.
pub fn locate_zeros(traj: &Trajectory, tols: &ZeroTols) -> Result<ZeroSet> {
    let scale = traj.u_scale();
    if scale == 0.0 {
        return Err(Error::PreconditionFailed(
            "trajectory is identically zero; zeros are not meaningful".into(),
        ));
    }
    let span = traj.b() - traj.a();
    let band = tols.tol_bounce * scale;
    let width = tols.tol_zero * span;
    let snap = (10.0 * width).max(1e-9 * span);
    let tps = traj.problem.turning_points()?;

    let nodes = traj.nodes();
    let sign = |u: f64| -> i8 {
        if u > band {
            1
        } else if u < -band {
            -1
        } else {
            0
        }
    };
    let signs: Vec<i8> = nodes.iter().map(|n| sign(n.u)).collect();
    let n = nodes.len();

    let mut events: Vec<ZeroEvent> = vec![];

    if signs[0] == 0 {
        events.push(ZeroEvent {
            x: traj.a(),
            kind: ZeroKind::Endpoint,
            bracket: (traj.a(), traj.a()),
            associated_turning_point: None,
        });
    }

    let mut i = 0;
    while i + 1 < n {
        if signs[i] != 0 && signs[i + 1] != 0 {
            if signs[i] * signs[i + 1] == -1 {
                let x = refine_crossing(traj, nodes[i].x, nodes[i + 1].x, width);
                events.push(ZeroEvent {
                    x,
                    kind: ZeroKind::Crossing,
                    bracket: (nodes[i].x, nodes[i + 1].x),
                    associated_turning_point: None,
                });
            }
            i += 1;
            continue;
        }
        if signs[i + 1] == 0 {
            // Maximal run of in-band nodes starting at i+1.
            let start = i + 1;
            let mut end = start;
            while end + 1 < n && signs[end + 1] == 0 {
                end += 1;
            }
            if end == n - 1 {
                // Run touches b: endpoint zero.
                events.push(ZeroEvent {
                    x: traj.b(),
                    kind: ZeroKind::Endpoint,
                    bracket: (traj.b(), traj.b()),
                    associated_turning_point: None,
                });
                break;
            }
            if signs[i] == 0 {
                // Run touches a; already reported as an endpoint zero.
                i = end;
                continue;
            }
            let left = signs[i];
            let right = signs[end + 1];
            if left * right == -1 {
                let x = refine_crossing(traj, nodes[i].x, nodes[end + 1].x, width);
                events.push(ZeroEvent {
                    x,
                    kind: ZeroKind::Crossing,
                    bracket: (nodes[i].x, nodes[end + 1].x),
                    associated_turning_point: None,
                });
            } else {
                // Bounce: vertex at the smallest |u| node of the run.
                let vertex = (start..=end)
                    .min_by(|a, b| nodes[*a].u.abs().total_cmp(&nodes[*b].u.abs()))
                    .unwrap();
                let x = nodes[vertex].x;
                let tp = nearest_turning_point(&tps, x);
                match tp {
                    Some(c) if (c - x).abs() <= snap => events.push(ZeroEvent {
                        x: c,
                        kind: ZeroKind::Tangential,
                        bracket: (nodes[i].x, nodes[end + 1].x),
                        associated_turning_point: Some(c),
                    }),
                    _ => return Err(Error::AnomalousTangentialZero { x }),
                }
            }
            i = end + 1;
            continue;
        }
        i += 1;
    }

    events.sort_by(|a, b| a.x.total_cmp(&b.x));
    events.dedup_by(|a, b| (a.x - b.x).abs() <= snap && a.kind == b.kind);
    Ok(ZeroSet {
        events,
        scale,
        tol_zero: tols.tol_zero,
        tol_bounce: tols.tol_bounce,
    })
}

fn nearest_turning_point(tps: &[TurningPoint], x: f64) -> Option<f64> {
    tps.iter()
        .map(|t| t.location)
        .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))
}

fn refine_crossing(traj: &Trajectory, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    let mut flo = traj.u(lo);
    if flo == 0.0 {
        return lo;
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = traj.u(mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// Count zeros, tangential ones once; endpoints only when asked for.
pub fn count_zeros(zs: &ZeroSet, include_endpoints: bool) -> usize {
    zs.count(include_endpoints)
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GapCheck {
    Ok,
    Violation { x1: f64, x2: f64 },
}

/// Non-accumulation guard: consecutive zeros must be at least eps_gap apart.
pub fn min_gap_guard(zs: &ZeroSet, eps_gap: f64) -> GapCheck {
    let xs = zs.positions();
    for w in xs.windows(2) {
        if w[1] - w[0] < eps_gap {
            return GapCheck::Violation { x1: w[0], x2: w[1] };
        }
    }
    GapCheck::Ok
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub lo: f64,
    pub hi: f64,
    /// Number of zeros of the other solution in (lo, hi); SSP demands 1.
    pub count: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Trichotomy {
    NoZeros,
    SingleBounce { c: f64 },
    TwoCrossings { x0: f64, x1: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct SspReport {
    pub verdict: Verdict,
    pub zeros1: ZeroSet,
    pub zeros2: ZeroSet,
    pub witness: Option<Witness>,
    pub trichotomy: Option<Trichotomy>,
}

/// Sturm separation check: between every pair of consecutive zeros of one
/// solution the other must vanish exactly once, in both directions.
/// Endpoint zeros count as zeros. Vacuously holds when neither solution has
/// two zeros.
pub fn interlace_check(z1: &ZeroSet, z2: &ZeroSet, interval: (f64, f64)) -> SspReport {
    let in_range =
        |x: f64| interval.0 <= x && x <= interval.1;
    let xs1: Vec<f64> = z1.positions().into_iter().filter(|x| in_range(*x)).collect();
    let xs2: Vec<f64> = z2.positions().into_iter().filter(|x| in_range(*x)).collect();

    let witness = find_witness(&xs1, &xs2).or_else(|| find_witness(&xs2, &xs1));
    SspReport {
        verdict: if witness.is_some() {
            Verdict::Fails
        } else {
            Verdict::Holds
        },
        zeros1: z1.clone(),
        zeros2: z2.clone(),
        witness,
        trichotomy: None,
    }
}

fn find_witness(own: &[f64], other: &[f64]) -> Option<Witness> {
    for w in own.windows(2) {
        let count = other.iter().filter(|x| w[0] < **x && **x < w[1]).count();
        if count != 1 {
            return Some(Witness {
                lo: w[0],
                hi: w[1],
                count,
            });
        }
    }
    None
}

/// Classify an independent solution against the single-turning-point
/// trichotomy. `traj1` must vanish at both ends and nowhere inside.
pub fn classify_th0(
    problem: &ProblemSpec,
    traj1: &Trajectory,
    traj2: &Trajectory,
    tols: &ZeroTols,
) -> Result<Trichotomy> {
    let tps = problem.turning_points()?;
    if tps.len() != 1 {
        return Err(Error::PreconditionFailed(format!(
            "expected exactly one turning point, found {}",
            tps.len()
        )));
    }
    let z1 = locate_zeros(traj1, tols)?;
    if z1.interior().count() != 0 || z1.count(true) != 2 {
        return Err(Error::PreconditionFailed(
            "reference solution must vanish exactly at the endpoints".into(),
        ));
    }
    let w = crate::integrate::wronskian(traj1, traj2, problem.a)?;
    if w.abs() <= 1e-9 * traj1.u_scale().max(1.0) * traj2.u_scale().max(1.0) {
        return Err(Error::PreconditionFailed(
            "solutions are not independent (Wronskian ~ 0)".into(),
        ));
    }

    let z2 = locate_zeros(traj2, tols)?;
    let interior: Vec<&ZeroEvent> = z2.interior().collect();
    match interior.as_slice() {
        [] => {
            if z2.count(true) == 0 {
                Ok(Trichotomy::NoZeros)
            } else {
                Err(Error::TrichotomyViolation(
                    "independent solution vanishes at an endpoint".into(),
                ))
            }
        }
        [e] if e.kind == ZeroKind::Tangential => Ok(Trichotomy::SingleBounce { c: e.x }),
        [e0, e1] if e0.kind == ZeroKind::Crossing && e1.kind == ZeroKind::Crossing => {
            Ok(Trichotomy::TwoCrossings { x0: e0.x, x1: e1.x })
        }
        other => Err(Error::TrichotomyViolation(format!(
            "unexpected interior zero pattern: {:?}",
            other
                .iter()
                .map(|e| (e.x, e.kind))
                .collect::<Vec<_>>()
        ))),
    }
}
