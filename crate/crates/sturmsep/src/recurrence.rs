//! Reduction of an alternating piecewise problem to a three-term recurrence,
//! recurrence stepping, polygonal solutions and their zeros, Moulton's
//! criterion and the sum-of-inverse-c failure condition.
//!
//! Storage convention: `c[i]` holds c_{i-1} and `q[n]` holds the integral of
//! q over the n-th interior q-block, so seeds are (y_{-1}, y_0) and the
//! recurrence c_n y_{n+1} + c_{n-1} y_{n-1} - d_n y_n = 0 runs for
//! n = 0 .. m-1 with d_n = c_n + c_{n-1} + Q_n (the form consistent with the
//! difference equation; see `difference_residual`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::zeros::{ZeroEvent, ZeroKind, ZeroSet};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// 1/p not identically zero, q = 0: contributes a coefficient c_n.
    PBlock,
    /// 1/p = 0 (p infinite): contributes an integral Q_n of q.
    QBlock,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    pub lo: f64,
    pub hi: f64,
}

/// The alternating block structure of a reducible problem, plus the a_n
/// points at which y_n = u(a_n) samples the continuous solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtkinsonPartition {
    pub blocks: Vec<Block>,
    pub node_points: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Recurrence {
    /// c_{-1}, c_0, ..., c_{m-1}; all non-zero.
    pub c: Vec<f64>,
    /// Q_0, ..., Q_{m-1}.
    #[serde(rename = "Q")]
    pub q: Vec<f64>,
}

impl Recurrence {
    pub fn new(c: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        if c.len() != q.len() + 1 {
            return Err(Error::InvalidConfig(format!(
                "need len(c) = len(Q) + 1, got {} and {}",
                c.len(),
                q.len()
            )));
        }
        if let Some(i) = c.iter().position(|x| *x == 0.0) {
            return Err(Error::ZeroRecurrenceCoefficient { index: i });
        }
        Ok(Recurrence { c, q })
    }

    /// Number of forward steps (indices n = 0 .. m-1).
    pub fn m(&self) -> usize {
        self.q.len()
    }

    fn c_at(&self, n: isize) -> f64 {
        self.c[(n + 1) as usize]
    }

    pub fn d(&self, n: usize) -> f64 {
        self.c_at(n as isize) + self.c_at(n as isize - 1) + self.q[n]
    }
}

/// A recurrence solution as the piecewise-linear curve through (n, y_n).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonSolution {
    pub start_index: i64,
    pub values: Vec<f64>,
}

impl PolygonSolution {
    pub fn vertices(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, y)| (self.start_index + i as i64, *y))
    }

    pub fn write_csv<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "n,y")?;
        for (n, y) in self.vertices() {
            writeln!(w, "{n},{y:.17e}")?;
        }
        Ok(())
    }
}

/// Forward solve y_{n+1} = (d_n y_n - c_{n-1} y_{n-1}) / c_n from the seed
/// pair (y_{-1}, y_0).
pub fn step(rec: &Recurrence, seeds: (f64, f64)) -> Result<PolygonSolution> {
    if seeds.0 == 0.0 && seeds.1 == 0.0 {
        return Err(Error::InvalidInitialCondition(
            "trivial recurrence seeds (0, 0)".into(),
        ));
    }
    let mut values = Vec::with_capacity(rec.m() + 2);
    values.push(seeds.0);
    values.push(seeds.1);
    for n in 0..rec.m() {
        let ym1 = values[n];
        let y0 = values[n + 1];
        let cn = rec.c_at(n as isize);
        let y1 = (rec.d(n) * y0 - rec.c_at(n as isize - 1) * ym1) / cn;
        values.push(y1);
    }
    Ok(PolygonSolution {
        start_index: -1,
        values,
    })
}

/// Residual of the difference form -(c_n Dy_n - c_{n-1} Dy_{n-1}) + Q_n y_n
/// at every interior index, relative to the polygon's scale. Zero to machine
/// precision for polygons produced by `step`.
pub fn difference_residual(rec: &Recurrence, poly: &PolygonSolution) -> f64 {
    let y = &poly.values;
    let scale = y.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let cscale = rec.c.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0_f64;
    for n in 0..rec.m() {
        let dy_prev = y[n + 1] - y[n];
        let dy = y[n + 2] - y[n + 1];
        let r = -(rec.c_at(n as isize) * dy - rec.c_at(n as isize - 1) * dy_prev)
            + rec.q[n] * y[n + 1];
        worst = worst.max(r.abs() / (scale * cscale.max(1.0)));
    }
    worst
}

/// Zeros of the polygonal curve. A vertex exactly at zero is a crossing when
/// its neighbors have opposite signs and tangential otherwise; endpoint
/// vertices at zero are reported as endpoint zeros.
pub fn polygon_zeros(poly: &PolygonSolution) -> Result<ZeroSet> {
    let scale = poly.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Err(Error::PreconditionFailed("trivial polygon".into()));
    }
    let band = 1e-12 * scale;
    let sign = |y: f64| -> i8 {
        if y > band {
            1
        } else if y < -band {
            -1
        } else {
            0
        }
    };
    let vs: Vec<(i64, f64)> = poly.vertices().collect();
    let n = vs.len();
    let mut events = vec![];
    for (i, (idx, y)) in vs.iter().enumerate() {
        let s = sign(*y);
        if s == 0 {
            let kind = if i == 0 || i == n - 1 {
                ZeroKind::Endpoint
            } else {
                let sl = sign(vs[i - 1].1);
                let sr = sign(vs[i + 1].1);
                if sl * sr == -1 {
                    ZeroKind::Crossing
                } else {
                    ZeroKind::Tangential
                }
            };
            events.push(ZeroEvent {
                x: *idx as f64,
                kind,
                bracket: (*idx as f64 - 1.0, *idx as f64 + 1.0),
                associated_turning_point: None,
            });
        }
        if i + 1 < n {
            let (s0, s1) = (s, sign(vs[i + 1].1));
            if s0 * s1 == -1 {
                let t = y / (y - vs[i + 1].1);
                events.push(ZeroEvent {
                    x: *idx as f64 + t,
                    kind: ZeroKind::Crossing,
                    bracket: (*idx as f64, *idx as f64 + 1.0),
                    associated_turning_point: None,
                });
            }
        }
    }
    events.sort_by(|a, b| a.x.total_cmp(&b.x));
    Ok(ZeroSet {
        events,
        scale,
        tol_zero: band,
        tol_bounce: band,
    })
}

/// Moulton's sufficient condition: c_n c_{n-1} > 0 for all n guarantees the
/// separation property. False says nothing by itself.
pub fn moulton_check(rec: &Recurrence) -> bool {
    rec.c.windows(2).all(|w| w[0] * w[1] > 0.0)
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct C22Check {
    pub sum_inv_c: f64,
    /// True iff the recurrence has the pure form d_n = c_n + c_{n-1}
    /// (all Q_n = 0) and the inverse coefficients sum to zero, the regime in
    /// which separation provably fails.
    pub applies: bool,
}

pub fn c22_check(rec: &Recurrence, tol: f64) -> C22Check {
    let sum_inv_c: f64 = rec.c[1..].iter().map(|c| 1.0 / c).sum();
    let pure = rec.q.iter().all(|x| *x == 0.0);
    C22Check {
        sum_inv_c,
        applies: pure && sum_inv_c.abs() <= tol,
    }
}

/// Reduce an alternating problem to its recurrence. c_n^{-1} is the
/// closed-form integral of 1/p over the n-th p-block; Q_n the integral of q
/// over the n-th interior q-block. Leading and trailing q-blocks only shift
/// v and do not enter the y-recurrence.
pub fn atkinson_reduce(problem: &ProblemSpec) -> Result<(AtkinsonPartition, Recurrence)> {
    let mut blocks = vec![];
    for (i, s) in problem.segments.iter().enumerate() {
        let p_inf = s.inv_p.is_identically_zero();
        let q_zero = s.q.is_identically_zero();
        let kind = if p_inf && !q_zero {
            BlockKind::QBlock
        } else if !p_inf && q_zero {
            BlockKind::PBlock
        } else if p_inf && q_zero {
            return Err(Error::BadAtkinsonBlock {
                segment: i,
                reason: "both 1/p and q vanish identically".into(),
            });
        } else {
            return Err(Error::BadAtkinsonBlock {
                segment: i,
                reason: "neither p = infinity nor q = 0 on the segment".into(),
            });
        };
        if let Some(prev) = blocks.last() {
            let prev: &Block = prev;
            if prev.kind == kind {
                return Err(Error::BadAtkinsonBlock {
                    segment: i,
                    reason: "blocks do not alternate".into(),
                });
            }
        }
        blocks.push(Block {
            kind,
            lo: s.lo,
            hi: s.hi,
        });
    }

    let p_blocks: Vec<&Block> = blocks.iter().filter(|b| b.kind == BlockKind::PBlock).collect();
    if p_blocks.is_empty() {
        return Err(Error::BadAtkinsonBlock {
            segment: 0,
            reason: "no p-block present".into(),
        });
    }

    let mut c = vec![];
    for (j, b) in p_blocks.iter().enumerate() {
        let seg = problem.segment_at(0.5 * (b.lo + b.hi));
        let inv = seg.inv_p.integral(b.lo, b.hi);
        if inv.abs() < 1e-14 * (b.hi - b.lo) {
            return Err(Error::InfiniteRecurrenceCoefficient { block: j });
        }
        c.push(1.0 / inv);
    }

    // Interior q-blocks sit strictly between two p-blocks.
    let mut q = vec![];
    for w in p_blocks.windows(2) {
        let (lo, hi) = (w[0].hi, w[1].lo);
        if hi > lo {
            let seg = problem.segment_at(0.5 * (lo + hi));
            q.push(seg.q.integral(lo, hi));
        } else {
            q.push(0.0);
        }
    }

    let mut node_points = vec![p_blocks[0].lo];
    node_points.extend(p_blocks.iter().map(|b| b.hi));

    let partition = AtkinsonPartition {
        blocks,
        node_points,
    };
    Ok((partition, Recurrence::new(c, q)?))
}

/// The Fibonacci recurrence y_{n+1} = y_n + y_{n-1} expressed in the
/// alternating-coefficient encoding (c_{n-1} = (-1)^n, Q_n = c_n).
pub fn fibonacci(m: usize) -> Recurrence {
    let c: Vec<f64> = (0..=m).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let q: Vec<f64> = (0..m).map(|n| c[n + 1]).collect();
    Recurrence::new(c, q).unwrap()
}

/// y_{n+1} = y_{n-1}: the corollary's counterexample with alternating c and
/// no q term.
pub fn alternating_c(m: usize) -> Recurrence {
    let c: Vec<f64> = (0..=m).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    Recurrence::new(c, vec![0.0; m]).unwrap()
}

/// y_{n+1} = -y_{n-1}: all-positive c, so Moulton's criterion applies.
pub fn negated_alternator(m: usize) -> Recurrence {
    Recurrence::new(vec![1.0; m + 1], vec![-2.0; m]).unwrap()
}
