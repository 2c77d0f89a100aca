//! Carathéodory solutions of the first-order system u' = v/p, v' = qu with
//! dense output, the closed-form fast path for q = -lambda/p, and the
//! Wronskian of two solutions.
//!
//! The state carried across segment joins is (u, v): y and the
//! quasi-derivative py' are the absolutely continuous quantities, while
//! u' = v/p may jump. Inside each smooth piece an embedded Dormand-Prince
//! 5(4) pair is used; pieces with 1/p = 0 or q = 0 are advanced by exact
//! quadrature instead.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problem::{FunctionSpec, ProblemSpec};

/// Node-spacing cap: (b - a) / HMAX_DIV, kept small so downstream zero
/// location sees dense sign data even where the controller wants large steps.
pub const HMAX_DIV: f64 = 256.0;

#[derive(Copy, Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct InitialCondition {
    pub x0: f64,
    pub u0: f64,
    pub v0: f64,
}

impl InitialCondition {
    pub fn new(x0: f64, u0: f64, v0: f64) -> Self {
        InitialCondition { x0, u0, v0 }
    }
}

#[derive(Copy, Clone, Debug, serde::Serialize)]
pub struct Node {
    pub x: f64,
    pub u: f64,
    pub v: f64,
}

/// One cubic Hermite interval; intervals never straddle a coefficient
/// discontinuity.
#[derive(Copy, Clone, Debug)]
struct Hermite {
    x0: f64,
    x1: f64,
    u0: f64,
    u1: f64,
    du0: f64,
    du1: f64,
    v0: f64,
    v1: f64,
    dv0: f64,
    dv1: f64,
}

impl Hermite {
    fn eval(&self, x: f64) -> (f64, f64) {
        let h = self.x1 - self.x0;
        let t = (x - self.x0) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let u = h00 * self.u0 + h10 * h * self.du0 + h01 * self.u1 + h11 * h * self.du1;
        let v = h00 * self.v0 + h10 * h * self.dv0 + h01 * self.v1 + h11 * h * self.dv1;
        (u, v)
    }
}

/// A dense solution (u, v) = (y, py') over all of [a, b].
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub problem: Arc<ProblemSpec>,
    pub ic: InitialCondition,
    nodes: Vec<Node>,
    intervals: Vec<Hermite>,
}

impl Trajectory {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn a(&self) -> f64 {
        self.problem.a
    }

    pub fn b(&self) -> f64 {
        self.problem.b
    }

    fn interval_index(&self, x: f64) -> usize {
        let n = self.intervals.len();
        match self
            .intervals
            .binary_search_by(|iv| iv.x0.total_cmp(&x))
        {
            Ok(i) => i.min(n - 1),
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 1),
        }
    }

    pub fn eval(&self, x: f64) -> (f64, f64) {
        self.intervals[self.interval_index(x)].eval(x)
    }

    pub fn u(&self, x: f64) -> f64 {
        self.eval(x).0
    }

    pub fn v(&self, x: f64) -> f64 {
        self.eval(x).1
    }

    /// Sup-norm of u over the node grid; the scale used by relative
    /// zero-detection tolerances.
    pub fn u_scale(&self) -> f64 {
        self.nodes.iter().fold(0.0, |m, n| m.max(n.u.abs()))
    }

    pub fn v_scale(&self) -> f64 {
        self.nodes.iter().fold(0.0, |m, n| m.max(n.v.abs()))
    }

    /// The same curve with the roles of u and v exchanged, attributed to
    /// `problem` (used with the reciprocal problem, whose solutions are
    /// exactly the swapped pairs).
    pub fn swap_components(&self, problem: Arc<ProblemSpec>) -> Trajectory {
        Trajectory {
            problem,
            ic: InitialCondition::new(self.ic.x0, self.ic.v0, self.ic.u0),
            nodes: self
                .nodes
                .iter()
                .map(|n| Node {
                    x: n.x,
                    u: n.v,
                    v: n.u,
                })
                .collect(),
            intervals: self
                .intervals
                .iter()
                .map(|h| Hermite {
                    x0: h.x0,
                    x1: h.x1,
                    u0: h.v0,
                    u1: h.v1,
                    du0: h.dv0,
                    du1: h.dv1,
                    v0: h.u0,
                    v1: h.u1,
                    dv0: h.du0,
                    dv1: h.du1,
                })
                .collect(),
        }
    }

    pub fn write_csv<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "x,u,v")?;
        for n in &self.nodes {
            writeln!(w, "{:.17e},{:.17e},{:.17e}", n.x, n.u, n.v)?;
        }
        Ok(())
    }
}

/// SignStep evaluated by piece side, so stage evaluations at a piece end
/// never read across the discontinuity.
fn eval_in_piece(f: &FunctionSpec, x: f64, piece_mid: f64) -> f64 {
    match f {
        FunctionSpec::SignStep { pivot, left, right } => {
            if piece_mid < *pivot {
                *left
            } else {
                *right
            }
        }
        _ => f.eval(x),
    }
}

struct PieceCtx<'a> {
    inv_p: &'a FunctionSpec,
    q: &'a FunctionSpec,
    mid: f64,
}

impl PieceCtx<'_> {
    fn deriv(&self, x: f64, u: f64, v: f64) -> (f64, f64) {
        (
            eval_in_piece(self.inv_p, x, self.mid) * v,
            eval_in_piece(self.q, x, self.mid) * u,
        )
    }
}

// Dormand-Prince 5(4) tableau.
const DP_C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

struct Builder {
    intervals: Vec<Hermite>,
}

impl Builder {
    fn push(&mut self, iv: Hermite) {
        self.intervals.push(iv);
    }
}

#[allow(clippy::too_many_arguments)]
fn rk_piece(
    ctx: &PieceCtx,
    from: f64,
    to: f64,
    mut u: f64,
    mut v: f64,
    tol: f64,
    span: f64,
    hmax: f64,
    out: &mut Builder,
) -> Result<(f64, f64)> {
    let dir = (to - from).signum();
    let mut x = from;
    let mut h = dir * hmax.min((to - from).abs());
    let (mut du, mut dv) = ctx.deriv(x, u, v);
    let hmin = 1e-14 * span;

    while (to - x) * dir > 0.0 {
        if (x + h - to) * dir > 0.0 {
            h = to - x;
        }
        let mut k = [[0.0_f64; 2]; 7];
        k[0] = [du, dv];
        for s in 0..6 {
            let mut au = 0.0;
            let mut av = 0.0;
            for (j, kj) in k.iter().enumerate().take(s + 1) {
                au += DP_A[s][j] * kj[0];
                av += DP_A[s][j] * kj[1];
            }
            let (ku, kv) = ctx.deriv(x + DP_C[s] * h, u + h * au, v + h * av);
            k[s + 1] = [ku, kv];
        }
        // Stage 7 state is the 5th-order solution (FSAL).
        let mut nu = 0.0;
        let mut nv = 0.0;
        for (j, kj) in k.iter().enumerate().take(6) {
            nu += DP_A[5][j] * kj[0];
            nv += DP_A[5][j] * kj[1];
        }
        let unew = u + h * nu;
        let vnew = v + h * nv;

        let mut eu = 0.0;
        let mut ev = 0.0;
        for (j, kj) in k.iter().enumerate() {
            eu += DP_E[j] * kj[0];
            ev += DP_E[j] * kj[1];
        }
        eu *= h;
        ev *= h;

        // Error-per-unit-interval control: local error <= tol * |h| / span,
        // so the accumulated error over [a, b] stays O(tol).
        let budget = tol * h.abs() / span;
        let su = budget * (1.0 + u.abs().max(unew.abs()));
        let sv = budget * (1.0 + v.abs().max(vnew.abs()));
        let err = (eu.abs() / su).max(ev.abs() / sv);

        if err <= 1.0 {
            let (dun, dvn) = (k[6][0], k[6][1]);
            out.push(ordered(Hermite {
                x0: x,
                x1: x + h,
                u0: u,
                u1: unew,
                du0: du,
                du1: dun,
                v0: v,
                v1: vnew,
                dv0: dv,
                dv1: dvn,
            }));
            x += h;
            u = unew;
            v = vnew;
            du = dun;
            dv = dvn;
        }

        let fac = (0.9 * err.powf(-0.25)).clamp(0.2, 5.0);
        h *= fac;
        if h.abs() > hmax {
            h = dir * hmax;
        }
        if h.abs() < hmin && (to - x) * dir > hmin {
            return Err(Error::StepUnderflow { x });
        }
    }
    Ok((u, v))
}

fn ordered(h: Hermite) -> Hermite {
    if h.x0 <= h.x1 {
        h
    } else {
        Hermite {
            x0: h.x1,
            x1: h.x0,
            u0: h.u1,
            u1: h.u0,
            du0: h.du1,
            du1: h.du0,
            v0: h.v1,
            v1: h.v0,
            dv0: h.dv1,
            dv1: h.dv0,
        }
    }
}

/// Exact advance over a piece where 1/p or q vanishes identically; emits
/// uniform intervals no wider than hmax.
fn exact_piece(
    ctx: &PieceCtx,
    from: f64,
    to: f64,
    u: f64,
    v: f64,
    hmax: f64,
    out: &mut Builder,
) -> (f64, f64) {
    let p_zero = ctx.inv_p.is_zero_on(from.min(to), from.max(to));
    let n = ((to - from).abs() / hmax).ceil().max(1.0) as usize;
    let state = |x: f64| -> (f64, f64) {
        if p_zero {
            // u frozen; v advanced by exact quadrature of q * u.
            (u, v + u * ctx.q.integral(from, x))
        } else {
            // v frozen; u affine in the antiderivative of 1/p.
            (u + v * ctx.inv_p.integral(from, x), v)
        }
    };
    let mut prev_x = from;
    let (mut pu, mut pv) = (u, v);
    for i in 1..=n {
        let x = from + (to - from) * i as f64 / n as f64;
        let x = if i == n { to } else { x };
        let (cu, cv) = state(x);
        let (du0, dv0) = ctx.deriv(prev_x, pu, pv);
        let (du1, dv1) = ctx.deriv(x, cu, cv);
        out.push(ordered(Hermite {
            x0: prev_x,
            x1: x,
            u0: pu,
            u1: cu,
            du0,
            du1,
            v0: pv,
            v1: cv,
            dv0,
            dv1,
        }));
        prev_x = x;
        pu = cu;
        pv = cv;
    }
    (pu, pv)
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    problem: &ProblemSpec,
    cuts: &[f64],
    start: f64,
    end: f64,
    ic_u: f64,
    ic_v: f64,
    tol: f64,
    out: &mut Builder,
) -> Result<()> {
    let span = problem.len();
    let hmax = span / HMAX_DIV;
    let forward = end >= start;
    let mut pts: Vec<f64> = cuts
        .iter()
        .copied()
        .filter(|x| *x > start.min(end) && *x < start.max(end))
        .collect();
    pts.push(start);
    pts.push(end);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    if !forward {
        pts.reverse();
    }

    let (mut u, mut v) = (ic_u, ic_v);
    for w in pts.windows(2) {
        let (from, to) = (w[0], w[1]);
        let mid = 0.5 * (from + to);
        let seg = problem.segment_at(mid);
        let ctx = PieceCtx {
            inv_p: &seg.inv_p,
            q: &seg.q,
            mid,
        };
        let (lo, hi) = (from.min(to), from.max(to));
        if seg.inv_p.is_zero_on(lo, hi) || seg.q.is_zero_on(lo, hi) {
            let (nu, nv) = exact_piece(&ctx, from, to, u, v, hmax, out);
            u = nu;
            v = nv;
        } else {
            let (nu, nv) = rk_piece(&ctx, from, to, u, v, tol, span, hmax, out)?;
            u = nu;
            v = nv;
        }
    }
    Ok(())
}

fn finish(problem: Arc<ProblemSpec>, ic: InitialCondition, mut b: Builder) -> Trajectory {
    b.intervals.sort_by(|p, q| p.x0.total_cmp(&q.x0));
    let mut nodes: Vec<Node> = Vec::with_capacity(b.intervals.len() + 1);
    if let Some(first) = b.intervals.first() {
        nodes.push(Node {
            x: first.x0,
            u: first.u0,
            v: first.v0,
        });
    }
    for iv in &b.intervals {
        nodes.push(Node {
            x: iv.x1,
            u: iv.u1,
            v: iv.v1,
        });
    }
    Trajectory {
        problem,
        ic,
        nodes,
        intervals: b.intervals,
    }
}

fn integrate_impl(
    problem: Arc<ProblemSpec>,
    ic: InitialCondition,
    tol: f64,
    allow_trivial: bool,
) -> Result<Trajectory> {
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig(format!("tol must be positive, got {tol}")));
    }
    if !(problem.a <= ic.x0 && ic.x0 <= problem.b) {
        return Err(Error::InvalidInitialCondition(format!(
            "x0 = {} outside [{}, {}]",
            ic.x0, problem.a, problem.b
        )));
    }
    if !allow_trivial && ic.u0 == 0.0 && ic.v0 == 0.0 {
        return Err(Error::InvalidInitialCondition(
            "trivial initial data (0, 0)".into(),
        ));
    }

    let cuts = problem.forced_breakpoints();
    let mut b = Builder { intervals: vec![] };
    if ic.x0 < problem.b {
        sweep(&problem, &cuts, ic.x0, problem.b, ic.u0, ic.v0, tol, &mut b)?;
    }
    if ic.x0 > problem.a {
        sweep(&problem, &cuts, ic.x0, problem.a, ic.u0, ic.v0, tol, &mut b)?;
    }
    Ok(finish(problem, ic, b))
}

/// Integrate the system over all of [a, b] (both directions when x0 is
/// interior), with local error per step bounded by `tol` per unit interval.
pub fn integrate(problem: &ProblemSpec, ic: InitialCondition, tol: f64) -> Result<Trajectory> {
    integrate_impl(Arc::new(problem.clone()), ic, tol, false)
}

pub(crate) fn integrate_arc(
    problem: Arc<ProblemSpec>,
    ic: InitialCondition,
    tol: f64,
) -> Result<Trajectory> {
    integrate_impl(problem, ic, tol, false)
}

/// The closed-form general solution u = c1 cos(sqrt(lambda) P) +
/// c2 sin(sqrt(lambda) P), valid exactly when q = -lambda / p on every
/// segment; sampled on the same node grid contract as `integrate`.
pub fn closed_form_lemma2(
    problem: &ProblemSpec,
    lambda: f64,
    c1: f64,
    c2: f64,
) -> Result<Trajectory> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    for (i, s) in problem.segments.iter().enumerate() {
        if !s.q.is_scaled(&s.inv_p, -lambda, 1e-12) {
            return Err(Error::NotLemmaForm { segment: i });
        }
    }
    let rl = lambda.sqrt();
    let state = |x: f64| -> (f64, f64) {
        let s = rl * problem.primitive_p(x);
        (
            c1 * s.cos() + c2 * s.sin(),
            -c1 * rl * s.sin() + c2 * rl * s.cos(),
        )
    };

    let span = problem.len();
    let hmax = span / HMAX_DIV;
    let mut pts = problem.forced_breakpoints();
    pts.insert(0, problem.a);
    pts.push(problem.b);

    let mut b = Builder { intervals: vec![] };
    for w in pts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let seg = problem.segment_at(0.5 * (lo + hi));
        let ctx = PieceCtx {
            inv_p: &seg.inv_p,
            q: &seg.q,
            mid: 0.5 * (lo + hi),
        };
        let n = ((hi - lo) / hmax).ceil().max(1.0) as usize;
        let mut px = lo;
        let (mut pu, mut pv) = state(lo);
        for i in 1..=n {
            let x = if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 };
            let (cu, cv) = state(x);
            let (du0, dv0) = ctx.deriv(px, pu, pv);
            let (du1, dv1) = ctx.deriv(x, cu, cv);
            b.push(Hermite {
                x0: px,
                x1: x,
                u0: pu,
                u1: cu,
                du0,
                du1,
                v0: pv,
                v1: cv,
                dv0,
                dv1,
            });
            px = x;
            pu = cu;
            pv = cv;
        }
    }
    let (u0, v0) = state(problem.a);
    Ok(finish(
        Arc::new(problem.clone()),
        InitialCondition::new(problem.a, u0, v0),
        b,
    ))
}

/// u2(x) v1(x) - u1(x) v2(x); constant in x for solutions of the same problem.
pub fn wronskian(t1: &Trajectory, t2: &Trajectory, x: f64) -> Result<f64> {
    if t1.problem != t2.problem {
        return Err(Error::MismatchedProblems);
    }
    let (u1, v1) = t1.eval(x);
    let (u2, v2) = t2.eval(x);
    Ok(u2 * v1 - u1 * v2)
}

#[derive(Clone, Debug)]
pub struct ConjugacyShot {
    pub u_b: f64,
    pub conjugate: bool,
    pub trajectory: Trajectory,
}

/// Shoot the solution with (u, v)(a) = (0, 1); by linearity it is the unique
/// candidate (up to scale) for a solution vanishing at both ends.
pub fn conjugate_test(problem: &ProblemSpec, tol: f64) -> Result<ConjugacyShot> {
    let traj = integrate(problem, InitialCondition::new(problem.a, 0.0, 1.0), tol)?;
    let u_b = traj.u(problem.b);
    let conjugate = u_b.abs() <= tol.max(1e-9) * traj.u_scale().max(f64::MIN_POSITIVE);
    Ok(ConjugacyShot {
        u_b,
        conjugate,
        trajectory: traj,
    })
}
