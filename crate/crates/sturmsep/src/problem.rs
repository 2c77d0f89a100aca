//! Coefficient primitives, piecewise problems, turning points and the
//! primitive P(x) = \int_a^x ds/p(s).
//!
//! The model stores 1/p, never p, so "p infinite on a block" is the regular
//! value `inv_p = Const { 0 }`.

use serde::{Deserialize, Serialize};

/// Minimum turning-point separation, as a fraction of (b - a).
pub const EPS_SEP_REL: f64 = 1e-6;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Wave {
    Sin,
    Cos,
}

/// A coefficient primitive. Each kind is bounded on bounded intervals and has
/// a closed-form antiderivative, so 1/p, q are L^1 by construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FunctionSpec {
    Const {
        value: f64,
    },
    /// coefficients[i] multiplies x^i; degree capped at 3.
    Poly {
        coefficients: Vec<f64>,
    },
    Trig {
        amplitude: f64,
        omega: f64,
        phase: f64,
        wave: Wave,
    },
    /// `left` for x < pivot, `right` for x >= pivot.
    SignStep {
        pivot: f64,
        left: f64,
        right: f64,
    },
}

impl FunctionSpec {
    pub fn zero() -> Self {
        FunctionSpec::Const { value: 0.0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            FunctionSpec::Const { value } => *value,
            FunctionSpec::Poly { coefficients } => {
                coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c)
            }
            FunctionSpec::Trig {
                amplitude,
                omega,
                phase,
                wave,
            } => {
                let arg = omega * x + phase;
                match wave {
                    Wave::Sin => amplitude * arg.sin(),
                    Wave::Cos => amplitude * arg.cos(),
                }
            }
            FunctionSpec::SignStep { pivot, left, right } => {
                if x < *pivot {
                    *left
                } else {
                    *right
                }
            }
        }
    }

    /// Continuous antiderivative, valid across a SignStep pivot.
    pub fn antiderivative(&self, x: f64) -> f64 {
        match self {
            FunctionSpec::Const { value } => value * x,
            FunctionSpec::Poly { coefficients } => {
                let mut acc = 0.0;
                for (i, c) in coefficients.iter().enumerate().rev() {
                    acc = acc * x + c / (i as f64 + 1.0);
                }
                acc * x
            }
            FunctionSpec::Trig {
                amplitude,
                omega,
                phase,
                wave,
            } => {
                let arg = omega * x + phase;
                match wave {
                    Wave::Sin => -amplitude * arg.cos() / omega,
                    Wave::Cos => amplitude * arg.sin() / omega,
                }
            }
            FunctionSpec::SignStep { pivot, left, right } => {
                if x < *pivot {
                    left * (x - pivot)
                } else {
                    right * (x - pivot)
                }
            }
        }
    }

    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        self.antiderivative(hi) - self.antiderivative(lo)
    }

    /// True iff the primitive is identically zero as a function.
    pub fn is_identically_zero(&self) -> bool {
        match self {
            FunctionSpec::Const { value } => *value == 0.0,
            FunctionSpec::Poly { coefficients } => coefficients.iter().all(|c| *c == 0.0),
            FunctionSpec::Trig { amplitude, .. } => *amplitude == 0.0,
            FunctionSpec::SignStep { left, right, .. } => *left == 0.0 && *right == 0.0,
        }
    }

    /// True iff the primitive vanishes identically on (lo, hi).
    /// The interval must not straddle a SignStep pivot.
    pub fn is_zero_on(&self, lo: f64, hi: f64) -> bool {
        match self {
            FunctionSpec::SignStep { pivot, left, right } => {
                if 0.5 * (lo + hi) < *pivot {
                    *left == 0.0
                } else {
                    *right == 0.0
                }
            }
            _ => self.is_identically_zero(),
        }
    }

    /// Interior points of (lo, hi) at which the primitive is discontinuous
    /// or non-smooth; integration steps never cross these.
    pub fn breakpoints(&self, lo: f64, hi: f64, out: &mut Vec<f64>) {
        if let FunctionSpec::SignStep { pivot, .. } = self {
            if lo < *pivot && *pivot < hi {
                out.push(*pivot);
            }
        }
    }

    /// Roots in the open interval (lo, hi) at which the function changes sign,
    /// sorted ascending. Roots without a sign change (tangential polynomial
    /// zeros) are excluded.
    pub fn sign_change_roots(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self {
            FunctionSpec::Const { .. } => vec![],
            FunctionSpec::SignStep { pivot, left, right } => {
                if lo < *pivot && *pivot < hi && left * right < 0.0 {
                    vec![*pivot]
                } else {
                    vec![]
                }
            }
            FunctionSpec::Trig {
                amplitude,
                omega,
                phase,
                wave,
            } => {
                if *amplitude == 0.0 {
                    return vec![];
                }
                // Zeros of sin(wx+f) at wx+f = k*pi; cos at k*pi + pi/2.
                let offset = match wave {
                    Wave::Sin => 0.0,
                    Wave::Cos => std::f64::consts::FRAC_PI_2,
                };
                let mut roots = vec![];
                let (alo, ahi) = {
                    let a = omega * lo + phase;
                    let b = omega * hi + phase;
                    (a.min(b), a.max(b))
                };
                let k0 = ((alo - offset) / std::f64::consts::PI).floor() as i64 - 1;
                let k1 = ((ahi - offset) / std::f64::consts::PI).ceil() as i64 + 1;
                for k in k0..=k1 {
                    let arg = offset + k as f64 * std::f64::consts::PI;
                    let x = (arg - phase) / omega;
                    if lo < x && x < hi {
                        roots.push(x);
                    }
                }
                roots.sort_by(f64::total_cmp);
                roots
            }
            FunctionSpec::Poly { coefficients } => poly_sign_change_roots(coefficients, lo, hi),
        }
    }

    /// Structural check that `self == factor * other` as functions, used by
    /// the closed-form solution path (q = -lambda * 1/p).
    pub fn is_scaled(&self, other: &FunctionSpec, factor: f64, rel_tol: f64) -> bool {
        let close = |a: f64, b: f64| {
            let scale = 1.0_f64.max(a.abs()).max(b.abs());
            (a - b).abs() <= rel_tol * scale
        };
        if self.is_identically_zero() && other.is_identically_zero() {
            return true;
        }
        match (self, other) {
            (FunctionSpec::Const { value: a }, FunctionSpec::Const { value: b }) => {
                close(*a, factor * b)
            }
            (
                FunctionSpec::Poly { coefficients: a },
                FunctionSpec::Poly { coefficients: b },
            ) => {
                let n = a.len().max(b.len());
                (0..n).all(|i| {
                    let ca = a.get(i).copied().unwrap_or(0.0);
                    let cb = b.get(i).copied().unwrap_or(0.0);
                    close(ca, factor * cb)
                })
            }
            (
                FunctionSpec::Trig {
                    amplitude: aa,
                    omega: wa,
                    phase: pa,
                    wave: ka,
                },
                FunctionSpec::Trig {
                    amplitude: ab,
                    omega: wb,
                    phase: pb,
                    wave: kb,
                },
            ) => ka == kb && close(*wa, *wb) && close(*pa, *pb) && close(*aa, factor * ab),
            (
                FunctionSpec::SignStep {
                    pivot: pa,
                    left: la,
                    right: ra,
                },
                FunctionSpec::SignStep {
                    pivot: pb,
                    left: lb,
                    right: rb,
                },
            ) => close(*pa, *pb) && close(*la, factor * lb) && close(*ra, factor * rb),
            _ => false,
        }
    }
}

/// Sign-change roots of a polynomial of degree <= 3 in (lo, hi), found by
/// splitting at critical points and bisecting monotone pieces.
fn poly_sign_change_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let deg = coeffs.iter().rposition(|c| *c != 0.0).unwrap_or(0);
    if deg == 0 {
        return vec![];
    }
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);

    // Critical points: roots of the derivative (degree <= 2).
    let mut splits = vec![lo];
    if deg >= 2 {
        let d: Vec<f64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| i as f64 * c)
            .collect();
        let (c0, c1, c2) = (
            d.first().copied().unwrap_or(0.0),
            d.get(1).copied().unwrap_or(0.0),
            d.get(2).copied().unwrap_or(0.0),
        );
        if c2 != 0.0 {
            let disc = c1 * c1 - 4.0 * c2 * c0;
            if disc >= 0.0 {
                let s = disc.sqrt();
                let q = -0.5 * (c1 + c1.signum() * s);
                let q = if q == 0.0 { -0.5 * c1 } else { q };
                for r in [q / c2, if q != 0.0 { c0 / q } else { f64::NAN }] {
                    if r.is_finite() && lo < r && r < hi {
                        splits.push(r);
                    }
                }
            }
        } else if c1 != 0.0 {
            let r = -c0 / c1;
            if lo < r && r < hi {
                splits.push(r);
            }
        }
    }
    splits.push(hi);
    splits.sort_by(f64::total_cmp);
    splits.dedup();

    let mut roots = vec![];
    for w in splits.windows(2) {
        let (mut xl, mut xr) = (w[0], w[1]);
        let (mut fl, fr) = (eval(xl), eval(xr));
        if fl == 0.0 || fl * fr >= 0.0 {
            continue;
        }
        for _ in 0..200 {
            let xm = 0.5 * (xl + xr);
            if xm <= xl || xm >= xr {
                break;
            }
            let fm = eval(xm);
            if fm == 0.0 {
                xl = xm;
                break;
            }
            if fl * fm < 0.0 {
                xr = xm;
            } else {
                xl = xm;
                fl = fm;
            }
        }
        let r = 0.5 * (xl + xr);
        if lo < r && r < hi {
            roots.push(r);
        }
    }
    roots
}

/// One piece of a piecewise problem. `inv_p` is 1/p; `inv_p = Const{0}`
/// encodes p = infinity on the piece.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub inv_p: FunctionSpec,
    pub q: FunctionSpec,
}

/// -(py')' + qy = 0 on [a, b], encoded in system form through 1/p and q on
/// contiguous segments. The single source of truth for coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    #[serde(default)]
    pub label: String,
    pub a: f64,
    pub b: f64,
    pub segments: Vec<Segment>,
}

/// An interior point where 1/p changes sign a.e. `direction = +1` means
/// negative to positive, left to right.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TurningPoint {
    pub location: f64,
    pub direction: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Index of the offending segment, when one is identifiable.
    pub segment: Option<usize>,
    pub rule: String,
}

impl ProblemSpec {
    pub fn new(label: &str, a: f64, b: f64, segments: Vec<Segment>) -> Self {
        ProblemSpec {
            label: label.to_string(),
            a,
            b,
            segments,
        }
    }

    /// Single-segment convenience constructor.
    pub fn single(label: &str, a: f64, b: f64, inv_p: FunctionSpec, q: FunctionSpec) -> Self {
        ProblemSpec::new(label, a, b, vec![Segment { lo: a, hi: b, inv_p, q }])
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    pub fn eps_sep(&self) -> f64 {
        EPS_SEP_REL * self.len()
    }

    /// Index of the segment containing x; boundary points resolve to the
    /// right, b resolves to the last segment.
    pub fn segment_index(&self, x: f64) -> usize {
        for (i, s) in self.segments.iter().enumerate() {
            if x < s.hi {
                return i;
            }
        }
        self.segments.len().saturating_sub(1)
    }

    pub fn segment_at(&self, x: f64) -> &Segment {
        &self.segments[self.segment_index(x)]
    }

    pub fn inv_p_at(&self, x: f64) -> f64 {
        self.segment_at(x).inv_p.eval(x)
    }

    pub fn q_at(&self, x: f64) -> f64 {
        self.segment_at(x).q.eval(x)
    }

    /// The paper's standing hypotheses, checked structurally. Empty result
    /// means the problem is admissible.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = vec![];
        let mut push = |segment: Option<usize>, rule: String| out.push(Violation { segment, rule });

        if !(self.a < self.b) {
            push(None, format!("interval [{}, {}] is empty", self.a, self.b));
            return out;
        }
        if self.segments.is_empty() {
            push(None, "segments list is empty".into());
            return out;
        }

        let tol = 1e-12 * self.len().max(1.0);
        if (self.segments[0].lo - self.a).abs() > tol {
            push(Some(0), format!("first segment starts at {}, not a = {}", self.segments[0].lo, self.a));
        }
        if (self.segments.last().unwrap().hi - self.b).abs() > tol {
            push(
                Some(self.segments.len() - 1),
                format!("last segment ends at {}, not b = {}", self.segments.last().unwrap().hi, self.b),
            );
        }
        for (i, s) in self.segments.iter().enumerate() {
            if !(s.lo < s.hi) {
                push(Some(i), format!("segment [{}, {}] is empty or reversed", s.lo, s.hi));
            }
            if i > 0 {
                let prev = &self.segments[i - 1];
                let d = s.lo - prev.hi;
                if d > tol {
                    push(Some(i), format!("gap between {} and {}", prev.hi, s.lo));
                } else if d < -tol {
                    push(Some(i), format!("overlap between {} and {}", prev.hi, s.lo));
                }
            }
            if s.inv_p.is_identically_zero() && s.q.is_identically_zero() {
                push(Some(i), "both 1/p and q vanish identically on segment".into());
            }
            if let FunctionSpec::Poly { coefficients } = &s.inv_p {
                if coefficients.is_empty() {
                    push(Some(i), "empty polynomial coefficient list in 1/p".into());
                } else if coefficients.len() > 4 {
                    push(Some(i), "polynomial degree above 3 in 1/p".into());
                }
            }
            if let FunctionSpec::Poly { coefficients } = &s.q {
                if coefficients.is_empty() {
                    push(Some(i), "empty polynomial coefficient list in q".into());
                } else if coefficients.len() > 4 {
                    push(Some(i), "polynomial degree above 3 in q".into());
                }
            }
            if let FunctionSpec::Trig { omega, .. } = &s.inv_p {
                if *omega == 0.0 {
                    push(Some(i), "omega = 0 in 1/p".into());
                }
            }
            if let FunctionSpec::Trig { omega, .. } = &s.q {
                if *omega == 0.0 {
                    push(Some(i), "omega = 0 in q".into());
                }
            }
        }

        if self
            .segments
            .iter()
            .all(|s| s.inv_p.is_identically_zero())
        {
            push(None, "1/p vanishes a.e. on all of [a, b]".into());
        }

        if out.is_empty() {
            let tps = self.turning_points_unchecked();
            for w in tps.windows(2) {
                if w[1].location - w[0].location < self.eps_sep() {
                    out.push(Violation {
                        segment: None,
                        rule: format!(
                            "turning points at {} and {} closer than eps_sep = {}",
                            w[0].location,
                            w[1].location,
                            self.eps_sep()
                        ),
                    });
                }
            }
        }
        out
    }

    /// Sign changes of 1/p in (a, b), sorted. Zeros of 1/p without a sign
    /// change are not turning points, and a sign change across a block where
    /// 1/p vanishes identically has no single turning point either.
    pub fn turning_points(&self) -> crate::error::Result<Vec<TurningPoint>> {
        let tps = self.turning_points_unchecked();
        for w in tps.windows(2) {
            if w[1].location - w[0].location < self.eps_sep() {
                return Err(crate::error::Error::InvalidProblem(format!(
                    "turning points at {} and {} violate the isolation bound {}",
                    w[0].location,
                    w[1].location,
                    self.eps_sep()
                )));
            }
        }
        Ok(tps)
    }

    fn turning_points_unchecked(&self) -> Vec<TurningPoint> {
        // Constant-sign regions of 1/p over the whole interval.
        let mut regions: Vec<(f64, f64, i8)> = vec![];
        for s in &self.segments {
            let mut cuts = vec![s.lo];
            cuts.extend(s.inv_p.sign_change_roots(s.lo, s.hi));
            cuts.push(s.hi);
            for w in cuts.windows(2) {
                let sign = if s.inv_p.is_zero_on(w[0], w[1]) {
                    0
                } else {
                    let v = s.inv_p.eval(0.5 * (w[0] + w[1]));
                    if v > 0.0 {
                        1
                    } else if v < 0.0 {
                        -1
                    } else {
                        0
                    }
                };
                match regions.last_mut() {
                    Some(last) if last.2 == sign => last.1 = w[1],
                    _ => regions.push((w[0], w[1], sign)),
                }
            }
        }

        let mut tps = vec![];
        for w in regions.windows(2) {
            let (l, r) = (&w[0], &w[1]);
            if l.2 * r.2 == -1 {
                let x = l.1;
                if self.a < x && x < self.b {
                    tps.push(TurningPoint {
                        location: x,
                        direction: r.2,
                    });
                }
            }
        }
        tps
    }

    /// P(x) = \int_a^x ds/p(s), accumulated segment-by-segment in closed form.
    pub fn primitive_p(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for s in &self.segments {
            if x <= s.lo {
                break;
            }
            let hi = x.min(s.hi);
            acc += s.inv_p.integral(s.lo, hi);
        }
        acc
    }

    /// Interior points integration steps must not cross: segment boundaries,
    /// SignStep pivots and turning points, all within (a, b).
    pub fn forced_breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![];
        for s in &self.segments {
            if s.lo > self.a {
                pts.push(s.lo);
            }
            s.inv_p.breakpoints(s.lo, s.hi, &mut pts);
            s.q.breakpoints(s.lo, s.hi, &mut pts);
        }
        for tp in self.turning_points_unchecked() {
            pts.push(tp.location);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts.retain(|x| self.a < *x && *x < self.b);
        pts
    }
}
