//! Grid exploration of zero-count differences within the closed-form
//! family: piecewise-linear P profiles with q = -lambda * inv_p, where
//! every solution is a phase shift of cos(sqrt(lambda) P + phi) up to
//! scale, so a phase sweep is exhaustive.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrate::{closed_form_lemma2, Trajectory};
use crate::problem::{FunctionSpec, ProblemSpec, Segment};
use crate::zeros::{locate_zeros, ZeroTols};

/// Vertex heights of a piecewise-linear P profile over an equispaced grid
/// on [0, 1], with P(0) = heights[0] = 0. Turning points sit at strict
/// local extrema of the profile.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileFamily {
    pub name: String,
    pub heights: Vec<f64>,
    pub lambda_grid: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplorationRecord {
    pub profile: String,
    pub heights: Vec<f64>,
    pub lambda: f64,
    pub phase: f64,
    pub n: usize,
    pub count2: usize,
    pub k: usize,
    pub n_open: usize,
    pub k_open: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepOutcome {
    pub records: Vec<ExplorationRecord>,
    /// Achieved k values per anchor zero count n, over all records.
    pub summary: BTreeMap<usize, Vec<usize>>,
    /// Values of n whose achieved set is not all of {0, ..., n}.
    pub conjecture_gaps: Vec<usize>,
}

/// Slopes are per-cell: cell i spans [i/m, (i+1)/m].
pub fn build_problem(family: &ProfileFamily, lambda: f64) -> Result<ProblemSpec> {
    let h = &family.heights;
    if h.len() < 2 {
        return Err(Error::InvalidConfig(format!(
            "profile {} needs at least 2 heights",
            family.name
        )));
    }
    if h[0] != 0.0 {
        return Err(Error::InvalidConfig(format!(
            "profile {} must start at height 0",
            family.name
        )));
    }
    if !(lambda > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let m = h.len() - 1;
    let mut segments = Vec::with_capacity(m);
    for i in 0..m {
        let slope = (h[i + 1] - h[i]) * m as f64;
        if slope == 0.0 {
            return Err(Error::InvalidConfig(format!(
                "profile {} has a zero-slope cell at index {i}",
                family.name
            )));
        }
        segments.push(Segment {
            lo: i as f64 / m as f64,
            hi: (i + 1) as f64 / m as f64,
            inv_p: FunctionSpec::Const { value: slope },
            q: FunctionSpec::Const {
                value: -lambda * slope,
            },
        });
    }
    Ok(ProblemSpec::new(
        &format!("{}@{lambda}", family.name),
        0.0,
        1.0,
        segments,
    ))
}

/// u1 = sin(sqrt(lambda) P) when it vanishes at b too, i.e. when
/// sqrt(lambda) P(b) is a multiple of pi; None otherwise.
pub fn anchor_solution(
    family: &ProfileFamily,
    problem: &ProblemSpec,
    lambda: f64,
) -> Result<Option<Trajectory>> {
    let end = lambda.sqrt() * family.heights[family.heights.len() - 1];
    if (end / PI - (end / PI).round()).abs() > 1e-9 {
        return Ok(None);
    }
    Ok(Some(closed_form_lemma2(problem, lambda, 0.0, 1.0)?))
}

/// Analytic zero count of c1 cos(s) + c2 sin(s) along s = sqrt(lambda) P:
/// level crossings of the piecewise-linear profile against the solution's
/// phase lattice, with vertex hits (tangencies) counted once.
pub fn analytic_zero_count(
    heights: &[f64],
    lambda: f64,
    c1: f64,
    c2: f64,
    include_endpoints: bool,
) -> usize {
    let m = heights.len() - 1;
    let s: Vec<f64> = heights.iter().map(|h| lambda.sqrt() * h).collect();
    // Zeros at s = -psi (mod pi), from c1 cos s + c2 sin s = A sin(s + psi).
    let psi = f64::atan2(c1, c2);
    let lo = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let k_lo = ((lo + psi) / PI).floor() as i64 - 1;
    let k_hi = ((hi + psi) / PI).ceil() as i64 + 1;
    let vtol = 1e-9;
    let mut xs: Vec<f64> = vec![];
    for k in k_lo..=k_hi {
        let level = -psi + k as f64 * PI;
        for (i, si) in s.iter().enumerate() {
            if (si - level).abs() <= vtol {
                xs.push(i as f64 / m as f64);
            }
        }
        for i in 0..m {
            if (s[i] - level) * (s[i + 1] - level) < 0.0
                && (s[i] - level).abs() > vtol
                && (s[i + 1] - level).abs() > vtol
            {
                xs.push((i as f64 + (level - s[i]) / (s[i + 1] - s[i])) / m as f64);
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    xs.iter()
        .filter(|x| include_endpoints || (**x > 0.0 && **x < 1.0))
        .count()
}

fn counts(traj: &Trajectory, tols: &ZeroTols) -> Result<(usize, usize)> {
    let z = locate_zeros(traj, tols)?;
    Ok((z.count(true), z.count(false)))
}

/// Phase sweep of u2 = cos(sqrt(lambda) P + phi) over phi = j pi / phases.
/// Phases with cos(phi) ~ 0 give a scalar multiple of the anchor and are
/// skipped; everything else is an independent partner.
pub fn sweep(
    families: &[ProfileFamily],
    phases: usize,
    tols: &ZeroTols,
) -> Result<SweepOutcome> {
    if phases == 0 {
        return Err(Error::InvalidConfig("phases must be positive".into()));
    }
    let mut records = vec![];
    let mut achieved: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for family in families {
        for &lambda in &family.lambda_grid {
            let problem = build_problem(family, lambda)?;
            let Some(anchor) = anchor_solution(family, &problem, lambda)? else {
                continue;
            };
            let (n, n_open) = counts(&anchor, tols)?;
            for j in 0..phases {
                let phi = j as f64 * PI / phases as f64;
                if phi.cos().abs() < 1e-9 {
                    continue;
                }
                let partner = closed_form_lemma2(&problem, lambda, phi.cos(), -phi.sin())?;
                let (c2_closed, c2_open) = counts(&partner, tols)?;
                let k = n.abs_diff(c2_closed);
                records.push(ExplorationRecord {
                    profile: family.name.clone(),
                    heights: family.heights.clone(),
                    lambda,
                    phase: phi,
                    n,
                    count2: c2_closed,
                    k,
                    n_open,
                    k_open: n_open.abs_diff(c2_open),
                });
                achieved.entry(n).or_default().insert(k);
            }
        }
    }
    let summary: BTreeMap<usize, Vec<usize>> = achieved
        .iter()
        .map(|(n, ks)| (*n, ks.iter().cloned().collect()))
        .collect();
    let conjecture_gaps = summary
        .iter()
        .filter(|(n, ks)| ks.len() != **n + 1)
        .map(|(n, _)| *n)
        .collect();
    Ok(SweepOutcome {
        records,
        summary,
        conjecture_gaps,
    })
}

/// Default grid: tent anchors for n = 2 and 4, two three-cell zigzags
/// covering n = 3, a four-cell zigzag completing n = 4, and a monotone
/// control arm. Tangency phases land exactly on the 20-point grid.
pub fn default_families() -> Vec<ProfileFamily> {
    vec![
        ProfileFamily {
            name: "tent".into(),
            heights: vec![0.0, 1.0, 0.0],
            lambda_grid: vec![PI * PI / 4.0, 9.0 * PI * PI / 4.0],
        },
        ProfileFamily {
            name: "zigzag-a".into(),
            heights: vec![0.0, 0.45, -0.45, 0.0],
            lambda_grid: vec![PI * PI],
        },
        ProfileFamily {
            name: "zigzag-b".into(),
            heights: vec![0.0, 0.6, -0.6, 0.0],
            lambda_grid: vec![PI * PI],
        },
        ProfileFamily {
            name: "zigzag-d".into(),
            heights: vec![0.0, 0.3, -0.3, 0.2, 0.0],
            lambda_grid: vec![PI * PI],
        },
        ProfileFamily {
            name: "monotone".into(),
            heights: vec![0.0, 1.0],
            lambda_grid: vec![1.0, PI * PI],
        },
    ]
}

pub const DEFAULT_PHASES: usize = 20;

pub fn write_records_csv<W: std::io::Write>(
    records: &[ExplorationRecord],
    mut w: W,
) -> std::io::Result<()> {
    writeln!(w, "n,k,lambda,profile_id,phase")?;
    for r in records {
        writeln!(
            w,
            "{},{},{:.17e},{},{:.17e}",
            r.n, r.k, r.lambda, r.profile, r.phase
        )?;
    }
    Ok(())
}
