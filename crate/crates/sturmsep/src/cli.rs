//! Batch front end: parse problem/recurrence configs, run the analyses and
//! verifiers, emit JSON/CSV reports with full tolerance provenance.
//!
//! Exit codes: 0 success, 1 error (bad config or internal failure),
//! 2 hypotheses/validation unmet, 3 conjecture gap found (informational).

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::explore::{self, ProfileFamily};
use crate::integrate::{integrate, wronskian, InitialCondition};
use crate::problem::ProblemSpec;
use crate::recurrence::{
    atkinson_reduce, c22_check, difference_residual, moulton_check, polygon_zeros, step,
    Recurrence,
};
use crate::theorems;
use crate::zeros::{interlace_check, locate_zeros, min_gap_guard, Verdict, ZeroTols};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNMET: i32 = 2;
pub const EXIT_GAP: i32 = 3;

#[derive(Parser)]
#[command(name = "sturmsep", version, about = "Oscillation and zero-interlacing toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct IoArgs {
    /// Input JSON file.
    #[arg(long)]
    pub input: PathBuf,
    /// Output JSON report; written atomically (temp file + rename).
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Args, Clone, Copy)]
pub struct TolArgs {
    /// Integration error per unit interval.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Zero bracketing width, relative to the interval length.
    #[arg(long, default_value_t = 1e-10)]
    pub tol_zero: f64,
    /// Sign band for bounce detection, relative to the solution scale.
    #[arg(long, default_value_t = 1e-7)]
    pub tol_bounce: f64,
}

impl TolArgs {
    fn validate(&self) -> Result<ZeroTols> {
        if !(self.tol > 0.0 && self.tol_zero > 0.0 && self.tol_bounce > 0.0) {
            return Err(Error::InvalidConfig(
                "tol, tol_zero and tol_bounce must all be positive".into(),
            ));
        }
        Ok(ZeroTols {
            tol_zero: self.tol_zero,
            tol_bounce: self.tol_bounce,
        })
    }

    fn provenance(&self, eps_gap: Option<f64>) -> Value {
        let mut t = json!({
            "tol": self.tol,
            "tol_zero": self.tol_zero,
            "tol_bounce": self.tol_bounce,
        });
        if let Some(g) = eps_gap {
            t["eps_gap"] = json!(g);
        }
        t
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Integrate the given solutions, locate zeros, and check separation.
    Analyze {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        tols: TolArgs,
        /// Minimum allowed gap between consecutive zeros; defaults to
        /// 1e-6 times the interval length.
        #[arg(long)]
        eps_gap: Option<f64>,
        /// Directory for per-solution trajectory CSVs.
        #[arg(long)]
        csv_dir: Option<PathBuf>,
    },
    /// Reduce an alternating-block problem to its three-term recurrence.
    Reduce {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Solve a three-term recurrence and analyze the polygon solutions.
    Recurrence {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Run one theorem verifier: c21, th0, th2, th3, th00 or c22.
    Verify {
        /// Verifier name.
        name: String,
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        tols: TolArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Sweep the closed-form profile family for zero-count differences.
    Explore {
        /// Family JSON; the curated default grid when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
        #[command(flatten)]
        tols: TolArgs,
        #[arg(long, default_value_t = explore::DEFAULT_PHASES)]
        phases: usize,
        /// Optional CSV export of the raw records.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn threads_from_env() -> Result<usize> {
    match std::env::var("STURMSEP_THREADS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidConfig(format!("STURMSEP_THREADS = {s:?} is not a count"))),
        Err(_) => Ok(0),
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

fn write_report(path: &Path, report: &Value) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(report)?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn envelope(command: &str, tolerances: Value, seed: Option<u64>, threads: usize) -> Value {
    let mut v = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "tolerances": tolerances,
        "threads": threads,
    });
    if let Some(s) = seed {
        v["seed"] = json!(s);
    }
    v
}

#[derive(Deserialize)]
struct AnalyzeInput {
    problem: ProblemSpec,
    solutions: Vec<InitialCondition>,
}

fn cmd_analyze(
    io: &IoArgs,
    tols: &TolArgs,
    eps_gap: Option<f64>,
    csv_dir: Option<&Path>,
    threads: usize,
) -> Result<i32> {
    let ztols = tols.validate()?;
    let input: AnalyzeInput = read_json(&io.input)?;
    let eps_gap = match eps_gap {
        Some(g) if g > 0.0 => g,
        Some(g) => {
            return Err(Error::InvalidConfig(format!(
                "eps_gap must be positive, got {g}"
            )))
        }
        None => 1e-6 * (input.problem.b - input.problem.a).abs().max(1.0),
    };
    let mut report = envelope("analyze", tols.provenance(Some(eps_gap)), None, threads);
    report["problem"] = json!(input.problem.label);

    let violations = input.problem.validate();
    if !violations.is_empty() {
        report["violations"] = json!(violations);
        write_report(&io.output, &report)?;
        return Ok(EXIT_UNMET);
    }
    report["violations"] = json!([]);

    if let Some(dir) = csv_dir {
        fs::create_dir_all(dir)?;
    }
    let problem = Arc::new(input.problem);
    let mut trajectories = vec![];
    let mut sols = vec![];
    for (i, ic) in input.solutions.iter().enumerate() {
        let traj = integrate(&problem, *ic, tols.tol)?;
        let zeros = locate_zeros(&traj, &ztols)?;
        let gap = min_gap_guard(&zeros, eps_gap);
        let mut entry = json!({ "ic": ic, "zeros": zeros, "gap": gap });
        if let Some(dir) = csv_dir {
            let path = dir.join(format!("solution_{i}.csv"));
            let mut buf = vec![];
            traj.write_csv(&mut buf)?;
            write_atomic(&path, &buf)?;
            entry["csv"] = json!(path.display().to_string());
        }
        sols.push(entry);
        trajectories.push((traj, zeros));
    }
    report["solutions"] = Value::Array(sols);

    let span = (problem.a, problem.b);
    let mut pairs = vec![];
    let mut verdict: Option<Verdict> = None;
    for j in 1..trajectories.len() {
        let (t0, z0) = &trajectories[0];
        let (tj, zj) = &trajectories[j];
        let w = wronskian(t0, tj, problem.a)?;
        let dependent =
            w.abs() <= 1e-9 * t0.u_scale().max(t0.v_scale()) * tj.u_scale().max(tj.v_scale());
        if dependent {
            pairs.push(json!({ "first": 0, "second": j, "dependent": true }));
            continue;
        }
        let ssp = interlace_check(z0, zj, span);
        if ssp.verdict == Verdict::Fails || verdict.is_none() {
            verdict = Some(match (verdict, ssp.verdict) {
                (Some(Verdict::Fails), _) | (_, Verdict::Fails) => Verdict::Fails,
                _ => Verdict::Holds,
            });
        }
        pairs.push(json!({
            "first": 0,
            "second": j,
            "dependent": false,
            "verdict": ssp.verdict,
            "witness": ssp.witness,
        }));
    }
    report["pairs"] = Value::Array(pairs);
    report["verdict"] = json!(verdict);
    write_report(&io.output, &report)?;
    Ok(EXIT_OK)
}

#[derive(Deserialize)]
struct ReduceInput {
    problem: ProblemSpec,
}

fn cmd_reduce(io: &IoArgs, threads: usize) -> Result<i32> {
    let input: ReduceInput = read_json(&io.input)?;
    let mut report = envelope("reduce", json!({}), None, threads);
    report["problem"] = json!(input.problem.label);
    match atkinson_reduce(&input.problem) {
        Ok((partition, recurrence)) => {
            report["partition"] = json!(partition);
            report["recurrence"] = json!(recurrence);
            write_report(&io.output, &report)?;
            Ok(EXIT_OK)
        }
        Err(
            e @ (Error::BadAtkinsonBlock { .. } | Error::InfiniteRecurrenceCoefficient { .. }),
        ) => {
            report["error"] = json!(e.to_string());
            write_report(&io.output, &report)?;
            Ok(EXIT_UNMET)
        }
        Err(e) => Err(e),
    }
}

#[derive(Deserialize)]
struct RecurrenceInput {
    recurrence: Recurrence,
    seeds: Vec<(f64, f64)>,
}

fn cmd_recurrence(io: &IoArgs, threads: usize) -> Result<i32> {
    let input: RecurrenceInput = read_json(&io.input)?;
    let rec = Recurrence::new(input.recurrence.c.clone(), input.recurrence.q.clone());
    let mut report = envelope("recurrence", json!({}), None, threads);
    let rec = match rec {
        Ok(r) => r,
        Err(e) => {
            report["error"] = json!(e.to_string());
            write_report(&io.output, &report)?;
            return Ok(EXIT_UNMET);
        }
    };
    report["moulton"] = json!(moulton_check(&rec));
    report["c22"] = json!(c22_check(&rec, 1e-12));

    let mut sols = vec![];
    let mut zero_sets = vec![];
    for seeds in &input.seeds {
        let poly = step(&rec, *seeds)?;
        let zeros = polygon_zeros(&poly)?;
        sols.push(json!({
            "seeds": seeds,
            "values": poly.values,
            "residual": difference_residual(&rec, &poly),
            "zeros": zeros,
        }));
        zero_sets.push((poly, zeros));
    }
    report["solutions"] = Value::Array(sols);

    let mut pairs = vec![];
    for j in 1..zero_sets.len() {
        let lo = zero_sets[0].0.start_index as f64;
        let hi = lo + (zero_sets[0].0.values.len() - 1) as f64;
        let ssp = interlace_check(&zero_sets[0].1, &zero_sets[j].1, (lo, hi));
        pairs.push(json!({
            "first": 0,
            "second": j,
            "verdict": ssp.verdict,
            "witness": ssp.witness,
        }));
    }
    report["pairs"] = Value::Array(pairs);
    write_report(&io.output, &report)?;
    Ok(EXIT_OK)
}

#[derive(Deserialize)]
struct VerifyInput {
    problem: Option<ProblemSpec>,
    recurrence: Option<Recurrence>,
}

fn cmd_verify(
    name: &str,
    io: &IoArgs,
    tols: &TolArgs,
    seed: u64,
    samples: usize,
    threads: usize,
) -> Result<i32> {
    let ztols = tols.validate()?;
    let input: VerifyInput = read_json(&io.input)?;
    let need_problem = || {
        input
            .problem
            .clone()
            .ok_or_else(|| Error::InvalidConfig("input is missing field `problem`".into()))
    };
    let rep = match name {
        "c21" => theorems::verify_c21(&need_problem()?, tols.tol)?,
        "th0" => theorems::verify_th0(&need_problem()?, samples, seed, tols.tol, &ztols)?,
        "th2" => theorems::verify_th2(&need_problem()?, samples, seed, tols.tol, &ztols)?,
        "th3" => theorems::verify_th3(&need_problem()?, 1e-7_f64.max(tols.tol), &ztols)?,
        "th00" => theorems::verify_th00(&need_problem()?, tols.tol, &ztols)?,
        "c22" => {
            let rec = input
                .recurrence
                .clone()
                .ok_or_else(|| Error::InvalidConfig("input is missing field `recurrence`".into()))?;
            theorems::verify_c22(&rec, 1e-12)?
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown verifier {other:?}; expected c21, th0, th2, th3, th00 or c22"
            )))
        }
    };
    let mut report = envelope("verify", tols.provenance(None), Some(seed), threads);
    report["samples"] = json!(samples);
    report["report"] = json!(rep);
    write_report(&io.output, &report)?;
    if !rep.hypotheses_met() {
        Ok(EXIT_UNMET)
    } else if rep.verified {
        Ok(EXIT_OK)
    } else {
        // Hypotheses held but the theorem's conclusion did not check out:
        // that is a finding, not an inapplicable run.
        Ok(EXIT_ERROR)
    }
}

#[derive(Deserialize)]
struct ExploreInput {
    families: Vec<ProfileFamily>,
    phases: Option<usize>,
}

fn cmd_explore(
    input: Option<&Path>,
    output: &Path,
    tols: &TolArgs,
    phases: usize,
    csv: Option<&Path>,
    threads: usize,
) -> Result<i32> {
    let ztols = tols.validate()?;
    let (families, phases) = match input {
        Some(path) => {
            let cfg: ExploreInput = read_json(path)?;
            (cfg.families, cfg.phases.unwrap_or(phases))
        }
        None => (explore::default_families(), phases),
    };
    let outcome = explore::sweep(&families, phases, &ztols)?;
    let mut report = envelope("explore", tols.provenance(None), None, threads);
    report["phases"] = json!(phases);
    report["families"] = json!(families);
    report["records"] = json!(outcome.records);
    report["summary"] = json!(outcome.summary);
    report["conjecture_gaps"] = json!(outcome.conjecture_gaps);
    write_report(output, &report)?;
    if let Some(path) = csv {
        let mut buf = vec![];
        explore::write_records_csv(&outcome.records, &mut buf)?;
        write_atomic(path, &buf)?;
    }
    if outcome.conjecture_gaps.is_empty() {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_GAP)
    }
}

pub fn dispatch(cli: Cli) -> Result<i32> {
    let threads = threads_from_env()?;
    match &cli.command {
        Command::Analyze {
            io,
            tols,
            eps_gap,
            csv_dir,
        } => cmd_analyze(io, tols, *eps_gap, csv_dir.as_deref(), threads),
        Command::Reduce { io } => cmd_reduce(io, threads),
        Command::Recurrence { io } => cmd_recurrence(io, threads),
        Command::Verify {
            name,
            io,
            tols,
            seed,
            samples,
        } => cmd_verify(name, io, tols, *seed, *samples, threads),
        Command::Explore {
            input,
            output,
            tols,
            phases,
            csv,
        } => cmd_explore(input.as_deref(), output, tols, *phases, csv.as_deref(), threads),
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
