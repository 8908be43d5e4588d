use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{ensure, Context, Result};
use clap::ValueEnum;
use pursuit_core::generators;
use pursuit_core::info::{solve, solve_dfs, SolveOptions};
use pursuit_core::{build_visibility, Error, Graph, VisibilitySpec};
use rayon::prelude::*;

use crate::{timeout, write_output, Solver, SuiteArgs};

pub const CSV_HEADER: [&str; 8] = [
    "family",
    "instance",
    "params",
    "L",
    "clearable",
    "cost",
    "states_expanded",
    "time_ms",
];

pub(crate) const TABLE_GRID_SIZES: &str = "2x2,2x3,2x4,2x5,2x6,3x3,3x4,3x5,3x6,4x4,4x5,4x6,5x5,5x6,6x6";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteFamily {
    Paths,
    Trees,
    Grids,
    RandomTrees,
    DeletedGrids,
}

impl SuiteFamily {
    fn name(self) -> &'static str {
        match self {
            SuiteFamily::Paths => "paths",
            SuiteFamily::Trees => "trees",
            SuiteFamily::Grids => "grids",
            SuiteFamily::RandomTrees => "random-trees",
            SuiteFamily::DeletedGrids => "deleted-grids",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Cleared(usize),
    Unclearable,
    /// Timed out or hit the state cap.
    Unfinished,
}

#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub family: &'static str,
    pub instance: usize,
    pub params: String,
    pub range: u32,
    pub outcome: Outcome,
    pub states_expanded: usize,
    pub time_ms: f64,
}

impl SuiteRow {
    fn record(&self, with_time: bool) -> [String; 8] {
        let (clearable, cost) = match self.outcome {
            Outcome::Cleared(c) => ("true".to_string(), c.to_string()),
            Outcome::Unclearable => ("false".to_string(), "inf".to_string()),
            Outcome::Unfinished => ("n/a".to_string(), "n/a".to_string()),
        };
        [
            self.family.to_string(),
            self.instance.to_string(),
            self.params.clone(),
            self.range.to_string(),
            clearable,
            cost,
            self.states_expanded.to_string(),
            if with_time {
                format!("{:.3}", self.time_ms)
            } else {
                "0".to_string()
            },
        ]
    }
}

/// Aggregates for one visibility range. Length statistics cover cleared
/// instances only.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteStats {
    pub range: u32,
    pub total: usize,
    pub cleared: usize,
    pub unfinished: usize,
    pub avg_length: Option<f64>,
    pub max_length: Option<usize>,
    pub min_length: Option<usize>,
    pub avg_time_ms: f64,
    pub max_time_ms: f64,
    pub min_time_ms: f64,
}

pub fn stats(rows: &[SuiteRow]) -> Vec<SuiteStats> {
    let mut ranges: Vec<u32> = rows.iter().map(|r| r.range).collect();
    ranges.sort_unstable();
    ranges.dedup();
    ranges
        .into_iter()
        .map(|l| {
            let these: Vec<&SuiteRow> = rows.iter().filter(|r| r.range == l).collect();
            let lengths: Vec<usize> = these
                .iter()
                .filter_map(|r| match r.outcome {
                    Outcome::Cleared(c) => Some(c),
                    _ => None,
                })
                .collect();
            let times: Vec<f64> = these.iter().map(|r| r.time_ms).collect();
            SuiteStats {
                range: l,
                total: these.len(),
                cleared: lengths.len(),
                unfinished: these.iter().filter(|r| r.outcome == Outcome::Unfinished).count(),
                avg_length: (!lengths.is_empty()).then(|| lengths.iter().sum::<usize>() as f64 / lengths.len() as f64),
                max_length: lengths.iter().copied().max(),
                min_length: lengths.iter().copied().min(),
                avg_time_ms: times.iter().sum::<f64>() / times.len() as f64,
                max_time_ms: times.iter().copied().fold(0.0, f64::max),
                min_time_ms: times.iter().copied().fold(f64::INFINITY, f64::min),
            }
        })
        .collect()
}

pub fn format_stats(family: &str, stats: &[SuiteStats]) -> String {
    let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.2}"));
    let mut out = String::new();
    let _ = writeln!(out, "{family}");
    let _ = writeln!(
        out,
        "{:>4} {:>9} {:>6} {:>8} {:>6} {:>6} {:>10} {:>10} {:>10}",
        "L", "cleared", "n/a", "avg_len", "max", "min", "avg_ms", "max_ms", "min_ms"
    );
    for s in stats {
        let _ = writeln!(
            out,
            "{:>4} {:>9} {:>6} {:>8} {:>6} {:>6} {:>10.3} {:>10.3} {:>10.3}",
            s.range,
            format!("{}/{}", s.cleared, s.total),
            s.unfinished,
            opt(s.avg_length),
            s.max_length.map_or("-".into(), |v| v.to_string()),
            s.min_length.map_or("-".into(), |v| v.to_string()),
            s.avg_time_ms,
            s.max_time_ms,
            s.min_time_ms,
        );
    }
    out
}

fn instances(args: &SuiteArgs) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    match args.family {
        SuiteFamily::Paths => {
            for &n in &args.n.0 {
                out.push((format!("n={n}"), generators::path(n as usize)?));
            }
        }
        SuiteFamily::Trees => {
            for &d in &args.depth.0 {
                let d = u32::try_from(d).context("tree depth")?;
                out.push((format!("depth={d}"), generators::complete_binary_tree(d)?));
            }
        }
        SuiteFamily::Grids => {
            for s in &args.sizes {
                out.push((s.to_string(), generators::grid(s.rows, s.cols)?));
            }
        }
        SuiteFamily::RandomTrees => {
            for i in 0..args.count {
                let seed = args.seed.wrapping_add(i as u64);
                let g = generators::random_tree(args.max_depth, seed)?;
                out.push((format!("max_depth={};seed={seed}", args.max_depth), g));
            }
        }
        SuiteFamily::DeletedGrids => {
            let s = args.size;
            for i in 0..args.count {
                let seed = args.seed.wrapping_add(i as u64);
                let g = generators::deleted_grid(s.rows, s.cols, args.p, seed)?;
                out.push((format!("{s};p={};seed={seed}", args.p), g));
            }
        }
    }
    Ok(out)
}

/// Runs every (instance, L) pair, possibly in parallel, and returns rows
/// sorted by instance then L.
pub fn run_suite(args: &SuiteArgs) -> Result<Vec<SuiteRow>> {
    ensure!((0.0..=1.0).contains(&args.p), "--p must lie in [0, 1]");
    let graphs = instances(args)?;
    let opts = SolveOptions {
        mode: args.mode,
        model: args.moves,
        timeout: timeout(args.timeout)?,
        max_states: args.max_states,
    };
    let ranges: Vec<u32> = args
        .ranges
        .0
        .iter()
        .map(|&l| u32::try_from(l).context("visibility range"))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, u32)> = (0..graphs.len())
        .flat_map(|i| ranges.iter().map(move |&l| (i, l)))
        .collect();
    let family = args.family.name();
    let work = || {
        jobs.par_iter()
            .map(|&(i, l)| {
                let (params, g) = &graphs[i];
                let b = build_visibility(g, &VisibilitySpec::Range(l))?;
                let start = Instant::now();
                let result = match args.solver {
                    Solver::Dijkstra => solve(g, &b, &opts),
                    Solver::Dfs => solve_dfs(g, &b, &opts),
                };
                let time_ms = start.elapsed().as_secs_f64() * 1e3;
                let (outcome, states_expanded) = match result {
                    Ok(sol) => match sol.schedule.cost {
                        Some(c) => (Outcome::Cleared(c), sol.states_expanded),
                        None => (Outcome::Unclearable, sol.states_expanded),
                    },
                    Err(Error::Timeout { states_expanded }) => (Outcome::Unfinished, states_expanded),
                    Err(Error::StateLimit { .. }) => (Outcome::Unfinished, 0),
                    Err(e) => return Err(e).with_context(|| format!("{family} instance {i} ({params}), L={l}")),
                };
                Ok(SuiteRow {
                    family,
                    instance: i,
                    params: params.clone(),
                    range: l,
                    outcome,
                    states_expanded,
                    time_ms,
                })
            })
            .collect::<Result<Vec<_>>>()
    };
    let mut rows = match args.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(work)?,
        None => work()?,
    };
    rows.sort_by_key(|r| (r.instance, r.range));
    Ok(rows)
}

pub fn to_csv(rows: &[SuiteRow], with_time: bool) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.record(with_time))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub(crate) fn cmd_suite(args: &SuiteArgs) -> Result<()> {
    let rows = run_suite(args)?;
    write_output(args.out.as_deref(), &to_csv(&rows, !args.no_time)?)?;
    if !rows.is_empty() {
        eprint!("{}", format_stats(args.family.name(), &stats(&rows)));
    }
    Ok(())
}
