//! Command-line front end: single solves, the brute-force oracle, instance
//! generation, experiment suites and DOT export.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pursuit_core::graph_core::MoveModel;
use pursuit_core::info::Mode;
use pursuit_core::naive::Speed;
use pursuit_core::{build_visibility, BoolMatrix, Graph, VisibilitySpec};

mod commands;
pub mod suite;

pub use suite::{run_suite, SuiteFamily, SuiteRow, SuiteStats};

pub const EXIT_CLEARED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNCLEARABLE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "pursuit",
    version,
    about = "Optimal clearing schedules for limited-visibility graph search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shortest clearing schedule for one searcher (information-state search).
    Solve(SolveArgs),
    /// Same as `solve --solver dfs`: some clearing schedule, found quickly.
    Dfs(SolveArgs),
    /// Brute-force search over full contamination states.
    Oracle(OracleArgs),
    /// Generate a graph instance as JSON.
    Gen(GenArgs),
    /// Run an experiment family and write one CSV row per (instance, L).
    Suite(SuiteArgs),
    /// Write the information graph of an instance in DOT format.
    ExportDot(DotArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    /// Graph JSON file.
    #[arg(long)]
    pub graph: PathBuf,
    /// `range:<L>`, `matrix:<path>` or `line[:<eps>]`.
    #[arg(long, default_value = "range:1")]
    pub visibility: String,
    /// Whether the target moves during the searcher's step (`concurrent`)
    /// or only after it (`sequential`).
    #[arg(long, default_value = "concurrent")]
    pub moves: MoveModel,
    #[arg(long, default_value_t = pursuit_core::info::DEFAULT_MAX_STATES)]
    pub max_states: usize,
}

impl InstanceArgs {
    pub fn load(&self) -> Result<(Graph, BoolMatrix)> {
        let g = load_graph(&self.graph)?;
        let spec =
            VisibilitySpec::from_arg(&self.visibility).with_context(|| format!("visibility `{}`", self.visibility))?;
        let b = build_visibility(&g, &spec).with_context(|| format!("visibility `{}`", self.visibility))?;
        Ok((g, b))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    Dijkstra,
    Dfs,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = Solver::Dijkstra)]
    pub solver: Solver,
    #[arg(long, default_value = "lazy")]
    pub mode: Mode,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 300.0)]
    pub timeout: f64,
    /// Write the schedule (with trace) as JSON.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// Write the part of the information graph the solver built.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = 1)]
    pub searchers: usize,
    /// Target speed: `inf` or edges per step.
    #[arg(long, default_value = "inf")]
    pub speed: Speed,
    #[arg(long)]
    pub schedule: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    Path,
    Tree,
    Grid,
    RandomTree,
    DeletedGrid,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: GenFamily,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub max_depth: Option<u32>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    #[arg(long, value_enum)]
    pub family: SuiteFamily,
    /// Path lengths (paths).
    #[arg(long, default_value = "1..20")]
    pub n: IntList,
    /// Tree depths (trees).
    #[arg(long, default_value = "1..4")]
    pub depth: IntList,
    /// Grid sizes as `RxC` (grids).
    #[arg(long, value_delimiter = ',', default_value = suite::TABLE_GRID_SIZES)]
    pub sizes: Vec<GridSize>,
    /// Deleted-grid size as `RxC`.
    #[arg(long, default_value = "3x3")]
    pub size: GridSize,
    #[arg(long, default_value_t = 5)]
    pub max_depth: u32,
    /// Edge deletion probability (deleted grids).
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Number of random instances.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Visibility ranges.
    #[arg(long = "L", default_value = "1..4")]
    pub ranges: IntList,
    /// Instance `i` of a random family uses seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Solver::Dijkstra)]
    pub solver: Solver,
    #[arg(long, default_value = "lazy")]
    pub mode: Mode,
    #[arg(long, default_value = "concurrent")]
    pub moves: MoveModel,
    /// Per-instance wall-clock budget in seconds.
    #[arg(long, default_value_t = 300.0)]
    pub timeout: f64,
    #[arg(long, default_value_t = pursuit_core::info::DEFAULT_MAX_STATES)]
    pub max_states: usize,
    /// CSV destination (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report every time as 0 so the CSV is byte-reproducible.
    #[arg(long)]
    pub no_time: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct DotArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// `eager` writes every state; `lazy` only those reachable from the start.
    #[arg(long, default_value = "eager")]
    pub mode: Mode,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Inclusive integer list: `3`, `1..4`, `1..=4` or `1,3,5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<u64>);

impl std::str::FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad integer `{t}` in `{s}`"))
        };
        if let Some((a, b)) = s.split_once("..") {
            let (lo, hi) = (num(a)?, num(b.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty range `{s}`"));
            }
            return Ok(IntList((lo..=hi).collect()));
        }
        s.split(',')
            .map(num)
            .collect::<std::result::Result<_, _>>()
            .map(IntList)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GridSize {
    pub rows: usize,
    pub cols: usize,
}

impl std::str::FromStr for GridSize {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (r, c) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected RxC, got `{s}`"))?;
        let parse = |t: &str| match t.trim().parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(format!("bad grid dimension `{t}` in `{s}`")),
        };
        Ok(GridSize {
            rows: parse(r)?,
            cols: parse(c)?,
        })
    }
}

impl std::fmt::Display for GridSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::from_json(&text).with_context(|| format!("parsing graph {}", path.display()))
}

pub(crate) fn timeout(secs: f64) -> Result<Option<Duration>> {
    anyhow::ensure!(
        secs.is_finite() && secs >= 0.0,
        "timeout must be a non-negative number of seconds"
    );
    Ok(Some(Duration::from_secs_f64(secs)))
}

pub(crate) fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve(args) => commands::solve(&args),
        Command::Dfs(mut args) => {
            args.solver = Solver::Dfs;
            commands::solve(&args)
        }
        Command::Oracle(args) => commands::oracle(&args),
        Command::Gen(args) => commands::generate(&args).map(|_| EXIT_CLEARED),
        Command::Suite(args) => suite::cmd_suite(&args).map(|_| EXIT_CLEARED),
        Command::ExportDot(args) => commands::export_dot(&args).map(|_| EXIT_CLEARED),
    }
}

/// Parses `args`, runs the command and reports errors on stderr. Usage and
/// runtime errors both exit with 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_CLEARED };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}
