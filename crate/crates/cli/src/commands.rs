use std::time::Instant;

use anyhow::{Context, Result};
use pursuit_core::generators;
use pursuit_core::info::{
    build_info_graph, export_dot as render_dot, solve_dfs_in, solve_in, InfoGraph, InfoSpace, Mode, SolveOptions,
};
use pursuit_core::naive::{solve_naive, Dynamics, NaiveConfig};
use pursuit_core::{Error, Vertex};

use crate::{
    timeout, write_output, DotArgs, GenArgs, GenFamily, OracleArgs, SolveArgs, Solver, EXIT_CLEARED, EXIT_TIMEOUT,
    EXIT_UNCLEARABLE,
};

fn join(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub(crate) fn solve(args: &SolveArgs) -> Result<i32> {
    let (g, b) = args.instance.load()?;
    let opts = SolveOptions {
        mode: args.mode,
        model: args.instance.moves,
        timeout: timeout(args.timeout)?,
        max_states: args.instance.max_states,
    };
    let start = Instant::now();
    let mut ig = build_info_graph(&g, &b, &opts)?;
    let result = match args.solver {
        Solver::Dijkstra => solve_in(&mut ig, opts.timeout),
        Solver::Dfs => solve_dfs_in(&mut ig, opts.timeout),
    };
    let elapsed = start.elapsed();
    if let Some(path) = &args.dot {
        write_output(Some(path), &render_dot(&ig))?;
    }
    let sol = match result {
        Ok(sol) => sol,
        Err(Error::Timeout { states_expanded }) => {
            println!(
                "timeout after {:.3} s ({states_expanded} states expanded)",
                elapsed.as_secs_f64()
            );
            return Ok(EXIT_TIMEOUT);
        }
        Err(e) => return Err(e.into()),
    };
    let schedule = sol.schedule.with_trace(ig.space())?;
    match schedule.placement {
        Some(p) => {
            println!("clearable: true");
            println!("cost: {}", schedule.moves.len());
            println!("placement: {p}");
            println!("moves: {}", join(&schedule.moves));
        }
        None => {
            println!("clearable: false");
            println!("cost: inf");
        }
    }
    println!("states expanded: {}", sol.states_expanded);
    println!("states discovered: {}", sol.states_discovered);
    println!("time: {:.3} ms", elapsed.as_secs_f64() * 1e3);
    if let Some(path) = &args.schedule {
        write_output(Some(path), &(schedule.to_json() + "\n"))?;
    }
    Ok(if schedule.clearable {
        EXIT_CLEARED
    } else {
        EXIT_UNCLEARABLE
    })
}

pub(crate) fn oracle(args: &OracleArgs) -> Result<i32> {
    let (g, b) = args.instance.load()?;
    let config = NaiveConfig {
        searchers: args.searchers,
        dynamics: Dynamics::new(args.speed, args.instance.moves),
        max_states: args.instance.max_states,
    };
    let start = Instant::now();
    let sol = solve_naive(&g, &b, &config)?;
    let elapsed = start.elapsed();
    match (&sol.placement, sol.cost) {
        (Some(p), Some(cost)) => {
            println!("clearable: true");
            println!("cost: {cost}");
            println!("placement: {}", join(p));
            for (t, m) in sol.moves.iter().enumerate() {
                println!("move {}: {}", t + 1, join(m));
            }
        }
        _ => {
            println!("clearable: false");
            println!("cost: inf");
        }
    }
    println!("states discovered: {}", sol.states_discovered);
    println!("time: {:.3} ms", elapsed.as_secs_f64() * 1e3);
    if let Some(path) = &args.schedule {
        let json = serde_json::to_string(&sol)?;
        write_output(Some(path), &(json + "\n"))?;
    }
    Ok(if sol.clearable { EXIT_CLEARED } else { EXIT_UNCLEARABLE })
}

pub(crate) fn generate(args: &GenArgs) -> Result<()> {
    fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
        v.with_context(|| format!("--{flag} is required for the {family} family"))
    }
    let g = match args.family {
        GenFamily::Path => generators::path(need(args.n, "n", "path")?)?,
        GenFamily::Tree => generators::complete_binary_tree(need(args.depth, "depth", "tree")?)?,
        GenFamily::Grid => generators::grid(need(args.rows, "rows", "grid")?, need(args.cols, "cols", "grid")?)?,
        GenFamily::RandomTree => generators::random_tree(need(args.max_depth, "max-depth", "random-tree")?, args.seed)?,
        GenFamily::DeletedGrid => generators::deleted_grid(
            need(args.rows, "rows", "deleted-grid")?,
            need(args.cols, "cols", "deleted-grid")?,
            args.p,
            args.seed,
        )?,
    };
    write_output(args.out.as_deref(), &(g.to_json() + "\n"))
}

pub(crate) fn export_dot(args: &DotArgs) -> Result<()> {
    let (g, b) = args.instance.load()?;
    let space = InfoSpace::new(&g, &b, args.instance.moves)?;
    let ig = match args.mode {
        Mode::Eager => InfoGraph::eager(space, args.instance.max_states)?,
        Mode::Lazy => {
            let mut ig = InfoGraph::lazy(space, args.instance.max_states);
            ig.explore()?;
            ig
        }
    };
    write_output(args.out.as_deref(), &render_dot(&ig))
}
