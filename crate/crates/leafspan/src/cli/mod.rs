//! Command-line interface: solve, gen, verify, oracle.
//!
//! Exit codes are part of the interface and scripts branch on them:
//! 0 success, 1 miscellaneous failure, 2 parse or parameter error,
//! 3 infeasible instance, 4 general-position violation, 5 iteration cap
//! exceeded, 6 verification failure, 7 oracle size cap.

pub mod format;
pub mod svg;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::gen::{generate, FMode, GenError, GenParams};
use crate::instance::{check_feasibility, FeasibilityStatus, Instance};
use crate::uncross::{solve, SolveError};
use crate::verify::{enumerate_feasible_trees, verify, verify_tree, OracleError, ORACLE_MAX_N};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_GENERAL_POSITION: u8 = 4;
pub const EXIT_ITERATION_CAP: u8 = 5;
pub const EXIT_VERIFY_FAILED: u8 = 6;
pub const EXIT_ORACLE_CAP: u8 = 7;

#[derive(Parser)]
#[command(
    name = "leafspan",
    version,
    about = "Non-crossing spanning trees with prescribed leaves and degree budgets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve an instance file and write the resulting tree
    Solve {
        /// Instance file (JSON)
        #[arg(long)]
        input: PathBuf,
        /// Solution file to write (JSON)
        #[arg(long)]
        output: PathBuf,
        /// Optional SVG rendering of the solution
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Swap limit; defaults to 10 n^3
        #[arg(long)]
        max_iters: Option<u64>,
        /// Give every red point this budget, ignoring budgets in the file
        #[arg(long)]
        uniform_degree: Option<u32>,
        /// Optional swap-by-swap trace file (JSON)
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Generate a random instance file on standard output
    Gen {
        #[arg(long)]
        n_red: usize,
        #[arg(long)]
        n_blue: usize,
        /// uniform:K, random:MIN..MAX, or equality
        #[arg(long)]
        f_mode: String,
        /// Coordinates are sampled from [0, bbox]^2
        #[arg(long)]
        bbox: i64,
        #[arg(long)]
        seed: u64,
    },
    /// Check a solution file against an instance
    Verify {
        /// Instance file (JSON)
        #[arg(long)]
        input: PathBuf,
        /// Solution file holding the tree to check
        #[arg(long)]
        tree: PathBuf,
    },
    /// Exhaustively enumerate trees for a small instance and compare
    Oracle {
        /// Instance file (JSON), at most 9 points
        #[arg(long)]
        input: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<(), Failure>;

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

pub fn run(cli: Cli) -> u8 {
    let result = match cli.command {
        Command::Solve { input, output, svg, max_iters, uniform_degree, trace } => {
            cmd_solve(&input, &output, svg.as_deref(), max_iters, uniform_degree, trace.as_deref())
        }
        Command::Gen { n_red, n_blue, f_mode, bbox, seed } => {
            cmd_gen(n_red, n_blue, &f_mode, bbox, seed)
        }
        Command::Verify { input, tree } => cmd_verify(&input, &tree),
        Command::Oracle { input } => cmd_oracle(&input),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn read_instance(path: &Path, uniform_degree: Option<u32>) -> Result<format::IngestedInstance, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    let file = format::parse_instance_file(&text).map_err(|m| fail(EXIT_PARSE, m))?;
    format::ingest(&file, uniform_degree).map_err(|e| match e {
        format::IngestError::Parse(m) => fail(EXIT_PARSE, m),
        format::IngestError::GeneralPosition(m) => fail(EXIT_GENERAL_POSITION, m),
    })
}

fn reject_infeasible(inst: &Instance) -> CmdResult {
    let report = check_feasibility(inst);
    match report.status {
        FeasibilityStatus::InfeasibleLow => Err(fail(
            EXIT_INFEASIBLE,
            format!("infeasible: {} blue points; at least 2 are required", report.blue_count),
        )),
        FeasibilityStatus::InfeasibleHigh => Err(fail(
            EXIT_INFEASIBLE,
            format!(
                "infeasible: {} blue points exceed the bound sum(f(x) - 2) + 2 = {}",
                report.blue_count,
                report.bound()
            ),
        )),
        _ => Ok(()),
    }
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents)
        .map_err(|e| fail(EXIT_FAILURE, format!("cannot write {}: {e}", path.display())))
}

fn cmd_solve(
    input: &Path,
    output: &Path,
    svg_path: Option<&Path>,
    max_iters: Option<u64>,
    uniform_degree: Option<u32>,
    trace_path: Option<&Path>,
) -> CmdResult {
    let ing = read_instance(input, uniform_degree)?;
    let inst = &ing.instance;
    reject_infeasible(inst)?;

    let sol = solve(inst, max_iters).map_err(|e| match e {
        SolveError::IterationCapExceeded { cap } => fail(
            EXIT_ITERATION_CAP,
            format!("iteration cap of {cap} swaps exceeded before all crossings cleared"),
        ),
        SolveError::Infeasible(_) => fail(EXIT_INFEASIBLE, e.to_string()),
    })?;

    let report = verify_tree(inst, &sol.tree);
    if !report.passes() {
        return Err(fail(
            EXIT_VERIFY_FAILED,
            format!("internal check failed on the solved tree:\n{report}"),
        ));
    }

    let sol_file = format::solution_file(&ing, &sol);
    write_file(output, &format::to_json(&sol_file))?;
    if let Some(path) = svg_path {
        let edges: Vec<(usize, usize)> = sol.tree.edges().map(|s| s.endpoints()).collect();
        write_file(path, &svg::render(inst, &edges))?;
    }
    if let Some(path) = trace_path {
        write_file(path, &format::to_json(&format::trace_file(&ing, &sol)))?;
    }
    println!(
        "solved: {} points, {} edges, {} swaps, total length {:.6}",
        inst.n(),
        sol.tree.edge_count(),
        sol_file.swap_count,
        sol_file.total_length
    );
    Ok(())
}

fn parse_f_mode(s: &str) -> Result<FMode, String> {
    if s == "equality" {
        return Ok(FMode::Equality);
    }
    if let Some(k) = s.strip_prefix("uniform:") {
        let k = k.parse::<u32>().map_err(|_| format!("bad uniform degree \"{k}\""))?;
        return Ok(FMode::Uniform(k));
    }
    if let Some(range) = s.strip_prefix("random:") {
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| format!("bad range \"{range}\"; expected MIN..MAX"))?;
        let min = lo.parse::<u32>().map_err(|_| format!("bad range minimum \"{lo}\""))?;
        let max = hi.parse::<u32>().map_err(|_| format!("bad range maximum \"{hi}\""))?;
        return Ok(FMode::Random { min, max });
    }
    Err(format!("unknown f-mode \"{s}\"; expected uniform:K, random:MIN..MAX, or equality"))
}

fn cmd_gen(n_red: usize, n_blue: usize, f_mode: &str, bbox: i64, seed: u64) -> CmdResult {
    let f_mode = parse_f_mode(f_mode).map_err(|m| fail(EXIT_PARSE, m))?;
    let params = GenParams { n_red, n_blue, f_mode, bbox, seed };
    let generated = generate(&params).map_err(|e| match e {
        GenError::GaveUp { .. } => fail(EXIT_FAILURE, e.to_string()),
        other => fail(EXIT_PARSE, other.to_string()),
    })?;
    print!("{}", format::to_json(&format::instance_file_from_generated(&generated)));
    Ok(())
}

fn cmd_verify(input: &Path, tree: &Path) -> CmdResult {
    let ing = read_instance(input, None)?;
    let inst = &ing.instance;
    let text = fs::read_to_string(tree)
        .map_err(|e| fail(EXIT_PARSE, format!("cannot read {}: {e}", tree.display())))?;
    let sol_file = format::parse_solution_file(&text).map_err(|m| fail(EXIT_PARSE, m))?;

    let n = inst.n();
    let mut edges = Vec::with_capacity(sol_file.edges.len());
    for [a, b] in &sol_file.edges {
        if *a >= n || *b >= n {
            return Err(fail(
                EXIT_PARSE,
                format!("edge [{a}, {b}] references a point index outside 0..{n}"),
            ));
        }
        edges.push((ing.file_to_internal[*a], ing.file_to_internal[*b]));
    }

    let report = verify(inst, &edges);
    println!("{report}");
    if report.passes() {
        Ok(())
    } else {
        Err(fail(EXIT_VERIFY_FAILED, "verification failed"))
    }
}

fn cmd_oracle(input: &Path) -> CmdResult {
    let ing = read_instance(input, None)?;
    let inst = &ing.instance;
    if inst.n() > ORACLE_MAX_N {
        return Err(fail(
            EXIT_ORACLE_CAP,
            format!("{} points exceed the oracle cap of {ORACLE_MAX_N}", inst.n()),
        ));
    }
    reject_infeasible(inst)?;

    let enumeration = enumerate_feasible_trees(inst).map_err(|e| match e {
        OracleError::TooLarge { n } => {
            fail(EXIT_ORACLE_CAP, format!("{n} points exceed the oracle cap of {ORACLE_MAX_N}"))
        }
        OracleError::Infeasible => fail(EXIT_INFEASIBLE, "infeasible instance"),
    })?;

    let sol = solve(inst, None).map_err(|e| match e {
        SolveError::IterationCapExceeded { cap } => {
            fail(EXIT_ITERATION_CAP, format!("iteration cap of {cap} swaps exceeded"))
        }
        SolveError::Infeasible(_) => fail(EXIT_INFEASIBLE, e.to_string()),
    })?;
    let solver_edges: Vec<(usize, usize)> = sol.tree.edges().map(|s| s.endpoints()).collect();
    let member = enumeration.non_crossing_contains(&solver_edges);

    println!(
        "{} feasible / {} non-crossing / solver output member: {}",
        enumeration.degree_valid.len(),
        enumeration.non_crossing.len(),
        if member { "yes" } else { "no" }
    );

    if enumeration.non_crossing.is_empty() {
        return Err(fail(
            EXIT_VERIFY_FAILED,
            "no non-crossing degree-valid tree exists; this contradicts the existence guarantee",
        ));
    }
    if !member {
        return Err(fail(EXIT_VERIFY_FAILED, "solver output missing from the oracle set"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_mode_grammar() {
        assert_eq!(parse_f_mode("equality").unwrap(), FMode::Equality);
        assert_eq!(parse_f_mode("uniform:3").unwrap(), FMode::Uniform(3));
        assert_eq!(parse_f_mode("random:2..6").unwrap(), FMode::Random { min: 2, max: 6 });
        assert!(parse_f_mode("random:2-6").is_err());
        assert!(parse_f_mode("uniform:x").is_err());
        assert!(parse_f_mode("fixed").is_err());
    }
}
