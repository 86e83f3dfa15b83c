//! `omsr`: construct, verify and search oriented 3-valent m-Cayley
//! digraphs from the command line.
//!
//! Exit codes: 0 success, 1 internal error or failed suite, 2 excluded
//! case (no construction exists), 3 search budget exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use omsr_core::constructions::{construct_omsr, Dispatch, Family};
use omsr_core::input::{parse_group_spec, GroupInput};
use omsr_core::mcayley::{ConnectionMatrix, ConnectionMatrixJson, MCayleyDigraph};
use omsr_core::report::{verify_matrix, REPORT_SCHEMA};
use omsr_core::search::{
    exhaustive_search, search_trivial_aut_digraph, ExploreMode, ExploreOptions, SearchOptions,
    SearchSpace, DEFAULT_BUDGET,
};
use omsr_core::suite::{run_criterion, SuiteOptions, CRITERIA};

const EXIT_EXCEPTION: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "omsr",
    version,
    about = "Oriented m-Cayley digraphs of valency 3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the connection matrix for a group and m.
    Construct {
        /// Group spec: cyclic:N, product:a,b,..., dihedral:N, s3, q8, a4, perm:FILE.
        #[arg(long)]
        group: String,
        #[arg(long)]
        m: usize,
        /// Use this family instead of the dispatcher.
        #[arg(long)]
        family: Option<String>,
        /// Write the digraph in Graphviz DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the digraph, compute its automorphism group and report.
    Verify {
        #[arg(long)]
        group: String,
        /// Matrix JSON: a bare matrix, or `construct`/`verify` output.
        #[arg(long, conflicts_with = "family")]
        matrix: Option<PathBuf>,
        #[arg(long, requires = "m")]
        family: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        /// Print only the JSON report.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exhaustively search connection matrices for |Aut| = |G|.
    Search {
        #[arg(long)]
        group: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Maximum row-combination estimate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Worker threads (0 = all cores, 1 = sequential).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Require the digraph to be connected.
        #[arg(long)]
        connected: bool,
        /// Allow digons (only loops are excluded).
        #[arg(long)]
        non_oriented: bool,
        /// Compute |Aut| exactly for every candidate.
        #[arg(long)]
        exact_histogram: bool,
    },
    /// Run the acceptance criteria.
    Suite {
        /// Criterion ids to run (default: all).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
        #[arg(long, default_value_t = SuiteOptions::default().seed)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exploratory search for k-regular digraphs with trivial automorphism group.
    Explore {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        oriented: bool,
        #[arg(long, value_enum, default_value_t = Mode::Randomized)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Switches between samples (randomized mode).
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Tree nodes (exhaustive) or samples (randomized).
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Randomized,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if let Some(omsr_core::Error::BudgetExceeded { estimate, budget }) = e.downcast_ref() {
                eprintln!("budget exceeded: estimate {estimate} > budget {budget}");
                return ExitCode::from(EXIT_BUDGET);
            }
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Construct {
            group,
            m,
            family,
            dot,
            out,
        } => construct(&group, m, family.as_deref(), dot, out),
        Command::Verify {
            group,
            matrix,
            family,
            m,
            json,
            report,
        } => verify(
            &group,
            matrix.as_deref(),
            family.as_deref(),
            m,
            json,
            report,
        ),
        Command::Search {
            group,
            m,
            k,
            budget,
            jobs,
            checkpoint,
            connected,
            non_oriented,
            exact_histogram,
        } => {
            let input = load_group(&group)?;
            let space = SearchSpace {
                group: input.group,
                m,
                k,
                require_oriented: !non_oriented,
                require_connected: connected,
            };
            let options = SearchOptions {
                budget,
                jobs,
                checkpoint,
                exact_histogram,
            };
            let outcome = exhaustive_search(&space, &options)?;
            let out = json!({
                "schema": REPORT_SCHEMA,
                "group": input.label,
                "space": space.descriptor(),
                "outcome": outcome,
            });
            emit(&serde_json::to_string_pretty(&out)?)?;
            Ok(0)
        }
        Command::Suite {
            criteria,
            seed,
            json,
        } => suite(&criteria, seed, json),
        Command::Explore {
            n,
            k,
            oriented,
            mode,
            seed,
            steps,
            budget,
        } => {
            let mode = match mode {
                Mode::Exhaustive => ExploreMode::Exhaustive,
                Mode::Randomized => ExploreMode::Randomized { seed, steps },
            };
            let outcome = search_trivial_aut_digraph(&ExploreOptions {
                n,
                k,
                oriented,
                mode,
                budget,
            })?;
            emit(&serde_json::to_string_pretty(&outcome)?)?;
            Ok(0)
        }
    }
}

/// Prints a line, treating a closed pipe as success.
fn emit(text: &str) -> Result<()> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn load_group(spec: &str) -> Result<GroupInput> {
    parse_group_spec(spec).with_context(|| format!("group spec '{spec}'"))
}

fn write_or_print(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => emit(text),
    }
}

fn construct(
    group_spec: &str,
    m: usize,
    family: Option<&str>,
    dot: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<u8> {
    let input = load_group(group_spec)?;
    let g = &input.group;
    let (family, spec, matrix) = match family {
        Some(name) => {
            let family: Family = name.parse()?;
            let spec = g.generators();
            (family, spec, family.emit(g, &spec, m)?)
        }
        None => match construct_omsr(g, &g.generators(), m)? {
            Dispatch::Built(c) => (c.family, c.spec, c.matrix),
            Dispatch::Exception(verdict) => {
                eprintln!("{verdict}");
                return Ok(EXIT_EXCEPTION);
            }
        },
    };
    if let Some(path) = dot {
        let gamma = MCayleyDigraph::build(g, &matrix)?;
        std::fs::write(&path, gamma.to_dot())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let doc = json!({
        "schema": REPORT_SCHEMA,
        "group": input.label,
        "group_order": g.order(),
        "m": m,
        "family": family.name(),
        "generators": spec,
        "matrix": matrix.to_json(),
    });
    write_or_print(&serde_json::to_string_pretty(&doc)?, out.as_deref())?;
    Ok(0)
}

/// Accepts a bare matrix or any document with a `matrix` field.
fn read_matrix(path: &Path) -> Result<(ConnectionMatrix, Option<String>)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let family = value
        .get("family")
        .and_then(Value::as_str)
        .map(str::to_string);
    let inner = value.get("matrix").cloned().unwrap_or(value);
    let json: ConnectionMatrixJson = serde_json::from_value(inner)
        .with_context(|| format!("malformed matrix in {}", path.display()))?;
    Ok((ConnectionMatrix::from_json(&json)?, family))
}

fn verify(
    group_spec: &str,
    matrix: Option<&Path>,
    family: Option<&str>,
    m: Option<usize>,
    json_only: bool,
    report_path: Option<PathBuf>,
) -> Result<u8> {
    let input = load_group(group_spec)?;
    let g = &input.group;
    let (matrix, family) = match (matrix, family, m) {
        (Some(path), _, _) => read_matrix(path)?,
        (None, Some(name), Some(m)) => {
            let family: Family = name.parse()?;
            (
                family.emit(g, &g.generators(), m)?,
                Some(family.name().to_string()),
            )
        }
        (None, None, Some(m)) => match construct_omsr(g, &g.generators(), m)? {
            Dispatch::Built(c) => (c.matrix, Some(c.family.name().to_string())),
            Dispatch::Exception(verdict) => {
                eprintln!("{verdict}");
                return Ok(EXIT_EXCEPTION);
            }
        },
        _ => bail!("give --matrix FILE, or --m M with an optional --family NAME"),
    };
    let report = verify_matrix(g, &input.label, &matrix, family.as_deref())?;
    let text = serde_json::to_string_pretty(&report)?;
    if let Some(path) = report_path {
        std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    if json_only {
        emit(&text)?;
    } else {
        emit(&report.to_string())?;
    }
    Ok(0)
}

fn suite(criteria: &[u8], seed: u64, json_out: bool) -> Result<u8> {
    let options = SuiteOptions { seed };
    let ids: Vec<u8> = if criteria.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        criteria.to_vec()
    };
    let mut outcomes = Vec::new();
    for id in ids {
        let outcome =
            run_criterion(id, &options).with_context(|| format!("unknown criterion {id}"))?;
        if !json_out {
            emit(&outcome.to_string())?;
        }
        outcomes.push(outcome);
    }
    let failed: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    if json_out {
        emit(&serde_json::to_string_pretty(
            &json!({ "schema": REPORT_SCHEMA, "criteria": outcomes }),
        )?)?;
    } else if failed.is_empty() {
        emit("all criteria passed")?;
    } else {
        emit(&format!("failed criteria: {failed:?}"))?;
    }
    Ok(if failed.is_empty() { 0 } else { 1 })
}
