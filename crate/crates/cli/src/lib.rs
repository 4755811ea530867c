//! The `lpa-ibn` command line, as a library so tests can drive it in-process.
//!
//! Exit codes: 0 when the command completed (the verdict is in the output),
//! 64 for unreadable input or bad usage, 65 when an operation's precondition
//! fails, 70 for internal errors.

pub mod json;
pub mod ops;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use ibn_core::format::{parse_graph, serialize_gtf, serialize_json};
use ibn_core::monoid::ibn_refute_search;
use ibn_core::{classify_sufficient, decide_ibn, Error, Graph, SearchBudget, SufficiencyResult};
use rayon::prelude::*;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PRECONDITION: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

/// Environment variable overriding the oracle's default state budget.
pub const BUDGET_ENV: &str = "IBN_ORACLE_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "lpa-ibn",
    version,
    about = "Invariant Basis Number for Leavitt path algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide IBN by the rank criterion.
    Decide {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the full non-IBN witness, rewriting traces included.
    Witness {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search the graph monoid for m·Σv = n·Σv with n < m ≤ MAX.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max: u64,
        /// States per closure; defaults to $IBN_ORACLE_BUDGET or 100000.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Apply a graph transformation and print the resulting graph.
    Transform {
        file: PathBuf,
        #[arg(long)]
        op: ops::Op,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the JSON graph document instead of GTF.
        #[arg(long)]
        json: bool,
    },
    /// Report the first graphical sufficient condition for IBN that holds.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide and classify every .gtf and .json graph in DIR.
    Batch {
        dir: PathBuf,
        #[arg(long)]
        report: PathBuf,
        /// Leave timings out so reports are reproducible.
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidName(_)
        | Error::DuplicateVertex(_)
        | Error::DuplicateEdge(_)
        | Error::DanglingEndpoint(_) => EXIT_USAGE,
        Error::WitnessConstructionFailed(_) | Error::DimensionMismatch(_) => EXIT_INTERNAL,
        _ => EXIT_PRECONDITION,
    }
}

/// Runs the command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => out,
        Err(out) => out,
    }
}

fn load(path: &Path) -> Result<Graph, Output> {
    let text = fs::read_to_string(path)
        .map_err(|e| Output::fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Output::fail(exit_code(&e), format!("{}: {e}", path.display())))
}

fn lib<T>(r: ibn_core::Result<T>) -> Result<T, Output> {
    r.map_err(|e| Output::fail(exit_code(&e), e))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn joined<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn execute(command: Command) -> Result<Output, Output> {
    match command {
        Command::Decide { file, json } => {
            let g = load(&file)?;
            let v = lib(decide_ibn(&g))?;
            if json {
                return Ok(Output::ok(pretty(&json::verdict(&v))));
            }
            let mut s = format!(
                "has_ibn: {}\nrank_M: {}\nrank_aug: {}\n",
                v.has_ibn, v.rank_m, v.rank_aug
            );
            if let Some(w) = &v.witness {
                s.push_str(&format!("witness: m = {}, n = {}, d = {}\n", w.m, w.n, w.d));
                s.push_str(&format!("gamma: {}\n", w.gamma));
            }
            Ok(Output::ok(s))
        }
        Command::Witness { file, json } => {
            let g = load(&file)?;
            let v = lib(decide_ibn(&g))?;
            let Some(w) = v.witness else {
                return Err(Output::fail(EXIT_PRECONDITION, Error::NotApplicable));
            };
            if json {
                return Ok(Output::ok(pretty(&json::witness(&w))));
            }
            Ok(Output::ok(format!(
                "m: {}\nn: {}\nd: {}\nregular: {}\nm_vec: {}\nk: {}\nk_prime: {}\nsigma: {}\nsigma_prime: {}\ngamma: {}\n",
                w.m,
                w.n,
                w.d,
                joined(&w.regular),
                joined(&w.m_vec),
                joined(&w.k),
                joined(&w.k_prime),
                joined(&w.sigma.steps),
                joined(&w.sigma_prime.steps),
                w.gamma,
            )))
        }
        Command::Oracle {
            file,
            max,
            budget,
            json,
        } => {
            let g = load(&file)?;
            let budget = match budget {
                Some(b) => Some(b),
                None => match std::env::var(BUDGET_ENV) {
                    Ok(s) => Some(s.trim().parse().map_err(|_| {
                        Output::fail(
                            EXIT_USAGE,
                            format!("{BUDGET_ENV} must be a state count, got `{s}`"),
                        )
                    })?),
                    Err(_) => None,
                },
            };
            let mut limits = SearchBudget::for_graph(&g);
            if let Some(b) = budget {
                limits = limits.with_max_states(b);
            }
            let r = lib(ibn_refute_search(&g, max, limits))?;
            if json {
                return Ok(Output::ok(pretty(&json::refutation(r.as_ref()))));
            }
            Ok(Output::ok(match r {
                Some(r) => format!(
                    "refuted: {}·Σv = {}·Σv\nleft: {}\nright: {}\ncommon: {}\n",
                    r.m,
                    r.n,
                    joined(&r.left.steps),
                    joined(&r.right.steps),
                    r.common
                ),
                None => format!(
                    "no equality m·Σv = n·Σv with n < m ≤ {max} found within {} states per closure (inconclusive)\n",
                    limits.max_states
                ),
            }))
        }
        Command::Transform {
            file,
            op,
            out,
            json,
        } => {
            let g = load(&file)?;
            let result =
                match lib(ops::apply(&op, &g))? {
                    Some(r) => r,
                    None => return Err(Output::fail(
                        EXIT_PRECONDITION,
                        "an isolated vertex appears during source elimination; the graph has IBN \
                         and no source-free equivalent is constructed",
                    )),
                };
            let text = if json {
                let mut s = serialize_json(&result);
                s.push('\n');
                s
            } else {
                serialize_gtf(&result)
            };
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| {
                        Output::fail(EXIT_USAGE, format!("{}: {e}", path.display()))
                    })?;
                    Ok(Output::ok(String::new()))
                }
                None => Ok(Output::ok(text)),
            }
        }
        Command::Classify { file, json } => {
            let g = load(&file)?;
            let c = lib(classify_sufficient(&g))?;
            if json {
                return Ok(Output::ok(pretty(&json::classification(&c))));
            }
            let evidence = match &c {
                SufficiencyResult::IsolatedVertexRule { vertex, stage } => {
                    format!("vertex: {vertex}\nstage: {stage}\n")
                }
                SufficiencyResult::SourceCycleRule { cycle } => {
                    format!("cycle: {}\n", joined(cycle))
                }
                SufficiencyResult::DisjointCyclesRule { cycles } => cycles
                    .iter()
                    .map(|c| format!("cycle: {}\n", joined(c)))
                    .collect(),
                SufficiencyResult::None => String::new(),
            };
            Ok(Output::ok(format!("rule: {:?}\n{evidence}", c.rule())))
        }
        Command::Batch {
            dir,
            report,
            no_timings,
        } => batch(&dir, &report, !no_timings),
    }
}

fn graph_files(dir: &Path) -> Result<Vec<PathBuf>, Output> {
    let entries = fs::read_dir(dir)
        .map_err(|e| Output::fail(EXIT_USAGE, format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file() && matches!(p.extension().and_then(|x| x.to_str()), Some("gtf" | "json"))
        })
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

/// One report record. Failures become records too, so one bad file does not
/// hide the rest.
pub fn batch_record(path: &Path, timings: bool) -> Value {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let failed =
        |e: &Error| json!({ "file": name, "error": e.to_string(), "exit_code": exit_code(e) });
    let t0 = Instant::now();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return json!({ "file": name, "error": e.to_string(), "exit_code": EXIT_USAGE }),
    };
    let g = match parse_graph(&text) {
        Ok(g) => g,
        Err(e) => return failed(&e),
    };
    let t1 = Instant::now();
    let v = match decide_ibn(&g) {
        Ok(v) => v,
        Err(e) => return failed(&e),
    };
    let t2 = Instant::now();
    let c = match classify_sufficient(&g) {
        Ok(c) => c,
        Err(e) => return failed(&e),
    };
    let t3 = Instant::now();
    let mut record = json!({
        "file": name,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "has_ibn": v.has_ibn,
        "rank_M": v.rank_m,
        "rank_aug": v.rank_aug,
        "rule": c.rule(),
    });
    if let Some(w) = &v.witness {
        record["witness"] =
            json!({ "m": json::uint(&w.m), "n": json::uint(&w.n), "d": json::uint(&w.d) });
    }
    if timings {
        let us = |a: Instant, b: Instant| (b - a).as_micros() as u64;
        record["timings_us"] = json!({
            "parse": us(t0, t1),
            "decide": us(t1, t2),
            "classify": us(t2, t3),
        });
    }
    record
}

fn batch(dir: &Path, report: &Path, timings: bool) -> Result<Output, Output> {
    let files = graph_files(dir)?;
    let records: Vec<Value> = files.par_iter().map(|p| batch_record(p, timings)).collect();
    let mut text = String::new();
    for r in &records {
        text.push_str(&serde_json::to_string(r).expect("values serialize"));
        text.push('\n');
    }
    fs::write(report, text)
        .map_err(|e| Output::fail(EXIT_USAGE, format!("{}: {e}", report.display())))?;
    let errors = records.iter().filter(|r| r.get("error").is_some()).count();
    let lacking = records
        .iter()
        .filter(|r| r["has_ibn"] == json!(false))
        .count();
    Ok(Output::ok(format!(
        "{} graphs: {} with IBN, {} without, {} errors\n",
        records.len(),
        records.len() - lacking - errors,
        lacking,
        errors
    )))
}
