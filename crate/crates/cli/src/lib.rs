//! Command-line front end: graph files in, `key=value` records out.
//!
//! Exit codes: 0 on success or a passing check, 1 when a checked property is
//! violated, 2 on usage, parse or precondition errors.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use longpath_core::format::{emit, emit_dag, parse_graph, GraphDoc};
use longpath_core::gen::{gen_instance, GenKind, GenSpec};
use longpath_core::grid::{
    assign_weights, check_band, check_grid_uniqueness, degree_reduce, GridDag, WeightedGridDag,
};
use longpath_core::reduction::{
    check_crossing, longest_via_reduction, reduce_instance, verify_identity,
};
use longpath_core::ulsim::{main_simulate, subdivide, verify_claims, Backend, Suite};
use longpath_core::{extremal_uniqueness, longest_path_dp, prune, Dag, Error, Extremum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "longpath",
    version,
    about = "Longest paths in single-source single-sink DAGs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Keep only vertices on some s→t path, renumbered densely.
    Prune { input: Option<PathBuf> },
    /// Stretch every edge so that longest and shortest paths swap.
    Reduce {
        #[arg(long)]
        k: u64,
        /// Write the `stretch <u> <v> <l>` table here instead of as comments.
        #[arg(long)]
        stretch: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Split every vertex into chains so all degrees are at most 3.
    Degree3 { input: Option<PathBuf> },
    /// Assign mark-banded lattice weights to a grid file.
    Weight {
        /// Scale; defaults to the smallest valid one for the grid.
        #[arg(long)]
        n: Option<u64>,
        input: Option<PathBuf>,
    },
    /// Length of the longest s→t path.
    Longest {
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
        /// Vertex budget when weighted input has to be subdivided.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value_t = TestBackend::Census)]
        backend: TestBackend,
        input: Option<PathBuf>,
    },
    /// Check one structural property by exhaustive enumeration.
    Check {
        #[arg(long, value_enum)]
        property: Property,
        /// Path-enumeration cap.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        /// Weighting scale for grid inputs.
        #[arg(long)]
        n: Option<u64>,
        input: Option<PathBuf>,
    },
    /// Run the simulator's correctness and unambiguity suites.
    VerifyClaims {
        #[arg(long, value_enum, default_value_t = TestBackend::Census)]
        backend: TestBackend,
        input: Option<PathBuf>,
    },
    /// Emit a seeded random instance.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: GenKind,
        #[arg(long, default_value_t = 6)]
        nodes: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_unique: bool,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Dp,
    Reduction,
    Ulsim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Identity,
    Crossing,
    Band,
    MinUnique,
    MaxUnique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestBackend {
    Census,
    Enumerate,
}

impl From<TestBackend> for Backend {
    fn from(b: TestBackend) -> Backend {
        match b {
            TestBackend::Census => Backend::Census,
            TestBackend::Enumerate => Backend::Enumerate,
        }
    }
}

fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

const REDUCTION_BUDGET: usize = 1_000_000;
const ULSIM_BUDGET: usize = 40;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command, reading
/// graph text from `stdin` when no input file is given or it is `-`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let mut out = String::new();
    match execute(cli.command, stdin, &mut out) {
        Ok(code) => Outcome {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_input(input: &Option<PathBuf>, stdin: &mut dyn Read) -> CliResult<GraphDoc> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            s
        }
    };
    Ok(parse_graph(&text)?)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn require_grid(doc: GraphDoc, what: &str) -> CliResult<GridDag> {
    match doc {
        GraphDoc::Grid(g) => Ok(g),
        GraphDoc::Dag(_) => Err(CliError::Usage(format!("{what} needs a grid file"))),
    }
}

fn weighted_grid(grid: &GridDag, n: Option<u64>) -> CliResult<WeightedGridDag> {
    Ok(assign_weights(grid, n.unwrap_or_else(|| grid.min_scale()))?)
}

/// Unit-weight version of `g`, subdividing weighted edges within `budget`.
fn unit_graph(g: &Dag, budget: usize) -> CliResult<Dag> {
    if g.is_unit_weight() {
        Ok(g.clone())
    } else {
        Ok(subdivide(g, budget)?.dag)
    }
}

fn execute(command: Command, stdin: &mut dyn Read, out: &mut String) -> CliResult<i32> {
    match command {
        Command::Prune { input } => {
            let pruned = match read_input(&input, stdin)? {
                GraphDoc::Dag(g) => GraphDoc::Dag(prune(&g)?.dag),
                GraphDoc::Grid(g) => GraphDoc::Grid(g.pruned()?),
            };
            out.push_str(&emit(&pruned));
        }
        Command::Reduce { k, stretch, input } => {
            let g = read_input(&input, stdin)?.into_dag();
            let r = reduce_instance(&g, k)?;
            writeln!(
                out,
                "# k={} k_prime={} twice_edges={}",
                r.k,
                r.k_prime,
                r.twice_edges()
            )
            .unwrap();
            out.push_str(&emit_dag(&r.graph));
            let table: String = g
                .edges()
                .iter()
                .zip(&r.stretches)
                .map(|(e, l)| format!("stretch {} {} {l}\n", e.from, e.to))
                .collect();
            match stretch {
                Some(path) => fs::write(&path, table).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?,
                None => table.lines().for_each(|l| writeln!(out, "# {l}").unwrap()),
            }
        }
        Command::Degree3 { input } => {
            let g = read_input(&input, stdin)?.into_dag();
            out.push_str(&emit_dag(&degree_reduce(&g)?.dag));
        }
        Command::Weight { n, input } => {
            let grid = require_grid(read_input(&input, stdin)?, "weight")?;
            let wg = weighted_grid(&grid, n)?;
            writeln!(out, "# scale={}", wg.scale()).unwrap();
            out.push_str(&emit(&GraphDoc::Grid(wg.grid().clone())));
        }
        Command::Longest {
            method,
            budget,
            backend,
            input,
        } => {
            let g = read_input(&input, stdin)?.into_dag();
            match method {
                Method::Dp => {
                    let l = longest_path_dp(&g, g.source(), g.sink()).ok_or(Error::NoPath {
                        s: g.source(),
                        t: g.sink(),
                    })?;
                    writeln!(out, "longest={l} method=dp").unwrap();
                }
                Method::Reduction => {
                    let unit = unit_graph(&g, budget.unwrap_or(REDUCTION_BUDGET))?;
                    let l = longest_via_reduction(&unit)?;
                    writeln!(out, "longest={l} method=reduction").unwrap();
                }
                Method::Ulsim => {
                    let unit = unit_graph(&g, budget.unwrap_or(ULSIM_BUDGET))?;
                    let sim = main_simulate(&unit, backend.into())?;
                    writeln!(
                        out,
                        "longest={} method=ulsim multiplicity={} accepted_m={}",
                        sim.longest, sim.multiplicity, sim.accepted_m
                    )
                    .unwrap();
                }
            }
        }
        Command::Check {
            property,
            cap,
            n,
            input,
        } => return check(property, cap, n, read_input(&input, stdin)?, out),
        Command::VerifyClaims { backend, input } => {
            let g = read_input(&input, stdin)?.into_dag();
            let report = verify_claims(&g, backend.into())?;
            writeln!(
                out,
                "max_unique={} total={}",
                report.max_unique, report.total
            )
            .unwrap();
            for suite in Suite::ALL {
                let s = report.suite(suite);
                write!(
                    out,
                    "suite={} status={} checks={} witnesses={}",
                    suite.name(),
                    status(s.passed()),
                    s.checks,
                    s.witnesses.len()
                )
                .unwrap();
                if let Some(w) = s.witnesses.first() {
                    write!(out, " first_witness=\"{w}\"").unwrap();
                }
                out.push('\n');
            }
            return Ok(verdict(report.passed()));
        }
        Command::Gen {
            kind,
            nodes,
            density,
            seed,
            max_unique,
            rows,
            cols,
        } => {
            let spec = GenSpec {
                max_unique,
                rows,
                cols,
                ..GenSpec::new(kind, nodes, density, seed)
            };
            out.push_str(&emit(&gen_instance(&spec)?));
        }
    }
    Ok(EXIT_OK)
}

fn check(
    property: Property,
    cap: usize,
    n: Option<u64>,
    doc: GraphDoc,
    out: &mut String,
) -> CliResult<i32> {
    let name = property
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned();
    let ok = match property {
        Property::Identity => {
            let r = verify_identity(doc.dag(), cap)?;
            writeln!(
                out,
                "property={name} status={} paths={} violations={} order_reversed={} truncated={}",
                status(r.passed()),
                r.paths_checked,
                r.violations.len(),
                r.order_reversed,
                r.truncated
            )
            .unwrap();
            r.passed()
        }
        Property::Crossing => {
            let r = check_crossing(doc.dag(), cap)?;
            writeln!(
                out,
                "property={name} status={} paths={} violations={} truncated={}",
                status(r.passed()),
                r.paths_checked,
                r.violations.len(),
                r.truncated
            )
            .unwrap();
            r.passed()
        }
        Property::Band => {
            let grid = require_grid(doc, "check --property band")?;
            let wg = weighted_grid(&grid, n)?;
            let band = check_band(&wg, cap);
            let unique = check_grid_uniqueness(&wg, cap);
            let ok = band.passed() && unique.passed();
            writeln!(
                out,
                "property={name} status={} scale={} paths={} bands={} violations={} band_ties={} truncated={}",
                status(ok),
                wg.scale(),
                band.paths_checked,
                band.bands.len(),
                band.violations.len(),
                unique.band_ties.len(),
                band.truncated || unique.truncated
            )
            .unwrap();
            ok
        }
        Property::MinUnique | Property::MaxUnique => {
            let mode = if property == Property::MinUnique {
                Extremum::Min
            } else {
                Extremum::Max
            };
            let g = match doc {
                GraphDoc::Dag(g) => g,
                GraphDoc::Grid(grid) => weighted_grid(&grid, n)?.dag().clone(),
            };
            let r = extremal_uniqueness(&g, mode);
            let violations = r.violations().count();
            writeln!(
                out,
                "property={name} status={} pairs={} violations={violations}",
                status(r.is_unique()),
                r.pairs.len()
            )
            .unwrap();
            r.is_unique()
        }
    };
    Ok(verdict(ok))
}
