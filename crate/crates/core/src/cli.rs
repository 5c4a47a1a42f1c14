//! The `tfsr` command line: bound evaluation, curve export, graph analysis,
//! weight optimization, claim verification, search and catalog export.

use std::cmp::Ordering;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;

use crate::bounds::{self, BoundsError};
use crate::exactmath::{parse_rational, rat, Rational};
use crate::flagcalc::{case_analysis, identity_suite, FlagError};
use crate::graphcore::io::{format_weights, read_weighted_graph, to_graph6};
use crate::graphcore::{boundedness_check, catalog, GraphError, WeightedGraph};
use crate::regweights::{optimize_a, LpStatus};
use crate::search::{lower_bound_table, run_search, SearchConfig, SearchError};

#[derive(Debug, Parser)]
#[command(name = "tfsr", version, about = "Exact bounds and searches for triangle-free regular graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Cases,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the upper bound on a at one density.
    EvalBound {
        #[arg(long)]
        rho: String,
        #[arg(long, default_value = "1e-12")]
        precision: String,
    },
    /// Write the bound curve on a rational grid as CSV.
    Curve {
        #[arg(long, default_value = "1/1000")]
        grid_step: String,
        #[arg(long, default_value = "1e-12")]
        precision: String,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long, env = "TFSR_WORKERS")]
        workers: Option<usize>,
    },
    /// Report the invariants of a weighted graph.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Solve the linear program for optimal regular weights.
    OptimizeWeights {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Check the flag identities and the case analysis on a graph.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, required_unless_present = "catalog", conflicts_with = "catalog")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "graph")]
        weights: Option<PathBuf>,
        #[arg(long)]
        catalog: Option<String>,
        /// Print every case check, not only failures and tight ones.
        #[arg(long)]
        detail: bool,
    },
    /// Enumerate triangle-free skeletons and report the survivors.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long, env = "TFSR_WORKERS")]
        workers: Option<usize>,
        #[arg(long, env = "TFSR_CHECKPOINT_DIR")]
        checkpoint_dir: Option<PathBuf>,
        /// Append the (rho, a) table checked against the bound.
        #[arg(long)]
        table: bool,
    },
    /// Export a named graph as graph6 plus a weights sidecar.
    Catalog {
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::CompleteGraph | GraphError::ZeroA | GraphError::WitnessFailed(_) => {
                CliError::Domain(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FlagError> for CliError {
    fn from(e: FlagError) -> Self {
        match e {
            FlagError::NotTriangleFree | FlagError::NotRegular => CliError::Domain(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Input(format!("--{name}: {e}")))
}

fn precision_arg(text: &str) -> Result<Rational, CliError> {
    let p = rational_arg("precision", text)?;
    if !p.is_positive() {
        return Err(CliError::Input("--precision must be positive".into()));
    }
    Ok(p)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Writes to `stdout` for `-`, otherwise to the named file.
fn emit(out: &str, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    if out == "-" {
        stdout.write_all(text.as_bytes())?;
    } else {
        fs::write(out, text).map_err(|e| CliError::Input(format!("{out}: {e}")))?;
    }
    Ok(())
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(CliError::Input("--workers must be at least 1".into()));
        }
        b = b.num_threads(w);
    }
    b.build().map_err(|e| CliError::Input(e.to_string()))
}

/// Parses `args` and runs the command, writing results to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Input(e.to_string()))?;
    execute(cli.command, stdout)
}

pub fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::EvalBound { rho, precision } => eval_bound(&rho, &precision, stdout),
        Command::Curve {
            grid_step,
            precision,
            out,
            workers,
        } => {
            let step = rational_arg("grid-step", &grid_step)?;
            let width = precision_arg(&precision)?;
            let grid = bounds::grid(&step)?;
            let rows = pool(workers)?.install(|| bounds::curve_samples(&grid, &width))?;
            emit(&out, stdout, &bounds::curve_csv(&rows, &width))
        }
        Command::Analyze { graph, weights } => {
            let g = read_weighted_graph(&graph, weights.as_deref())?;
            analyze(&g, stdout)
        }
        Command::OptimizeWeights { graph, out } => {
            let g = read_weighted_graph(&graph, None)?;
            optimize_weights(&g, &out, stdout)
        }
        Command::Verify {
            suite,
            graph,
            weights,
            catalog: name,
            detail,
        } => {
            let g = match (&graph, &name) {
                (Some(p), _) => read_weighted_graph(p, weights.as_deref())?,
                (None, Some(n)) => catalog::by_name(n)?,
                (None, None) => return Err(CliError::Input("give --graph or --catalog".into())),
            };
            verify(&g, suite, detail, stdout)
        }
        Command::Search {
            config,
            out,
            workers,
            checkpoint_dir,
            table,
        } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| CliError::Input(format!("{}: {e}", config.display())))?;
            let mut cfg: SearchConfig = text.parse()?;
            if let Some(w) = workers {
                cfg.worker_count = w;
            }
            if let Some(dir) = checkpoint_dir {
                cfg.checkpoint_path = Some(match cfg.checkpoint_path.take() {
                    Some(p) if p.is_relative() => dir.join(p),
                    Some(p) => p,
                    None => dir.join("search.checkpoint"),
                });
            }
            search(&cfg, &out, table, stdout)
        }
        Command::Catalog { name, out } => {
            let g = catalog::by_name(&name)?;
            let g6 = format!("{}\n", to_graph6(&g));
            let w = format_weights(&g);
            if out == "-" {
                stdout.write_all(g6.as_bytes())?;
                stdout.write_all(w.as_bytes())?;
            } else {
                emit(&out, stdout, &g6)?;
                emit(&format!("{out}.weights"), stdout, &w)?;
            }
            Ok(())
        }
    }
}

fn eval_bound(rho: &str, precision: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rho = rational_arg("rho", rho)?;
    let width = precision_arg(precision)?;
    if rho.is_negative() || rho > rat(1, 2) {
        return Err(CliError::Input(format!("rho = {rho} must lie in [0, 1/2]")));
    }
    let b = bounds::bound(&rho)?;
    writeln!(stdout, "piece={} {}", b.piece_label(), b.describe(&width))?;
    Ok(())
}

fn analyze(g: &WeightedGraph, stdout: &mut dyn Write) -> Result<(), CliError> {
    let tf = g.is_triangle_free();
    writeln!(stdout, "n={}", g.n())?;
    writeln!(stdout, "rho={}", g.rho())?;
    let a = g.a_value().ok();
    match &a {
        Some(a) => writeln!(stdout, "a={a}")?,
        None => writeln!(stdout, "a=undefined")?,
    }
    writeln!(stdout, "triangle-free={}", yes_no(tf))?;
    writeln!(stdout, "twin-free={}", yes_no(g.is_twin_free()))?;
    writeln!(stdout, "diameter2={}", yes_no(g.is_diameter_two()))?;
    let regular = g.regular_degree();
    writeln!(stdout, "regular={}", yes_no(regular.is_some()))?;
    if !tf {
        return Err(CliError::Domain("graph contains a triangle".into()));
    }
    let bounded = match boundedness_check(g) {
        Ok(true) => "pass",
        Ok(false) => "fail",
        Err(_) => "n/a",
    };
    writeln!(stdout, "boundedness={bounded}")?;
    let (Some(rho), Some(a)) = (regular, a) else {
        writeln!(stdout, "tight-vs-a0=n/a")?;
        return Ok(());
    };
    let Ok(b) = bounds::bound(&rho) else {
        writeln!(stdout, "tight-vs-a0=n/a")?;
        return Ok(());
    };
    writeln!(stdout, "a0_piece={} a0_{}", b.piece_label(), b.describe(&rat(1, 1_000_000_000_000)))?;
    let cmp = b.value.cmp_rational(&a);
    writeln!(stdout, "tight-vs-a0={}", yes_no(cmp == Ordering::Equal))?;
    if cmp == Ordering::Less {
        return Err(CliError::Verification(format!("a = {a} exceeds the bound at rho = {rho}")));
    }
    if bounded == "fail" {
        return Err(CliError::Verification("vertex-count bound violated".into()));
    }
    Ok(())
}

fn optimize_weights(g: &WeightedGraph, out: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let r = optimize_a(g);
    let mut text = r.to_string();
    match r.status {
        LpStatus::Optimal => {
            text.push_str(&format!("verified={}\n", yes_no(r.verify(g))));
            emit(out, stdout, &text)
        }
        LpStatus::Unbounded => {
            emit(out, stdout, &text)?;
            Err(CliError::Domain("graph is complete: a is unconstrained".into()))
        }
        _ => {
            emit(out, stdout, &text)?;
            Err(CliError::Domain(format!("no regular probability weights ({})", r.status)))
        }
    }
}

fn verify(g: &WeightedGraph, suite: Suite, detail: bool, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut failures = Vec::new();
    if suite != Suite::Cases {
        let report = identity_suite(g)?;
        writeln!(stdout, "# identities")?;
        write!(stdout, "{report}")?;
        for c in report.checks.iter().filter(|c| !c.holds()) {
            failures.push(format!("identity {}", c.id));
        }
    }
    if suite != Suite::Identities {
        writeln!(stdout, "# cases")?;
        for (v1, v2) in g.minimizing_pairs()? {
            let r = case_analysis(g, v1, v2)?;
            let applicable = r.checks.iter().filter(|c| c.applicable).count();
            let failed: Vec<_> = r.checks.iter().filter(|c| c.applicable && !c.holds).collect();
            writeln!(
                stdout,
                "pair={v1},{v2}\tc={}\tchecks={}\tapplicable={}\tfailed={}",
                r.c,
                r.checks.len(),
                applicable,
                failed.len()
            )?;
            for c in &r.checks {
                let failing = c.applicable && !c.holds;
                if detail || failing || (c.applicable && c.tight()) {
                    writeln!(stdout, "\t{c}\ttight={}", yes_no(c.tight()))?;
                }
            }
            for c in failed {
                failures.push(format!("case {} at pair {v1},{v2}", c.id));
            }
        }
    }
    if failures.is_empty() {
        writeln!(stdout, "result=pass")?;
        Ok(())
    } else {
        writeln!(stdout, "result=fail")?;
        Err(CliError::Verification(failures.join("; ")))
    }
}

fn search(cfg: &SearchConfig, out: &str, table: bool, stdout: &mut dyn Write) -> Result<(), CliError> {
    let results = run_search(cfg)?;
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!("{r}\n"));
    }
    emit(out, stdout, &text)?;
    if table {
        let rows = lower_bound_table(&results);
        for row in &rows {
            writeln!(stdout, "{row}")?;
        }
        if rows.iter().any(|r| r.consistent() == Some(false)) {
            return Err(CliError::Verification("a search result exceeds the bound".into()));
        }
    }
    let bad = results.iter().filter(|r| !r.revalidate()).count();
    if bad > 0 {
        return Err(CliError::Verification(format!("{bad} results failed revalidation")));
    }
    Ok(())
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(cli.command, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
