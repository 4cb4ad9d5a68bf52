mod commands;
mod error;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, CliResult};
use crate::input::GraphFunction;

#[derive(Parser, Debug)]
#[command(
    name = "monodec",
    version,
    about = "Exact analysis and monotonic decomposition of set functions"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Raise or lower the ground-set size limit of the command.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Required to raise --max-n above a command's default limit.
    #[arg(long, global = true)]
    i_know_this_is_exponential: bool,
}

impl GlobalArgs {
    /// Effective size limit for a command whose default is `default`.
    pub fn limit(&self, default: usize) -> CliResult<usize> {
        match self.max_n {
            None => Ok(default),
            Some(m) if m > default && !self.i_know_this_is_exponential => Err(CliError::Size(format!(
                "--max-n {m} exceeds the default limit {default}; pass --i-know-this-is-exponential to proceed"
            ))),
            Some(m) => Ok(m),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the property battery on a set function, graph or hypergraph.
    Check {
        input: PathBuf,
        /// Set function derived from a graph or hypergraph input.
        #[arg(long, value_enum, default_value_t = GraphFunction::Cut)]
        function: GraphFunction,
    },
    /// Decompose a set function into monotonic or alternating parts.
    Decompose {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: DecomposeKind,
        /// Feasibility mode: look for parts of sup-norm at most c times the norm of the input.
        #[arg(long)]
        c: Option<String>,
        /// Construction used by --kind coverage-diff.
        #[arg(long, value_enum, default_value_t = Construction::Canonical)]
        construction: Construction,
        #[arg(long, value_enum, default_value_t = GraphFunction::Cut)]
        function: GraphFunction,
    },
    /// Cut, triangle and bound report for a weighted graph.
    Graph {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphReport::All)]
        report: GraphReport,
    },
    /// Write a named instance.
    Generate {
        #[arg(value_enum)]
        name: GeneratorName,
        /// Positional parameters of the generator.
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        /// Ground-set size for lnl and extremal.
        #[arg(long)]
        n: Option<usize>,
        /// Emit the derived set function instead of the graph.
        #[arg(long)]
        as_function: bool,
        #[arg(long, value_enum, default_value_t = GraphFunction::Cut)]
        function: GraphFunction,
    },
    /// Search for edge reweightings that raise the optimal decomposition value.
    Probe {
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DecomposeKind {
    Sum,
    Diff,
    CoverageDiff,
    WeaklyCanonical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Canonical,
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphReport {
    Cuts,
    Triangles,
    Bounds,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeneratorName {
    Wheel,
    Complete,
    CompleteMinusEdge,
    Cycle,
    Path,
    CompleteBipartite,
    CexSum,
    CexDiff,
    Lnl,
    PartitionMatroidRank,
    Hyperedge,
    Extremal,
}

/// A finished command: the JSON to emit and the exit code to report.
pub struct Outcome {
    pub json: serde_json::Value,
    pub code: u8,
}

impl From<serde_json::Value> for Outcome {
    fn from(json: serde_json::Value) -> Self {
        Outcome { json, code: 0 }
    }
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { input, function } => commands::check(g, input, *function),
        Command::Decompose {
            input,
            kind,
            c,
            construction,
            function,
        } => commands::decompose(g, input, *kind, c.as_deref(), *construction, *function),
        Command::Graph { input, report } => commands::graph(g, input, *report),
        Command::Generate {
            name,
            params,
            n,
            as_function,
            function,
        } => commands::generate(*name, params, *n, *as_function, *function),
        Command::Probe { input, trials } => commands::probe(g, input, *trials),
    }
}

fn emit(global: &GlobalArgs, json: &serde_json::Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(json)?;
    text.push('\n');
    match &global.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|outcome| {
        emit(&cli.global, &outcome.json)?;
        Ok(outcome.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
