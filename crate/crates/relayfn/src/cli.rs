//! Command-line parsing and dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use relayfn_core::graphs::Mode;

use crate::commands::{cmd_accept, cmd_entropy, cmd_graph, cmd_region, cmd_verify, RunConfig};
use crate::error::{CliError, Result};
use crate::report::Output;

#[derive(Debug, Parser)]
#[command(name = "relayfn", version, about = "Zero-error function computation over a relay: graphs, entropies, rate regions, schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Export every graph family with a summary table.
    Graph {
        /// Also export the auxiliary graph of singleton choices.
        #[arg(long)]
        aux: bool,
    },
    /// Chromatic, graph, conditional and complementary graph entropies.
    Entropy,
    /// Inner and outer rate regions, corner tables and membership queries.
    Region,
    /// Check a scheme file exhaustively.
    Verify { scheme: PathBuf },
    /// Run the acceptance suite.
    Accept,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Restricted,
    Unrestricted,
}

#[derive(Debug, Args)]
struct Common {
    /// Fixture name (e.g. `DSBS_XOR(0.11)`) or instance file path.
    #[arg(long, global = true)]
    instance: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    n: usize,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Restricted)]
    mode: ModeArg,
    #[arg(long, global = true, default_value_t = 2)]
    nmax: usize,
    #[arg(long, global = true, default_value_t = 2000)]
    budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Stopping tolerance of the iterative solvers.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Directory for the JSON report, the text summary and exports.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Membership query file for `region`.
    #[arg(long, global = true)]
    query: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
}

fn write_outputs(dir: &Path, name: &str, out: &Output) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut all = vec![(format!("{name}.json"), &out.json), (format!("{name}.txt"), &out.text)];
    all.extend(out.files.iter().map(|(n, c)| (n.clone(), c)));
    for (file, contents) in all {
        let path = dir.join(file);
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(Output, bool)> {
    let c = cli.common;
    let needs_instance = !matches!(cli.command, Command::Accept);
    let instance = match c.instance {
        Some(i) => i,
        None if needs_instance => return Err(CliError::Config("--instance is required".into())),
        None => String::new(),
    };
    let mut rc = RunConfig {
        instance,
        n: c.n,
        mode: match c.mode {
            ModeArg::Restricted => Mode::Restricted,
            ModeArg::Unrestricted => Mode::Unrestricted,
        },
        nmax: c.nmax,
        budget: c.budget,
        seed: c.seed,
        tol: c.tol,
        query: c.query,
        ..RunConfig::default()
    };
    let (name, out) = match cli.command {
        Command::Graph { aux } => {
            rc.aux = aux;
            ("graph", cmd_graph(&rc)?)
        }
        Command::Entropy => ("entropy", cmd_entropy(&rc)?),
        Command::Region => ("region", cmd_region(&rc)?),
        Command::Verify { scheme } => {
            rc.scheme = Some(scheme);
            ("verify", cmd_verify(&rc)?)
        }
        Command::Accept => ("accept", cmd_accept(&rc)?),
    };
    if let Some(dir) = &c.out {
        write_outputs(dir, name, &out)?;
    }
    Ok((out, c.json))
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code: 0 success, 1 computation failure, 2 configuration error.
pub fn run<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli) {
        Ok((out, json)) => {
            let _ = stdout.write_all(if json { out.json.as_bytes() } else { out.text.as_bytes() });
            i32::from(!out.success)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
