use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use delta_core::ChapmanVariant;
use deltaset_cli::{run, run_batch, Command, OutputFormat, RunOutcome, RunRequest, EXIT_USAGE};

/// Delta sets of numerical monoids.
#[derive(Parser, Debug)]
#[command(name = "deltaset", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Emit one canonical JSON document per result.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for `delta` (default: logical CPUs, capped at a_1).
    #[arg(long, global = true, value_name = "N", value_parser = positive)]
    threads: Option<usize>,

    /// Upper element for `oracle`.
    #[arg(long, global = true, value_name = "N")]
    limit: Option<u64>,

    /// Element for `factorizations`, `lengths`, `element-delta` and `verify`.
    #[arg(long, global = true, value_name = "N")]
    element: Option<u64>,

    /// Read one generator list per line from FILE (`-` for stdin).
    #[arg(long, global = true, value_name = "FILE")]
    batch: Option<PathBuf>,

    /// Use `2p a_2 a_p^2 + a_1 a_p` instead of `+ a_1 a_2` for the comparison bound.
    #[arg(long, global = true)]
    chapman_text_variant: bool,

    /// Elements `verify` samples above N_S.
    #[arg(long, global = true, value_name = "K", default_value_t = 3)]
    samples: u64,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Delta set of the monoid.
    Delta { generators: Vec<u64> },
    /// d, S_i, S'_i, N_S and the comparison bound.
    Bounds { generators: Vec<u64> },
    /// Every factorization of --element.
    Factorizations { generators: Vec<u64> },
    /// Length set of --element and its table of maximal first coordinates.
    Lengths { generators: Vec<u64> },
    /// Delta set of the single element --element.
    ElementDelta { generators: Vec<u64> },
    /// Union of the element Delta sets up to --limit, by direct enumeration.
    Oracle { generators: Vec<u64> },
    /// Check the geometric, middle-band and periodicity statements.
    Verify { generators: Vec<u64> },
}

fn positive(arg: &str) -> Result<usize, String> {
    match arg.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn emit(out: &RunOutcome) -> ExitCode {
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, generators) = match cli.command {
        Sub::Delta { generators } => (Command::Delta, generators),
        Sub::Bounds { generators } => (Command::Bounds, generators),
        Sub::Factorizations { generators } => (Command::Factorizations, generators),
        Sub::Lengths { generators } => (Command::Lengths, generators),
        Sub::ElementDelta { generators } => (Command::ElementDelta, generators),
        Sub::Oracle { generators } => (Command::Oracle, generators),
        Sub::Verify { generators } => (Command::Verify, generators),
    };
    let req = RunRequest {
        element: cli.element,
        limit: cli.limit,
        parallelism: cli.threads,
        output: if cli.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        },
        chapman_variant: if cli.chapman_text_variant {
            ChapmanVariant::Text
        } else {
            ChapmanVariant::Table
        },
        samples: cli.samples,
        ..RunRequest::new(command, generators)
    };

    let Some(path) = cli.batch else {
        return emit(&run(&req));
    };
    if !req.generators.is_empty() {
        eprintln!("error: usage: give generators on the command line or with --batch, not both");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    let input = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&path)
    };
    match input {
        Ok(text) => emit(&run_batch(&req, &text)),
        Err(e) => {
            eprintln!("error: usage: cannot read {}: {e}", path.display());
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
