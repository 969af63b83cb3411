use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use neardist_cli::{configure_threads, run, CliError, Command, RunConfig, THREADS_ENV};

#[derive(Parser)]
#[command(
    name = "neardist",
    version,
    about = "Separated point sets with few nearly equal distances"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a construction to --out plus a <out>.meta.json sidecar
    Generate(Flags),
    /// Best k-window placement for the distances of --in
    Analyze(Flags),
    /// Check --in against k-distance, weak-eps, schuette or certify
    Verify(Flags),
    /// Print the Turán number T(n, s)
    Turan(Flags),
    /// Print m(d, k) and its witness
    Mdk(Flags),
    /// Run the reproduction table and write a markdown summary
    Reproduce(Flags),
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    eps1: Option<String>,
    #[arg(long)]
    length: Option<String>,
    #[arg(long)]
    scale: Option<String>,
    #[arg(long)]
    ratio: Option<String>,
    #[arg(long)]
    t1: Option<String>,
    #[arg(long)]
    t2: Option<String>,
    #[arg(long)]
    construction: Option<String>,
    #[arg(long)]
    bound: Option<String>,
    #[arg(long)]
    check: Option<String>,
    #[arg(long = "split-ratio")]
    split_ratio: Option<String>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Cmd {
    fn into_config(self) -> RunConfig {
        let (command, f) = match self {
            Cmd::Generate(f) => (Command::Generate, f),
            Cmd::Analyze(f) => (Command::Analyze, f),
            Cmd::Verify(f) => (Command::Verify, f),
            Cmd::Turan(f) => (Command::Turan, f),
            Cmd::Mdk(f) => (Command::Mdk, f),
            Cmd::Reproduce(f) => (Command::Reproduce, f),
        };
        let mut config = RunConfig::new(command);
        let pairs = [
            ("d", f.d),
            ("k", f.k),
            ("n", f.n),
            ("s", f.s),
            ("eps", f.eps),
            ("eps1", f.eps1),
            ("length", f.length),
            ("scale", f.scale),
            ("ratio", f.ratio),
            ("t1", f.t1),
            ("t2", f.t2),
            ("construction", f.construction),
            ("bound", f.bound),
            ("check", f.check),
            ("split-ratio", f.split_ratio),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                config.params.insert(key.to_string(), v);
            }
        }
        config.input = f.input;
        config.output = f.out;
        config.seed = f.seed;
        config
    }
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let msg = e.kind().as_str().unwrap_or("invalid arguments").to_string();
            let detail = e.to_string();
            let first = detail
                .lines()
                .next()
                .unwrap_or(&msg)
                .trim_start_matches("error: ");
            return fail(&CliError::Usage(first.to_string()));
        }
    };
    if let Err(e) = configure_threads(std::env::var(THREADS_ENV).ok().as_deref()) {
        return fail(&e);
    }
    match run(&cli.command.into_config()) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(&e),
    }
}
