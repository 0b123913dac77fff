mod args;
mod commands;
mod config;
mod output;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::args::Cli;
use crate::output::{write_all, RunManifest};

#[derive(Debug)]
pub enum CliError {
    Core(sawlab::Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<sawlab::Error> for CliError {
    fn from(e: sawlab::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_limit() => 3,
            CliError::Core(_) => 2,
            CliError::Usage(_) => 64,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(64);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = cli.common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    if cli.common.plot && cli.common.out.is_none() {
        return Err(CliError::Usage("--plot needs --out DIR".into()));
    }
    let started = Instant::now();
    let output = commands::run(cli)?;
    let stem = cli.command.name();
    print!("{}", output.table.render(cli.common.format, stem, None));

    if let Some(dir) = &cli.common.out {
        let b = commands::budget(&cli.common);
        let budgets = BTreeMap::from([
            ("max_seconds".to_string(), json!(b.max_seconds)),
            ("max_n".to_string(), json!(b.max_n)),
            ("max_m".to_string(), json!(b.max_m)),
            ("max_family".to_string(), json!(b.max_family)),
        ]);
        let manifest = RunManifest {
            command: stem.to_string(),
            parameters: json!({ "common": cli.common, "command": cli.command }),
            seed: cli.common.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time: started.elapsed().as_secs_f64(),
            budgets,
            threads: rayon::current_num_threads(),
            exploratory: output.exploratory,
            outputs: Vec::new(),
            results: output.table.summary.clone(),
        };
        let mut output = output;
        if !cli.common.plot {
            output.svg = None;
        }
        write_all(dir, stem, cli.common.format, &output, manifest)?;
    }
    Ok(())
}
