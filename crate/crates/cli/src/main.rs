mod args;
mod commands;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;
use turan_core::io::RunManifest;

use args::Cli;

/// 0 success or free, 1 witness found or check failed, 2 budget exhausted,
/// 3 usage or input error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Found = 1,
    Budget = 2,
    Usage = 3,
}

/// What a command produced.
pub struct Output {
    pub report: Value,
    pub summary: String,
    /// File contents for `--out`; the pretty report when `None`.
    pub artifact: Option<String>,
    pub exit: Exit,
    pub parameters: Value,
    pub inputs: Vec<PathBuf>,
    pub counters: BTreeMap<String, u64>,
}

impl Output {
    pub fn new(report: Value, summary: String, parameters: Value) -> Self {
        Output {
            report,
            summary,
            artifact: None,
            exit: Exit::Ok,
            parameters,
            inputs: Vec::new(),
            counters: BTreeMap::new(),
        }
    }
}

fn exit_for(e: &anyhow::Error) -> Exit {
    match e.downcast_ref::<turan_core::Error>() {
        Some(turan_core::Error::BudgetExceeded(_)) => Exit::Budget,
        Some(turan_core::Error::NotFree(..)) => Exit::Found,
        _ => Exit::Usage,
    }
}

fn finish(cli: &Cli, out: Output, started: Instant) -> anyhow::Result<Exit> {
    if let Some(path) = &cli.global.out {
        let text = match &out.artifact {
            Some(a) => a.clone(),
            None => serde_json::to_string_pretty(&out.report)? + "\n",
        };
        std::fs::write(path, text)?;
        let mut m = RunManifest {
            command_line: std::env::args().collect(),
            parameters: out.parameters.clone(),
            wall_time_ms: started.elapsed().as_millis() as u64,
            budget_counters: out.counters.clone(),
            seed: cli.global.seed,
            threads: cli.global.threads,
            ..Default::default()
        };
        m.budget_counters.insert("budget".into(), cli.global.budget);
        for input in &out.inputs {
            m.add_input(input)?;
        }
        m.add_output(path)?;
        m.write_for(path)?;
    }
    if cli.global.json {
        println!("{}", serde_json::to_string_pretty(&out.report)?);
    } else {
        println!("{}", out.summary);
    }
    Ok(out.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Exit::Usage as u8),
            };
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let started = Instant::now();
    let result = commands::run(&cli).and_then(|out| finish(&cli, out, started));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_for(&e) as u8)
        }
    }
}
