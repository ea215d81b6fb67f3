//! `visclust` command-line tool.

mod args;
mod bench;
mod cluster;
mod eval;
mod plot;
mod report;
mod synth;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or unreadable input; exit status 2.
    Usage(String),
    /// The algorithm ran but did not meet its target; exit status 1.
    Unsatisfied(String),
}

impl From<visclust::Error> for Failure {
    fn from(e: visclust::Error) -> Self {
        use visclust::Error::*;
        match e {
            Infeasible(_) | NoStructure | CannotBackfill => Failure::Unsatisfied(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Cluster(a) => cluster::run(a),
        Command::Eval(a) => eval::run(a),
        Command::Synth(a) => synth::run(a),
        Command::Bench(a) => bench::run(a),
        Command::Plot(a) => plot::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unsatisfied(msg)) => {
            if !msg.is_empty() {
                eprintln!("visclust: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("visclust: {msg}");
            ExitCode::from(2)
        }
    }
}
