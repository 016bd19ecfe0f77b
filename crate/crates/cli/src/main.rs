mod args;
mod commands;
mod context;
mod report;
mod suites;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use context::Context;

fn run(cli: &Cli) -> anyhow::Result<i32> {
    let ctx = Context::from_cli(cli);
    match &cli.command {
        Command::Lyndon { max_len, alphabet } => commands::lyndon(&ctx, *max_len, alphabet),
        Command::Shuffle { u, v, alphabet } => commands::product(&ctx, magform::ncpoly::StarOp::Shuffle, u, v, alphabet),
        Command::Infiltrate { u, v, alphabet } => {
            commands::product(&ctx, magform::ncpoly::StarOp::Infiltration, u, v, alphabet)
        }
        Command::Magnus { word, max_deg, modulus, alphabet } => {
            commands::magnus(&ctx, word, *max_deg, *modulus, alphabet)
        }
        Command::QPoly { word, alphabet } => commands::q_poly(&ctx, word, alphabet),
        Command::FundamentalMatrix { formation } => commands::fundamental_matrix(&ctx, formation),
        Command::Check { suite, formation, options } => suites::check(&ctx, *suite, formation, options),
        Command::Report { formation, options } => suites::report(&ctx, formation, options),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
