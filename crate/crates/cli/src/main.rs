mod args;
mod commands;
mod geometry;
mod report;
mod suite;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, GeometryCmd};
use report::{emit, render, Failure, Outcome, RunConfig, EXIT_PASS, EXIT_USAGE};

fn dispatch(cli: &Cli) -> (RunConfig, Result<Outcome, Failure>) {
    let g = &cli.global;
    match &cli.command {
        Command::Build { materialize, generators } => (
            RunConfig::new("build", g).option("materialize", materialize).option("generators", generators),
            commands::build(g, *materialize, generators.as_ref()),
        ),
        Command::Distance { method, materialize, generators } => (
            RunConfig::new("distance", g)
                .option("method", method)
                .option("materialize", materialize)
                .option("generators", generators),
            commands::distance(g, *method, *materialize, generators.as_ref()),
        ),
        Command::CoveringRadius { budget, generators } => (
            RunConfig::new("covering-radius", g).option("budget", budget).option("generators", generators),
            commands::covering_radius(g, *budget, generators.as_ref()),
        ),
        Command::Verify { lemma } => (RunConfig::new("verify", g).option("lemma", lemma), commands::verify(g, *lemma)),
        Command::Theorem { no_brute, no_exact } => (
            RunConfig::new("theorem", g).option("brute", !no_brute).option("exact", !no_exact),
            commands::theorem(g, *no_brute, *no_exact),
        ),
        Command::Geometry { what } => match what {
            GeometryCmd::Minkowski => (RunConfig::new("geometry minkowski", g), geometry::minkowski(g)),
            GeometryCmd::Hermitian { samples } => {
                (RunConfig::new("geometry hermitian", g).option("samples", samples), geometry::hermitian(g, *samples))
            }
            GeometryCmd::Cr { ambient } => {
                (RunConfig::new("geometry cr", g).option("ambient", ambient), geometry::cr(g, (*ambient).into()))
            }
        },
        Command::Suite { name } => (RunConfig::new("suite", g).option("name", name), suite::run(g, *name)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_PASS as u8),
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    if cli.global.workers > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.workers).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    let start = Instant::now();
    let (config, result) = dispatch(&cli);
    let outcome = match result {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code as u8);
        }
    };
    let elapsed = cli.global.timing.then(|| start.elapsed().as_millis() as u64);
    let text = render(&config, &outcome, elapsed);
    if let Err(f) = emit(cli.global.out.as_ref(), &text) {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code as u8);
    }
    for c in outcome.checks.iter().filter(|c| !c.pass) {
        eprintln!("FAIL {}: claimed {}, computed {}", c.id, c.claimed, c.computed);
    }
    for s in &outcome.skipped {
        eprintln!("SKIPPED {s}");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
