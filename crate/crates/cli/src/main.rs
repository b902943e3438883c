//! `xi-counter`: command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical inconsistency, 4 I/O.

mod args;
mod config;
mod run;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;
use xi_counter_core::Error;

use args::{Cli, Command};
use config::RunConfig;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_IO: u8 = 4;

fn main() -> ExitCode {
    ExitCode::from(dispatch(std::env::args_os().collect()))
}

fn parse(argv: Vec<OsString>) -> Result<Cli, u8> {
    Cli::try_parse_from(argv).map_err(|e| {
        let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        let _ = e.print();
        code
    })
}

fn dispatch(argv: Vec<OsString>) -> u8 {
    let program = argv.first().cloned().unwrap_or_else(|| "xi-counter".into());
    let cli = match parse(argv) {
        Ok(c) => c,
        Err(code) => return code,
    };
    if let Command::Replay { config } = &cli.command {
        let cfg = match RunConfig::read(config) {
            Ok(c) => c,
            Err(e) => return report(&e),
        };
        let mut argv = vec![program];
        argv.extend(cfg.to_args().into_iter().map(OsString::from));
        return match parse(argv) {
            Ok(replayed) => run_cli(&replayed),
            Err(code) => code,
        };
    }
    run_cli(&cli)
}

fn exit_code(e: &Error) -> u8 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else if e.is_io() || matches!(e, Error::Format { .. }) {
        EXIT_IO
    } else {
        EXIT_USAGE
    }
}

fn report(e: &Error) -> u8 {
    eprintln!("error: {e}");
    exit_code(e)
}

fn run_cli(cli: &Cli) -> u8 {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        // Only the first call can configure the global pool; later calls
        // (replay re-entering here) keep it.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    if cli.plot.is_some() && cli.csv.is_none() {
        eprintln!("error: --plot needs --csv");
        return EXIT_USAGE;
    }
    if let Some(cfg) = RunConfig::from_cli(cli) {
        let target = cli.config_out.clone().or_else(|| {
            cli.csv.as_ref().map(|c| {
                let mut p = c.clone().into_os_string();
                p.push(".run");
                p.into()
            })
        });
        match target {
            Some(path) => {
                if let Err(e) = cfg.write(&path) {
                    return report(&e);
                }
            }
            None => eprint!("# run config\n{}", cfg.render()),
        }
    }
    let out = match run::execute(cli) {
        Ok(o) => o,
        Err(e) => return report(&e),
    };
    if let Err(e) = run::write_outputs(cli, &out) {
        return report(&e);
    }
    if out.inconsistent {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    }
}
