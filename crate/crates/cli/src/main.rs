// `!(x > y)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod report;
mod repro;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::UsageError;
use report::{Metadata, Report};

const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

fn dispatch(cli: &Cli) -> Result<Report> {
    let tol = cli.global.tol;
    match &cli.command {
        Command::Lemma { n, k_max } => commands::lemma(n, *k_max),
        Command::Scan {
            p,
            q,
            n_min,
            n_max,
            d_min,
            d_max,
        } => commands::scan(*p, *q, (*n_min, *n_max), (*d_min, *d_max), tol),
        Command::Ratio {
            n,
            gaussian: _,
            d,
            p,
            q,
        } => commands::ratio(*n, *d, *p, *q, tol),
        Command::Limit { d, p, q, n } => commands::limit(*d, *p, *q, n, tol),
        Command::Logsob { n, coeffs, rhs } => commands::logsob(*n, coeffs, *rhs, tol),
        Command::Subordination { x } => commands::subordination(x, tol),
        Command::Necessity { n, p, q, t, eps } => commands::necessity(*n, *p, *q, *t, eps, tol),
        Command::Suite { trials, max_degree } => {
            commands::suite(*trials, *max_degree, cli.global.seed, tol).map(|s| s.report)
        }
        Command::Repro => repro::repro(cli.global.seed, tol),
    }
}

fn accepts_expect(command: &Command) -> bool {
    matches!(
        command,
        Command::Ratio { .. }
            | Command::Limit { .. }
            | Command::Logsob { .. }
            | Command::Subordination { .. }
            | Command::Necessity { .. }
    )
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let meta = Metadata {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        tol: cli.global.tol,
        seed: cli.global.seed,
    };
    let mut stderr = io::stderr().lock();
    match &cli.global.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut out = BufWriter::new(file);
            report.write(cli.global.format, &meta, &mut out, &mut stderr)?;
            out.flush()?;
        }
        None => {
            let mut out = io::stdout().lock();
            report.write(cli.global.format, &meta, &mut out, &mut stderr)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.global.jobs {
        pool = pool.num_threads(jobs);
    }
    if cli.global.expect.is_some() && !accepts_expect(&cli.command) {
        return Err(UsageError(
            "--expect applies to ratio, limit, logsob, subordination and necessity".into(),
        )
        .into());
    }
    let mut report = pool.build()?.install(|| dispatch(&cli))?;
    if let Some(expect) = cli.global.expect {
        report.expect_status(expect.as_str());
    }
    emit(&cli, &report)?;
    Ok(ExitCode::from(report.outcome.exit_code() as u8))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<UsageError>().is_some()
                || e.downcast_ref::<hypersphere_core::Error>().is_some();
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_IO })
        }
    }
}
