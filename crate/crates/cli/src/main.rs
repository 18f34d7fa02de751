mod args;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pade_core::{
    analyze, compare, pade_table, reduced_pade, CompareOptions, PadeOrder, ReduceOptions,
};

use args::{Cli, Command, CommonArgs, Format, OrderArgs};
use input::{load_series, positive, CliError};

fn options(common: &CommonArgs) -> Result<ReduceOptions, CliError> {
    let tol = common.tol.map(|t| positive(t, "--tol")).transpose()?;
    Ok(ReduceOptions {
        cleanup: !common.no_cleanup,
        tol,
    })
}

fn run_order(cmd: &Command, a: &OrderArgs) -> Result<String, CliError> {
    let order = PadeOrder::new(a.m, a.n);
    let opts = options(&a.common)?;
    let pairing_tol = positive(a.common.pairing_tol, "--pairing-tol")?;
    let f = load_series(
        &a.input,
        a.common.center.as_deref(),
        order.coefficients_needed(),
    )?;
    let format = a.common.format;
    if let Command::Compare(_) = cmd {
        let c = compare(
            &f,
            order,
            &CompareOptions {
                reduce: opts,
                pairing_tol,
                trim_tol: 0.0,
            },
        )?;
        return Ok(match format {
            Format::Json => report::json(&report::compare(&c, pairing_tol)),
            Format::Csv => report::compare_csv(&c),
            Format::Text => report::compare_text(&c),
        });
    }
    let r = reduced_pade(&f, order, &opts)?;
    let roots = analyze(&r.numerator, &r.denominator, 0.0, pairing_tol)?;
    Ok(match (cmd, format) {
        (Command::Roots(_), Format::Json) => report::json(&report::roots(&r, &roots)),
        (Command::Roots(_), Format::Csv) => report::roots_csv(&roots),
        (Command::Roots(_), Format::Text) => report::roots_text(&r, &roots),
        (_, Format::Json) => report::json(&report::approximate(&r, &roots)),
        (_, Format::Csv) => report::approximate_csv(&r),
        (_, Format::Text) => report::approximate_text(&r, &roots),
    })
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Approximate(a) | Command::Compare(a) | Command::Roots(a) => {
            run_order(&cli.command, a)
        }
        Command::Table(t) => {
            let opts = options(&t.common)?;
            let f = load_series(&t.input, t.common.center.as_deref(), t.mmax + t.nmax + 1)?;
            let table = pade_table(&f, t.mmax, t.nmax, &opts)?;
            Ok(match t.common.format {
                Format::Json => report::json(&report::table(&table, f.center())),
                Format::Csv => report::table_csv(&table),
                Format::Text => report::table_text(&table),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("pade: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
