//! `locfrac`: the batch front end. Every command prints one JSON report and
//! exits with 0 (pass), 1 (law failure), 2 (axiom or precondition failure),
//! 3 (budget exhausted) or 4 (parse error).

pub mod args;
pub mod commands;
pub mod corpus;
pub mod load;
pub mod report;

use std::ffi::OsString;

use clap::Parser;
use serde_json::Value;

use fincat::{Budget, TieBreak};

use args::{Cli, Command};
use commands::{Ctx, Outcome};
pub use report::{Echo, Failure, Law, LawKind, Report, Status, Timing};

/// What a run prints and how it exits.
#[derive(Clone, Debug)]
pub struct Execution {
    pub stdout: String,
    pub code: i32,
    pub report: Option<Report>,
}

fn tie_break_name(t: TieBreak) -> &'static str {
    match t {
        TieBreak::Normal => "normal",
        TieBreak::Reversed => "reversed",
    }
}

fn finish(echo: Echo, steps: u64, res: Result<Outcome, Failure>) -> Report {
    let (laws, result, warnings, failure) = match res {
        Ok(o) => (o.laws, o.result, o.warnings, None),
        Err(f) => (Vec::new(), Value::Null, Vec::new(), Some(f)),
    };
    let status = report::status_of(&laws, failure.as_ref());
    Report {
        command: echo,
        status,
        exit_code: status.exit_code(),
        laws,
        result,
        error: failure.map(|f| f.info()),
        warnings,
        timing: Timing { steps },
    }
}

/// Global flags that a corpus forwards to each of its checks.
fn globals(cli: &Cli) -> Vec<String> {
    vec![
        "--budget".into(),
        cli.budget.to_string(),
        "--tie-break".into(),
        tie_break_name(cli.tie_break.into()).into(),
    ]
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Result<Outcome, Failure> {
    use commands as c;
    match &cli.command {
        Command::Validate { fixture } => c::validate(fixture),
        Command::CheckSystem {
            fixture,
            class,
            side,
        } => c::check_system(fixture, class, side.map(Into::into)),
        Command::Hom {
            fixture,
            class,
            x,
            y,
            formula,
            side,
        } => c::hom(fixture, class, x, y, (*formula).into(), side.map(Into::into)),
        Command::Localize {
            fixture,
            class,
            side,
            out,
        } => c::localize(fixture, class, side.map(Into::into), out.as_deref(), ctx),
        Command::IndHom { fixture, x, y } => c::ind_hom_cmd(fixture, x, y, ctx),
        Command::Deligne {
            fixture,
            functor,
            system,
            system_target,
            object,
            side,
        } => c::deligne_cmd(
            fixture,
            functor,
            system,
            system_target,
            object.as_deref(),
            (*side).into(),
            ctx,
        ),
        Command::ProbeUniversal {
            fixture,
            system,
            mode,
            functor,
            system_target,
            target,
        } => c::probe_universal(
            fixture,
            system,
            *mode,
            functor.as_deref(),
            system_target.as_deref(),
            target,
            ctx,
        ),
        Command::CheckAdjunction {
            fixture,
            left,
            right,
            system,
            system_target,
        } => c::check_adjunction(fixture, left, right, system, system_target, ctx),
        Command::HomBifunctor {
            fixture,
            system,
            x,
            y,
        } => c::hom_bifunctor(fixture, system, x.as_deref(), y.as_deref(), ctx),
        Command::Ext { ring, src, tgt, n } => c::ext(ring, src, tgt, n, ctx),
        Command::DerivedHom { fixture, x, y, n } => c::derived_hom_cmd(fixture, x, y, n, ctx),
        Command::Amalgamate {
            fixture,
            map,
            windows,
        } => c::amalgamate(fixture, map, windows),
        Command::RunCorpus { dir } => corpus::run_corpus(dir, &globals(cli), |argv| {
            let r = run_report(
                std::iter::once("locfrac".to_string())
                    .chain(argv.iter().cloned())
                    .map(OsString::from)
                    .collect(),
            );
            match r {
                Ok(r) => (r.status, r.laws, r.timing.steps),
                Err(_) => (Status::ParseError, Vec::new(), 0),
            }
        }),
    }
}

/// Parse and run, returning the report; `Err` carries clap's help or
/// version text, which is printed as is.
fn run_report(argv: Vec<OsString>) -> Result<Report, String> {
    let raw: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                return Err(e.to_string());
            }
            let echo = Echo {
                verb: raw.first().cloned().unwrap_or_default(),
                args: raw,
                budget: 0,
                tie_break: "normal".into(),
            };
            let msg = e.render().to_string();
            return Ok(finish(
                echo,
                0,
                Err(Failure::parse(
                    msg.trim_end().to_string(),
                    Some("argv".into()),
                )),
            ));
        }
    };
    let tb: TieBreak = cli.tie_break.into();
    let echo = Echo {
        verb: cli.command.verb().to_string(),
        args: raw,
        budget: cli.budget,
        tie_break: tie_break_name(tb).into(),
    };
    let ctx = Ctx {
        budget: Budget::new(cli.budget),
        tb,
    };
    let started = std::time::Instant::now();
    let res = dispatch(&cli, &ctx);
    log::info!(
        "{} finished in {:?} after {} steps",
        echo.verb,
        started.elapsed(),
        ctx.budget.used()
    );
    Ok(finish(echo, ctx.budget.used(), res))
}

/// Run one invocation. `argv[0]` is the program name.
pub fn execute<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let output = Cli::try_parse_from(&argv).ok().and_then(|c| c.output);
    match run_report(argv) {
        Err(text) => Execution {
            stdout: text,
            code: 0,
            report: None,
        },
        Ok(report) => {
            let text = report.to_json();
            let code = report.exit_code;
            match output {
                Some(path) => match std::fs::write(&path, &text) {
                    Ok(()) => Execution {
                        stdout: String::new(),
                        code,
                        report: Some(report),
                    },
                    Err(e) => {
                        log::error!("cannot write {}: {e}", path.display());
                        Execution {
                            stdout: text,
                            code: Status::ParseError.exit_code(),
                            report: Some(report),
                        }
                    }
                },
                None => Execution {
                    stdout: text,
                    code,
                    report: Some(report),
                },
            }
        }
    }
}
