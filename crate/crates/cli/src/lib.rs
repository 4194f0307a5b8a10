//! Command-line front end: argument parsing, configuration, Gram table
//! persistence and report emission.

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use args::{Cli, Format};
use clap::Parser;
use commands::{dispatch, Ctx};
use config::{builtin_datum, ConfigFile};
use error::CliError;
use output::Envelope;
use std::time::Instant;

/// Parses `argv`, runs the command and writes the report. Returns the exit code:
/// 0 all checks passed, 1 some check failed, 2 usage error, 3 unsupported type, 4 other errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let g = cli.global.clone();
    let start = Instant::now();

    let (env, outcome) = match build_ctx(&cli) {
        Ok(mut ctx) => {
            let env = Envelope::new(echo, Some(ctx.datum.fingerprint()), g.seed);
            let r = dispatch(&mut ctx, &cli.command);
            if g.verbose > 0 {
                if let Some(c) = &ctx.cache {
                    for ev in c.events() {
                        eprintln!("cache: {ev:?}");
                    }
                }
            }
            (env, r)
        }
        Err(e) => (Envelope::new(echo, None, g.seed), Err(e)),
    };
    emit(&g, env, outcome, start)
}

/// Fills the envelope from the outcome, writes it and returns the exit code.
pub fn emit(g: &args::GlobalArgs, env: Envelope, outcome: Result<commands::Outcome, CliError>, start: Instant) -> i32 {
    let (mut env, code) = match outcome {
        Ok(o) => {
            let code = if o.report.all_passed() { 0 } else { 1 };
            (env.with_report(o.report, o.data), code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            (env.with_error(e.kind_name(), &e.message), e.exit_code())
        }
    };
    if g.timings {
        env.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = match g.format {
        Format::Json => env.to_json(),
        Format::Text => env.to_text(),
    };
    match &g.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return 4;
            }
        }
        None => print!("{text}"),
    }
    code
}

fn build_ctx(cli: &Cli) -> Result<Ctx, CliError> {
    let g = &cli.global;
    let cfg = match &g.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let datum = match (&g.ty, cfg.datum()?) {
        (Some(_), Some(_)) => return Err(CliError::usage("--type and a config [datum] cannot both be given")),
        (Some(t), None) => builtin_datum(t)?,
        (None, Some(d)) => d,
        (None, None) => builtin_datum("A1")?,
    };
    let cache = match (&g.cache_dir, g.no_cache) {
        (Some(dir), false) => Some(cache::GramCache::new(dir.clone(), g.seed)),
        _ => None,
    };
    Ok(Ctx { datum, cfg, cache, verbose: g.verbose })
}
