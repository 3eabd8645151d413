//! Command-line front end: `koszul <command> <file> [flags]`.

mod commands;
mod presentation;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{
    cmd_betti, cmd_dual, cmd_koszul_check, cmd_resolve, cmd_verify, execute, exit_code, render_file, BettiDocument,
    Check, CommandKind, DualDocument, Format, KoszulDocument, Output, ResolveDocument, RunConfig, VerifyDocument,
    EXIT_DEGREE_CAP, EXIT_INPUT, EXIT_INVARIANT, EXIT_NOT_KOSZUL, EXIT_OK,
};
pub use presentation::{algebra_hash, parse_presentation_file, render_presentation, PresentationFile};

use crate::field::FieldSpec;

#[derive(Parser, Debug)]
#[command(name = "koszul", version, about = "Quadratic duals, Koszulness certificates and resolutions of m^a")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the quadratic dual presentation
    Dual(Opts),
    /// Certify Koszulness up to --max-degree
    KoszulCheck(Opts),
    /// Betti numbers of m^a by formula and by kernel rank
    Betti(Opts),
    /// Build the minimal resolution of m^a and its verification report
    Resolve(Opts),
    /// Run every check; nonzero exit on any failure
    Verify(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    /// Presentation file
    file: PathBuf,
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
    /// The power a in m^a
    #[arg(long, default_value_t = 1)]
    power: usize,
    #[arg(long, default_value_t = 5)]
    nmax: usize,
    /// Override the file's field, e.g. "QQ" or "GF 7"
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for strand computations
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Resolve without a Koszul certificate (diagnostics only)
    #[arg(long)]
    allow_non_koszul: bool,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn fail(msg: impl std::fmt::Display, code: u8) -> u8 {
    eprintln!("error: {msg}");
    code
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let (kind, opts) = match cli.command {
        Command::Dual(o) => (CommandKind::Dual, o),
        Command::KoszulCheck(o) => (CommandKind::KoszulCheck, o),
        Command::Betti(o) => (CommandKind::Betti, o),
        Command::Resolve(o) => (CommandKind::Resolve, o),
        Command::Verify(o) => (CommandKind::Verify, o),
    };
    let field = match opts.field.as_deref().map(str::parse::<FieldSpec>).transpose() {
        Ok(f) => f,
        Err(e) => return fail(e, EXIT_INPUT),
    };
    let text = match std::fs::read_to_string(&opts.file) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", opts.file.display()), EXIT_INPUT),
    };
    let cfg = RunConfig {
        max_degree: opts.max_degree,
        power: opts.power,
        n_max: opts.nmax,
        format: opts.format,
        field,
        parallel: opts.parallel.max(1),
        allow_non_koszul: opts.allow_non_koszul,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.parallel).build() {
        Ok(p) => p,
        Err(e) => return fail(e, EXIT_INPUT),
    };
    let out = match pool.install(|| execute(kind, &text, &cfg)) {
        Ok(o) => o,
        Err(e) => return fail(&e, exit_code(&e)),
    };
    let written = match &opts.out {
        Some(path) => std::fs::write(path, &out.text),
        None => std::io::stdout().lock().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        return fail(e, EXIT_INPUT);
    }
    out.code
}
