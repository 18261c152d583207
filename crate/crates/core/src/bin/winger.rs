use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use winger_core::certify::emit::{emit, EmitObject, Format};
use winger_core::certify::{run, select, Context, Options, Report, Status};
use winger_core::monodromy::Convention;

/// Exact certificates for the icosahedral genus-10 surface and its monodromy.
#[derive(Parser)]
#[command(name = "winger", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Basis convention for 2 x 2 matrices: standard (U_edge, U_trc) or repbas (U_trc, -U_edge).
    #[arg(long, default_value = "standard", value_parser = parse_convention)]
    convention: Convention,
    /// Exchange the tetrads E and iota E.
    #[arg(long)]
    swap_tetrads: bool,
}

impl Common {
    fn options(&self) -> Options {
        Options { swap_tetrads: self.swap_tetrads, convention: self.convention, inject_fault: false }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the certificate suite; exit code 0 iff every selected check passes.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Only run checks whose id matches this glob, e.g. 'monodromy.*'.
        #[arg(long)]
        only: Option<String>,
        /// Record wall-clock time per check.
        #[arg(long)]
        timings: bool,
        /// Corrupt one boundary entry before checking.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Print one computed object.
    Emit {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        object: ObjectArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Print the full report.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectArg {
    Dodecahedron,
    Group,
    Complex,
    Form,
    Characters,
    Hom,
    Monodromy,
    Cosets,
    Cusps,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.parse::<Convention>().map_err(|e| e.to_string())
}

fn object(o: ObjectArg) -> EmitObject {
    match o {
        ObjectArg::Dodecahedron => EmitObject::Dodecahedron,
        ObjectArg::Group => EmitObject::Group,
        ObjectArg::Complex => EmitObject::Complex,
        ObjectArg::Form => EmitObject::Form,
        ObjectArg::Characters => EmitObject::Characters,
        ObjectArg::Hom => EmitObject::Hom,
        ObjectArg::Monodromy => EmitObject::Monodromy,
        ObjectArg::Cosets => EmitObject::Cosets,
        ObjectArg::Cusps => EmitObject::Cusps,
    }
}

fn report_failures(report: &Report) {
    let mut err = std::io::stderr().lock();
    for c in report.checks.iter().filter(|c| c.status == Status::Fail) {
        let _ = writeln!(err, "FAILED {}: {}", c.id, c.data);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("winger: internal error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> winger_core::Result<ExitCode> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Verify { common, only, timings, inject_fault } => {
            let defs = select(only.as_deref())?;
            let ctx = Context::build(Options { inject_fault, ..common.options() })?;
            let report = run(&ctx, &defs, timings);
            let _ = out.write_all(report.to_text().as_bytes());
            report_failures(&report);
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Emit { common, object: o, format } => {
            let ctx = Context::build(common.options())?;
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
            };
            let _ = out.write_all(emit(&ctx, object(o), format)?.as_bytes());
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { common, format, timings } => {
            let ctx = Context::build(common.options())?;
            let report = run(&ctx, &select(None)?, timings);
            let text = match format {
                ReportFormat::Json => report.to_json() + "\n",
                ReportFormat::Text => report.to_text(),
            };
            let _ = out.write_all(text.as_bytes());
            report_failures(&report);
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
