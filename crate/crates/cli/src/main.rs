use clap::{Parser, Subcommand, ValueEnum};
use confalg::examples::{self, FinalVariant};
use confalg::par;
use confalg_cli::commands::{self, CliError, Format, Outcome};
use confalg_cli::spec::{self, SpecFile};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exact verification of Poisson conformal algebras, bialgebras and their
/// finite-dimensional companions.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on a
/// usage or input error. The worker count is taken from `--threads` or the
/// CONFALG_THREADS environment variable.
#[derive(Parser)]
#[command(name = "confalg", version)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Number of worker threads.
    #[arg(long, global = true, env = "CONFALG_THREADS",
          value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Evaluate identities on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of one structure kind on a spec file.
    Check {
        file: PathBuf,
        /// Structure kind (see `confalg kinds`).
        #[arg(long)]
        kind: String,
    },
    /// Run a construction and write the result as a spec file.
    Construct {
        /// Construction name (see `confalg kinds`).
        pipeline: String,
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Skip the hypothesis check.
        #[arg(long)]
        unchecked: bool,
    },
    /// Check the conformal Yang-Baxter equation and the coboundary
    /// conditions of the file's r-matrix.
    Ybe { file: PathBuf },
    /// Run a builtin example.
    Example {
        #[command(subcommand)]
        which: Example,
    },
    /// Deformation commands.
    Deform {
        #[command(subcommand)]
        which: Deform,
    },
    /// Print a builtin spec file.
    Spec {
        /// Builtin name.
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the accepted kinds, constructions and builtins.
    Kinds,
}

#[derive(Subcommand)]
enum Example {
    /// The three-dimensional example through the full pipeline.
    Final {
        /// A rational number or `sym` for a free parameter.
        #[arg(long, default_value = "sym")]
        alpha: String,
        /// `final` (published data) or `final-corrected`.
        #[arg(long, default_value = "final")]
        variant: String,
        /// Let the stage checks decide the status for the published data.
        #[arg(long)]
        strict: bool,
        /// Write the semidirect product, r-matrix and coproducts here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The polynomial example truncated at a degree.
    Polyx {
        /// A rational number or `sym` for a free parameter.
        #[arg(long, default_value = "0")]
        q: String,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Deform {
    /// Check the hypotheses and compute the semi-classical limit.
    Limit {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Skip the hypothesis check.
        #[arg(long)]
        unchecked: bool,
    },
}

fn read_spec(path: &Path) -> Result<SpecFile, CliError> {
    let src =
        std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    spec::parse_spec(&src).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn write_output(o: &Outcome, path: Option<&Path>) -> Result<(), CliError> {
    if let (Some(out), Some(path)) = (&o.output, path) {
        std::fs::write(path, spec::write_spec(out))
            .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Option<Outcome>, CliError> {
    let o = match &cli.command {
        Command::Check { file, kind } => commands::check(&read_spec(file)?, kind)?,
        Command::Construct {
            pipeline,
            file,
            output,
            unchecked,
        } => {
            let o = commands::construct(pipeline, &read_spec(file)?, *unchecked)?;
            write_output(&o, Some(output))?;
            o
        }
        Command::Ybe { file } => commands::ybe(&read_spec(file)?)?,
        Command::Example { which } => match which {
            Example::Final {
                alpha,
                variant,
                strict,
                output,
            } => {
                let alpha = commands::parse_value(alpha, examples::alpha_symbol())?;
                let variant: FinalVariant = variant.parse().map_err(CliError)?;
                let o = commands::example_final(&alpha, variant, *strict)?;
                write_output(&o, output.as_deref())?;
                o
            }
            Example::Polyx { q, degree, output } => {
                let q = commands::parse_value(q, examples::q_symbol())?;
                let o = commands::example_polyx(&q, *degree)?;
                write_output(&o, output.as_deref())?;
                o
            }
        },
        Command::Deform {
            which:
                Deform::Limit {
                    file,
                    output,
                    unchecked,
                },
        } => {
            let o = commands::deform_limit(&read_spec(file)?, *unchecked)?;
            write_output(&o, output.as_deref())?;
            o
        }
        Command::Spec { name, output } => {
            let s = spec::write_spec(&commands::builtin(name)?);
            match output {
                Some(p) => {
                    std::fs::write(p, s).map_err(|e| CliError(format!("{}: {e}", p.display())))?
                }
                None => print!("{s}"),
            }
            return Ok(None);
        }
        Command::Kinds => {
            println!("kinds: {}", commands::kind_names().join(", "));
            println!("constructions: {}", commands::PIPELINES.join(", "));
            println!("builtins: {}", confalg_cli::builtins::NAMES.join(", "));
            return Ok(None);
        }
    };
    Ok(Some(o))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.sequential {
        par::set_parallel(false);
    }
    if let Some(n) = cli.threads {
        if let Err(e) = par::configure_threads(n as usize) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = match cli.report {
        ReportFormat::Text => Format::Text,
        ReportFormat::Json => Format::Json,
    };
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(o)) => {
            print!("{}", commands::render(&o, format));
            ExitCode::from(o.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
