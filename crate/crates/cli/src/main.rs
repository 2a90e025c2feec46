//! `goedel`: command-line front end of the workbench.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{CliError, Format};

#[derive(Debug, Parser)]
#[command(name = "goedel", version, about = "Workbench for first-order Goedel logics")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrenexMode {
    /// Logically equivalent prenex form.
    Logical,
    /// Prenex form with the same >0-valid formulas.
    PosValid,
    /// Syntactic prenex form for the recursively enumerable fragment.
    ValidityRe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SkolemArg {
    Validity,
    Sat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchMode {
    Valid,
    OneSat,
    PosSat,
    ClassicalSat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and pretty-print a formula.
    Parse {
        /// Formula text, or `@path` to read it from a file.
        #[arg(long)]
        formula: String,
        /// Print fully parenthesized without `~` and `<` sugar.
        #[arg(long)]
        raw: bool,
    },
    /// Evaluate a formula under an interpretation file.
    Eval {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        interp: std::path::PathBuf,
        /// Check the interpretation against this set.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        trace: bool,
    },
    /// Prenex form by quantifier shifts admissible in the set.
    Prenex {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "G01")]
        set: String,
        #[arg(long, value_enum, default_value_t = PrenexMode::Logical)]
        mode: PrenexMode,
        #[arg(long)]
        trace: bool,
    },
    /// Skolemize a prenex formula.
    Skolemize {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value_t = SkolemArg::Validity)]
        mode: SkolemArg,
    },
    /// Double-negation translation.
    Kuroda {
        #[arg(long)]
        formula: String,
    },
    /// List the chains over the atoms of a formula or an explicit atom list.
    Chains {
        #[arg(long, conflicts_with = "atoms", required_unless_present = "atoms")]
        formula: Option<String>,
        /// Comma-separated atom names.
        #[arg(long)]
        atoms: Option<String>,
        /// Drop chains with an atom equal to top.
        #[arg(long)]
        restricted: bool,
        /// Maximum number of blocks, bottom and top blocks included.
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Chain normal form of a propositional formula.
    Cnf {
        #[arg(long)]
        formula: String,
        /// 1: crisp links with Δ; 2: restricted chains without Δ.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
    },
    /// Decide propositional validity by chains.
    ValidProp {
        #[arg(long)]
        formula: String,
        /// Number of truth values; omit for infinite sets.
        #[arg(long, conflicts_with = "set")]
        levels: Option<usize>,
        /// Take the number of values from a set.
        #[arg(long)]
        set: Option<String>,
    },
    /// Classify a truth-value set.
    Classify {
        #[arg(long)]
        set: String,
    },
    /// Glue an interpretation at ω.
    Glue {
        #[arg(long)]
        interp: std::path::PathBuf,
        #[arg(long)]
        omega: String,
    },
    /// Bounded countermodel or witness search.
    Search {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = SearchMode::Valid)]
        mode: SearchMode,
        #[arg(long, default_value_t = 3)]
        max_domain: usize,
        /// Also try ℕ-interpretations built from sequence templates.
        #[arg(long)]
        templates: bool,
    },
    /// Run the fixture corpus.
    Fixtures {
        /// Repeatable; defaults to the reference descriptors.
        #[arg(long)]
        set: Vec<String>,
    },
}

fn run(cli: Cli) -> Result<output::Outcome, CliError> {
    use commands as c;
    match cli.command {
        Command::Parse { formula, raw } => c::parse(&formula, raw),
        Command::Eval { formula, interp, set, trace } => c::eval(&formula, &interp, set.as_deref(), trace),
        Command::Prenex { formula, set, mode, trace } => c::prenex(&formula, &set, mode, trace),
        Command::Skolemize { formula, mode } => c::skolemize(&formula, mode),
        Command::Kuroda { formula } => c::kuroda(&formula),
        Command::Chains { formula, atoms, restricted, levels } => c::chains(formula.as_deref(), atoms.as_deref(), restricted, levels),
        Command::Cnf { formula, kind } => c::cnf(&formula, kind),
        Command::ValidProp { formula, levels, set } => c::valid_prop(&formula, levels, set.as_deref()),
        Command::Classify { set } => c::classify(&set),
        Command::Glue { interp, omega } => c::glue(&interp, &omega),
        Command::Search { formula, set, mode, max_domain, templates } => c::search(&formula, &set, mode, max_domain, templates),
        Command::Fixtures { set } => c::fixtures(&set),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("error[usage]: {e}");
            return ExitCode::from(1);
        }
    };
    let (format, out) = (cli.format, cli.out.clone());
    match run(cli) {
        Ok(outcome) => match outcome.emit(format, out.as_deref()) {
            Ok(()) => ExitCode::from(outcome.status),
            Err(e) => {
                eprintln!("error[{}]: {e}", e.code());
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.status())
        }
    }
}
