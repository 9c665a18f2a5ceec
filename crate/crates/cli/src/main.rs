use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hbl_tile::{report, report_status, run_analyze, run_tile, run_verify, CliError, Options, ProblemDocument};

#[derive(Parser)]
#[command(name = "hbl-tile", version, about = "Communication lower bounds and optimal tilings for loop nests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the exponent LPs and report s_HBL, the dual flag and gamma.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Build the tile and its translations for one memory size.
    Tile {
        #[command(flatten)]
        common: Common,
        #[arg(long, short = 'M')]
        memory: u64,
    },
    /// Enumerate tiles for one or more memory sizes and check them.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, short = 'M', required_unless_present = "tiling")]
        memory: Vec<u64>,
        /// Check this tiling (output of `tile`) instead of planning one.
        #[arg(long)]
        tiling: Option<PathBuf>,
        /// Half-width of the cover-check window; 0 skips the check.
        #[arg(long, default_value_t = 6)]
        radius: u64,
    },
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON or loop nest); `-` reads standard input.
    input: PathBuf,
    #[arg(long, default_value_t = hbl_core::constraints::DEFAULT_MAX_CLOSURE)]
    max_closure: usize,
    #[arg(long, default_value_t = hbl_core::DEFAULT_BUDGET)]
    budget: u64,
    /// Fail when the constraint list may be incomplete.
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (common, result) = match &cli.command {
        Command::Analyze { common } => {
            let opts = options(common, None);
            let doc = ProblemDocument::parse(&read(&common.input)?)?;
            (common, run_analyze(&doc, &opts).map(|r| (r, opts)))
        }
        Command::Tile { common, memory } => {
            let opts = options(common, None);
            let doc = ProblemDocument::parse(&read(&common.input)?)?;
            (common, run_tile(&doc, *memory, &opts).map(|r| (r, opts)))
        }
        Command::Verify { common, memory, tiling, radius } => {
            let opts = options(common, Some(*radius));
            let doc = ProblemDocument::parse(&read(&common.input)?)?;
            let tiling = tiling.as_ref().map(read).transpose()?;
            (common, run_verify(&doc, memory, tiling.as_deref(), &opts).map(|r| (r, opts)))
        }
    };
    let (report, opts) = result?;
    match common.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("values serialize")),
        Format::Text => print!("{}", report::render_text(&report)),
    }
    let status = report_status(&report, &opts);
    if status == hbl_tile::exit::PARTIAL {
        eprintln!("error: constraint list is incomplete (--strict)");
    }
    Ok(status)
}

fn options(c: &Common, radius: Option<u64>) -> Options {
    Options {
        max_closure: c.max_closure,
        budget: c.budget,
        strict: c.strict,
        radius: radius.filter(|&r| r > 0),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
