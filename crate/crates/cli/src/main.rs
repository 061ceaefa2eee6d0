use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fakeherm_cli::{commands, Format, RunConfig};
use fakeherm_core::NumericConfig;

#[derive(Parser)]
#[command(name = "fakeherm", version, about = "Tables and classification for arithmetic fake compact Hermitian spaces of type A3")]
struct Cli {
    /// Directory holding fields/, tables/ and golden/.
    #[arg(long, global = true, default_value = "data")]
    data_dir: PathBuf,
    /// Working precision of the numeric L-value paths.
    #[arg(long, global = true, default_value_t = 384)]
    precision_bits: u32,
    /// Largest prime whose places are enumerated explicitly.
    #[arg(long, global = true, default_value_t = 71)]
    prime_cap: u64,
    /// Denominator cap for rational reconstruction.
    #[arg(long, global = true, default_value_t = 10_000)]
    den_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant bounds, quoted inequalities and candidate counts.
    Bounds {
        /// Show the iteration for one base-field discriminant.
        #[arg(long)]
        dk: Option<u64>,
    },
    /// Special values and R for the candidate pairs.
    Lvalues,
    /// Primes splitting in l for the power-of-2 survivors.
    SplitPrimes,
    /// The classification, or the configurations of one pair.
    Classify {
        /// `Q,-a` or a pair label.
        #[arg(long)]
        pair: Option<String>,
        /// Degree of the division algebra (1 means D = l).
        #[arg(long, requires = "pair")]
        deg: Option<u8>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        data_dir: cli.data_dir,
        numeric: NumericConfig { precision_bits: cli.precision_bits, den_cap: cli.den_cap, ..NumericConfig::default() },
        prime_cap: cli.prime_cap,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Tsv => Format::Tsv,
        },
    };
    let result = cfg.validate().and_then(|_| match &cli.command {
        Command::Bounds { dk } => commands::bounds(&cfg, *dk),
        Command::Lvalues => commands::lvalues(&cfg),
        Command::SplitPrimes => commands::split_primes_cmd(&cfg),
        Command::Classify { pair, deg } => commands::classify(&cfg, pair.as_deref(), *deg),
    });
    match result {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
