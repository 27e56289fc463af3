use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use vinposet::{Permutation, VincularScheme};

mod checks;
mod queries;
mod survey;
mod verify;

/// Exit codes shared by every subcommand.
pub(crate) const EXIT_OK: u8 = 0;
pub(crate) const EXIT_NEGATIVE: u8 = 1;
pub(crate) const EXIT_USAGE: u8 = 2;
pub(crate) const EXIT_IO: u8 = 3;

/// Hard cap on exhaustive enumeration lengths unless --i-know is passed.
pub(crate) const ENUMERATION_CAP: usize = 8;

#[derive(Parser)]
#[command(
    name = "vinposet",
    version,
    about = "Vincular pattern posets: containment, intervals, and Möbius functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether PATTERN occurs in TEXT under the scheme.
    Contains {
        pattern: String,
        text: String,
        #[arg(long, default_value = "quasi")]
        scheme: String,
        /// Also print every occurrence's positions.
        #[arg(long)]
        list: bool,
    },
    /// Render the interval [SIGMA, TAU].
    Interval {
        sigma: String,
        tau: String,
        #[arg(long, default_value = "quasi")]
        scheme: String,
        #[arg(long, value_enum, default_value_t = IntervalFormat::Text)]
        format: IntervalFormat,
    },
    /// Evaluate the Möbius function mu(SIGMA, TAU).
    Mobius {
        sigma: String,
        tau: String,
        #[arg(long, default_value = "quasi")]
        scheme: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Check the single-occurrence closed form against brute force for
    /// every applicable pair up to a length bound.
    VerifyTheorem {
        #[arg(long)]
        max_len: usize,
    },
    /// Compute mu(SIGMA, tau) for every tau containing SIGMA up to a length
    /// bound, with an optional persisted record stream.
    Survey {
        sigma: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value = "quasi")]
        scheme: String,
        /// Write records to this path (CSV or JSON per --format).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Reuse records already present in --out instead of recomputing.
        #[arg(long)]
        resume: bool,
        #[arg(long, value_enum, default_value_t = SurveyFormat::Csv)]
        format: SurveyFormat,
        /// Acknowledge enumeration beyond the default cap of 8.
        #[arg(long)]
        i_know: bool,
    },
    /// Conjecture and proposition checks; violations are reported, never
    /// asserted.
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Report mu(sigma, sigma + ... + sigma) over direct sums of copies.
    #[command(alias = "direct_sum")]
    DirectSum {
        #[arg(long, default_value_t = 3)]
        sigma_max: usize,
        #[arg(long, default_value_t = 8)]
        len_cap: usize,
        #[arg(long)]
        i_know: bool,
    },
    /// Flag any consecutive-scheme interval with |mu| > 1.
    #[command(alias = "consecutive_bound")]
    ConsecutiveBound {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long)]
        i_know: bool,
    },
    /// Search for pairs where scheme containment and the scheme order
    /// disagree, over a given scheme or randomly sampled ones.
    #[command(alias = "equiv_search")]
    EquivSearch {
        /// Check this scheme instead of sampling random ones.
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        /// Number of random explicit-row schemes to sample.
        #[arg(long, default_value_t = 20)]
        schemes: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        i_know: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IntervalFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum MethodArg {
    Auto,
    Brute,
    Theorem,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum SurveyFormat {
    Csv,
    Json,
}

pub(crate) fn usage_error(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

pub(crate) fn parse_permutation(text: &str) -> Result<Permutation, u8> {
    text.parse::<Permutation>().map_err(usage_error)
}

pub(crate) fn parse_scheme(text: &str) -> Result<VincularScheme, u8> {
    text.parse::<VincularScheme>().map_err(usage_error)
}

/// Enforces the enumeration cap unless the caller acknowledged the cost.
pub(crate) fn check_cap(what: &str, requested: usize, acknowledged: bool) -> Result<(), u8> {
    if requested > vinposet::MAX_LEN {
        return Err(usage_error(format!(
            "{what} {requested} exceeds the supported maximum {}",
            vinposet::MAX_LEN
        )));
    }
    if requested > ENUMERATION_CAP && !acknowledged {
        return Err(usage_error(format!(
            "{what} {requested} exceeds the default cap {ENUMERATION_CAP}; pass --i-know to proceed"
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Contains { pattern, text, scheme, list } => {
            queries::contains(&pattern, &text, &scheme, list)
        }
        Command::Interval { sigma, tau, scheme, format } => {
            queries::interval(&sigma, &tau, &scheme, format)
        }
        Command::Mobius { sigma, tau, scheme, method } => {
            queries::mobius(&sigma, &tau, &scheme, method)
        }
        Command::VerifyTheorem { max_len } => verify::run(max_len),
        Command::Survey { sigma, max_len, scheme, out, resume, format, i_know } => {
            survey::run(&survey::Options {
                sigma,
                max_len,
                scheme,
                out,
                resume,
                format,
                i_know,
            })
        }
        Command::Check { which } => match which {
            CheckCommand::DirectSum { sigma_max, len_cap, i_know } => {
                checks::direct_sum(sigma_max, len_cap, i_know)
            }
            CheckCommand::ConsecutiveBound { max_len, i_know } => {
                checks::consecutive_bound(max_len, i_know)
            }
            CheckCommand::EquivSearch { scheme, max_len, schemes, seed, i_know } => {
                checks::equiv_search(scheme.as_deref(), max_len, schemes, seed, i_know)
            }
        },
    };
    ExitCode::from(code)
}
