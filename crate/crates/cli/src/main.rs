use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use algconn_cli::campaign::{run_verify, CampaignConfig, EllPolicy, GraphSource};
use algconn_cli::tightness::{self, run_tightness, FAMILIES};
use algconn_cli::{
    cmd_analyze, cmd_power, write_output, CliError, Format, EXIT_OK, EXIT_VIOLATION,
};
use algconn_core::bounds::BOUND_RTOL;
use algconn_core::graph::Family;
use algconn_core::spectral::PSD_RTOL;
use clap::{Parser, Subcommand, ValueEnum};

/// Eccentricity-based lower bounds on algebraic connectivity.
#[derive(Debug, Parser)]
#[command(name = "algconn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CampaignFamily {
    Er,
    Tree,
    Path,
    Cycle,
    Complete,
    Star,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TightFamily {
    All,
    Path,
    Cycle,
    Star,
    Complete,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate every bound on one graph.
    Analyze {
        /// Edge-list file.
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        ell: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Randomized soundness and certificate campaign.
    Verify {
        #[arg(long, value_enum, default_value = "er")]
        family: CampaignFamily,
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Edge probability (Erdős–Rényi only).
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `all` or a fixed integer >= 2.
        #[arg(long, default_value = "all")]
        ell: EllPolicy,
        #[arg(long, default_value_t = BOUND_RTOL)]
        bound_rtol: f64,
        #[arg(long, default_value_t = PSD_RTOL)]
        psd_rtol: f64,
        /// Write the JSON summary here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bound/lambda2 ratios over deterministic families, largest first.
    Tightness {
        #[arg(long, value_enum, default_value = "all")]
        family: TightFamily,
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value = "all")]
        ell: EllPolicy,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Write the ell-th power of a graph as an edge list.
    Power {
        path: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_output(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth an error exit
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze { path, ell, format } => {
            emit(None, &cmd_analyze(&path, ell, format)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            family,
            n,
            p,
            trials,
            seed,
            ell,
            bound_rtol,
            psd_rtol,
            out,
        } => {
            let source = match family {
                CampaignFamily::Er => GraphSource::ErdosRenyi { n, p },
                CampaignFamily::Tree => GraphSource::RandomTree { n },
                CampaignFamily::Path => GraphSource::Path { n },
                CampaignFamily::Cycle => GraphSource::Cycle { n },
                CampaignFamily::Complete => GraphSource::Complete { n },
                CampaignFamily::Star => GraphSource::Star { n },
            };
            let config = CampaignConfig {
                bound_rtol,
                psd_rtol,
                ..CampaignConfig::new(source, trials, seed, ell)
            };
            let summary = run_verify(&config)?;
            emit(out.as_ref(), &summary.to_json())?;
            if !summary.passed() {
                eprintln!("{} violation(s)", summary.violations);
                return Ok(EXIT_VIOLATION);
            }
            Ok(EXIT_OK)
        }
        Command::Tightness {
            family,
            n_max,
            ell,
            format,
        } => {
            let families: Vec<Family> = match family {
                TightFamily::All => FAMILIES.to_vec(),
                TightFamily::Path => vec![Family::Path],
                TightFamily::Cycle => vec![Family::Cycle],
                TightFamily::Star => vec![Family::Star],
                TightFamily::Complete => vec![Family::Complete],
            };
            let records = run_tightness(&families, n_max, ell)?;
            let text = match format {
                Format::Csv => tightness::to_csv(&records),
                Format::Json => tightness::to_json(&records),
            };
            emit(None, &text)?;
            if let Some(bad) = records.iter().find(|r| !r.is_sound()) {
                eprintln!(
                    "ratio {} > 1 for {} {} ell={}",
                    bad.ratio, bad.graph, bad.bound, bad.ell
                );
                return Ok(EXIT_VIOLATION);
            }
            Ok(EXIT_OK)
        }
        Command::Power { path, ell, out } => {
            emit(out.as_ref(), &cmd_power(&path, ell)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // help and version exit 0, usage errors exit 2
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
