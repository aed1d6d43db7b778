use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use ergochain::config::{Format, Overrides, Scenario};
use ergochain::CliError;

/// Energy transport and ergotropy in spin chains.
#[derive(Debug, Parser)]
#[command(name = "ergochain", version)]
struct Args {
    /// transport-sweep, theta-sweep, disorder, workdist or bessel-compare
    scenario: Scenario,
    /// TOML (or .json) scenario file
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (created if missing)
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<Format>,
    /// Worker threads; defaults to the number of cores
    #[arg(long, env = "ERGOCHAIN_THREADS")]
    threads: Option<String>,
}

fn threads(raw: Option<&str>) -> Result<Option<usize>, CliError> {
    match raw {
        None => Ok(None),
        Some(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(CliError::Config(format!("threads: expected a positive integer, got {s:?}"))),
        },
    }
}

fn execute(args: Args) -> Result<(), CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads(args.threads.as_deref())? {
        pool = pool.num_threads(k);
    }
    let pool = pool.build().map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let overrides = Overrides {
        seed: args.seed,
        out_dir: args.out,
        format: args.format,
    };
    let written = pool.install(|| ergochain::run(args.scenario, &args.config, &overrides))?;
    eprintln!(
        "wrote {} rows to {} (manifest {})",
        written.rows,
        written.data.display(),
        written.manifest.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match execute(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ergochain: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
