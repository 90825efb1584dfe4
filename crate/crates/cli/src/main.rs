//! `graphene-ndr`: transmission spectra, Landauer I-V curves and NDR
//! metrics for a gated graphene barrier.
//!
//! Exit codes: 0 success, 2 configuration/usage error, 3 runtime error.
//! `GRAPHENE_NDR_THREADS` caps internal parallelism (0 or unset = auto).

use clap::{Parser, Subcommand};
use graphene_ndr_core::config::DeviceConfig;
use graphene_ndr_core::io::{
    run_analyze, run_figures, run_iv, run_transmission, CommandError, SweepSpec, SweepVar,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "graphene-ndr",
    about = "Ballistic transport through a gated graphene barrier",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the transmission coefficient over bias, energy or angle.
    Transmission {
        /// Device configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Sweep spec `<V|E|phi1>:<start>:<stop>:<count>`; defaults to the
        /// configured bias grid. E and phi1 sweeps run at zero bias.
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Compute the I-V curve on the configured bias grid.
    Iv {
        /// Device configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Extract gap/NDR metrics from an I-V table produced by `iv`.
    Analyze {
        /// Device configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Input `iv.csv` path.
        #[arg(long)]
        iv: PathBuf,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Also emit an SVG plot with peak/valley markers.
        #[arg(long)]
        svg: bool,
    },
    /// Emit the built-in three-curve figure families.
    Figures {
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn configure_thread_pool() -> Result<(), CommandError> {
    let Some(raw) = std::env::var_os("GRAPHENE_NDR_THREADS") else {
        return Ok(());
    };
    let text = raw.to_string_lossy();
    let n: usize = text
        .trim()
        .parse()
        .map_err(|e| CommandError::Usage(format!("GRAPHENE_NDR_THREADS=`{text}`: {e}")))?;
    #[cfg(feature = "parallel")]
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CommandError::Runtime(format!("thread pool: {e}")))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn report(manifest: &graphene_ndr_core::io::RunManifest, out: &std::path::Path) {
    for w in &manifest.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "wrote {} file(s) to {} in {:.3} s",
        manifest.outputs.len(),
        out.display(),
        manifest.wall_time_s
    );
}

fn run(cli: Cli) -> Result<(), CommandError> {
    configure_thread_pool()?;
    match cli.command {
        Command::Transmission { config, out, sweep } => {
            let cfg = DeviceConfig::from_path(&config)?;
            let spec = match sweep {
                Some(text) => SweepSpec::parse(&text)?,
                None => SweepSpec {
                    var: SweepVar::Bias,
                    start: cfg.bias_sweep.start,
                    stop: cfg.bias_sweep.stop,
                    count: cfg.bias_sweep.count,
                },
            };
            report(&run_transmission(&cfg, &spec, &out)?, &out);
            Ok(())
        }
        Command::Iv { config, out } => {
            let cfg = DeviceConfig::from_path(&config)?;
            report(&run_iv(&cfg, &out)?, &out);
            Ok(())
        }
        Command::Analyze {
            config,
            iv,
            out,
            svg,
        } => {
            let cfg = DeviceConfig::from_path(&config)?;
            report(&run_analyze(&cfg, &iv, &out, svg)?, &out);
            Ok(())
        }
        Command::Figures { out } => {
            report(&run_figures(&out)?, &out);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
