use clap::{Args, Parser, Subcommand, ValueEnum};
use polmux_otdr::experiments::{
    generate_probe_csv, run_aliasing_experiment, run_error_vs_length, run_tf_signature,
    ExperimentConfig, RunSummary,
};
use polmux_otdr::{Error, ProbeSpec, Scheme};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "polmux-otdr", version, about = "Dual-polarization phase-OTDR simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Preset {
    Desk,
    Paper,
}

#[derive(Args)]
struct RunArgs {
    /// Flat key=value config file; later --set flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base parameter set used when no config file is given.
    #[arg(long, value_enum, default_value = "desk")]
    preset: Preset,
    /// Override a single config key, e.g. --set cazac_m=6 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Output directory for CSV files and manifest.json.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => match self.preset {
                Preset::Desk => ExperimentConfig::desk_scale(),
                Preset::Paper => ExperimentConfig::paper_scale(),
            },
        };
        for item in &self.overrides {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got '{item}'")))?;
            cfg.set(key.trim(), value.trim())?;
        }
        if let Some(dir) = &self.out_dir {
            cfg.out_dir = dir.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write one probing period of a scheme as a CSV file.
    Generate {
        /// Probing scheme: golay, cazac or sweep.
        #[arg(long)]
        scheme: Scheme,
        /// Golay recursion depth K, CAZAC order M, or sweep length N.
        #[arg(long)]
        size: usize,
        /// Symbol rate in symbols/s.
        #[arg(long, default_value_t = 50e6)]
        f_symb: f64,
        /// Output CSV path.
        #[arg(long, default_value = "sequence.csv")]
        out: PathBuf,
    },
    /// Estimate over the full window and export per-lag intensity profiles.
    Aliasing(RunArgs),
    /// Export spectrograms of both polarizations for each scheme.
    Tf(RunArgs),
    /// Export estimation-error curves versus fiber length.
    ErrorCurve(RunArgs),
}

fn report(summary: &RunSummary) {
    for file in &summary.files {
        println!("wrote {file}");
    }
    for (key, value) in &summary.measurements {
        println!("{key} = {value}");
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Generate { scheme, size, f_symb, out } => {
            let spec = match scheme {
                Scheme::GolayBpsk => ProbeSpec::GolayBpsk { k: size as u32 },
                Scheme::Cazac => ProbeSpec::Cazac { m: size as u32 },
                Scheme::Sweep => ProbeSpec::Sweep { n_total: size },
            };
            let probe = generate_probe_csv(spec, f_symb, &out)?;
            println!(
                "wrote {} ({} symbols, {})",
                out.display(),
                probe.period(),
                probe.scheme.label()
            );
        }
        Command::Aliasing(args) => report(&run_aliasing_experiment(&args.resolve()?)?),
        Command::Tf(args) => report(&run_tf_signature(&args.resolve()?)?),
        Command::ErrorCurve(args) => report(&run_error_vs_length(&args.resolve()?)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err @ Error::Io { .. }) => {
            eprintln!("error: {err}");
            ExitCode::from(3)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
