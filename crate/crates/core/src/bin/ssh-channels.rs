use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ssh_channels::runner::{self, presets, RunConfig};
use ssh_channels::{Error, Result};

/// Run one SSH-chain computation from a TOML config or a bundled preset.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    /// TOML run config.
    #[arg(long, value_name = "PATH", conflicts_with = "preset", required_unless_present_any = ["preset", "list_presets"])]
    config: Option<PathBuf>,
    /// Bundled config, see --list-presets.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Print the preset catalog and exit.
    #[arg(long)]
    list_presets: bool,
    /// Output directory.
    #[arg(long, value_name = "DIR", env = "SSH_CHANNELS_OUT", default_value = "out")]
    out: PathBuf,
    /// Disorder seed, overriding the config.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
}

fn run(cli: Cli) -> Result<()> {
    if cli.list_presets {
        for name in presets::names() {
            println!("{name}");
        }
        return Ok(());
    }
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Config { key: "threads".into(), reason: "must be at least 1".into() });
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Numeric(format!("thread pool: {e}")))?;
    }
    let mut cfg = match (&cli.config, &cli.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io { context: format!("reading {}", path.display()), source: e })?;
            RunConfig::parse(&text)?
        }
        (None, Some(name)) => presets::load(name)?,
        (None, None) => unreachable!("clap requires one of --config/--preset"),
    };
    if let Some(seed) = cli.seed {
        cfg = cfg.with_seed(seed)?;
    }
    let out = runner::execute(cfg)?;
    for path in out.write(&cli.out)? {
        println!("wrote {}", path.display());
    }
    println!("{}", out.summary);
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
