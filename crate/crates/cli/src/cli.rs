use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ringdec_core::decoherence::Method;

use crate::commands::{cmd_decohere, cmd_spectrum, cmd_sweep};
use crate::config::{load_config, RunConfig};
use crate::error::{CliError, Result};
use crate::figures::{render, Preset};
use crate::output::Bundle;

const CONFIG_HELP: &str = "\
Run configuration (flat JSON object):
  N                  particle count, integer >= 3           (required)
  mass_mp | mass_kg  particle mass in proton masses or kg   (exactly one)
  kappa_N_per_m      spring constant, N/m                   (required)
  R_m                ring radius, m                         (required)
  T_K                temperature, K; 0 selects n = 0 only   (required)
  n_max              largest |n| in thin_spectrum           (default N)
  alpha_max          highest level in thin_spectrum         (default 1)
  methods            subset of [\"exact\",\"bessel\",\"erfi\"]   (default all)
  times.t_max_s      window length in s or \"auto\"           (default auto:
                     5 tau, or 40/(|g| omega_1) when tau is undefined)
  times.points       samples per trace                      (default 2000)
  output.dir         output directory                       (default .)
  output.format      \"csv\" or \"json\"                        (default csv)
  solver             solver tolerances, e.g. {\"scan_step\": 1e-3}
  sweep              {\"axis\": N|T|kappa|R|m|fixed-density-N, \"values\": [...]}
                     values strictly monotone; m in proton masses

Exit codes: 0 success, 2 config error, 3 solver error, 4 I/O error.";

#[derive(Debug, Parser)]
#[command(name = "ringdec", version, about = "Thin spectrum and spontaneous decoherence of a ring of coupled oscillators", after_help = CONFIG_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write thin_spectrum and modes tables.
    Spectrum(RunArgs),
    /// Write one trace per method and diagnostics.json.
    Decohere(RunArgs),
    /// Run decohere for every value of the configured sweep axis.
    Sweep(RunArgs),
    /// Emit the data behind the named figure presets.
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Comma-separated methods overriding the config.
    #[arg(long, value_delimiter = ',')]
    pub method: Option<Vec<String>>,
    /// Output directory overriding the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long)]
    pub fig3: bool,
    #[arg(long)]
    pub fig4a: bool,
    #[arg(long)]
    pub fig4b: bool,
    #[arg(long)]
    pub fig5a: bool,
    #[arg(long)]
    pub fig5b: bool,
    #[arg(long)]
    pub fig5c: bool,
    #[arg(long)]
    pub fig5d: bool,
    #[arg(long)]
    pub fig5e: bool,
    #[arg(long)]
    pub fig5f: bool,
    #[arg(long)]
    pub a1: bool,
    /// Every preset.
    #[arg(long)]
    pub all: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output directory; each preset writes a subdirectory.
    #[arg(long, default_value = "figures")]
    pub out: PathBuf,
}

impl FigureArgs {
    pub fn presets(&self) -> Vec<Preset> {
        let flags = [
            self.fig3, self.fig4a, self.fig4b, self.fig5a, self.fig5b, self.fig5c, self.fig5d,
            self.fig5e, self.fig5f, self.a1,
        ];
        Preset::ALL
            .iter()
            .zip(flags)
            .filter(|(_, on)| self.all || *on)
            .map(|(p, _)| *p)
            .collect()
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => f(),
        Some(0) => Err(CliError::config("--jobs", "must be at least 1")),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| CliError::config("--jobs", e.to_string()))?
            .install(f),
    }
}

fn prepare(args: &RunArgs) -> Result<(RunConfig, PathBuf)> {
    let mut cfg = load_config(&args.config)?;
    if let Some(list) = &args.method {
        let mut methods: Vec<Method> = Vec::new();
        for name in list {
            let m: Method = name
                .trim()
                .parse()
                .map_err(|_| CliError::config("--method", format!("unknown method `{name}`")))?;
            if !methods.contains(&m) {
                methods.push(m);
            }
        }
        if methods.is_empty() {
            return Err(CliError::config("--method", "no method given"));
        }
        cfg.methods = methods;
    }
    let out = args.out.clone().unwrap_or_else(|| cfg.output.dir.clone());
    Ok((cfg, out))
}

fn emit(bundle: &Bundle, dir: &Path) -> Result<Vec<PathBuf>> {
    bundle.write(dir)
}

/// Executes a parsed command line and returns the files written.
pub fn run(cli: Cli) -> Result<Vec<PathBuf>> {
    match cli.command {
        Command::Spectrum(args) => {
            let (cfg, out) = prepare(&args)?;
            let bundle = with_jobs(args.jobs, || cmd_spectrum(&cfg))?;
            emit(&bundle, &out)
        }
        Command::Decohere(args) => {
            let (cfg, out) = prepare(&args)?;
            let bundle = with_jobs(args.jobs, || cmd_decohere(&cfg))?;
            emit(&bundle, &out)
        }
        Command::Sweep(args) => {
            let (cfg, out) = prepare(&args)?;
            let sweep = cfg.sweep.clone().ok_or_else(|| {
                CliError::config("sweep", "the sweep command needs a `sweep` section")
            })?;
            let bundle = with_jobs(args.jobs, || cmd_sweep(&cfg, &sweep))?;
            emit(&bundle, &out)
        }
        Command::Figure(args) => {
            let presets = args.presets();
            if presets.is_empty() {
                return Err(CliError::config(
                    "figure",
                    "select at least one preset flag or --all",
                ));
            }
            let solver = ringdec_core::SolverConfig::default();
            let bundle = with_jobs(args.jobs, || {
                let mut all = Bundle::new();
                for p in presets {
                    all.nest(p.name(), render(p, &solver)?);
                }
                Ok(all)
            })?;
            emit(&bundle, &args.out)
        }
    }
}
