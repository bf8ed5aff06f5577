use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gtvar::toric::ToricOptions;
use gtvar::wlp::DEFAULT_WLP_SEED;
use gtvar::{normalize_spec, GroupSpec};
use gtvar_cli::cache::Cache;
use gtvar_cli::commands::{self, Format};
use gtvar_cli::sweep::{run_sweep, SweepConfig, SweepFormat};
use gtvar_cli::{CliError, Result};

/// Monomial invariants of cyclic groups and the GT-varieties they define.
#[derive(Parser, Debug)]
#[command(name = "gtvar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for sampled linear forms or sampled sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Cache location (defaults to $GTVAR_CACHE_DIR or the user cache dir).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Group order.
    #[arg(long, allow_hyphen_values = true)]
    d: i64,

    /// Comma-separated weights, reduced modulo d.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    alphas: Vec<i64>,
}

impl SpecArgs {
    fn spec(&self) -> Result<GroupSpec> {
        Ok(normalize_spec(self.d, &self.alphas)?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the invariant monomials of degree t*d in lex order.
    Invariants {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// Compare the number of degree-d invariants with the Togliatti bound.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also sample the multiplication map by linear forms.
        #[arg(long)]
        wlp: bool,
        /// Random linear forms besides x0 + ... + xn.
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Minimal binomial generators of the toric ideal.
    Ideal {
        #[command(flatten)]
        spec: SpecArgs,
        /// Check fiber connectivity in degrees 4..=kmax (skipped below 4).
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Cap on the number of index multisets enumerated per degree.
        #[arg(long, default_value_t = ToricOptions::default().max_multisets)]
        max_multisets: u128,
    },
    /// Minimal generators of the canonical module and the ring classification.
    Canonical {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Hilbert series numerator and secondary invariant counts.
    Hilbert {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also report the Hilbert function at t.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Normal-bundle cohomology table of the associated RL-variety.
    Cohomology {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        jmin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        jmax: Option<i64>,
    },
    /// Run a corpus sweep described by a JSON config file.
    Sweep { config: PathBuf },
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cached(
    cache: Option<&Cache>,
    op: &str,
    spec: &GroupSpec,
    params: String,
    compute: impl FnOnce() -> Result<String>,
) -> Result<String> {
    match cache {
        Some(c) => c.get_or_insert_with(&Cache::key(op, spec, &params), compute),
        None => compute(),
    }
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    if let Some(n) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let cache =
        (!g.no_cache).then(|| Cache::new(g.cache_dir.clone().unwrap_or_else(Cache::default_dir)));
    let cache = cache.as_ref();
    let fmt = g.format;

    let text = match &cli.command {
        Command::Invariants { spec, t } => {
            let s = spec.spec()?;
            cached(
                cache,
                "invariants",
                &s,
                format!("t={t} {}", fmt.name()),
                || commands::invariants(&s, *t, fmt),
            )?
        }
        Command::Classify { spec, wlp, samples } => {
            let s = spec.spec()?;
            let seed = g.seed.unwrap_or(DEFAULT_WLP_SEED);
            let wlp = wlp.then_some((*samples, seed));
            cached(
                cache,
                "classify",
                &s,
                format!("wlp={wlp:?} {}", fmt.name()),
                || commands::classify(&s, wlp, fmt),
            )?
        }
        Command::Ideal {
            spec,
            kmax,
            max_multisets,
        } => {
            let s = spec.spec()?;
            let opts = ToricOptions {
                max_multisets: *max_multisets,
            };
            cached(
                cache,
                "ideal",
                &s,
                format!("kmax={kmax} cap={max_multisets} {}", fmt.name()),
                || commands::ideal(&s, *kmax, &opts, fmt),
            )?
        }
        Command::Canonical { spec } => {
            let s = spec.spec()?;
            cached(cache, "canonical", &s, fmt.name().to_string(), || {
                commands::canonical(&s, fmt)
            })?
        }
        Command::Hilbert { spec, t } => {
            let s = spec.spec()?;
            cached(
                cache,
                "hilbert",
                &s,
                format!("t={t:?} {}", fmt.name()),
                || commands::hilbert(&s, *t, fmt),
            )?
        }
        Command::Cohomology { spec, jmin, jmax } => {
            let s = spec.spec()?;
            cached(
                cache,
                "cohomology",
                &s,
                format!("{jmin:?}..{jmax:?} {}", fmt.name()),
                || commands::cohomology(&s, *jmin, *jmax, fmt),
            )?
        }
        Command::Sweep { config } => return sweep(config, g, cache),
    };
    write_output(g.out.as_ref(), &text)
}

fn sweep(path: &PathBuf, g: &Global, cache: Option<&Cache>) -> Result<()> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut cfg = SweepConfig::from_json(&text)?;
    if let (Some(seed), gtvar_cli::sweep::AlphaMode::Sampled { seed: s, .. }) =
        (g.seed, &mut cfg.alpha_mode)
    {
        *s = seed;
    }
    match g.format {
        Format::Json => cfg.format = SweepFormat::Json,
        Format::Csv => cfg.format = SweepFormat::Csv,
        Format::Table => {}
    }
    let report = run_sweep(&cfg, cache)?;
    let out = g.out.clone().or_else(|| cfg.output_path.clone());
    write_output(out.as_ref(), &report.render(cfg.format))?;
    eprint!("{}", report.summary_text());
    if report.failures.is_empty() {
        Ok(())
    } else {
        for f in &report.failures {
            eprintln!("check {} failed for {}", f.check, f.spec);
        }
        Err(CliError::ChecksFailed(report.failures.len()))
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
