//! `stokesforge`: derivations, Stokes data and verification for Y(5), Y(6),
//! Y(8), Y(10). Exit codes: 0 success, 2 verification failure, 3
//! configuration error.

mod commands;
mod config;
mod golden;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stokesforge::models::ModelId;

use commands::{Section, Which};
use config::{ConfigError, Overrides, RunConfig, PRECISION_ENV};
use golden::Golden;

const EXIT_VERIFY: u8 = 2;
const EXIT_CONFIG: u8 = 3;

#[derive(Parser)]
#[command(name = "stokesforge", version, about = "Stokes matrices, monodromy and c_N for the mirrors of Y(5), Y(6), Y(8), Y(10)")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Y5, Y6, Y8, Y10 or all.
    #[arg(long, global = true)]
    model: Option<String>,
    /// Working precision in decimal digits.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Series truncation order.
    #[arg(long = "order", global = true)]
    series_order: Option<usize>,
    /// Comma-separated sample points on the positive real axis.
    #[arg(long = "z", global = true)]
    z_samples: Option<String>,
    /// Directory for JSON, markdown and SVG output.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    /// symbolic, preferred, or a rational value such as 5/2.
    #[arg(long = "a", global = true)]
    a: Option<String>,
    /// key=value configuration file; flags take priority.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Golden-file root (defaults to the versioned directory in the crate).
    #[arg(long, global = true)]
    golden_dir: Option<PathBuf>,
    /// Rewrite golden files instead of comparing against them.
    #[arg(long, global = true)]
    bless: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Picard-Fuchs operator, Laplace transform and GKZ reductions.
    Derive {
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
    },
    /// Relation suite, c_N and the K_R̄/L/N summary (JSON and markdown).
    Stokes,
    /// Period basis coefficients at the origin.
    Periods,
    /// Local basis at x_c, M_Con and the vanishing period.
    Conifold,
    /// The matching constant c_N.
    MatchCn,
    /// Every check, including golden files.
    Verify,
    /// K_R̄, L and N for each model.
    Table1,
    /// SVG of the Stokes rays, the log cut and Ξ_l.
    PlotRays {
        /// Output file (default: <output_dir>/rays.svg).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(common: &Common) -> Result<RunConfig, ConfigError> {
    let env = std::env::var(PRECISION_ENV).ok();
    let o = Overrides {
        model: common.model.clone(),
        precision: common.precision,
        series_order: common.series_order,
        z_samples: common.z_samples.clone(),
        output_dir: common.output_dir.clone(),
        a: common.a.clone(),
    };
    RunConfig::load(common.config.as_deref(), env.as_deref(), &o)
}

/// Runs `f` for every model on its own thread, returning results in order.
fn per_model<F>(models: &[ModelId], f: F) -> Vec<Section>
where
    F: Fn(ModelId) -> Section + Sync,
{
    std::thread::scope(|scope| {
        let handles: Vec<_> = models.iter().map(|&id| { let f = &f; scope.spawn(move || f(id)) }).collect();
        handles.into_iter().map(|h| h.join().expect("worker thread panicked")).collect()
    })
}

/// Compares each section against its golden file and appends the outcome.
fn golden_pass(common: &Common, models: &[ModelId], command: &str, sections: &mut [Section], subset: bool) -> Result<(), ConfigError> {
    let root = common.golden_dir.clone().unwrap_or_else(golden::default_root);
    for (id, s) in models.iter().zip(sections.iter_mut()) {
        let outcome = golden::check(&root, &id.to_string(), command, &s.text, common.bless, subset)
            .map_err(|e| ConfigError(format!("golden files: {e}")))?;
        match outcome {
            Golden::Match => {}
            Golden::Blessed => eprintln!("blessed {}", golden::path(&root, &id.to_string(), command).display()),
            Golden::Missing(p) => s.failures.push(format!("missing golden file {} (run with --bless)", p.display())),
            Golden::Differs(d) => s.failures.push(format!("{id} {command} differs from golden:\n{d}")),
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Vec<Section>, ConfigError> {
    let cfg = load(&cli.common)?;
    let models = cfg.models.clone();
    let sections = match &cli.command {
        Command::Derive { which } => {
            let mut s = per_model(&models, |id| commands::derive(id, *which));
            golden_pass(&cli.common, &models, "derive", &mut s, *which != Which::All)?;
            s
        }
        Command::Table1 => {
            let mut s = per_model(&models, commands::table1);
            golden_pass(&cli.common, &models, "table1", &mut s, false)?;
            s
        }
        Command::Periods => per_model(&models, |id| commands::periods(id, &cfg)),
        Command::Conifold => {
            cfg.require_matching_precision()?;
            per_model(&models, |id| commands::conifold(id, &cfg))
        }
        Command::MatchCn => {
            cfg.require_matching_precision()?;
            let samples = models
                .iter()
                .map(|id| commands::sample_points(&id.data(), &cfg.z_samples, cfg.precision).map_err(ConfigError))
                .collect::<Result<Vec<_>, _>>()?;
            let pairs: Vec<_> = models.iter().copied().zip(samples).collect();
            std::thread::scope(|scope| {
                let hs: Vec<_> = pairs.into_iter().map(|(id, z)| { let cfg = &cfg; scope.spawn(move || commands::match_cn_cmd(id, cfg, z)) }).collect();
                hs.into_iter().map(|h| h.join().expect("worker thread panicked")).collect()
            })
        }
        Command::Stokes => {
            cfg.require_matching_precision()?;
            per_model(&models, |id| commands::stokes(id, &cfg))
        }
        Command::Verify => {
            cfg.require_matching_precision()?;
            let mut s = per_model(&models, |id| commands::verify(id, &cfg));
            let mut g = per_model(&models, |id| commands::derive(id, Which::All));
            golden_pass(&cli.common, &models, "derive", &mut g, false)?;
            let mut t = per_model(&models, commands::table1);
            golden_pass(&cli.common, &models, "table1", &mut t, false)?;
            for (dst, (a, b)) in s.iter_mut().zip(g.into_iter().zip(t)) {
                dst.failures.extend(a.failures);
                dst.failures.extend(b.failures);
            }
            s
        }
        Command::PlotRays { out } => {
            let path = out.clone().unwrap_or_else(|| cfg.output_dir.join("rays.svg"));
            commands::plot_rays(&models, &path).map_err(ConfigError)?;
            vec![Section { text: format!("wrote {}\n", path.display()), failures: Vec::new() }]
        }
    };
    Ok(sections)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Err(e) => {
            eprintln!("configuration error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Ok(sections) => {
            let mut failed = false;
            for s in &sections {
                print!("{}", s.text);
                for f in &s.failures {
                    eprintln!("verification failure: {f}");
                }
                failed |= !s.failures.is_empty();
            }
            if failed {
                ExitCode::from(EXIT_VERIFY)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
