use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use elastic_bem::cli::{self, RunConfig, EXIT_CONFIG, EXIT_NUMERICAL};
use elastic_bem::selftest::{MomentPerturbation, SelftestOptions};
use elastic_bem::Error;

/// Galerkin boundary elements for 2D time-harmonic elastic scattering.
#[derive(Parser)]
#[command(name = "elastic-bem", version)]
struct Cli {
    /// Worker threads for assembly and field evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides output.dir; default: current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dotted-path override, e.g. medium.omega=5 or study.N=[64,128].
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one scattering problem and write the boundary solution.
    Solve(RunArgs),
    /// Tabulate boundary errors of the closed-form problem over N and omega.
    Convergence(RunArgs),
    /// Evaluate the exterior field on a grid.
    Fieldmap(RunArgs),
    /// Run the built-in invariant suites.
    Selftest {
        /// Optional configuration whose medium and series order are checked too.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Fault injection: add 1e-6 to one moment-table entry, e.g. I4:7.
        #[arg(long, hide = true)]
        perturb_moment: Option<String>,
    },
}

fn load(args: &RunArgs) -> Result<(RunConfig, PathBuf), Error> {
    let config = RunConfig::load(&args.config, &args.overrides)?;
    let out = args
        .out
        .clone()
        .or_else(|| config.output.dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    Ok((config, out))
}

fn run(command: Command) -> Result<i32, Error> {
    match command {
        Command::Solve(args) => {
            let (config, out) = load(&args)?;
            println!("{}", cli::cmd_solve(&config, &out)?);
        }
        Command::Convergence(args) => {
            let (config, out) = load(&args)?;
            let (rows, path) = cli::cmd_convergence(&config, &out)?;
            println!(
                "{:>6} {:>10} {:>12} {:>12} {:>7}",
                "N", "omega", "l2_error", "linf_error", "order"
            );
            for r in &rows {
                let order = r.order.map(|o| format!("{o:.2}")).unwrap_or_default();
                println!(
                    "{:>6} {:>10.4} {:>12.3e} {:>12.3e} {order:>7}",
                    r.n, r.omega, r.l2, r.linf
                );
            }
            println!("-> {}", path.display());
        }
        Command::Fieldmap(args) => {
            let (config, out) = load(&args)?;
            let r = cli::cmd_fieldmap(&config, &out)?;
            println!(
                "{} points evaluated, {} masked, residual {:.3e} -> {}",
                r.evaluated,
                r.masked,
                r.residual,
                r.path.display()
            );
        }
        Command::Selftest {
            config,
            overrides,
            perturb_moment,
        } => {
            let config = config.map(|p| RunConfig::load(&p, &overrides)).transpose()?;
            let mut options = SelftestOptions::default();
            if let Some(target) = perturb_moment {
                let (kind, m) = cli::parse_moment_target(&target)?;
                options.perturb = Some(MomentPerturbation { kind, m, delta: 1e-6 });
            }
            let reports = cli::cmd_selftest(config.as_ref(), options)?;
            for r in &reports {
                println!("{r}");
            }
            if !reports.iter().all(|r| r.passed()) {
                return Ok(EXIT_NUMERICAL);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    if let Some(k) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: cannot start {k} threads: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    }
    match run(args.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
