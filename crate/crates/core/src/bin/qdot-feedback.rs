use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qdot_feedback::commands::{cmd_greens, cmd_kernel, cmd_locus, cmd_poles};
use qdot_feedback::config::SweepOverrides;
use qdot_feedback::{reproduce, ConfigOverrides, Error, Figure, RunConfig};

#[derive(Parser)]
#[command(name = "qdot-feedback", version, about = "Quantum-dot coherent feedback: kernels, poles, root loci, g(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// TOML file with omega_s, delta, h, eta, r, theta, dt, T, [sweep]
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    dt: Option<f64>,
    #[arg(long = "T", global = true)]
    t_final: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long = "omega-s", global = true)]
    omega_s: Option<f64>,
    #[arg(long, global = true)]
    delta: Option<f64>,
    #[arg(long = "h", global = true)]
    h: Option<f64>,
    #[arg(long, global = true)]
    eta: Option<f64>,
    #[arg(long, global = true)]
    r: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Open- and closed-loop memory kernels in time and Laplace domain
    Kernel,
    /// g(t) from the pole expansion and both time-domain solvers
    Greens {
        /// Use a constant Markovian kernel gamma/2 instead of the Lorentzian one
        #[arg(long)]
        markovian_gamma: Option<f64>,
    },
    /// Poles and residues of G(s)
    Poles,
    /// Root locus over r, eta or theta
    Locus {
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        start: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        stop: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Dataset and manifest for fig2, fig3, fig4 or fig5
    Reproduce { figure: String },
}

fn run(cli: Cli) -> Result<Vec<PathBuf>, Error> {
    let c = cli.common;
    let mut overrides = ConfigOverrides {
        omega_s: c.omega_s,
        delta: c.delta,
        h: c.h,
        eta: c.eta,
        r: c.r,
        theta: c.theta,
        dt: c.dt,
        t_final: c.t_final,
        out: c.out,
        format: c.format,
        ..Default::default()
    };
    match &cli.command {
        Command::Greens { markovian_gamma } => overrides.markovian_gamma = *markovian_gamma,
        Command::Locus { sweep, start, stop, steps } => {
            overrides.sweep = SweepOverrides {
                parameter: sweep.clone(),
                start: *start,
                stop: *stop,
                steps: *steps,
            }
        }
        _ => {}
    }
    let config = RunConfig::load(c.config.as_deref(), overrides)?;
    match cli.command {
        Command::Kernel => cmd_kernel(&config),
        Command::Greens { .. } => cmd_greens(&config),
        Command::Poles => cmd_poles(&config),
        Command::Locus { .. } => cmd_locus(&config).map(|(_, files)| files),
        Command::Reproduce { figure } => {
            let figure: Figure = figure.parse()?;
            let ds = reproduce(figure, &config.out, config.dt, config.t_final)?;
            Ok(vec![ds.dir.join("manifest.json")])
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                _ if e.is_degeneracy() => 3,
                Error::Config(_) | Error::InvalidParameter { .. } | Error::Resolution { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
