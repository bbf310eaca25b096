//! Command-line sweep runner.
//!
//! Exit codes: 0 success, 2 config error, 3 solver failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ea_mdp::env::{load_config, EnvironmentConfig, LatticeConfig, TwoSiteConfig};
use ea_mdp::learning::LearningParams;
use ea_mdp::quantum::validate_outcome_set;
use ea_mdp::sweep::{
    run_q_learning_experiment, run_sweep, write_qlearn_csv, write_sweep_csv, Axis, SweepError,
    SweepGrid, SweepParameter, SweepSolver, SweepSpec,
};

const EXIT_CONFIG: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(
    name = "eamdp",
    about = "Solve and sweep evidence-superposition decision processes, emitting CSV",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write CSV here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep one parameter: NAME FROM TO POINTS
    /// (names: gamma, reward<k>, phi1, phi2, theta1, theta2).
    #[arg(long, num_args = 4, value_names = ["PARAM", "FROM", "TO", "POINTS"], allow_hyphen_values = true)]
    sweep: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// The two-site swap system (flag-driven, no config file needed).
    TwoSite {
        #[arg(long, default_value_t = 0.8)]
        gamma: f64,
        /// Reward of the third outcome.
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        reward2: f64,
        /// Phase on the second amplitude of site 1 (radians).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta1: f64,
        /// Phase on the second amplitude of site 2 (radians).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta2: f64,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// The lattice system, from a config file or the bundled defaults.
    Lattice {
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        phi1: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        phi2: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Sweep two parameters on a grid: P1 FROM1 TO1 POINTS1 P2 FROM2 TO2 POINTS2.
        #[arg(long, num_args = 8, value_names = [
            "P1", "FROM1", "TO1", "POINTS1", "P2", "FROM2", "TO2", "POINTS2"
        ], allow_hyphen_values = true)]
        sweep2d: Option<Vec<String>>,
    },
    /// Train the epsilon-greedy learner and compare it to the planning oracle.
    Qlearn {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        episodes: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Validate a config file and its outcome set; exits nonzero on violation.
    Validate {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<SweepError> for CliError {
    fn from(err: SweepError) -> Self {
        let code = match &err {
            SweepError::SolverAt { .. } | SweepError::Solver(_) | SweepError::Learning(_) => {
                EXIT_SOLVER
            }
            _ => EXIT_CONFIG,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self {
            code: 1,
            message: err.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::TwoSite {
            gamma,
            reward2,
            theta1,
            theta2,
            sweep,
        } => {
            let base = EnvironmentConfig::TwoSite(TwoSiteConfig {
                gamma,
                theta1,
                theta2,
                rewards: vec![-1.0, 1.0, reward2],
                ..TwoSiteConfig::default()
            });
            let grid = parse_grid(sweep.sweep.as_deref(), None)?;
            emit_sweep(base, grid, cli.output.as_deref())
        }
        Command::Lattice {
            config,
            phi1,
            phi2,
            gamma,
            sweep,
            sweep2d,
        } => {
            let mut lattice = load_lattice(config.as_deref())?;
            if let Some(phi1) = phi1 {
                lattice.phi1 = phi1;
            }
            if let Some(phi2) = phi2 {
                lattice.phi2 = phi2;
            }
            if let Some(gamma) = gamma {
                lattice.gamma = gamma;
            }
            let grid = parse_grid(sweep.sweep.as_deref(), sweep2d.as_deref())?;
            emit_sweep(EnvironmentConfig::Lattice(lattice), grid, cli.output.as_deref())
        }
        Command::Qlearn {
            config,
            alpha,
            epsilon,
            episodes,
            seed,
            max_steps,
        } => {
            let (base, _) = load_config(&config).map_err(|e| CliError::config(e.to_string()))?;
            let mut params = LearningParams::default();
            if let Some(alpha) = alpha {
                params.alpha = alpha;
            }
            if let Some(epsilon) = epsilon {
                params.epsilon = epsilon;
            }
            if let Some(episodes) = episodes {
                params.episodes = episodes;
            }
            if let Some(seed) = seed {
                params.seed = seed;
            }
            if let Some(max_steps) = max_steps {
                params.max_steps_per_episode = max_steps;
            }
            params
                .validate()
                .map_err(|e| CliError::config(e.to_string()))?;
            let experiment = run_q_learning_experiment(&base, &params)?;
            write_output(cli.output.as_deref(), |out| {
                write_qlearn_csv(out, &base, &params, &experiment)
            })?;
            Ok(())
        }
        Command::Validate { config } => {
            let (parsed, mdp) =
                load_config(&config).map_err(|e| CliError::config(e.to_string()))?;
            let report = validate_outcome_set(
                mdp.outcomes().space_dim(),
                mdp.outcomes().outcomes(),
            )
            .map_err(|e| CliError::config(e.to_string()))?;
            println!(
                "kind={} states={} actions={} outcome_set: unit_norms={} orthogonal={} complete={} max_violation={:e}",
                parsed.kind(),
                mdp.n_states(),
                mdp.n_actions(),
                report.unit_norms,
                report.orthogonal,
                report.complete,
                report.max_violation
            );
            if !report.is_valid() {
                return Err(CliError::config("outcome set validation failed"));
            }
            println!("ok");
            Ok(())
        }
    }
}

fn load_lattice(path: Option<&std::path::Path>) -> Result<LatticeConfig, CliError> {
    match path {
        None => Ok(LatticeConfig::default()),
        Some(path) => {
            let (config, _) = load_config(path).map_err(|e| CliError::config(e.to_string()))?;
            match config {
                EnvironmentConfig::Lattice(lattice) => Ok(lattice),
                EnvironmentConfig::TwoSite(_) => Err(CliError::config(format!(
                    "`{}` is a two_site config; the lattice subcommand needs kind=lattice",
                    path.display()
                ))),
            }
        }
    }
}

fn parse_axis(chunk: &[String]) -> Result<Axis, CliError> {
    let parameter: SweepParameter = chunk[0]
        .parse()
        .map_err(|e: SweepError| CliError::config(e.to_string()))?;
    let parse_f64 = |s: &String, what: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::config(format!("{what} `{s}` is not a number")))
    };
    let from = parse_f64(&chunk[1], "sweep FROM")?;
    let to = parse_f64(&chunk[2], "sweep TO")?;
    let points: usize = chunk[3]
        .parse()
        .map_err(|_| CliError::config(format!("sweep POINTS `{}` is not an integer", chunk[3])))?;
    Axis::linspace(parameter, from, to, points).map_err(CliError::from)
}

fn parse_grid(
    sweep: Option<&[String]>,
    sweep2d: Option<&[String]>,
) -> Result<Option<SweepGrid>, CliError> {
    match (sweep, sweep2d) {
        (Some(_), Some(_)) => Err(CliError::config(
            "--sweep and --sweep2d are mutually exclusive",
        )),
        (Some(chunk), None) => Ok(Some(SweepGrid::One(parse_axis(chunk)?))),
        (None, Some(chunk)) => Ok(Some(SweepGrid::Two(
            parse_axis(&chunk[..4])?,
            parse_axis(&chunk[4..])?,
        ))),
        (None, None) => Ok(None),
    }
}

fn emit_sweep(
    base: EnvironmentConfig,
    grid: Option<SweepGrid>,
    output: Option<&std::path::Path>,
) -> Result<(), CliError> {
    // Without --sweep, solve the configuration once: a single-point grid on
    // gamma keeps the output format identical.
    let grid = grid.unwrap_or_else(|| {
        SweepGrid::One(Axis {
            parameter: SweepParameter::Gamma,
            values: vec![base.gamma()],
        })
    });
    let spec = SweepSpec {
        base,
        grid,
        solver: SweepSolver::ValueIteration,
    };
    let result = run_sweep(&spec)?;
    write_output(output, |out| write_sweep_csv(out, &spec, &result))?;
    Ok(())
}

fn write_output<F>(path: Option<&std::path::Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    let result = match path {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            write(&mut file).and_then(|()| file.flush())
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).and_then(|()| lock.flush())
        }
    };
    match result {
        // A closed downstream reader (e.g. `| head`) is not an error.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}
