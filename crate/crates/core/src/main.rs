use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use frozen_discord::scenario::{self, Assignments, ConfigIssue, Figure, ScenarioConfig, ScenarioError};

#[derive(Parser)]
#[command(name = "frozen-discord", version, about = "Non-Markovian Gaussian discord dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one scenario and write the trajectory CSV.
    Solve(Params),
    /// Run the configured parameter sweep (long-format CSV).
    Sweep(Params),
    /// Localized-mode analysis: roots of y(E) = E and samples of y(E).
    Modes(Params),
    /// Compare the memory-kernel solver with exact diagonalization of a finite array.
    Oracle(Params),
    /// Regenerate the data behind a figure into the --out directory.
    Reproduce {
        #[arg(long)]
        figure: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_name = "ohmic|array")]
    model: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    omega_c: Option<String>,
    #[arg(long)]
    omega_ref: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    xi: Option<String>,
    #[arg(long)]
    omega_cavity: Option<String>,
    /// Number of array sites, or `continuum`.
    #[arg(long)]
    sites: Option<String>,
    #[arg(long)]
    omega0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long)]
    tmax: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long, value_name = "ring|open")]
    topology: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Params {
    fn config(&self) -> Result<ScenarioConfig, ScenarioError> {
        let mut assignments = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    ScenarioError::Config(vec![ConfigIssue {
                        line: None,
                        key: "config".into(),
                        message: format!("cannot read {}: {e}", path.display()),
                    }])
                })?;
                Assignments::parse(&text).map_err(ScenarioError::Config)?
            }
            None => Assignments::default(),
        };
        let overrides = [
            ("model", &self.model),
            ("eta", &self.eta),
            ("n", &self.n),
            ("omega_c", &self.omega_c),
            ("omega_ref", &self.omega_ref),
            ("g", &self.g),
            ("xi", &self.xi),
            ("omega_C", &self.omega_cavity),
            ("N", &self.sites),
            ("omega0", &self.omega0),
            ("r", &self.r),
            ("t_max", &self.tmax),
            ("steps", &self.steps),
            ("tol", &self.tol),
            ("topology", &self.topology),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                assignments.set(key, v.clone());
            }
        }
        assignments.into_config().map_err(ScenarioError::Config)
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn failure(e: ScenarioError) -> ExitCode {
    eprint!("error: {e}");
    if !matches!(e, ScenarioError::Config(_)) {
        eprintln!();
    }
    ExitCode::from(e.exit_code() as u8)
}

fn io_failure(e: std::io::Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(1)
}

fn run_params(params: &Params, task: fn(&ScenarioConfig) -> Result<String, ScenarioError>) -> ExitCode {
    let csv = match params.config().and_then(|cfg| task(&cfg)) {
        Ok(csv) => csv,
        Err(e) => return failure(e),
    };
    match emit(params.out.as_deref(), &csv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => io_failure(e),
    }
}

fn run_sweep(params: &Params) -> ExitCode {
    let out = match params.config().and_then(|cfg| scenario::sweep(&cfg)) {
        Ok(out) => out,
        Err(e) => return failure(e),
    };
    if let Err(e) = emit(params.out.as_deref(), &out.csv) {
        return io_failure(e);
    }
    let Some(worst) = out.failures.iter().map(|f| f.error.exit_code()).max() else {
        return ExitCode::SUCCESS;
    };
    for f in &out.failures {
        eprintln!("sweep value {}: {}", f.value, f.error.to_string().trim_end());
    }
    if let Some(path) = &params.out {
        let mut manifest = path.clone().into_os_string();
        manifest.push(".failures.csv");
        if let Err(e) = fs::write(&manifest, out.manifest()) {
            return io_failure(e);
        }
        eprintln!("failure manifest written to {}", Path::new(&manifest).display());
    }
    ExitCode::from(worst as u8)
}

fn run_reproduce(figure: &str, dir: &Path) -> ExitCode {
    let figure: Figure = match figure.parse() {
        Ok(f) => f,
        Err(message) => {
            return failure(ScenarioError::Config(vec![ConfigIssue {
                line: None,
                key: "figure".into(),
                message,
            }]))
        }
    };
    let files = match scenario::reproduce(figure) {
        Ok(files) => files,
        Err(e) => return failure(e),
    };
    if let Err(e) = fs::create_dir_all(dir) {
        return io_failure(e);
    }
    for (name, csv) in files {
        let path = dir.join(name);
        if let Err(e) = fs::write(&path, csv) {
            return io_failure(e);
        }
        eprintln!("wrote {}", path.display());
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Solve(p) => run_params(p, scenario::run_scenario),
        Command::Sweep(p) => run_sweep(p),
        Command::Modes(p) => run_params(p, scenario::modes_report),
        Command::Oracle(p) => run_params(p, scenario::oracle_report),
        Command::Reproduce { figure, out } => run_reproduce(figure, out),
    }
}
