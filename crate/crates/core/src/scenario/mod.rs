//! Scenario orchestration: single runs, sweeps, localized-mode reports, the
//! lattice cross-check, and canned figure configurations. Every entry point
//! returns CSV text; writing files is left to the caller.

mod config;
mod format;

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bound_mode::{find_bound_mode, spectral_function_y, superohmic_criterion};
use crate::dynamics::{decay_rates, solve_amplitude, AmplitudeTrajectory};
use crate::error::Error;
use crate::gaussian::{correlation_measures, covariance_from_amplitude, CorrelationMeasures, SymplecticData};
use crate::lattice::{build_chain, discrete_bound_modes, exact_amplitude};
use crate::spectral::{Sites, SpectralModel};

pub use config::{
    parse_config, Assignments, ConfigIssue, ModelKind, ScenarioConfig, Sweep, SOLVE_COLUMNS, SWEEP_PARAMETERS,
};
pub use format::{format_checked, format_float};

pub const SWEEP_HEADER: &str = "sweep_value,t,discord,u_abs2,log_neg";

#[derive(Debug)]
pub enum ScenarioError {
    Config(Vec<ConfigIssue>),
    Numerical(Error),
}

impl ScenarioError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Config(_) => 2,
            ScenarioError::Numerical(Error::InvalidParameter { .. }) => 2,
            ScenarioError::Numerical(Error::NonConvergence { .. }) => 3,
            ScenarioError::Numerical(_) => 1,
        }
    }

    fn config(key: &str, message: impl Into<String>) -> Self {
        ScenarioError::Config(vec![ConfigIssue {
            line: None,
            key: key.into(),
            message: message.into(),
        }])
    }
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScenarioError::Config(issues) => {
                writeln!(f, "configuration error ({} problem(s)):", issues.len())?;
                for i in issues {
                    writeln!(f, "  {i}")?;
                }
                Ok(())
            }
            ScenarioError::Numerical(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

impl From<Error> for ScenarioError {
    fn from(e: Error) -> Self {
        ScenarioError::Numerical(e)
    }
}

/// One time sample of a solved scenario.
#[derive(Debug, Clone)]
pub struct SolveRow {
    pub t: f64,
    pub u: Complex64,
    pub gamma: Option<f64>,
    pub omega_shift: Option<f64>,
    pub invariants: SymplecticData,
    pub measures: CorrelationMeasures,
}

impl SolveRow {
    pub fn u_abs2(&self) -> f64 {
        self.u.norm_sqr()
    }

    fn field(&self, column: &str) -> String {
        let opt = |x: Option<f64>| x.map_or_else(|| "NA".to_string(), format_float);
        let s = &self.invariants;
        let m = &self.measures;
        match column {
            "t" => format_float(self.t),
            "u_re" => format_float(self.u.re),
            "u_im" => format_float(self.u.im),
            "u_abs2" => format_float(self.u_abs2()),
            "gamma" => opt(self.gamma),
            "omega_shift" => opt(self.omega_shift),
            "I1" => format_float(s.i1),
            "I2" => format_float(s.i2),
            "I3" => format_float(s.i3),
            "I4" => format_float(s.i4),
            "nu_minus" => format_float(s.nu_minus),
            "nu_plus" => format_float(s.nu_plus),
            "discord" => format_float(m.discord),
            "mutual_info" => format_float(m.mutual_info),
            "classical" => format_float(m.classical),
            "log_neg" => format_float(m.log_neg),
            "branch" => m.branch.as_str().to_string(),
            other => unreachable!("unknown column {other}"),
        }
    }
}

pub fn solve_trajectory(cfg: &ScenarioConfig) -> Result<AmplitudeTrajectory, ScenarioError> {
    let model = cfg.spectral_model()?;
    Ok(solve_amplitude(&model, cfg.mode()?, cfg.grid()?, cfg.tol)?)
}

/// Correlation measures along a trajectory, with `Γ`, `Ω` missing where `|u|²`
/// is below the validity floor.
pub fn rows_from_trajectory(traj: &AmplitudeTrajectory, r: f64) -> Result<Vec<SolveRow>, ScenarioError> {
    let r = crate::gaussian::SqueezingParameter::new(r)?;
    let rates = decay_rates(traj);
    traj.u
        .iter()
        .enumerate()
        .map(|(j, &u)| {
            let sigma = covariance_from_amplitude(u, r)?;
            let (invariants, measures) = correlation_measures(&sigma)?;
            let ok = rates.valid[j];
            Ok(SolveRow {
                t: rates.times[j],
                u,
                gamma: ok.then_some(rates.gamma[j]),
                omega_shift: ok.then_some(rates.omega_shift[j]),
                invariants,
                measures,
            })
        })
        .collect()
}

pub fn solve_rows(cfg: &ScenarioConfig) -> Result<Vec<SolveRow>, ScenarioError> {
    rows_from_trajectory(&solve_trajectory(cfg)?, cfg.r)
}

pub fn render_solve_csv(rows: &[SolveRow], columns: &[&str]) -> String {
    let mut out = columns.join(",");
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = columns.iter().map(|c| row.field(c)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// The `solve` CSV for a single scenario.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<String, ScenarioError> {
    Ok(render_solve_csv(&solve_rows(cfg)?, &cfg.solve_columns()))
}

#[derive(Debug)]
pub struct SweepFailure {
    pub value: f64,
    pub error: ScenarioError,
}

#[derive(Debug)]
pub struct SweepOutput {
    /// Long-format rows ordered by `(sweep_value, t)`; failed points are absent.
    pub csv: String,
    pub failures: Vec<SweepFailure>,
}

impl SweepOutput {
    pub fn manifest(&self) -> String {
        let mut out = String::from("sweep_value,exit_code,error\n");
        for f in &self.failures {
            let msg = f.error.to_string().replace(['\n', ','], " ");
            let _ = writeln!(out, "{},{},{}", format_float(f.value), f.error.exit_code(), msg.trim());
        }
        out
    }
}

pub fn sweep(cfg: &ScenarioConfig) -> Result<SweepOutput, ScenarioError> {
    let plan = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| ScenarioError::config("sweep", "no sweep specification"))?;
    let mut values = plan.values.clone();
    values.sort_by(f64::total_cmp);
    let results: Vec<(f64, Result<Vec<SolveRow>, ScenarioError>)> = values
        .par_iter()
        .map(|&v| {
            let rows = cfg
                .with_parameter(&plan.parameter, v)
                .map_err(|m| ScenarioError::config("sweep", m))
                .and_then(|point| solve_rows(&point));
            (v, rows)
        })
        .collect();

    let mut csv = format!("{SWEEP_HEADER}\n");
    let mut failures = Vec::new();
    for (v, res) in results {
        match res {
            Ok(rows) => {
                let sv = format_float(v);
                for row in &rows {
                    let _ = writeln!(
                        csv,
                        "{sv},{},{},{},{}",
                        format_float(row.t),
                        format_float(row.measures.discord),
                        format_float(row.u_abs2()),
                        format_float(row.measures.log_neg)
                    );
                }
            }
            Err(error) => failures.push(SweepFailure { value: v, error }),
        }
    }
    Ok(SweepOutput { csv, failures })
}

const Y_SAMPLES: usize = 200;

fn y_sample_energies(model: &SpectralModel, omega0: f64) -> Vec<f64> {
    match model {
        SpectralModel::OhmicFamily(s) => {
            let span = 2.0 * (omega0 + s.omega_c);
            (0..Y_SAMPLES)
                .map(|k| -span + span * k as f64 / Y_SAMPLES as f64)
                .collect()
        }
        SpectralModel::CavityArray(a) => {
            let (lo, hi) = a.band_edges();
            let span = (10.0 * a.xi).max(2.0 * (omega0 - a.omega_cavity).abs());
            let below = (1..=Y_SAMPLES).rev().map(|k| lo - span * k as f64 / Y_SAMPLES as f64);
            let above = (1..=Y_SAMPLES).map(|k| hi + span * k as f64 / Y_SAMPLES as f64);
            below.chain(above).collect()
        }
    }
}

/// Sectioned CSV: a `key,value` summary, every root of `y(E) = E`, samples of
/// `y(E)` outside the support and, for finite arrays, the exact eigenpairs
/// outside the band. Sections start with a `# name` line.
pub fn modes_report(cfg: &ScenarioConfig) -> Result<String, ScenarioError> {
    let model = cfg.spectral_model()?;
    let mode = cfg.mode()?;
    let report = find_bound_mode(&model, mode)?;
    let margin = match &model {
        SpectralModel::OhmicFamily(s) if s.n == 3.0 && s.omega_ref == cfg.omega0 && s.eta > 0.0 => {
            Some(superohmic_criterion(s.eta, s.omega_c, cfg.omega0)?.margin)
        }
        _ => None,
    };
    let opt = |x: Option<f64>| x.map_or_else(|| "NA".to_string(), format_float);

    let mut out = String::from("# summary\nkey,value\n");
    let _ = writeln!(out, "model,{}", cfg.model.as_str());
    let _ = writeln!(out, "omega0,{}", format_float(cfg.omega0));
    let _ = writeln!(out, "exists,{}", report.exists());
    let _ = writeln!(out, "E_b,{}", opt(report.primary.map(|b| b.energy)));
    let _ = writeln!(out, "Z,{}", opt(report.primary.map(|b| b.residue)));
    let _ = writeln!(out, "Z2,{}", opt(report.primary.map(|b| b.population())));
    let _ = writeln!(out, "margin,{}", opt(margin));

    out.push_str("\n# roots\nE,y_minus_E,Z,Z2\n");
    for b in &report.roots {
        let residual = spectral_function_y(&model, mode, b.energy)? - b.energy;
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_float(b.energy),
            format_float(residual),
            format_float(b.residue),
            format_float(b.population())
        );
    }

    out.push_str("\n# y_samples\nE,y\n");
    for e in y_sample_energies(&model, cfg.omega0) {
        let _ = writeln!(
            out,
            "{},{}",
            format_float(e),
            format_float(spectral_function_y(&model, mode, e)?)
        );
    }

    if let SpectralModel::CavityArray(a) = &model {
        if let Sites::Finite(_) = a.sites {
            let chain = build_chain(a, mode, cfg.topology)?;
            out.push_str("\n# discrete_bound_modes\neigenvalue,weight\n");
            for (lam, w) in discrete_bound_modes(&chain) {
                let _ = writeln!(out, "{},{}", format_float(lam), format_float(w));
            }
        }
    }
    Ok(out)
}

pub const ORACLE_HEADER: &str = "t,exact_re,exact_im,exact_abs2,volterra_re,volterra_im,volterra_abs2,abs_diff";

/// Exact diagonalization of the finite array next to the memory-kernel solution.
pub fn oracle_report(cfg: &ScenarioConfig) -> Result<String, ScenarioError> {
    let model = cfg.spectral_model()?;
    let array = match &model {
        SpectralModel::CavityArray(a) if matches!(a.sites, Sites::Finite(_)) => a,
        _ => {
            return Err(ScenarioError::config(
                "model",
                "oracle needs model=array with a finite N",
            ))
        }
    };
    let mode = cfg.mode()?;
    let grid = cfg.grid()?;
    let exact = exact_amplitude(&build_chain(array, mode, cfg.topology)?, grid);
    let volterra = solve_amplitude(&model, mode, grid, cfg.tol)?;
    let mut out = format!("{ORACLE_HEADER}\n");
    for (j, (e, v)) in exact.u.iter().zip(&volterra.u).enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            format_float(grid.time(j)),
            format_float(e.re),
            format_float(e.im),
            format_float(e.norm_sqr()),
            format_float(v.re),
            format_float(v.im),
            format_float(v.norm_sqr()),
            format_float((e - v).norm())
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
}

impl std::str::FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "fig1a" => Figure::Fig1a,
            "fig1b" => Figure::Fig1b,
            "fig2a" => Figure::Fig2a,
            "fig2b" => Figure::Fig2b,
            "fig4a" => Figure::Fig4a,
            "fig4b" => Figure::Fig4b,
            "fig5a" => Figure::Fig5a,
            "fig5b" => Figure::Fig5b,
            other => return Err(format!("unknown figure '{other}'")),
        })
    }
}

impl Figure {
    pub const ALL: [Figure; 8] = [
        Figure::Fig1a,
        Figure::Fig1b,
        Figure::Fig2a,
        Figure::Fig2b,
        Figure::Fig4a,
        Figure::Fig4b,
        Figure::Fig5a,
        Figure::Fig5b,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::Fig1a => "fig1a",
            Figure::Fig1b => "fig1b",
            Figure::Fig2a => "fig2a",
            Figure::Fig2b => "fig2b",
            Figure::Fig4a => "fig4a",
            Figure::Fig4b => "fig4b",
            Figure::Fig5a => "fig5a",
            Figure::Fig5b => "fig5b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Solve,
    Sweep,
    Modes,
}

/// Output file stem, what to run, and the configuration.
#[derive(Debug, Clone)]
pub struct FigureJob {
    pub name: String,
    pub task: Task,
    pub config: ScenarioConfig,
}

fn superohmic(eta: f64, omega_c: f64) -> ScenarioConfig {
    ScenarioConfig {
        model: ModelKind::Ohmic,
        eta,
        n: 3.0,
        omega_c,
        omega_ref: None,
        omega0: 1.0,
        r: 1.0,
        t_max: 50.0,
        steps: 5000,
        ..ScenarioConfig::default()
    }
}

fn cavity_array(omega0: f64) -> ScenarioConfig {
    ScenarioConfig {
        model: ModelKind::Array,
        g: 0.02,
        xi: 0.05,
        omega_cavity: 1.0,
        sites: Sites::Finite(200),
        omega0,
        r: 1.0,
        t_max: 500.0,
        steps: 5000,
        ..ScenarioConfig::default()
    }
}

const FIG2A_ETA: [f64; 3] = [0.08, 0.5, 1.0];
const FIG2B_OMEGA_C: [f64; 3] = [1.0, 2.0, 3.0];
const FIG4_OMEGA0: [f64; 4] = [0.8, 0.85, 0.9, 0.95];

fn with_sweep(mut cfg: ScenarioConfig, parameter: &str, values: Vec<f64>) -> ScenarioConfig {
    cfg.sweep = Some(Sweep {
        parameter: parameter.into(),
        values,
    });
    cfg
}

/// Canned configurations with the parameters of each figure.
pub fn figure_jobs(figure: Figure) -> Vec<FigureJob> {
    let id = figure.id();
    let single = |task, config| {
        vec![FigureJob {
            name: id.to_string(),
            task,
            config,
        }]
    };
    match figure {
        Figure::Fig1a => single(
            Task::Sweep,
            with_sweep(
                superohmic(0.08, 1.0),
                "eta",
                (0..=20).map(|k| k as f64 / 20.0).collect(),
            ),
        ),
        Figure::Fig1b => single(
            Task::Sweep,
            with_sweep(
                superohmic(0.08, 1.0),
                "omega_c",
                (0..=20).map(|k| 0.5 + k as f64 / 8.0).collect(),
            ),
        ),
        Figure::Fig2a => FIG2A_ETA
            .iter()
            .map(|&eta| FigureJob {
                name: format!("{id}_eta_{eta}"),
                task: Task::Solve,
                config: superohmic(eta, 1.0),
            })
            .collect(),
        Figure::Fig2b => FIG2B_OMEGA_C
            .iter()
            .map(|&wc| FigureJob {
                name: format!("{id}_omega_c_{wc}"),
                task: Task::Solve,
                config: superohmic(0.08, wc),
            })
            .collect(),
        Figure::Fig4a => FIG4_OMEGA0
            .iter()
            .map(|&w0| FigureJob {
                name: format!("{id}_omega0_{w0}"),
                task: Task::Modes,
                config: cavity_array(w0),
            })
            .collect(),
        Figure::Fig4b => single(
            Task::Sweep,
            with_sweep(cavity_array(0.8), "omega0", FIG4_OMEGA0.to_vec()),
        ),
        Figure::Fig5a => single(
            Task::Sweep,
            with_sweep(superohmic(0.08, 1.0), "eta", FIG2A_ETA.to_vec()),
        ),
        Figure::Fig5b => single(
            Task::Sweep,
            with_sweep(superohmic(0.08, 1.0), "omega_c", FIG2B_OMEGA_C.to_vec()),
        ),
    }
}

/// Runs every job of a figure; returns `(file name, CSV)` pairs. A sweep with
/// failed points also yields a `.failures.csv` manifest and then an error.
pub fn reproduce(figure: Figure) -> Result<Vec<(String, String)>, ScenarioError> {
    let mut files = Vec::new();
    for job in figure_jobs(figure) {
        match job.task {
            Task::Solve => files.push((format!("{}.csv", job.name), run_scenario(&job.config)?)),
            Task::Modes => files.push((format!("{}.csv", job.name), modes_report(&job.config)?)),
            Task::Sweep => {
                let out = sweep(&job.config)?;
                files.push((format!("{}.csv", job.name), out.csv.clone()));
                if let Some(first) = out.failures.into_iter().next() {
                    return Err(first.error);
                }
            }
        }
    }
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{entropy_function, SqueezingParameter};

    fn short(text: &str) -> ScenarioConfig {
        parse_config(text).unwrap()
    }

    #[test]
    fn header_is_exact() {
        let csv = run_scenario(&short("eta=0.08\nt_max=2\nsteps=20")).unwrap();
        assert_eq!(
            csv.lines().next().unwrap(),
            "t,u_re,u_im,u_abs2,gamma,omega_shift,I1,I2,I3,I4,nu_minus,nu_plus,discord,mutual_info,classical,log_neg,branch"
        );
        assert_eq!(csv.lines().count(), 22);
    }

    #[test]
    fn no_coupling_freezes_discord() {
        let rows = solve_rows(&short("eta=0\nr=0.7\nt_max=20\nsteps=200")).unwrap();
        let want = entropy_function((1.4f64).cosh()).unwrap();
        for row in &rows {
            // pure state: the top-branch discriminant cancels, so ~1e-7 roundoff is expected
            assert!((row.measures.discord - want).abs() < 1e-6);
            assert!(row.gamma.unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_rates_print_na() {
        let traj = AmplitudeTrajectory {
            grid: crate::dynamics::TimeGrid::new(2.0, 2).unwrap(),
            u: vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(1e-6, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            carrier: 1.0,
            dt_used: 1.0,
            error_estimate: 0.0,
        };
        let rows = rows_from_trajectory(&traj, 1.0).unwrap();
        let csv = render_solve_csv(&rows, &SOLVE_COLUMNS);
        for line in csv.lines().skip(2) {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!((f[4], f[5]), ("NA", "NA"));
        }
    }

    #[test]
    fn column_selection_and_integrity() {
        let csv = run_scenario(&short(
            "eta=0.5\nt_max=10\nsteps=200\noutputs=discord,classical,mutual_info",
        ))
        .unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,discord,mutual_info,classical");
        for line in lines {
            let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            assert!((v[1] + v[3] - v[2]).abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_point_matches_single_run() {
        let cfg = short("eta=0.3\nt_max=10\nsteps=200\nsweep=eta:0.3");
        let single = solve_rows(&cfg.with_parameter("eta", 0.3).unwrap()).unwrap();
        let swept = sweep(&cfg).unwrap();
        assert!(swept.failures.is_empty());
        let mut lines = swept.csv.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_HEADER);
        for (line, row) in lines.zip(&single) {
            let expect = format!(
                "{},{},{},{},{}",
                format_float(0.3),
                format_float(row.t),
                format_float(row.measures.discord),
                format_float(row.u_abs2()),
                format_float(row.measures.log_neg)
            );
            assert_eq!(line, expect);
        }
    }

    #[test]
    fn sweep_rows_ordered_by_value() {
        let out = sweep(&short("t_max=4\nsteps=40\nsweep=eta:1.0,0.08,0.5")).unwrap();
        let values: Vec<f64> = out
            .csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(values.len(), 3 * 41);
    }

    #[test]
    fn sweep_failures_are_reported_per_point() {
        let cfg = ScenarioConfig {
            tol: 1e-14,
            t_max: 20.0,
            steps: 20,
            sweep: Some(Sweep {
                parameter: "eta".into(),
                values: vec![0.0, 1.0],
            }),
            ..ScenarioConfig::default()
        };
        let out = sweep(&cfg).unwrap();
        assert_eq!(out.failures.len(), 1);
        assert_eq!(out.failures[0].value, 1.0);
        assert_eq!(out.failures[0].error.exit_code(), 3);
        assert_eq!(out.csv.lines().count(), 1 + 21);
        assert!(out.manifest().lines().nth(1).unwrap().starts_with("1.00000000000e0,3,"));
    }

    #[test]
    fn modes_report_ohmic() {
        let weak = modes_report(&short("eta=0.08")).unwrap();
        assert!(weak.contains("exists,false\n"));
        assert!(weak.contains(&format!("margin,{}\n", format_float(1.0 - 0.16))));
        let strong = modes_report(&short("eta=1.0")).unwrap();
        assert!(strong.contains("exists,true\n"));
        let roots: Vec<&str> = strong
            .split("# roots\n")
            .nth(1)
            .unwrap()
            .lines()
            .skip(1)
            .take_while(|l| !l.is_empty())
            .collect();
        assert_eq!(roots.len(), 1);
        let residual: f64 = roots[0].split(',').nth(1).unwrap().parse().unwrap();
        assert!(residual.abs() <= 1e-10);
    }

    #[test]
    fn modes_report_array_lists_discrete_modes() {
        let rep = modes_report(&short("model=array\nomega0=0.8\nN=200")).unwrap();
        assert!(rep.contains("# discrete_bound_modes\neigenvalue,weight\n"));
        assert!(rep.contains("margin,NA\n"));
        let samples = rep
            .split("# y_samples\n")
            .nth(1)
            .unwrap()
            .lines()
            .skip(1)
            .take_while(|l| !l.is_empty())
            .count();
        assert_eq!(samples, 2 * Y_SAMPLES);
    }

    #[test]
    fn oracle_requires_finite_array() {
        let err = oracle_report(&short("eta=0.5")).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let csv = oracle_report(&short("model=array\nN=20\nomega0=0.8\nt_max=20\nsteps=200")).unwrap();
        let worst = csv
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
            .fold(0.0, f64::max);
        assert!(worst < 1e-3);
    }

    #[test]
    fn figure_parameters() {
        assert!("fig3".parse::<Figure>().is_err());
        for fig in Figure::ALL {
            assert_eq!(fig.id().parse::<Figure>().unwrap(), fig);
            for job in figure_jobs(fig) {
                assert!(job.config.validate().is_empty(), "{}", job.name);
                assert_eq!(job.config.r, 1.0);
            }
        }
        let fig2a: Vec<f64> = figure_jobs(Figure::Fig2a).iter().map(|j| j.config.eta).collect();
        assert_eq!(fig2a, [0.08, 0.5, 1.0]);
        assert!(figure_jobs(Figure::Fig2a).iter().all(|j| j.config.omega_c == 1.0));
        let fig2b: Vec<f64> = figure_jobs(Figure::Fig2b).iter().map(|j| j.config.omega_c).collect();
        assert_eq!(fig2b, [1.0, 2.0, 3.0]);
        assert!(figure_jobs(Figure::Fig2b).iter().all(|j| j.config.eta == 0.08));
        let fig1b = &figure_jobs(Figure::Fig1b)[0].config;
        assert_eq!(fig1b.eta, 0.08);
        assert!([1.0, 2.0, 3.0]
            .iter()
            .all(|v| fig1b.sweep.as_ref().unwrap().values.contains(v)));
        for job in figure_jobs(Figure::Fig4a) {
            let c = &job.config;
            assert_eq!(
                (c.g, c.xi, c.omega_cavity, c.sites),
                (0.02, 0.05, 1.0, Sites::Finite(200))
            );
        }
        let fig4b = &figure_jobs(Figure::Fig4b)[0].config;
        assert_eq!(fig4b.sweep.as_ref().unwrap().values, [0.8, 0.85, 0.9, 0.95]);
    }

    #[test]
    fn initial_row_is_pure_squeezed_state() {
        let rows = solve_rows(&short("eta=0.5\nt_max=1\nsteps=10")).unwrap();
        let sigma = covariance_from_amplitude(Complex64::new(1.0, 0.0), SqueezingParameter::new(1.0).unwrap()).unwrap();
        let (_, m) = correlation_measures(&sigma).unwrap();
        assert_eq!(rows[0].measures.discord, m.discord);
    }
}
