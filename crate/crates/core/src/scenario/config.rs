//! Line-based `key=value` scenario files.

use std::fmt;

use crate::dynamics::{SystemMode, TimeGrid};
use crate::error::Error;
use crate::gaussian::SqueezingParameter;
use crate::lattice::Topology;
use crate::spectral::{Sites, SpectralModel};

use super::format::format_float;

pub const SOLVE_COLUMNS: [&str; 17] = [
    "t",
    "u_re",
    "u_im",
    "u_abs2",
    "gamma",
    "omega_shift",
    "I1",
    "I2",
    "I3",
    "I4",
    "nu_minus",
    "nu_plus",
    "discord",
    "mutual_info",
    "classical",
    "log_neg",
    "branch",
];

/// Parameters a sweep may vary.
pub const SWEEP_PARAMETERS: [&str; 10] = [
    "eta",
    "n",
    "omega_c",
    "omega_ref",
    "g",
    "xi",
    "omega_C",
    "N",
    "omega0",
    "r",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Ohmic,
    Array,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Ohmic => "ohmic",
            ModelKind::Array => "array",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub parameter: String,
    pub values: Vec<f64>,
}

/// A fully validated scenario. Frequencies are in units of `omega0` for the
/// Ohmic family and of `omega_C` for the array, both defaulting to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: ModelKind,
    pub eta: f64,
    pub n: f64,
    pub omega_c: f64,
    /// `None` means "same as omega0".
    pub omega_ref: Option<f64>,
    pub g: f64,
    pub xi: f64,
    pub omega_cavity: f64,
    pub sites: Sites,
    pub omega0: f64,
    pub r: f64,
    pub t_max: f64,
    pub steps: usize,
    pub tol: f64,
    pub topology: Topology,
    /// Solve columns to emit besides `t`; empty means all.
    pub outputs: Vec<String>,
    pub sweep: Option<Sweep>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            model: ModelKind::Ohmic,
            eta: 0.08,
            n: 3.0,
            omega_c: 1.0,
            omega_ref: None,
            g: 0.02,
            xi: 0.05,
            omega_cavity: 1.0,
            sites: Sites::Finite(200),
            omega0: 1.0,
            r: 1.0,
            t_max: 50.0,
            steps: 5000,
            tol: 1e-5,
            topology: Topology::Ring,
            outputs: Vec::new(),
            sweep: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    /// 1-based line in the file; `None` for command-line values.
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: '{}': {}", self.key, self.message),
            None => write!(f, "'{}': {}", self.key, self.message),
        }
    }
}

/// Raw `key=value` assignments in order of appearance.
#[derive(Debug, Clone, Default)]
pub struct Assignments {
    entries: Vec<(Option<usize>, String, String)>,
}

impl Assignments {
    pub fn parse(text: &str) -> Result<Self, Vec<ConfigIssue>> {
        let mut out = Self::default();
        let mut issues = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line.split_once('=') {
                Some((k, v)) => out
                    .entries
                    .push((Some(idx + 1), k.trim().to_string(), v.trim().to_string())),
                None => issues.push(ConfigIssue {
                    line: Some(idx + 1),
                    key: line.to_string(),
                    message: "expected key=value".into(),
                }),
            }
        }
        if issues.is_empty() {
            Ok(out)
        } else {
            Err(issues)
        }
    }

    /// Appends an assignment; later ones win.
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.push((None, key.to_string(), value.into()));
    }

    pub fn into_config(self) -> Result<ScenarioConfig, Vec<ConfigIssue>> {
        let mut cfg = ScenarioConfig::default();
        let mut issues = Vec::new();
        for (line, key, value) in &self.entries {
            if let Err(message) = apply(&mut cfg, key, value) {
                issues.push(ConfigIssue {
                    line: *line,
                    key: key.clone(),
                    message,
                });
            }
        }
        if !issues.is_empty() {
            return Err(issues);
        }
        let problems = cfg.validate();
        if problems.is_empty() {
            Ok(cfg)
        } else {
            Err(problems)
        }
    }
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig, Vec<ConfigIssue>> {
    Assignments::parse(text)?.into_config()
}

fn number(value: &str) -> Result<f64, String> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("'{value}' is not a finite number"))
}

fn count(value: &str) -> Result<usize, String> {
    value
        .parse::<usize>()
        .map_err(|_| format!("'{value}' is not a non-negative integer"))
}

fn sites(value: &str) -> Result<Sites, String> {
    if value == "continuum" {
        Ok(Sites::Continuum)
    } else {
        count(value)
            .map(Sites::Finite)
            .map_err(|e| format!("{e} (or 'continuum')"))
    }
}

fn apply(cfg: &mut ScenarioConfig, key: &str, value: &str) -> Result<(), String> {
    match key {
        "model" => {
            cfg.model = match value {
                "ohmic" => ModelKind::Ohmic,
                "array" => ModelKind::Array,
                other => return Err(format!("unknown model '{other}' (expected ohmic or array)")),
            }
        }
        "eta" => cfg.eta = number(value)?,
        "n" => cfg.n = number(value)?,
        "omega_c" => cfg.omega_c = number(value)?,
        "omega_ref" => cfg.omega_ref = Some(number(value)?),
        "g" => cfg.g = number(value)?,
        "xi" => cfg.xi = number(value)?,
        "omega_C" => cfg.omega_cavity = number(value)?,
        "N" => cfg.sites = sites(value)?,
        "omega0" => cfg.omega0 = number(value)?,
        "r" => cfg.r = number(value)?,
        "t_max" => cfg.t_max = number(value)?,
        "steps" => cfg.steps = count(value)?,
        "tol" => cfg.tol = number(value)?,
        "topology" => cfg.topology = value.parse()?,
        "outputs" => {
            cfg.outputs = if value == "all" {
                Vec::new()
            } else {
                let cols: Vec<String> = value.split(',').map(|c| c.trim().to_string()).collect();
                if let Some(bad) = cols.iter().find(|c| !SOLVE_COLUMNS[1..].contains(&c.as_str())) {
                    return Err(format!("unknown output column '{bad}'"));
                }
                cols
            }
        }
        "sweep" => {
            let (param, list) = value
                .split_once(':')
                .ok_or_else(|| "expected parameter:v1,v2,...".to_string())?;
            let param = param.trim();
            if !SWEEP_PARAMETERS.contains(&param) {
                return Err(format!("'{param}' cannot be swept"));
            }
            let values = list
                .split(',')
                .map(|v| number(v.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            if values.is_empty() {
                return Err("empty sweep list".into());
            }
            cfg.sweep = Some(Sweep {
                parameter: param.to_string(),
                values,
            });
        }
        _ => return Err("unknown key".into()),
    }
    Ok(())
}

fn issue(e: Error) -> ConfigIssue {
    let key = match &e {
        Error::InvalidParameter { name, .. } => name.to_string(),
        _ => "model".to_string(),
    };
    ConfigIssue {
        line: None,
        key,
        message: e.to_string(),
    }
}

impl ScenarioConfig {
    pub fn omega_ref(&self) -> f64 {
        self.omega_ref.unwrap_or(self.omega0)
    }

    pub fn spectral_model(&self) -> crate::Result<SpectralModel> {
        match self.model {
            ModelKind::Ohmic => SpectralModel::ohmic(self.eta, self.n, self.omega_c, self.omega_ref()),
            ModelKind::Array => SpectralModel::cavity_array(self.g, self.xi, self.omega_cavity, self.sites),
        }
    }

    pub fn mode(&self) -> crate::Result<SystemMode> {
        SystemMode::new(self.omega0)
    }

    pub fn grid(&self) -> crate::Result<TimeGrid> {
        TimeGrid::new(self.t_max, self.steps)
    }

    pub fn squeezing(&self) -> crate::Result<SqueezingParameter> {
        SqueezingParameter::new(self.r)
    }

    /// Every range problem, not only the first.
    pub fn validate(&self) -> Vec<ConfigIssue> {
        let mut issues = Vec::new();
        if let Err(e) = self.spectral_model() {
            issues.push(issue(e));
        }
        if let Err(e) = self.mode() {
            issues.push(issue(e));
        }
        if let Err(e) = self.squeezing() {
            issues.push(issue(e));
        }
        if let Err(e) = self.grid() {
            issues.push(issue(e));
        }
        if !(self.tol > 0.0) {
            issues.push(ConfigIssue {
                line: None,
                key: "tol".into(),
                message: "must be positive".into(),
            });
        }
        if let Some(sweep) = &self.sweep {
            for &v in &sweep.values {
                match self.with_parameter(&sweep.parameter, v) {
                    Ok(point) => {
                        let mut nested = point.validate();
                        for i in &mut nested {
                            i.message = format!("sweep value {v}: {}", i.message);
                        }
                        issues.extend(nested);
                    }
                    Err(message) => issues.push(ConfigIssue {
                        line: None,
                        key: "sweep".into(),
                        message,
                    }),
                }
            }
        }
        issues
    }

    /// Copy with one sweepable parameter replaced and the sweep removed.
    pub fn with_parameter(&self, parameter: &str, value: f64) -> Result<ScenarioConfig, String> {
        let mut cfg = self.clone();
        cfg.sweep = None;
        match parameter {
            "eta" => cfg.eta = value,
            "n" => cfg.n = value,
            "omega_c" => cfg.omega_c = value,
            "omega_ref" => cfg.omega_ref = Some(value),
            "g" => cfg.g = value,
            "xi" => cfg.xi = value,
            "omega_C" => cfg.omega_cavity = value,
            "N" => {
                if value.fract() != 0.0 || value < 1.0 {
                    return Err(format!("N must be a positive integer, got {value}"));
                }
                cfg.sites = Sites::Finite(value as usize);
            }
            "omega0" => cfg.omega0 = value,
            "r" => cfg.r = value,
            other => return Err(format!("'{other}' cannot be swept")),
        }
        Ok(cfg)
    }

    /// Columns of the solve CSV, `t` first.
    pub fn solve_columns(&self) -> Vec<&'static str> {
        SOLVE_COLUMNS
            .iter()
            .copied()
            .filter(|c| *c == "t" || self.outputs.is_empty() || self.outputs.iter().any(|o| o == c))
            .collect()
    }

    /// Canonical text form; parses back to an identical config.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        let f = |x: f64| format_float(x);
        put("model", self.model.as_str().into());
        put("eta", f(self.eta));
        put("n", f(self.n));
        put("omega_c", f(self.omega_c));
        if let Some(w) = self.omega_ref {
            put("omega_ref", f(w));
        }
        put("g", f(self.g));
        put("xi", f(self.xi));
        put("omega_C", f(self.omega_cavity));
        put(
            "N",
            match self.sites {
                Sites::Finite(n) => n.to_string(),
                Sites::Continuum => "continuum".into(),
            },
        );
        put("omega0", f(self.omega0));
        put("r", f(self.r));
        put("t_max", f(self.t_max));
        put("steps", self.steps.to_string());
        put("tol", f(self.tol));
        put(
            "topology",
            match self.topology {
                Topology::Ring => "ring".into(),
                Topology::Open => "open".into(),
            },
        );
        put(
            "outputs",
            if self.outputs.is_empty() {
                "all".into()
            } else {
                self.outputs.join(",")
            },
        );
        if let Some(sw) = &self.sweep {
            let vals: Vec<String> = sw.values.iter().map(|&v| f(v)).collect();
            put("sweep", format!("{}:{}", sw.parameter, vals.join(",")));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_ohmic_file() {
        let cfg = parse_config("eta=0.08\nn=3\nomega_c=1.0\nr=1.0\nt_max=50\nsteps=5000").unwrap();
        assert_eq!(cfg.model, ModelKind::Ohmic);
        assert_eq!(cfg.eta, 0.08);
        assert_eq!(cfg.steps, 5000);
        assert_eq!(cfg.omega_ref(), 1.0);
    }

    #[test]
    fn negative_eta_names_the_key() {
        let issues = parse_config("eta=-1").unwrap_err();
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].key, "eta");
    }

    #[test]
    fn all_errors_are_collected() {
        let issues = parse_config("eta=abc\nfoo=1\nsteps=-3\nmodel=lattice\njunk line").unwrap_err();
        // the malformed line aborts before key checks
        assert_eq!(issues.len(), 1);
        let issues = parse_config("eta=abc\nfoo=1\nsteps=-3\nmodel=lattice").unwrap_err();
        let keys: Vec<&str> = issues.iter().map(|i| i.key.as_str()).collect();
        assert_eq!(keys, ["eta", "foo", "steps", "model"]);
        assert!(issues[1].message.contains("unknown key"));
        let issues = parse_config("eta=-1\nomega0=0\nr=-0.5\nt_max=0\ntol=0").unwrap_err();
        let keys: Vec<&str> = issues.iter().map(|i| i.key.as_str()).collect();
        assert_eq!(keys, ["eta", "omega0", "r", "t_max", "tol"]);
    }

    #[test]
    fn comments_and_overrides() {
        let mut a = Assignments::parse("# header\neta=0.08 # weak\n\neta=0.5\n").unwrap();
        assert_eq!(a.clone().into_config().unwrap().eta, 0.5);
        a.set("eta", "1.0");
        assert_eq!(a.into_config().unwrap().eta, 1.0);
    }

    #[test]
    fn array_keys_and_sweep() {
        let cfg =
            parse_config("model=array\nomega_C=1\ng=0.02\nxi=0.05\nN=continuum\nomega0=0.8\nsweep=omega0:0.8,0.85")
                .unwrap();
        assert_eq!(cfg.sites, Sites::Continuum);
        let sw = cfg.sweep.as_ref().unwrap();
        assert_eq!(
            (sw.parameter.as_str(), sw.values.as_slice()),
            ("omega0", &[0.8, 0.85][..])
        );
        assert!(parse_config("model=array\nxi=0.6").is_err());
        assert!(parse_config("sweep=steps:1,2").is_err());
        assert!(parse_config("sweep=eta:0.1,-0.2").is_err());
    }

    #[test]
    fn output_selection() {
        let cfg = parse_config("outputs=discord,u_abs2").unwrap();
        assert_eq!(cfg.solve_columns(), ["t", "u_abs2", "discord"]);
        assert_eq!(ScenarioConfig::default().solve_columns().len(), 17);
        assert!(parse_config("outputs=discord,entropy").is_err());
    }

    #[test]
    fn serialize_round_trip() {
        let texts = [
            "eta=0.08\nn=3\nomega_c=1.0\nr=1.0\nt_max=50\nsteps=5000",
            "model=array\nN=200\nomega0=0.8\ntopology=open\noutputs=discord\nsweep=omega0:0.8,0.85,0.9,0.95",
            "omega_ref=0.3\ntol=1e-7\neta=0.1234567890123456789\nN=continuum",
        ];
        for text in texts {
            let cfg = parse_config(text).unwrap();
            let again = parse_config(&cfg.serialize()).unwrap();
            assert_eq!(cfg, again);
            assert_eq!(cfg.serialize(), again.serialize());
        }
    }
}
