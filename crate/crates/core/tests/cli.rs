use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frozen-discord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_writes_header_and_rows() {
    let out = run(&["solve", "--eta", "0.5", "--tmax", "5", "--steps", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,u_re,u_im,u_abs2,gamma,omega_shift,I1,I2,I3,I4,nu_minus,nu_plus,discord,mutual_info,classical,log_neg,branch"
    );
    assert_eq!(lines.count(), 51);
}

#[test]
fn config_file_and_flag_override() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# weak coupling\neta=0.08\nt_max=4\nsteps=40\noutputs=u_abs2\n").unwrap();
    let path = cfg.to_str().unwrap();
    let from_file = stdout(&run(&["solve", "--config", path]));
    let overridden = stdout(&run(&["solve", "--config", path, "--eta", "1.0"]));
    let direct = stdout(&run(&["solve", "--eta", "1.0", "--tmax", "4", "--steps", "40"]));
    assert_ne!(from_file, overridden);
    // same physics, different column selection
    let pick = |csv: &str, col: usize| {
        csv.lines()
            .skip(1)
            .map(|l| l.split(',').nth(col).unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(pick(&overridden, 1), pick(&direct, 3));
}

#[test]
fn output_file_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(&[
            "solve",
            "--eta",
            "1.0",
            "--tmax",
            "10",
            "--steps",
            "200",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn configuration_errors_exit_two_and_list_every_problem() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "eta=abc\nbogus=1\nsteps=-5\n").unwrap();
    let out = run(&["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    for key in ["'eta'", "'bogus'", "'steps'"] {
        assert!(err.contains(key), "{err}");
    }
    assert_eq!(run(&["solve", "--eta", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--model", "lattice"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "--figure", "fig3"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--model", "ohmic"]).status.code(), Some(2));
}

#[test]
fn non_convergence_exits_three() {
    let out = run(&[
        "solve", "--eta", "1.0", "--tmax", "50", "--steps", "10", "--tol", "1e-12",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("did not converge"));
}

#[test]
fn sweep_failures_keep_partial_results() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    fs::write(&cfg, "t_max=20\nsteps=20\ntol=1e-13\nsweep=eta:0,1.0\n").unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().next().unwrap(), "sweep_value,t,discord,u_abs2,log_neg");
    assert_eq!(rows.lines().count(), 22);
    let manifest = fs::read_to_string(dir.path().join("sweep.csv.failures.csv")).unwrap();
    assert!(manifest.lines().nth(1).unwrap().starts_with("1.00000000000e0,3,"));
}

#[test]
fn modes_for_array_and_ohmic() {
    let array = stdout(&run(&[
        "modes", "--model", "array", "--omega0", "0.8", "--sites", "200",
    ]));
    assert!(array.contains("exists,true"));
    assert!(array.contains("# discrete_bound_modes"));
    let weak = stdout(&run(&["modes", "--eta", "0.08"]));
    assert!(weak.contains("exists,false") && weak.contains("margin,8.40000000000e-1"));
}

#[test]
fn oracle_agrees_with_exact_diagonalization() {
    let out = run(&[
        "oracle", "--model", "array", "--omega0", "0.8", "--sites", "200", "--tmax", "100", "--steps", "1000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let worst = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(worst < 1e-3);
}

#[test]
fn reproduce_fig4a_writes_one_report_per_frequency() {
    let dir = TempDir::new().unwrap();
    let out = run(&["reproduce", "--figure", "fig4a", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "fig4a_omega0_0.8.csv",
            "fig4a_omega0_0.85.csv",
            "fig4a_omega0_0.9.csv",
            "fig4a_omega0_0.95.csv"
        ]
    );
    for name in names {
        let text = fs::read_to_string(dir.path().join(name)).unwrap();
        assert!(text.starts_with("# summary\nkey,value\nmodel,array\n"));
    }
}
