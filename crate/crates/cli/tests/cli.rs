use std::process::{Command, Output};

use qsz_core::{CycleReport, Spectrum, Strategy};

fn qsz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsz"))
        .args(args)
        .env_remove("QSZ_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_json_is_a_cycle_report() {
    let o = qsz(&[
        "compute",
        "--xi",
        "1.0",
        "--strategy",
        "isothermal",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: CycleReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.strategy, Strategy::Isothermal);
    assert_eq!(r.xi, 1.0);
    assert_eq!(r.steps.len(), 5);
    assert!((r.w_tot - 0.189_856_198_303_152_95).abs() < 1e-10);
}

#[test]
fn json_round_trip_is_exact() {
    let o = qsz(&["compute", "--xi", "0.37", "--strategy", "adiabatic"]);
    let text = stdout(&o);
    let r: CycleReport = serde_json::from_str(&text).unwrap();
    let direct = qsz_core::run_cycle(0.37, Strategy::Adiabatic, &Default::default()).unwrap();
    assert_eq!(r, direct);
    let again = serde_json::to_string_pretty(&r).unwrap();
    assert_eq!(again.trim_end(), text.trim_end());
}

#[test]
fn physical_triple_sets_xi() {
    let o = qsz(&[
        "compute",
        "--mass",
        "9.11e-31",
        "--length",
        "1e-9",
        "--temperature",
        "300",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: CycleReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(
        (r.xi / 14.544_512_089_305_29 - 1.0).abs() < 1e-12,
        "xi = {}",
        r.xi
    );
}

#[test]
fn sweep_csv_has_ordered_rows() {
    let o = qsz(&[
        "sweep",
        "--xi-min",
        "1e-6",
        "--xi-max",
        "1",
        "--points",
        "61",
        "--strategy",
        "adiabatic",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("xi,strategy,W_tot_kT"));
    assert_eq!(lines.len(), 62);
    let xis: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(xis[0], 1e-6);
    assert_eq!(xis[60], 1.0);
    assert!(xis.windows(2).all(|w| w[0] < w[1]));
    assert!(lines[1..]
        .iter()
        .all(|l| l.split(',').nth(1) == Some("adiabatic")));
}

#[test]
fn sweep_json_is_one_object() {
    let o = qsz(&[
        "sweep", "--xi-min", "0.01", "--xi-max", "1", "--points", "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["strategy"], "isothermal");
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "sweep", "--xi-min", "1e-4", "--xi-max", "10", "--points", "25", "--format", "csv",
    ];
    let a = qsz(&args);
    let b = qsz(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file_and_nothing_else() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.csv");
    let o = qsz(&[
        "compute",
        "--xi",
        "1",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("step,W_kT,Q_kT,dU_kT,dS_kB\ninsertion,"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn unwritable_destination_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.json");
    let o = qsz(&["compute", "--xi", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot write"));
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let cases: &[(&[&str], &str)] = &[
        (&["compute", "--xi", "0"], "--xi"),
        (&["compute", "--xi", "-1"], "--xi"),
        (&["compute", "--xi", "1", "--mass", "1e-30"], "--mass"),
        (
            &["compute", "--mass", "1e-30", "--length", "1e-9"],
            "--temperature",
        ),
        (&["compute"], "--xi"),
        (&["compute", "--xi", "1", "--bogus"], "--bogus"),
        (&["sweep", "--xi-min", "1", "--xi-max", "0.1"], "--xi-min"),
        (
            &["sweep", "--xi-min", "0.1", "--xi-max", "1", "--points", "0"],
            "--points",
        ),
        (
            &["sweep", "--xi-min", "0.1", "--xi-max", "1", "--points", "1"],
            "--points",
        ),
        (&["compute", "--xi", "1", "--tol", "0.5"], "--tol"),
        (
            &["compute", "--xi", "1", "--quad-steps", "1"],
            "--quad-steps",
        ),
        (&["spectrum", "--lambda", "-2"], "--lambda"),
        (
            &["compute", "--xi", "1", "--strategy", "sideways"],
            "--strategy",
        ),
    ];
    for (args, flag) in cases {
        let o = qsz(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn range_error_exits_1() {
    let o = qsz(&["compute", "--xi", "1e-14"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("range error"));
}

#[test]
fn tolerance_comes_from_environment() {
    let bad = Command::new(env!("CARGO_BIN_EXE_qsz"))
        .args(["compute", "--xi", "1"])
        .env("QSZ_TOL", "2")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_qsz"))
        .args(["compute", "--xi", "1"])
        .env("QSZ_TOL", "1e-9")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn spectrum_finite_and_infinite() {
    let o = qsz(&["spectrum", "--lambda", "10", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s: Spectrum = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s.levels.len(), 6);
    let e = s.energies();
    assert!(e.windows(2).all(|w| w[0] <= w[1]));
    // first shifted level sits between 1 and 4
    assert!(e[0] > 1.0 && e[0] < 4.0);

    let o = qsz(&[
        "spectrum", "--lambda", "inf", "--levels", "2", "--format", "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "n,e_reduced,parity\n1,4.0,merged\n2,4.0,merged\n3,16.0,merged\n4,16.0,merged\n"
    );
}

#[test]
fn limits_tables() {
    let o = qsz(&[
        "limits", "--xi-min", "1e-5", "--xi-max", "1e-2", "--points", "4", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t: qsz_core::LimitTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.rows.len(), 4);
    assert_eq!(t.rows[0].xi, 1e-2);
    assert!(t.deviations_decreasing && t.within_bound);

    let o = qsz(&[
        "limits",
        "--xi-min",
        "1e-3",
        "--xi-max",
        "1",
        "--points",
        "3",
        "--quantity",
        "delta",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "xi,value,lower,upper,valid");
    assert!(lines[3].starts_with("1.0,") && lines[3].ends_with(",,,false"));
}
