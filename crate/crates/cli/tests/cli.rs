use proptest::prelude::*;
use yitang_cli::commands::parse_period_field;
use yitang_cli::{dispatch, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use yitang_core::arith::LValueReport;
use yitang_core::{
    bifurcation_scan, detect_cycle, grid_sweep, iterate_orbit, lyapunov_curve, Axis, GridAxis,
    MapParams, Regime, SweepOptions,
};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut argv = vec!["yitang".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dispatch(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn records(csv: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    if s.is_empty() {
        f64::NAN
    } else {
        s.parse().unwrap()
    }
}

fn same(a: f64, b: f64) -> bool {
    a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan())
}

#[test]
fn logistic_lyap_example() {
    let r = run(&[
        "lyap", "--map", "logistic", "--r", "4.0", "--x0", "0.3", "--iters", "100000",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let (header, rows) = records(&r.stdout);
    assert_eq!(header, ["lambda", "n_used", "transient", "status"]);
    assert_eq!(rows.len(), 1);
    assert!((num(&rows[0][0]) - 2f64.ln()).abs() < 0.01);
}

#[test]
fn singular_start_names_the_domain_error() {
    let r = run(&[
        "lyap", "--map", "zhang1", "--alpha", "2", "--c", "100", "--x0", "1.0",
    ]);
    assert_eq!(r.code, EXIT_DOMAIN);
    assert!(r.stderr.contains("LogSingularity"), "{}", r.stderr);
    assert!(r.stdout.is_empty());
}

#[test]
fn psi_example_rows() {
    let r = run(&["psi", "--x", "10", "--q", "3"]);
    assert_eq!(r.code, EXIT_OK);
    let (header, rows) = records(&r.stdout);
    assert_eq!(header, ["a", "psi", "main_term", "error"]);
    let psi: Vec<f64> = rows.iter().map(|row| num(&row[1])).collect();
    assert_eq!(
        rows.iter().map(|row| row[0].as_str()).collect::<Vec<_>>(),
        ["0", "1", "2"]
    );
    assert!((psi[0] - 2.197225).abs() < 1e-6);
    assert!((psi[1] - 2.639057).abs() < 1e-6);
    assert!((psi[2] - 2.995732).abs() < 1e-6);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["lyap", "--bogus", "1"],
        &["lyap", "--r", "four"],
        &["psi"],
        &["psi", "--x", "10", "--q", "-3"],
        &["sweep", "--n-c", "1.5"],
        &["calibrate", "--targets", "0-1"],
        &["lyap", "--map", "henon"],
        &[],
    ] {
        let r = run(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn precondition_errors_exit_3() {
    for args in [
        &["lyap", "--iters", "10"][..],
        &["lyap", "--map", "zhang1", "--x0", "-1"],
        &["psi", "--x", "2e8", "--q", "3"],
        &["psi", "--x", "0.5"],
        &["lfunc", "--d", "9"],
        &["genus", "--limit", "2000000"],
        &["dg", "--g-max", "51"],
        &["envelope", "--x", "0.5"],
        &["sweep", "--n-c", "0", "--iters", "1000"],
        &["curve", "--step", "0"],
        &["cycles", "--iters", "100", "--max-period", "64"],
        &[
            "sweep",
            "--threads",
            "100000",
            "--n-c",
            "1",
            "--n-alpha",
            "1",
            "--iters",
            "1000",
        ],
    ] {
        let r = run(args);
        assert_eq!(r.code, EXIT_DOMAIN, "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty(), "{args:?}");
        assert!(r.stderr.starts_with("error:"), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn help_exits_0() {
    let r = run(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("sweep"));
}

#[test]
fn failure_writes_nothing_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    let r = run(&["lyap", "--x0", "1", "--out", p]);
    assert_eq!(r.code, EXIT_DOMAIN);
    assert!(!path.exists());
    let r = run(&["lyap", "--nope", "--out", p]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(!path.exists());

    let r = run(&["dg", "--g-max", "3", "--out", p]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("g,log_dg,g_log_g,holds\n"));
    assert_eq!(text.lines().count(), 4);
    assert!(!text.contains('\r'));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(
        &conf,
        "# logistic control\nmap = logistic\nr = 2.5\nx0 = 0.3\niters = 5000\n",
    )
    .unwrap();
    let c = conf.to_str().unwrap();

    let r = run(&["lyap", "--config", c]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let lambda = num(&records(&r.stdout).1[0][0]);
    assert!((lambda - 0.5f64.ln()).abs() < 1e-3);

    let r = run(&["lyap", "--config", c, "--r", "4"]);
    let lambda = num(&records(&r.stdout).1[0][0]);
    assert!((lambda - 2f64.ln()).abs() < 0.05);

    std::fs::write(&conf, "speed = 11\n").unwrap();
    assert_eq!(run(&["lyap", "--config", c]).code, EXIT_USAGE);
    assert_eq!(
        run(&["lyap", "--config", "/nonexistent/x.conf"]).code,
        EXIT_USAGE
    );
}

#[test]
fn curve_round_trips() {
    let r = run(&[
        "curve",
        "--map",
        "logistic",
        "--axis",
        "r",
        "--lo",
        "2.5",
        "--hi",
        "4",
        "--step",
        "0.1",
        "--x0",
        "0.3",
        "--iters",
        "2000",
        "--transient",
        "100",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let (header, rows) = records(&r.stdout);
    assert_eq!(header, ["param", "lambda", "status"]);
    let direct = lyapunov_curve(
        &MapParams::logistic(4.0),
        Axis::R,
        2.5,
        4.0,
        0.1,
        0.3,
        2000,
        100,
    )
    .unwrap();
    assert_eq!(rows.len(), direct.len());
    for (row, (p, est)) in rows.iter().zip(&direct) {
        assert!(same(num(&row[0]), *p));
        assert!(same(num(&row[1]), est.lambda));
        assert_eq!(row[2], est.status.label());
    }
}

#[test]
fn sweep_round_trips() {
    let r = run(&[
        "sweep",
        "--n-c",
        "4",
        "--n-alpha",
        "5",
        "--iters",
        "2000",
        "--threads",
        "2",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let (header, rows) = records(&r.stdout);
    assert_eq!(header, ["c", "alpha", "lambda", "regime"]);
    let grid = grid_sweep(
        &MapParams::default(),
        GridAxis::new(0.0005, 0.007, 4),
        GridAxis::new(0.0, 10.0, 5),
        0.4,
        2000,
        1000,
        0.01,
        SweepOptions::default(),
    )
    .unwrap();
    assert_eq!(rows.len(), 20);
    for (row, (c, alpha, cell)) in rows.iter().zip(grid.iter()) {
        assert!(same(num(&row[0]), c));
        assert!(same(num(&row[1]), alpha));
        match cell.lambda {
            Some(l) => assert!(same(num(&row[2]), l)),
            None => assert!(row[2].is_empty()),
        }
        assert_eq!(row[3].parse::<Regime>().unwrap(), cell.regime);
    }
    assert!(r.stderr.contains("regimes:"));
}

#[test]
fn bifurcate_and_cycles_round_trip() {
    let common = [
        "--map",
        "logistic",
        "--axis",
        "r",
        "--lo",
        "2.8",
        "--hi",
        "3.6",
        "--x0",
        "0.3",
        "--transient",
        "500",
    ];
    let mut args = vec!["bifurcate", "--n-params", "5", "--n-samples", "20"];
    args.extend(common);
    let r = run(&args);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let (_, rows) = records(&r.stdout);
    let data = bifurcation_scan(
        &MapParams::logistic(4.0),
        Axis::R,
        2.8,
        3.6,
        5,
        20,
        500,
        0.3,
    )
    .unwrap();
    assert_eq!(rows.len(), data.rows.len());
    for (row, (p, x)) in rows.iter().zip(&data.rows) {
        assert!(same(num(&row[0]), *p) && same(num(&row[1]), *x));
    }

    let mut args = vec![
        "cycles",
        "--n-params",
        "5",
        "--iters",
        "2000",
        "--max-period",
        "16",
    ];
    args.extend(common);
    let r = run(&args);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let (header, rows) = records(&r.stdout);
    assert_eq!(header, ["param", "period", "points"]);
    for row in &rows {
        let p = num(&row[0]);
        let orbit = iterate_orbit(&MapParams::logistic(p), 0.3, 2000, 500).unwrap();
        let info = detect_cycle(&orbit, 1e-6, 16).unwrap();
        assert_eq!(parse_period_field(&row[1]), Some(info.kind));
        let points: Vec<f64> = if row[2].is_empty() {
            Vec::new()
        } else {
            row[2].split(';').map(num).collect()
        };
        assert_eq!(points.len(), info.points.len());
        assert!(points.iter().zip(&info.points).all(|(a, b)| same(*a, *b)));
    }
    assert_eq!(rows[0][1], "1");
    assert_eq!(rows[2][1], "2");
}

#[test]
fn lfunc_round_trips() {
    let r = run(&["lfunc", "--d-min", "-40", "--d-max", "40"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let (header, rows) = records(&r.stdout);
    assert_eq!(
        header,
        [
            "d",
            "h",
            "w",
            "L_formula",
            "L_sum",
            "margin",
            "empirical_constant"
        ]
    );
    for row in &rows {
        let d: i64 = row[0].parse().unwrap();
        let rep = LValueReport::new(d, 1.0, 2022.0, None).unwrap();
        assert_eq!(row[1].parse::<u64>().unwrap(), rep.field.h);
        assert_eq!(row[2].parse::<u32>().unwrap(), rep.field.w);
        assert!(same(num(&row[3]), rep.l_class_number));
        assert!(same(num(&row[4]), rep.l_finite_sum));
        assert!(same(num(&row[5]), rep.zhang.margin));
        assert!(!row[6].is_empty());
    }
    assert!(rows.iter().any(|row| row[0] == "-23" && row[1] == "3"));
}

#[test]
fn genus_and_orbit_schemas() {
    let r = run(&["genus", "--limit", "200", "--flagged"]);
    assert_eq!(r.code, EXIT_OK);
    let (header, rows) = records(&r.stdout);
    assert_eq!(header, ["d", "h", "g", "one_class_per_genus"]);
    assert!(rows.iter().all(|row| row[3] == "true"));
    assert!(rows.iter().any(|row| row[0] == "-120"));

    let r = run(&["orbit", "--iters", "10", "--transient", "5"]);
    assert_eq!(r.code, EXIT_OK);
    let (header, rows) = records(&r.stdout);
    assert_eq!(header, ["n", "x"]);
    let orbit = iterate_orbit(&MapParams::default(), 0.4, 10, 5).unwrap();
    assert_eq!(rows.len(), orbit.samples.len());
    for (i, (row, x)) in rows.iter().zip(&orbit.samples).enumerate() {
        assert_eq!(row[0], (5 + i).to_string());
        assert!(same(num(&row[1]), *x));
    }
}

fn token() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::sample::select(vec![
            "lyap",
            "orbit",
            "psi",
            "dg",
            "envelope",
            "lfunc",
            "fixedpoints",
            "cycles",
            "--map",
            "zhang1",
            "zhang2",
            "logistic",
            "--r",
            "--alpha",
            "--c",
            "--x0",
            "--iters",
            "--transient",
            "--x",
            "--q",
            "--a",
            "--d",
            "--g-max",
            "--regime",
            "page",
            "--lo",
            "--hi",
            "--brackets",
            "--log-power",
            "signed",
            "--tol",
            "--max-period",
            "--beta",
            "--eps-log",
            "0",
            "1",
            "-1",
            "2.5",
            "1000",
            "1e400",
            "nan",
            "inf",
            "-inf",
            "1e-320",
            "3",
            "10",
            "--",
            "=",
            "--out",
        ])
        .prop_map(String::from),
        "[ -~]{0,6}",
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn arbitrary_argv_only_exits_0_2_3(tokens in prop::collection::vec(token(), 0..8)) {
        let args: Vec<&str> = tokens
            .iter()
            .map(String::as_str)
            .filter(|t| *t != "--out")
            .collect();
        let r = run(&args);
        prop_assert!([EXIT_OK, EXIT_USAGE, EXIT_DOMAIN].contains(&r.code));
        if r.code != EXIT_OK {
            prop_assert!(r.stdout.is_empty() || r.stdout.contains("Usage"));
        }
    }

    #[test]
    fn logistic_lyap_round_trips(r in 0.5f64..4.0, x0 in 0.05f64..0.95) {
        let rs = r.to_string();
        let xs = x0.to_string();
        let out = run(&["lyap", "--map", "logistic", "--r", &rs, "--x0", &xs, "--iters", "1000", "--transient", "10"]);
        prop_assert_eq!(out.code, EXIT_OK);
        let est = yitang_core::lyapunov_exponent(&MapParams::logistic(r), x0, 1000, 10).unwrap();
        let (_, rows) = records(&out.stdout);
        prop_assert!(same(num(&rows[0][0]), est.lambda));
        prop_assert_eq!(rows[0][1].parse::<usize>().unwrap(), est.n_used);
    }
}
