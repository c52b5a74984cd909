use finsler_core::interface::report::records_from_csv;
use finsler_core::interface::run::{form_from_exprs, profile_from_expr};
use finsler_core::interface::{exit_code, parse_expression, run, Command, Expr, RunConfig};
use finsler_core::sampling::default_rs_grid;
use finsler_core::sphsym::SphSymProfile;
use finsler_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BERWALD_PROFILE: &str = "(sqrt(1-r^2+s^2)+s)^2/((1-r^2)^2*sqrt(1-r^2+s^2))";

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..4) {
            0 => "r".into(),
            1 => "s".into(),
            2 => "pi".into(),
            _ => format!("{}", rng.random_range(0.0..10.0f64)),
        };
    }
    match rng.random_range(0..4) {
        0 => {
            let op = ["+", "-", "*", "/", "^"][rng.random_range(0..5)];
            format!(
                "{} {op} {}",
                random_expr(rng, depth - 1),
                random_expr(rng, depth - 1)
            )
        }
        1 => format!("-{}", random_expr(rng, depth - 1)),
        2 => {
            let f = ["sqrt", "exp", "log", "sin", "cos", "abs"][rng.random_range(0..6)];
            format!("{f}({})", random_expr(rng, depth - 1))
        }
        _ => format!("({})", random_expr(rng, depth - 1)),
    }
}

#[test]
fn parser_fuzz_round_trips_and_never_panics() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut finite, mut non_finite) = (0, 0);
    for _ in 0..10_000 {
        let src = random_expr(&mut rng, 5);
        let e = parse_expression(&src).unwrap_or_else(|err| panic!("{src}: {err}"));
        let printed = e.to_string();
        assert_eq!(parse_expression(&printed).unwrap(), e, "{src} -> {printed}");
        let r = rng.random_range(-2.0..2.0);
        let s = rng.random_range(-2.0..2.0);
        match e.eval_f64(&["r", "s"], &[r, s]) {
            Ok(v) => {
                assert!(v.is_finite());
                finite += 1;
            }
            Err(Error::NonFiniteValue { .. }) => non_finite += 1,
            Err(other) => panic!("{src}: {other}"),
        }
    }
    assert!(
        finite > 1000 && non_finite > 10,
        "{finite} finite, {non_finite} non-finite"
    );
}

#[test]
fn berwald_profile_expression_matches_builtin() {
    let e = parse_expression(BERWALD_PROFILE).unwrap();
    assert_eq!(e.eval_f64(&["r", "s"], &[0.0, 0.0]).unwrap(), 1.0);
    let parsed = profile_from_expr(BERWALD_PROFILE).unwrap();
    let builtin = SphSymProfile::berwald_classic();
    for (r, s) in default_rs_grid() {
        let (a, b) = (parsed.value(r, s), builtin.value(r, s));
        assert!((a - b).abs() <= 1e-14 * b.abs(), "({r}, {s}): {a} vs {b}");
    }
}

#[test]
fn power_and_product_agree() {
    let p = parse_expression("r^2").unwrap();
    let q = parse_expression("r*r").unwrap();
    for (r, s) in default_rs_grid() {
        let a = p.eval_f64(&["r", "s"], &[r, s]).unwrap();
        let b = q.eval_f64(&["r", "s"], &[r, s]).unwrap();
        assert!((a - b).abs() <= 1e-15);
    }
    assert!(matches!(
        parse_expression("sqrt("),
        Err(Error::ParseError { position: 5, .. })
    ));
    assert!(matches!(
        parse_expression("r^^2"),
        Err(Error::ParseError { position: 2, .. })
    ));
    let _: Expr = parse_expression("pi*r").unwrap();
}

fn cfg(metric: &str) -> RunConfig {
    RunConfig {
        metric: Some(metric.into()),
        ..RunConfig::default()
    }
}

#[test]
fn check_parallel_example1() {
    let mut c = cfg("example1");
    c.a = Some(vec![0.5, 0.1, 0.0]);
    c.seed = 7;
    let rep = run(Command::CheckParallel, &c).unwrap();
    assert!(rep.passed(), "{:?}", rep.records);
    assert!(rep.records.iter().all(|r| r.max_residual <= 1e-7));
}

#[test]
fn check_parallel_with_expression_forms() {
    let mut c = cfg("euclidean");
    c.check_parallel.form = Some(vec!["1".into(), "0.5".into(), "0".into()]);
    assert!(run(Command::CheckParallel, &c).unwrap().passed());
    c.check_parallel.form = Some(vec!["x2".into(), "0".into(), "0".into()]);
    assert!(!run(Command::CheckParallel, &c).unwrap().passed());
    assert!(form_from_exprs(&["x1".into()], 3).is_err());
    assert!(matches!(
        form_from_exprs(&["x4".into(), "0".into(), "0".into()], 3),
        Err(Error::ParseError { position: 0, .. })
    ));
}

#[test]
fn scan_general_berwald() {
    let mut c = cfg("general_berwald");
    c.a = Some(vec![0.1, 0.05, 0.0]);
    let rep = run(Command::Scan, &c).unwrap();
    assert!(rep.passed(), "{:?}", rep.records);
    let points = rep.details["points"].as_array().unwrap();
    assert_eq!(points.len(), 5);
    assert!(points.iter().all(|p| p["kernel_dim"] == 0));
    assert_eq!(rep.verdicts["branch"], "EveryPoint");
}

#[test]
fn scalar_curvature_klein() {
    let rep = run(Command::ScalarCurvature, &cfg("klein")).unwrap();
    assert!(rep.passed());
    let kmin: f64 = rep.verdicts["k_min"].parse().unwrap();
    let kmax: f64 = rep.verdicts["k_max"].parse().unwrap();
    assert!((kmin + 1.0).abs() <= 1e-6 && (kmax + 1.0).abs() <= 1e-6);
}

#[test]
fn sphsym_command_with_parallel_candidate() {
    let mut c = RunConfig {
        phi: Some(BERWALD_PROFILE.into()),
        ..RunConfig::default()
    };
    let rep = run(Command::Sphsym, &c).unwrap();
    assert!(rep.passed(), "{:?}", rep.records);
    assert_eq!(rep.verdicts["profile_branch"], "NonRiemannian");
    c.phi = None;
    c.metric = Some("euclidean".into());
    c.sphsym.p = Some("r*s/10".into());
    let rep = run(Command::Sphsym, &c).unwrap();
    let get = |n: &str| rep.records.iter().find(|r| r.name == n).unwrap().clone();
    assert!(
        get("SSS1").pass && get("SSS2").pass && get("delta_i beta").pass,
        "{:?}",
        rep.records
    );
}

#[test]
fn tensors_and_invariants_commands() {
    let mut c = cfg("klein");
    c.samples = 10;
    let rep = run(Command::Tensors, &c).unwrap();
    assert!(rep.passed(), "{:?}", rep.records);
    assert_eq!(rep.details.as_array().unwrap().len(), 10);
    c.metric = Some("berwald_classic".into());
    let rep = run(Command::Invariants, &c).unwrap();
    assert!(rep.passed(), "{:?}", rep.records);
    c.scheme = finsler_core::calculus::Scheme::Fd;
    c.metric = Some("euclidean".into());
    let rep = run(Command::Tensors, &c).unwrap();
    assert!(rep.passed(), "{:?}", rep.records);
}

#[test]
fn reports_are_deterministic() {
    let mut c = cfg("general_berwald");
    c.a = Some(vec![0.1, 0.05, 0.0]);
    c.samples = 20;
    for command in [Command::Invariants, Command::Scan, Command::Tensors] {
        let a = run(command, &c).unwrap().canonical_json().unwrap();
        let b = run(command, &c).unwrap().canonical_json().unwrap();
        assert_eq!(a, b);
    }
    let mut threaded = c.clone();
    threaded.threads = 4;
    let a = run(Command::Invariants, &c).unwrap();
    let b = run(Command::Invariants, &threaded).unwrap();
    assert_eq!(a.records, b.records);
}

#[test]
fn csv_and_json_carry_the_same_records() {
    let mut c = cfg("example1");
    c.a = Some(vec![0.5, 0.1, 0.0]);
    let rep = run(Command::Invariants, &c).unwrap();
    let dir = tempfile::tempdir().unwrap();
    rep.write_files(dir.path()).unwrap();
    let json = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let parsed = finsler_core::interface::Report::from_json(&json).unwrap();
    assert_eq!(parsed.schema, 1);
    assert_eq!(parsed.records, records_from_csv(&csv).unwrap());
    assert_eq!(parsed.records, rep.records);
}

#[test]
fn config_errors_map_to_exit_code_2() {
    let bad = [
        cfg("poincare"),
        RunConfig {
            radius: Some(1.5),
            ..cfg("klein")
        },
        RunConfig {
            samples: 3,
            ..cfg("klein")
        },
        RunConfig {
            phi: Some("sqrt(".into()),
            ..RunConfig::default()
        },
        RunConfig::default(),
    ];
    for c in bad {
        let err = run(Command::ScalarCurvature, &c).unwrap_err();
        assert_eq!(exit_code(&err), 2, "{err}");
    }
    assert_eq!(
        exit_code(&Error::NonFiniteValue {
            context: "x".into()
        }),
        3
    );
}
