use std::process::{Command, Output};

fn barnes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_barnes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = barnes(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn lookup<'a>(v: &'a serde_json::Value, label: &str) -> &'a str {
    v["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["label"] == label)
        .unwrap_or_else(|| panic!("no row {label}"))["value"]
        .as_str()
        .unwrap()
}

fn check_schema(v: &serde_json::Value, command: &str) {
    let obj = v.as_object().unwrap();
    for key in ["command", "parameters", "results", "precision_bits", "format_version"] {
        assert!(obj.contains_key(key), "missing {key}");
    }
    assert_eq!(v["command"], command);
    assert_eq!(v["format_version"], 1);
    assert!(v["precision_bits"].is_u64());
    assert!(v["parameters"].is_object());
    for row in v["results"].as_array().unwrap() {
        assert!(row["label"].is_string() && row["value"].is_string());
    }
}

#[test]
fn coeff_examples() {
    let v = json(&["coeff", "--family", "bn", "--n", "2", "--r", "1"]);
    check_schema(&v, "coeff");
    assert_eq!(lookup(&v, "exact"), "1447/7257600");
    let v = json(&["coeff", "--family", "bn", "--n", "0", "--r", "1"]);
    assert_eq!(lookup(&v, "exact"), "1");
    let v = json(&["coeff", "--family", "gamma", "--n", "1"]);
    assert_eq!(lookup(&v, "exact"), "1/12");
    let v = json(&["coeff", "--family", "bn-ell", "--n", "4", "--ell", "0", "--r", "1"]);
    assert_eq!(lookup(&v, "exact"), "1447/7257600");
    let v = json(&["coeff", "--family", "bn-theta-kappa", "--n", "1", "--theta", "2", "--kappa", "0", "--r", "1"]);
    assert_eq!(lookup(&v, "exact"), "-1/360");
}

#[test]
fn digits_flag_controls_significant_figures() {
    let v = json(&["coeff", "--family", "c", "--n", "1", "--digits", "7"]);
    assert_eq!(lookup(&v, "decimal"), "-1.388889e-3");
}

#[test]
fn tables_match_published_rows() {
    let t1 = json(&["table1"]);
    check_schema(&t1, "table1");
    assert_eq!(lookup(&t1, "b25 exact"), "-3.80007230719156835910256254456e21");
    assert_eq!(lookup(&t1, "b100 m=15"), "4.61908374472303072283311502201e211");
    let err: f64 = lookup(&t1, "b25 m=10 rel_error").parse().unwrap();
    assert!((err / 1.6932966426732e-16 - 1.0).abs() < 1.0);

    let t2 = json(&["table2"]);
    check_schema(&t2, "table2");
    assert_eq!(lookup(&t2, "b25 exact"), lookup(&t1, "b25 exact"));
    let err: f64 = lookup(&t2, "b25 k_max=0 rel_error").parse().unwrap();
    assert!((err - 1.758e-3).abs() < 1e-6);
    let err: f64 = lookup(&t2, "b25 k_max=5 rel_error").parse().unwrap();
    assert!(err > 0.71e-10 && err < 2.84e-10);
    assert_eq!(t2["footnotes"].as_array().unwrap().len(), 1);
    assert!(t1.get("footnotes").is_none());
}

#[test]
fn output_is_deterministic_and_cache_neutral() {
    for fmt in ["json", "csv", "text"] {
        let a = barnes(&["table1", "--format", fmt]).stdout;
        let b = barnes(&["table1", "--format", fmt]).stdout;
        assert_eq!(a, b);
    }
    let plain = json(&["table2"]);
    let cached = json(&["table2", "--cache"]);
    assert_eq!(plain["results"], cached["results"]);
}

#[test]
fn csv_has_fixed_header() {
    for args in [
        vec!["coeff", "--family", "gamma", "--n", "3"],
        vec!["table1"],
        vec!["convergence", "--n-min", "1", "--n-max", "3"],
        vec!["bounds-check", "--n-max", "2"],
    ] {
        let mut a = args.clone();
        a.extend(["--format", "csv"]);
        let out = stdout(&a);
        assert_eq!(out.lines().next(), Some("label,value"), "{args:?}");
    }
}

#[test]
fn eval_g_examples() {
    let v = json(&["eval-g", "--z", "1"]);
    check_schema(&v, "eval-g");
    assert_eq!(lookup(&v, "log G(z+1)"), "0.00000000000000000000000000000e0");
    let v = json(&["eval-g", "--z", "3"]);
    assert_eq!(lookup(&v, "log G(z+1)"), "6.93147180559945309417232121458e-1");
    let v = json(&["eval-g", "--z", "8", "--oracle", "--terms", "4096", "--precision", "128", "--digits", "20"]);
    let gap: f64 = lookup(&v, "gap").parse().unwrap();
    let tail: f64 = lookup(&v, "product tail estimate").parse().unwrap();
    assert!((gap / tail - 1.0).abs() < 0.05, "gap {gap}, tail {tail}");
}

#[test]
fn convergence_rows() {
    let v = json(&["convergence", "--n-min", "1", "--n-max", "12"]);
    check_schema(&v, "convergence");
    let ratio: f64 = lookup(&v, "n=1").parse().unwrap();
    assert!((ratio - 1.0823).abs() < 1e-4);
    let devs: Vec<f64> = (5..=12)
        .map(|n| (lookup(&v, &format!("n={n}")).parse::<f64>().unwrap() - 1.0).abs())
        .collect();
    assert!(devs.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn bounds_check_reports_every_n() {
    let v = json(&["bounds-check", "--n-min", "0", "--n-max", "100"]);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 202);
    assert!(rows.iter().filter(|r| r["label"].as_str().unwrap().ends_with("holds")).all(|r| r["value"] == "true"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = barnes(&["coeff", "--family", "gamma", "--n", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(lookup(&v, "exact"), "1/288");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| barnes(args).status.code().unwrap();
    assert_eq!(code(&["coeff", "--family", "gamma", "--n", "1"]), 0);
    assert_eq!(code(&["coeff", "--family", "gamma", "--n", "1", "--r", "2"]), 2);
    assert_eq!(code(&["coeff", "--family", "bn", "--n", "1"]), 2);
    assert_eq!(code(&["coeff", "--family", "bn", "--n", "1", "--r", "0"]), 2);
    assert_eq!(code(&["coeff", "--family", "bn", "--n", "1", "--r", "one"]), 2);
    assert_eq!(code(&["coeff", "--family", "nope", "--n", "1"]), 2);
    assert_eq!(code(&["convergence", "--n-min", "5", "--n-max", "5"]), 2);
    assert_eq!(code(&["convergence", "--n-max", "201"]), 2);
    assert_eq!(code(&["eval-g", "--z", "0"]), 2);
    assert_eq!(code(&["coeff", "--family", "gamma", "--n", "1", "--digits", "0"]), 2);
    assert_eq!(code(&["table1", "--precision", "256"]), 3);
    assert_eq!(code(&["table2", "--precision", "383"]), 3);
    assert_eq!(code(&["eval-g", "--z", "2", "--precision", "32"]), 3);
    assert_eq!(code(&["eval-g", "--z", "2", "--precision", "128", "--digits", "60"]), 3);
}
