use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_f1forge"));
    c.env_remove("F1FORGE_SEED");
    c
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("one JSON record per line")).collect()
}

fn one(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let mut r = records(&o);
    assert_eq!(r.len(), 1);
    r.remove(0)
}

#[test]
fn dlog() {
    assert_eq!(one(&["dlog", "12"])["d"], "12*d(2) + 4*d(3)");
    let o = run(&["--human", "dlog", "12"]);
    assert_eq!(stdout(&o), "12*d(2) + 4*d(3)\n");
    assert_eq!(one(&["dlog", "1"])["d"], "0");
}

#[test]
fn zeta_real_modes() {
    let r = one(&["zeta", "real", "--s", "3", "--n", "100", "--mode", "closed"]);
    assert!((r["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(r["place"], "real");
    let q = one(&["zeta", "real", "--s", "2", "--n", "10", "--mode", "quad"]);
    let c = one(&["zeta", "real", "--s", "2", "--n", "10"]);
    assert!((q["value"].as_f64().unwrap() - c["value"].as_f64().unwrap()).abs() < 1e-9);
    let m = one(&["zeta", "real", "--s", "2", "--n", "10", "--mode", "mc", "--samples", "20000"]);
    assert!(m["std_err"].as_f64().unwrap() > 0.0);
}

#[test]
fn zeta_padic_modes() {
    let r = one(&["zeta", "padic", "--p", "2", "--s", "2", "--n", "2", "--mode", "exact"]);
    assert_eq!(r["exact"], "7/9");
    assert_eq!(r["limit_exact"], "2/3");
    let m = one(&["zeta", "padic", "--p", "3", "--s", "2", "--n", "3", "--mode", "mc", "--samples", "20000"]);
    let e = one(&["zeta", "padic", "--p", "3", "--s", "2", "--n", "3"]);
    let dev = (m["value"].as_f64().unwrap() - e["value"].as_f64().unwrap()).abs();
    assert!(dev <= 5.0 * m["std_err"].as_f64().unwrap());
    let human = stdout(&run(&["--human", "zeta", "padic", "--p", "2", "--s", "2", "--n", "2"]));
    assert!(human.starts_with("p=2 s=2 n=2 mode=Exact: value 0.777777777777778"), "{human}");
}

#[test]
fn seeds_are_reproducible() {
    let args = ["zeta", "real", "--s", "2", "--n", "5", "--mode", "mc", "--samples", "5000"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = bin().args(args).env("F1FORGE_SEED", "99").output().unwrap();
    let d = run(&[&["--seed", "99"][..], &args[..]].concat());
    assert_eq!(c.stdout, d.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn term_commands() {
    let r = one(&["term", "reduce", "--input", &data("two_minus_two.json")]);
    assert_eq!(r["normal_form"]["zero"], true);
    assert_eq!(r["eval"], serde_json::json!([[0]]));
    assert_eq!(one(&["term", "eval", &data("three.json")])["eval"], serde_json::json!([[3]]));
    assert_eq!(stdout(&run(&["--human", "term", "eval", &data("three.json")])), "3\n");

    let eq = run(&["term", "eq", &data("delta1.json"), &data("delta2.json"), "--total-comm"]);
    assert_eq!(eq.status.code(), Some(0));
    let rec = &records(&eq)[0];
    assert_eq!(rec["verdict"], "equal");
    assert!(rec["trace"].as_array().unwrap().len() <= 10);
    let base = run(&["term", "eq", &data("delta1.json"), &data("delta2.json"), "--budget", "500"]);
    assert_eq!(base.status.code(), Some(1));
    assert_eq!(records(&base)[0]["verdict"], "not-identified");
}

#[test]
fn durov() {
    let o = run(&["term", "durov"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    assert_eq!(r["identified"], true);
    let rules: Vec<&str> = r["steps"].as_array().unwrap().iter().map(|s| s["rule"].as_str().unwrap()).collect();
    assert!(rules.contains(&"total-commute") && rules.contains(&"restrict") && rules.contains(&"unit-elide"));
    let human = stdout(&run(&["--human", "term", "durov"]));
    assert!(human.starts_with("δ1 = δ2\n"));
    let base = run(&["term", "durov", "--base", "--budget", "300"]);
    assert_eq!(base.status.code(), Some(1));
    assert_eq!(records(&base)[0]["identified"], false);
}

#[test]
fn omega_present() {
    let r = one(&["omega", "present", "--bound", "12", "--with-homogeneity"]);
    assert_eq!(r["well_defined"], true);
    assert_eq!(r["bound"], 12);
    let h = stdout(&run(&["--human", "omega", "present", "--bound", "2"]));
    assert!(h.starts_with("B=2 generators="), "{h}");
}

#[test]
fn axioms() {
    let o = run(&["axioms", "check", "--ring", "G:nat", "--trials", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let laws = records(&o);
    assert_eq!(laws.len(), 7);
    assert!(laws.iter().all(|l| l["passed"] == true));
    let rig = run(&["--human", "axioms", "check", "--ring", "trop-max", "--trials", "50"]);
    assert_eq!(rig.status.code(), Some(0));
    assert!(stdout(&rig).lines().all(|l| l.starts_with("PASS trop-max")));
    assert_eq!(run(&["axioms", "check", "--ring", "G:quaternions"]).status.code(), Some(2));
}

#[test]
fn spec_enumerate() {
    let r = one(&["spec", "enumerate", "--ring", "G:zmod:6"]);
    let primes: Vec<&Value> = r["primes"].as_array().unwrap().iter().map(|p| &p["ideal"]["elements"]).collect();
    assert_eq!(primes, [&serde_json::json!(["0", "3"]), &serde_json::json!(["0", "2", "4"])]);
    let f = one(&["spec", "enumerate", "--ring", "F{C2}"]);
    assert_eq!(f["primes"].as_array().unwrap().len(), 1);
    let swap = one(&["spec", "enumerate", "--ring", "prod(G:zmod:2,G:zmod:2)", "--involution", "swap"]);
    assert_eq!(swap["symmetric_primes"].as_array().unwrap().len(), 1);
    let f4 = one(&["spec", "enumerate", "--ring", "G:table:F4"]);
    assert_eq!(f4["primes"].as_array().unwrap().len(), 1);
    let dual = one(&["spec", "enumerate", "--ring", "G:table:F2[x]/(x^2)"]);
    assert_eq!(dual["primes"][0]["ideal"]["elements"].as_array().unwrap().len(), 2);
    let human = stdout(&run(&["--human", "spec", "enumerate", "--ring", "F"]));
    assert!(human.contains("prime 0: {0}"), "{human}");
    assert_eq!(run(&["spec", "enumerate", "--ring", "G:int"]).status.code(), Some(2));
    assert_eq!(run(&["spec", "enumerate", "--ring", "G:zmod:6", "--involution", "swap"]).status.code(), Some(2));
}

#[test]
fn suites() {
    let o = run(&["suite", "durov"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    assert_eq!(r["passed"], true);
    assert!(r.get("seconds").is_none());
    let again = run(&["suite", "durov"]);
    assert_eq!(o.stdout, again.stdout);
    let timed = one(&["suite", "6", "--timings"]);
    assert!(timed["seconds"].as_f64().is_some());
    assert_eq!(run(&["suite", "nonexistent"]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    for args in [
        &["zeta", "padic", "--p", "4", "--s", "2", "--n", "3"][..],
        &["zeta", "real", "--s", "2", "--n", "3", "--mode", "guess"],
        &["zeta", "real", "--s", "2", "--n", "3", "--bogus"],
        &["frobnicate"],
        &["term", "eval", "/nonexistent/term.json"],
        &["dlog", "twelve"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
    let help = run(&["zeta", "real", "--bogus"]);
    assert!(String::from_utf8_lossy(&help.stderr).contains("--bogus"));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("f1forge-out-{}.jsonl", std::process::id()));
    let o = run(&["dlog", "30", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(serde_json::from_str::<Value>(text.trim()).unwrap()["d"], "15*d(2) + 10*d(3) + 6*d(5)");
}
