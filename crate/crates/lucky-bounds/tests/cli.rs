//! Process-level tests of the `lucky-bounds` binary: subcommand
//! behavior, exit-code contract, and artifact determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lucky_bounds::sieve::{table_io, LuckyTable};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lucky-bounds"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &Path) -> Output {
    bin()
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

struct Fixture {
    dir: tempfile::TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn sieve(&self, limit: u64, name: &str) -> PathBuf {
        let out = self.path(name);
        let o = run(&["sieve", "--limit", &limit.to_string(), "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "sieve failed: {}", String::from_utf8_lossy(&o.stderr));
        out
    }
}

#[test]
fn sieve_writes_expected_table() {
    let fx = Fixture::new();
    let path = fx.sieve(10, "ten.lukt");
    let table = table_io::load_table(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(table.values(), &[2, 3, 7, 9, 13, 15, 21, 25, 31, 33]);
}

#[test]
fn sieve_zero_limit_is_usage_error() {
    let fx = Fixture::new();
    let out = fx.path("zero.lukt");
    let o = run(&["sieve", "--limit", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sieve_oracle_mode_is_capped() {
    let fx = Fixture::new();
    let out = fx.path("cap.lukt");
    let o = run(&[
        "sieve",
        "--limit",
        "1000001",
        "--out",
        out.to_str().unwrap(),
        "--oracle",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sieve_oracle_mode_reports_match() {
    let fx = Fixture::new();
    let out = fx.path("k.lukt");
    let o = run(&[
        "sieve",
        "--limit",
        "1000",
        "--out",
        out.to_str().unwrap(),
        "--oracle",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("oracle match"));
}

#[test]
fn sieve_classic_print_flag() {
    let fx = Fixture::new();
    let out = fx.path("c.lukt");
    let o = run(&[
        "sieve",
        "--limit",
        "5",
        "--out",
        out.to_str().unwrap(),
        "--print",
        "5",
        "--classic",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1, 3, 7, 9, 13"));
}

#[test]
fn verify_thm_lower_1_to_1269_passes() {
    let fx = Fixture::new();
    let table = fx.sieve(1269, "t.lukt");
    let o = run(&[
        "verify",
        "--table",
        table.to_str().unwrap(),
        "--statement",
        "thm_lower_1",
        "--from",
        "1",
        "--to",
        "1269",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let line = stdout(&o);
    let parsed: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(parsed["outcome"], "pass");
    assert_eq!(parsed["checked"], 1269);
}

#[test]
fn verify_false_table_exits_4_with_counterexample() {
    // a structurally valid table that is not the lucky sequence: after
    // the forced 2, 3, 7 prefix it continues with consecutive odds, so
    // its growth is linear and the n log n bound overtakes it
    let fx = Fixture::new();
    let mut values = vec![2u64, 3, 7];
    let mut v = 9;
    while values.len() < 60 {
        values.push(v);
        v += 2;
    }
    let table = LuckyTable::from_values_unchecked(values);
    let path = fx.path("false.lukt");
    table_io::save_table(&table, std::fs::File::create(&path).unwrap()).unwrap();

    let o = run(&[
        "verify",
        "--table",
        path.to_str().unwrap(),
        "--statement",
        "thm_lower_1",
        "--from",
        "1",
        "--to",
        "60",
    ]);
    assert_eq!(code(&o), 4);
    let parsed: serde_json::Value =
        serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(parsed["outcome"], "fail");
    assert!(parsed["first_violation"]["n"].as_u64().unwrap() > 1);
}

#[test]
fn verify_mutated_table_never_passes() {
    // one entry decremented: the parity invariant breaks and the run
    // refuses the table instead of verifying against corrupt data
    let fx = Fixture::new();
    let path = fx.sieve(100, "m.lukt");
    let mut table = table_io::load_table(std::fs::File::open(&path).unwrap()).unwrap();
    let mut values = table.values().to_vec();
    values[50] -= 1;
    table = LuckyTable::from_values_unchecked(values);
    table_io::save_table(&table, std::fs::File::create(&path).unwrap()).unwrap();

    let o = run(&[
        "verify",
        "--table",
        path.to_str().unwrap(),
        "--statement",
        "thm_lower_1",
        "--from",
        "1",
        "--to",
        "100",
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid"));
}

#[test]
fn verify_unknown_statement_is_usage_error() {
    let fx = Fixture::new();
    let table = fx.sieve(10, "t.lukt");
    let o = run(&[
        "verify",
        "--table",
        table.to_str().unwrap(),
        "--statement",
        "nonsense",
        "--from",
        "1",
        "--to",
        "10",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_indeterminate_exits_3() {
    // hand-written constants document whose c4 is wide enough that the
    // upper bound cannot be decided at any precision
    let fx = Fixture::new();
    let table = fx.sieve(100, "t.lukt");
    let doc = serde_json::json!({
        "stages": [{
            "stage": "third_half_round",
            "statements": [{
                "form": "thm_upper_2",
                "round": "third_half_round",
                "valid_from": 4,
                "constants": [
                    ["c2", "0", "0"],
                    ["c4", "0.2", "1.6"],
                ],
            }],
        }],
    });
    let cpath = fx.path("constants.json");
    std::fs::write(&cpath, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = run(&[
        "verify",
        "--table",
        table.to_str().unwrap(),
        "--statement",
        "thm_upper_2",
        "--constants",
        cpath.to_str().unwrap(),
        "--from",
        "4",
        "--to",
        "100",
    ]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    let parsed: serde_json::Value =
        serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(parsed["outcome"], "indeterminate");
}

#[test]
fn fixed_checks_pass() {
    let o = run(&["fixed-checks"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.matches("pass").count(), 5, "{text}");
}

#[test]
fn finite_range_reproduces_anchor() {
    let fx = Fixture::new();
    let table = fx.sieve(124_000, "big.lukt");
    let o = run(&[
        "finite-range",
        "--table",
        table.to_str().unwrap(),
        "--n0",
        "66",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("m1 = 1269"), "{text}");
    assert!(text.contains("m2 = 31807212"), "{text}");
}

#[test]
fn constants_missing_table_exits_1() {
    let fx = Fixture::new();
    let conf = fx.path("c.conf");
    std::fs::write(&conf, "table_path = /nonexistent/t.lukt\n").unwrap();
    let o = run(&["constants", "--config", conf.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("table not found"));
}

#[test]
fn constants_without_config_is_usage_error() {
    let o = bin()
        .args(["constants"])
        .env_remove("LUCKY_BOUNDS_CONFIG")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn pipeline_aborts_on_small_table_naming_stage() {
    // n1 = 10771 forces n2 beyond a 5000-entry table
    let fx = Fixture::new();
    let table = fx.sieve(5_000, "small.lukt");
    let conf = fx.path("c.conf");
    std::fs::write(
        &conf,
        format!(
            "table_path = {}\noutput_dir = {}\n",
            table.display(),
            fx.dir.path().display()
        ),
    )
    .unwrap();
    let o = run(&["constants", "--config", conf.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("pipeline aborted"), "{err}");
    assert!(err.contains("beyond the table"), "{err}");
}

#[test]
fn config_can_come_from_environment() {
    let fx = Fixture::new();
    let conf = fx.path("env.conf");
    std::fs::write(&conf, "table_path = /nonexistent/t.lukt\n").unwrap();
    // resolves the config via the env var, then fails on the table: the
    // env fallback demonstrably took effect
    let o = run_env(&["constants"], "LUCKY_BOUNDS_CONFIG", &conf);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("table not found"));
}

/// Identical config and table must yield byte-identical constants
/// documents apart from the single timestamp key.
#[test]
fn constants_json_is_deterministic_modulo_timestamp() {
    let fx = Fixture::new();
    let table = fx.sieve(1_200_000, "t12.lukt");
    let mut docs = Vec::new();
    for run_dir in ["a", "b"] {
        let out_dir = fx.path(run_dir);
        std::fs::create_dir_all(&out_dir).unwrap();
        let conf = fx.path(&format!("{run_dir}.conf"));
        std::fs::write(
            &conf,
            format!(
                "table_path = {}\noutput_dir = {}\n",
                table.display(),
                out_dir.display()
            ),
        )
        .unwrap();
        let o = run(&["constants", "--config", conf.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(out_dir.join("constants.json")).unwrap();
        docs.push(text);
    }
    let strip = |text: &str| -> String {
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        // the single timestamp key is the only tolerated difference;
        // output_dir differs because the test isolates the two runs
        v.as_object_mut().unwrap().remove("generated_unix_ms");
        v.as_object_mut()
            .unwrap()
            .get_mut("config")
            .unwrap()
            .as_object_mut()
            .unwrap()
            .remove("output_dir");
        serde_json::to_string_pretty(&v).unwrap()
    };
    assert_eq!(strip(&docs[0]), strip(&docs[1]));
}
