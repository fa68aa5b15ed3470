use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(name: &str, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yul-gamecheck"))
        .arg(fixture(&format!("{name}.yul")))
        .arg(fixture(&format!("{name}.json")))
        .args(extra)
        .env_remove("YULGC_SEED")
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
fn exit_codes() {
    assert_eq!(run("bank", &[]).status.code(), Some(1));
    assert_eq!(run("bank_patched", &[]).status.code(), Some(0));
    assert_eq!(
        run("bank_patched", &["--deadline", "0"]).status.code(),
        Some(3)
    );
}

#[test]
fn exhausted_summary_counts_traces() {
    let o = run("two_functions", &[]);
    assert_eq!(
        stdout(&o),
        "No violation found within bounds: explored 1890 traces.\n"
    );
}

#[test]
fn violation_trace_layout() {
    let o = run("bank", &[]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "[new opponent address: <0x4f505f414444524553535f30>]"
    );
    assert!(lines[1].starts_with("deploy(object:<Bank_deployed>"));
    assert!(lines[1..lines.len() - 2].iter().all(|l| l.ends_with(" ->")));
    assert!(!lines[lines.len() - 2].ends_with(" ->"));
    assert_eq!(
        *lines.last().unwrap(),
        "ERROR! sender 0x102030405060708090a has insufficient balance (0) to transfer 1000"
    );
}

#[test]
fn missing_abi_is_an_input_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_yul-gamecheck"))
        .arg(fixture("bank.yul"))
        .arg(fixture("nope.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: ") && err.contains("nope.json"));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_inputs_are_input_errors() {
    let dir = std::env::temp_dir().join(format!("yulgc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let yul = dir.join("bad.yul");
    std::fs::write(&yul, "object \"X\" { code { let x := } }").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_yul-gamecheck"))
        .arg(&yul)
        .arg(fixture("bank.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).starts_with("error: syntax error at 1:"),
        "{}",
        stderr(&o)
    );

    let abi = dir.join("bad.json");
    std::fs::write(&abi, "{\"Bank\": 3}").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_yul-gamecheck"))
        .arg(fixture("bank.yul"))
        .arg(&abi)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ABI"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_flags_exit_two_and_help_exits_zero() {
    assert_eq!(
        run("bank", &["--call-bound", "many"]).status.code(),
        Some(2)
    );
    assert_eq!(run("bank", &["--max-wait", "3w"]).status.code(), Some(2));
    let help = Command::new(env!("CARGO_BIN_EXE_yul-gamecheck"))
        .arg("--help")
        .output()
        .unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("--stack-bound"));
}

#[test]
fn json_mirrors_the_text_trace() {
    let text = stdout(&run("bank", &[]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&run("bank", &["--json"]))).unwrap();
    assert_eq!(json["verdict"], "violation");
    let message = json["message"].as_str().unwrap();
    assert_eq!(text.lines().last().unwrap(), format!("ERROR! {message}"));
    let trace: Vec<&str> = json["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["text"].as_str().unwrap())
        .collect();
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('[') && !l.starts_with("ERROR!"))
        .map(|l| l.trim_end_matches(" ->"))
        .collect();
    assert_eq!(trace, lines);
    assert_eq!(json["trace"][0]["move"], "deploy");
    assert_eq!(json["opponents"][0], "0x4f505f414444524553535f30");
}

#[test]
fn only_restricts_the_opponent() {
    let o = run("two_functions", &["--only", "TwoFunctions.g()", "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["stats"]["first_level_calls"], 1);

    let o = run("two_functions", &["--only", "TwoFunctions.h()"]);
    assert!(stderr(&o).contains("warning: --only TwoFunctions.h() matches no function"));
}

#[test]
fn seed_changes_hashes() {
    let with_seed = |seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_yul-gamecheck"));
        c.arg(fixture("keccak_print.yul"))
            .arg(fixture("keccak_print.json"));
        match seed {
            Some(s) => c.env("YULGC_SEED", s),
            None => c.env_remove("YULGC_SEED"),
        };
        c.output().unwrap()
    };
    let default = with_seed(None);
    assert_eq!(default.status.code(), Some(0));
    assert_eq!(stderr(&default).lines().count(), 65);
    assert_eq!(stderr(&with_seed(Some("0x79756c6763"))), stderr(&default));
    assert_ne!(stderr(&with_seed(Some("1"))), stderr(&default));
    assert_eq!(with_seed(Some("zzz")).status.code(), Some(2));
}

#[cfg(feature = "parallel")]
#[test]
fn all_cores_match_one_thread() {
    for name in ["bank", "deployer", "two_functions"] {
        assert_eq!(
            stdout(&run(name, &[])),
            stdout(&run(name, &["--jobs", "0"])),
            "{name}"
        );
        assert_eq!(
            stdout(&run(name, &[])),
            stdout(&run(name, &["--jobs", "3"])),
            "{name}"
        );
    }
}
