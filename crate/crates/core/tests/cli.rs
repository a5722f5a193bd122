use std::path::Path;
use std::process::{Command, Output};

use twist_core::proof::{fixture, render, ProofFormat};
use twist_core::CalculusId;

fn twistprover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistprover")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_fixture(dir: &Path, c: CalculusId) -> String {
    let path = dir.join(format!("{}.json", c.key()));
    std::fs::write(&path, render(&fixture(c).unwrap(), c, ProofFormat::Json)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn prove_exit_codes() {
    let o = twistprover(&["prove", "--calculus", "lts4", "~~~<>~p => ~<>~~<>~~~p", "--stats"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("rules: 7 (logical 6)"), "{}", stdout(&o));
    let o = twistprover(&["prove", "--calculus", "gts5", "p => []~[]~p"]);
    assert_eq!(code(&o), 1);
    let o = twistprover(&["prove", "--calculus", "tcl", "=> p"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("valuation: p=false"), "{}", stdout(&o));
    let o = twistprover(&["prove", "-c", "hts5", "p => []~[]~p"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn bound_gives_exit_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_twistprover"))
        .args(["prove", "-c", "gs4", "~~~<>~p => ~<>~~<>~~~p"])
        .env("TWISTPROVER_MAX_VISITED", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("unknown"));
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["prove", "p =>> q"][..],
        &["prove", "-c", "s4", "p => p"],
        &["prove"],
        &["compare", "p => p", "--calculi", "lts4,bogus"],
        &["oracle", "--frame", "classical", "=> []p"],
        &["oracle", "--max-worlds", "9", "=> p"],
        &["frobnicate"],
    ] {
        let o = twistprover(args);
        assert_eq!(code(&o), 64, "{args:?}");
        assert!(stdout(&o).is_empty(), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn json_output_is_checkable() {
    let dir = tempfile::tempdir().unwrap();
    let o = twistprover(&["prove", "-c", "gts4", "--format", "json", "--stats", "[]p => ~<>~p"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["decision"], "provable");
    assert!(v["stats"]["visited"].as_u64().unwrap() > 0);
    let path = dir.path().join("proof.json");
    std::fs::write(&path, stdout(&o)).unwrap();
    let o = twistprover(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = twistprover(&["prove", "-c", "hts5", "--format", "json", "<>p => []p"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["decision"], "not-provable");
    let worlds = v["certificate"]["worlds"].as_array().unwrap();
    assert_eq!(worlds.len(), 3);
    assert!(worlds.iter().any(|w| w.as_array().unwrap().is_empty()));
    assert!(worlds.iter().any(|w| w.as_array().unwrap().contains(&serde_json::json!("p"))));
}

#[test]
fn check_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    for c in [CalculusId::LTS4, CalculusId::GTS4, CalculusId::GS4] {
        let path = write_fixture(dir.path(), c);
        assert_eq!(code(&twistprover(&["check", &path])), 0, "{c}");
    }
    let gs4 = write_fixture(dir.path(), CalculusId::GS4);
    let o = twistprover(&["check", "--calculus", "lts4", &gs4]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(¬right)"), "{}", stdout(&o));
    let o = twistprover(&["check", "--calculus", "lts4", "--format", "json", &gs4]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["path"], "");

    let text = std::fs::read_to_string(&gs4).unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&twistprover(&["check", truncated.to_str().unwrap()])), 64);
    assert_eq!(code(&twistprover(&["check", dir.path().join("missing.json").to_str().unwrap()])), 74);
}

#[test]
fn compare_table() {
    let o = twistprover(&["compare", "~~~<>~p => ~<>~~<>~~~p", "--calculi", "lts4,gts4,gs4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let logical: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["rulesLogical"].as_u64().unwrap()).collect();
    assert_eq!(logical, vec![6, 6, 13]);

    let o = twistprover(&["compare", "p => p", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["rulesTotal"] == 0));

    let o = twistprover(&["compare", "=> <>p -> []p"]);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains("not-provable")).count(), 3, "{out}");
}

#[test]
fn oracle() {
    let o = twistprover(&["oracle", "--frame", "s4", "--max-worlds", "4", "=> <>p -> []p"]);
    assert_eq!(code(&o), 0);
    let model_line = stdout(&o).lines().nth(1).unwrap().to_string();
    let m: serde_json::Value = serde_json::from_str(&model_line).unwrap();
    assert_eq!(m["worlds"], 2);
    assert_eq!(code(&twistprover(&["oracle", "--frame", "kt", "=> []p -> p"])), 1);
    assert_eq!(code(&twistprover(&["oracle", "--frame", "s5", "=> p -> []<>p"])), 1);
    let o = twistprover(&["oracle", "--frame", "classical", "--format", "json", "p => q"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valuation"]["q"], false);
}

#[test]
fn bench_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let args = [
        "bench", "--seed", "3", "--count", "25", "--depth", "3", "--vars", "2", "--neg-bias", "0.7", "--jobs", "2", "--out",
        out.to_str().unwrap(),
    ];
    let o = twistprover(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let first = std::fs::read_to_string(&out).unwrap();
    assert_eq!(first.lines().count(), 1 + 25 * 3);
    assert!(first.starts_with("index,formula,calculus,decision,rules_total,rules_logical,visited,millis"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 75);

    // Identical settings give identical rows apart from timings.
    assert_eq!(code(&twistprover(&args)), 0);
    let second = std::fs::read_to_string(&out).unwrap();
    let strip = |s: &str| s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&first), strip(&second));

    let o = twistprover(&["bench", "--count", "2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(code(&o), 74);
    let o = twistprover(&["bench", "--count", "2", "--calculi", "hts5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 64);
    let o = twistprover(&["bench", "--curated", "s4_theorems", "--out", out.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["disagreements"].as_array().unwrap().len(), 0);
}

#[test]
fn render_formats() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), CalculusId::GTS4);
    let o = twistprover(&["render", &path, "--format", "latex"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\\begin{prooftree}"));
    let o = twistprover(&["render", &path]);
    assert_eq!(stdout(&o).lines().count(), 7);
}
