use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crosscap"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn present_counts_and_guard() {
    let o = run(&["present", "-g", "4", "-n", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8 generators, 18 relators"));

    let o = run(&["present", "-g", "2", "-n", "0"]);
    let text = stdout(&o);
    assert!(
        text.contains("a1*a1 = 1")
            && text.contains("y1*y1 = 1")
            && text.contains("a1*y1*a1*y1 = 1")
    );

    let o = run(&["present", "-g", "2", "-n", "1", "--main"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("g + n > 3"));

    let o = run(&["present", "-g", "3", "-n", "1", "--format", "cas"]);
    assert!(stdout(&o).starts_with("F := FreeGroup("));
}

#[test]
fn verify_runs_and_is_deterministic() {
    let a = run(&["verify", "-g", "5", "-n", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(!stdout(&a).contains("Refuted"));
    let b = run(&["verify", "-g", "5", "-n", "1"]);
    assert_eq!(a.stdout, b.stdout);

    let o = run(&["verify", "-g", "4", "-n", "0", "--tier", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for fam in [" D ", " B4a ", " G3a ", " E2a "] {
        assert!(text.contains(fam), "{fam} missing");
    }
    assert!(!text.contains("fixture !"));

    assert_eq!(
        run(&["verify", "-g", "4", "--tier", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn corrupted_relator_file_is_refuted() {
    let dir = std::env::temp_dir().join(format!("crosscap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"genus":3,"boundary":1,"generators":["a1","a2","u1","u2"],
           "relators":[{"tag":"C4","params":[],"word":"a1*u1*a1*u1^-1"},
                       {"tag":"C4x","params":[],"word":"a1*u1*a1*u1"}]}"#,
    )
    .unwrap();
    let o = run(&["verify", "--relators", path.to_str().unwrap(), "-g", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("C4x") && text.contains("Refuted ["));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn refresh_fixtures_prints_a_diff() {
    let dir = std::env::temp_dir().join(format!("crosscap-fx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let fx = dir.join("conj.json");
    let fx = fx.to_str().unwrap();
    let args = [
        "verify",
        "-g",
        "4",
        "--tier",
        "3",
        "--presentation-only",
        "--fixtures",
        fx,
        "--refresh-fixtures",
    ];
    let first = stdout(&run(&args));
    assert!(first.contains("fixture + 4/D/"));
    let second = stdout(&run(&args));
    assert!(!second.contains("fixture "));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn abelianize_enumerate_replay() {
    let h7 = run(&["abelianize", "-g", "7", "-n", "0"]);
    let h8 = run(&["abelianize", "-g", "8", "-n", "0"]);
    assert_eq!(h7.stdout, h8.stdout);

    let o = run(&["enumerate", "-g", "2", "-n", "0"]);
    assert_eq!(stdout(&o), "order 4\n");
    let o = run(&["enumerate", "-g", "2", "-n", "0", "--subgroup", "a1"]);
    assert_eq!(stdout(&o), "index 2\n");
    let o = run(&["enumerate", "-g", "2", "-n", "0", "--max-cosets", "2"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["replay", "fixtures/scripts/g1_g4.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("endpoints Verified"));
    assert_eq!(
        run(&["replay", "fixtures/none.json"]).status.code(),
        Some(2)
    );
}
