//! Byte-for-byte comparison of CLI output against tests/golden/*.txt.
//! Set UPDATE_GOLDEN=1 to rewrite the files.

use std::path::PathBuf;
use std::process::Command;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn cases() -> Vec<(String, Vec<String>)> {
    let text = std::fs::read_to_string(golden_dir().join("cases.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let args = c["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
            (c["name"].as_str().unwrap().to_string(), args)
        })
        .collect()
}

fn transcript(args: &[String]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_cohodim")).args(args).output().unwrap();
    format!(
        "{}{}[exit {}]\n",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
        out.status.code().unwrap_or(-1)
    )
}

#[test]
fn golden_files_match() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut stale = Vec::new();
    for (name, args) in cases() {
        let path = golden_dir().join(format!("{name}.txt"));
        let got = transcript(&args);
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if got != want {
            stale.push(format!("{name}:\n--- want\n{want}--- got\n{got}"));
        }
    }
    assert!(stale.is_empty(), "{}", stale.join("\n"));
}

#[test]
fn exit_statuses() {
    let code = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_cohodim")).args(args).output().unwrap().status.code()
    };
    assert_eq!(code(&["eval", "nat(1)"]), Some(0));
    assert_eq!(code(&["eval", "nat(1) [+]"]), Some(2));
    assert_eq!(code(&["verify", "join", "--q", "2"]), Some(1));
    assert_eq!(code(&["verify", "ew", "--p", "4"]), Some(2));
    assert_eq!(code(&["table", "fundamental", "--q", "2"]), Some(2));
}
