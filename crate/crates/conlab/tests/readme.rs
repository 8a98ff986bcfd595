//! Runs every `$ conlab ...` line in the README's console blocks and compares
//! the combined output with the lines recorded under it.

use std::path::{Path, PathBuf};
use std::process::Command;

struct Example {
    line: usize,
    command: String,
    expected: String,
}

fn examples(readme: &str) -> Vec<Example> {
    let mut out = Vec::new();
    let mut in_console = false;
    let mut current: Option<Example> = None;
    for (i, line) in readme.lines().enumerate() {
        if !in_console {
            in_console = line == "```console";
            continue;
        }
        if line == "```" || line.starts_with("$ ") {
            out.extend(current.take());
        }
        if line == "```" {
            in_console = false;
        } else if let Some(cmd) = line.strip_prefix("$ ") {
            current = Some(Example { line: i + 1, command: cmd.to_string(), expected: String::new() });
        } else {
            let ex = current.as_mut().unwrap_or_else(|| panic!("README line {}: output before any command", i + 1));
            ex.expected.push_str(line);
            ex.expected.push('\n');
        }
    }
    assert!(!in_console, "unterminated console block");
    out
}

#[test]
fn readme_examples_match() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let readme = std::fs::read_to_string(root.join("README.md")).expect("README.md");
    let bin_dir = Path::new(env!("CARGO_BIN_EXE_conlab")).parent().unwrap();
    let path = std::env::join_paths(
        std::iter::once(bin_dir.to_path_buf()).chain(std::env::split_paths(&std::env::var_os("PATH").unwrap_or_default())),
    )
    .unwrap();
    let all = examples(&readme);
    assert!(all.len() >= 10, "only {} examples found", all.len());
    let mut failures = Vec::new();
    for ex in &all {
        assert!(ex.command.starts_with("conlab "), "README line {}: {}", ex.line, ex.command);
        let out = Command::new("sh")
            .arg("-c")
            .arg(format!("{{ {} ; }} 2>&1", ex.command))
            .current_dir(&root)
            .env("PATH", &path)
            .env_remove(conlab::SEED_VAR)
            .output()
            .expect("sh runs");
        let got = String::from_utf8(out.stdout).unwrap();
        if got != ex.expected {
            failures.push(format!("README line {}: `{}`\n--- expected\n{}--- got\n{}", ex.line, ex.command, ex.expected, got));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn parser_splits_commands_and_outputs() {
    let text = "intro\n```console\n$ conlab a\nx\ny\n$ conlab b\n```\n```sh\n$ not run\n```\n";
    let ex = examples(text);
    assert_eq!(ex.len(), 2);
    assert_eq!((ex[0].command.as_str(), ex[0].expected.as_str()), ("conlab a", "x\ny\n"));
    assert_eq!((ex[1].command.as_str(), ex[1].expected.as_str()), ("conlab b", ""));
}
