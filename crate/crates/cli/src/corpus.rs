//! Regression corpus: a directory of JSON entries, each a list of commands
//! with the status they are expected to end in.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::json;

use fincat::{Violation, SCHEMA_VERSION};

use crate::commands::{Outcome, Res};
use crate::report::{Failure, Law, Status};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub schema_version: u32,
    #[serde(default)]
    pub description: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub command: String,
    /// Relative to the entry file.
    #[serde(default)]
    pub fixture: Option<PathBuf>,
    #[serde(default)]
    pub args: Vec<String>,
    #[serde(default = "pass")]
    pub expect: Status,
}

fn pass() -> Status {
    Status::Pass
}

pub fn read_entry(path: &Path) -> Result<Entry, Failure> {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display()), None))?;
    let v: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::parse(format!("{name}: invalid JSON: {e}"), Some(name.clone())))?;
    let e: Entry = serde_path_to_error::deserialize(v).map_err(|e| {
        Failure::parse(
            format!("{name}: {}", e.inner()),
            Some(format!("{name}:{}", e.path())),
        )
    })?;
    if e.schema_version != SCHEMA_VERSION {
        return Err(Failure::parse(
            format!("{name}: unsupported schema_version {}", e.schema_version),
            Some(format!("{name}:schema_version")),
        ));
    }
    Ok(e)
}

/// Runs every check through `exec` (which takes an argv without program
/// name) and compares each status with its expectation. `globals` holds
/// flag/value pairs.
pub fn run_corpus(
    dir: &Path,
    globals: &[String],
    exec: impl Fn(&[String]) -> (Status, Vec<Law>, u64),
) -> Res {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| {
            Failure::parse(
                format!("cannot read corpus directory {}: {e}", dir.display()),
                None,
            )
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut laws = Vec::new();
    let mut details = Vec::new();
    let (mut passed, mut failed) = (0usize, 0usize);
    let mut total_steps = 0u64;
    for file in &files {
        let entry = read_entry(file)?;
        let ename = file
            .file_stem()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        let base = file.parent().unwrap_or(Path::new("."));
        for (i, check) in entry.checks.iter().enumerate() {
            if check.command == "run-corpus" {
                return Err(Failure::parse(
                    "corpus checks cannot run a corpus",
                    Some(format!("{ename}.json:checks[{i}].command")),
                ));
            }
            let mut argv = vec![check.command.clone()];
            if let Some(f) = &check.fixture {
                argv.push(base.join(f).to_string_lossy().into_owned());
            }
            argv.extend(check.args.iter().cloned());
            // flags set by the check win over the corpus-wide ones
            for pair in globals.chunks(2) {
                if !check.args.contains(&pair[0]) {
                    argv.extend(pair.iter().cloned());
                }
            }
            log::info!("corpus {ename}: {}", check.name);
            let (status, sublaws, steps) = exec(&argv);
            total_steps += steps;
            let ok = status == check.expect;
            if ok {
                passed += 1;
            } else {
                failed += 1;
            }
            let failing: Vec<String> = sublaws
                .iter()
                .filter(|l| !l.pass)
                .map(|l| l.law.clone())
                .collect();
            let label = format!("{ename}/{}", check.name);
            laws.push(Law::check(
                label.clone(),
                ok,
                if ok {
                    vec![]
                } else {
                    vec![Violation::new(
                        "unexpected-status",
                        vec![format!("{:?}", check.expect), format!("{status:?}")],
                    )]
                },
            ));
            details.push(json!({
                "check": label,
                "expected": check.expect,
                "status": status,
                "exit_code": status.exit_code(),
                "verdict": if ok { "pass" } else { "fail" },
                "failing_laws": failing,
                "steps": steps,
            }));
        }
    }
    let mut warnings = Vec::new();
    if details.is_empty() {
        warnings.push(format!("no checks found in {}", dir.display()));
        log::warn!("no checks found in {}", dir.display());
    }
    let result = json!({
        "entries": files.len(),
        "checks": details.len(),
        "passed": passed,
        "failed": failed,
        "steps": total_steps,
        "details": details,
    });
    Ok(Outcome {
        laws,
        result,
        warnings,
    })
}
