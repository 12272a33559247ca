//! The bundled regression corpus: spec files carrying a command and the
//! report fragment it must produce.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::Value;

use crate::run::{execute, Command, EXIT_OK};
use crate::spec::Overrides;

pub fn default_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn load_json(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Every key of `expected` must be present in `actual` with a matching value;
/// arrays match elementwise and must have equal length.
pub fn subset_match(expected: &Value, actual: &Value, path: &str) -> Result<(), String> {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                let here = format!("{path}.{k}");
                match a.get(k) {
                    Some(av) => subset_match(ev, av, &here)?,
                    None => return Err(format!("{here}: missing")),
                }
            }
            Ok(())
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                return Err(format!(
                    "{path}: expected {} entries, found {}",
                    e.len(),
                    a.len()
                ));
            }
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                subset_match(ev, av, &format!("{path}[{i}]"))?;
            }
            Ok(())
        }
        _ if expected == actual => Ok(()),
        _ => Err(format!("{path}: expected {expected}, found {actual}")),
    }
}

fn run_case(path: &Path) -> CaseResult {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let outcome = (|| {
        let spec = load_json(path)?;
        let command: Command = spec
            .get("command")
            .and_then(Value::as_str)
            .ok_or("corpus entry has no command")?
            .parse()?;
        let out = execute(command, &spec, &Overrides::default());
        let want = spec
            .get("expect_exit")
            .and_then(Value::as_i64)
            .unwrap_or(EXIT_OK as i64);
        if i64::from(out.exit_code) != want {
            return Err(format!(
                "exit code {} (expected {want}): {}",
                out.exit_code, out.report["error"]
            ));
        }
        if let Some(expect) = spec.get("expect") {
            subset_match(expect, &out.report, "report")?;
        }
        Ok(command.to_string())
    })();
    match outcome {
        Ok(cmd) => CaseResult {
            name,
            passed: true,
            detail: cmd,
        },
        Err(detail) => CaseResult {
            name,
            passed: false,
            detail,
        },
    }
}

/// Runs every `*.json` file in `dir`, in name order.
pub fn run_corpus(dir: &Path) -> Result<Vec<CaseResult>, String> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files.par_iter().map(|p| run_case(p)).collect())
}
