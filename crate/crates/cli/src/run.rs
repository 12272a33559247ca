//! Command dispatch and exit codes.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Map, Value};

use reptor::biquot::{
    classify_pair, enlarge_torus, intersection_rank, vanishing_bound, EnlargeConfig,
};
use reptor::diagtor::{ktheory_biquotient, tor_good_group, verify_theorem, TorResult};
use reptor::grob::{AffineContext, Field, PrimeField, Rationals};
use reptor::Error;

use crate::regress::load_json;
use crate::report;
use crate::spec::{FieldChoice, Overrides, Problem, SpecFile, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Tor,
    Ktheory,
    Enlarge,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Check => "check",
            Command::Tor => "tor",
            Command::Ktheory => "ktheory",
            Command::Enlarge => "enlarge",
        })
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "check" => Ok(Command::Check),
            "tor" => Ok(Command::Tor),
            "ktheory" => Ok(Command::Ktheory),
            "enlarge" => Ok(Command::Enlarge),
            _ => Err(format!("unknown command {s:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => EXIT_BUDGET,
            Error::Inconsistency(_)
            | Error::CertificateFailed
            | Error::EnlargementFailed { .. } => EXIT_INCONSISTENT,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

fn status(code: i32) -> &'static str {
    match code {
        EXIT_OK => "ok",
        EXIT_BUDGET => "inconclusive",
        EXIT_INCONSISTENT => "inconsistent",
        _ => "error",
    }
}

/// The spec as given, minus regression-only keys.
fn echo(spec: &Value) -> Value {
    let mut v = spec.clone();
    if let Value::Object(m) = &mut v {
        for k in ["command", "expect", "expect_exit"] {
            m.remove(k);
        }
    }
    v
}

/// Runs one command on one parsed spec document.
pub fn execute(command: Command, spec: &Value, overrides: &Overrides) -> Outcome {
    let start = Instant::now();
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("command".into(), json!(command.to_string()));
    out.insert("spec".into(), echo(spec));

    let result = SpecFile::from_value(spec)
        .and_then(|s| s.problem(overrides))
        .map_err(usage)
        .and_then(|p| dispatch(command, &p).map(|body| (p, body)));

    let code = match result {
        Ok((problem, (body, code))) => {
            out.insert("settings".into(), settings(&problem));
            out.insert("group".into(), report::group(&problem.datum));
            out.insert("subgroup1".into(), report::subgroup(&problem.s1));
            out.insert("subgroup2".into(), report::subgroup(&problem.s2));
            out.extend(body);
            if problem.settings.timing {
                let diag = out.entry("diagnostics").or_insert_with(|| json!({}));
                diag["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            code
        }
        Err(f) => {
            out.insert("error".into(), json!(f.message));
            f.code
        }
    };
    out.insert("status".into(), json!(status(code)));
    out.insert("exit_code".into(), json!(code));
    Outcome {
        report: Value::Object(out),
        exit_code: code,
    }
}

/// Loads a spec file and runs `command` on it; unreadable files give an error report.
pub fn execute_file(command: Command, path: &Path, overrides: &Overrides) -> Outcome {
    match load_json(path) {
        Ok(spec) => execute(command, &spec, overrides),
        Err(message) => {
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command.to_string(),
                "spec": null,
                "error": message,
                "status": status(EXIT_USAGE),
                "exit_code": EXIT_USAGE,
            });
            Outcome {
                report,
                exit_code: EXIT_USAGE,
            }
        }
    }
}

fn settings(p: &Problem) -> Value {
    let s = &p.settings;
    json!({
        "field": match s.field { FieldChoice::Rationals => "q".to_string(), FieldChoice::Prime(p) => format!("fp:{p}") },
        "seed": s.seed,
        "max_spairs": s.grob.max_spairs,
        "max_degree": s.grob.max_degree,
        "certify": s.grob.certify,
    })
}

type Body = (Map<String, Value>, i32);

fn dispatch(command: Command, p: &Problem) -> Result<Body, Failure> {
    match command {
        Command::Check => check(p),
        Command::Tor => tor(p),
        Command::Ktheory => ktheory(p),
        Command::Enlarge => enlarge(p),
    }
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("report bodies are objects"),
    }
}

fn check(p: &Problem) -> Result<Body, Failure> {
    let c = classify_pair(&p.datum, &p.s1, &p.s2)?;
    let body = json!({
        "classification": report::classification(&c),
        "intersection_rank": intersection_rank(&p.datum, &p.s1, &p.s2)?,
        "vanishing_bound": vanishing_bound(&p.datum, &p.s1, &p.s2)?,
    });
    Ok((object(body), EXIT_OK))
}

const RATIONAL_NOTE: &str = "dimensions are over Q: integral torsion in Tor is not detected";
const PRIME_NOTE: &str =
    "diagnostic only: homology with F_p coefficients can differ from Tor tensor F_p, so no theorem check is made";

fn koszul_json<F: Field>(field: F, p: &Problem, t: &TorResult<F>) -> Value {
    let ctx = AffineContext::new(field, p.s1.rank() + p.s2.rank());
    report::koszul(&ctx, t)
}

fn tor(p: &Problem) -> Result<Body, Failure> {
    if let (FieldChoice::Prime(q), false) = (p.settings.field, p.datum.is_torus()) {
        return tor_mod_p(p, q);
    }
    let v = verify_theorem(&p.datum, &p.s1, &p.s2, &p.settings.grob)?;
    let mut notes = Vec::new();
    if p.datum.is_torus() {
        notes.push(
            "exact answer from the closed form; the Koszul computation is a cross-check"
                .to_string(),
        );
        if p.settings.field != FieldChoice::Rationals {
            notes.push("field option ignored on the exact path".to_string());
        }
    }
    if v.tor.is_some() {
        notes.push(RATIONAL_NOTE.to_string());
    }
    let stats = v.tor.as_ref().map(|t| t.stats).unwrap_or_default();
    let mut body = json!({
        "classification": report::classification(&v.classification),
        "intersection_rank": v.interrank,
        "vanishing_bound": v.bound,
        "tor": {
            "exact": v.toral.as_ref().map(report::toral),
            "rational": v.tor.as_ref().map(|t| koszul_json(Rationals, p, t)),
        },
        "observed_nonzero_degrees": v.observed_nonzero_degrees,
        "theorem_applies": v.classification.verdict.is_biquotient(),
        "theorem_consistent": v.theorem_consistent,
        "cross_check": v.cross_check,
        "inconclusive": v.inconclusive.map(|b| b.to_string()),
        "diagnostics": {"grobner": report::stats(&stats), "notes": notes},
    });
    let code = if !v.is_consistent() {
        body["witness"] = json!({
            "degrees_above_bound": v.observed_nonzero_degrees.iter().filter(|&&i| i > v.bound).collect::<Vec<_>>(),
            "subgroup1_kernel": report::matrix(p.s1.kernel().basis()),
            "subgroup2_kernel": report::matrix(p.s2.kernel().basis()),
        });
        EXIT_INCONSISTENT
    } else if v.inconclusive.is_some() {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Ok((object(body), code))
}

fn tor_mod_p(p: &Problem, q: u64) -> Result<Body, Failure> {
    let field = PrimeField::new(q)?;
    let c = classify_pair(&p.datum, &p.s1, &p.s2)?;
    let t = tor_good_group(&p.datum, &p.s1, &p.s2, field, &p.settings.grob)?;
    let body = json!({
        "classification": report::classification(&c),
        "intersection_rank": intersection_rank(&p.datum, &p.s1, &p.s2)?,
        "vanishing_bound": vanishing_bound(&p.datum, &p.s1, &p.s2)?,
        "tor": {"exact": null, "rational": null, "mod_p": koszul_json(field, p, &t)},
        "observed_nonzero_degrees": t.nonzero_degrees(),
        "theorem_applies": c.verdict.is_biquotient(),
        "theorem_consistent": null,
        "cross_check": null,
        "inconclusive": null,
        "diagnostics": {"grobner": report::stats(&t.stats), "notes": [PRIME_NOTE]},
    });
    Ok((object(body), EXIT_OK))
}

fn ktheory(p: &Problem) -> Result<Body, Failure> {
    let k = ktheory_biquotient(&p.datum, &p.s1, &p.s2, &p.settings.grob)?;
    let mut notes = vec![RATIONAL_NOTE.to_string()];
    if p.settings.field != FieldChoice::Rationals {
        notes.push("field option ignored: K-theory is computed over Q".to_string());
    }
    let body = json!({
        "ktheory": report::ktheory(&k),
        "diagnostics": {"notes": notes},
    });
    Ok((object(body), EXIT_OK))
}

fn enlarge(p: &Problem) -> Result<Body, Failure> {
    let cfg = EnlargeConfig {
        seed: p.settings.seed,
        ..Default::default()
    };
    let e = enlarge_torus(&p.datum, &p.s1, &p.s2, &cfg)?;
    let body = json!({
        "enlargement": report::enlargement(&e),
        "intersection_rank": intersection_rank(&p.datum, &e.subgroup, &p.s2)?,
    });
    Ok((object(body), EXIT_OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(group: Value, s1: Value, s2: Value) -> Value {
        json!({"schema_version": 1, "group": group, "subgroup1": s1, "subgroup2": s2})
    }

    #[test]
    fn check_su3() {
        let s = spec(
            json!([{"type": "SU", "n": 3}]),
            json!("trivial"),
            json!({"cocharacters": [[1, -1]]}),
        );
        let o = execute(Command::Check, &s, &Overrides::default());
        assert_eq!(o.exit_code, EXIT_OK);
        assert_eq!(o.report["classification"]["verdict"], "Strict");
        assert_eq!(o.report["intersection_rank"], 0);
        assert_eq!(o.report["vanishing_bound"], 1);
    }

    #[test]
    fn tor_circle() {
        let s = spec(
            json!([{"type": "torus", "rank": 1}]),
            json!("trivial"),
            json!("trivial"),
        );
        let o = execute(Command::Tor, &s, &Overrides::default());
        assert_eq!(o.exit_code, EXIT_OK);
        let exact = &o.report["tor"]["exact"]["degrees"];
        assert_eq!(exact[0]["z_rank"], 1);
        assert_eq!(exact[1]["z_rank"], 1);
        assert_eq!(o.report["theorem_consistent"], true);
        assert_eq!(o.report["cross_check"], true);
    }

    #[test]
    fn ktheory_sphere() {
        let s = spec(
            json!([{"type": "SU", "n": 2}]),
            json!("maximal"),
            json!("trivial"),
        );
        let o = execute(Command::Ktheory, &s, &Overrides::default());
        assert_eq!(o.exit_code, EXIT_OK);
        assert_eq!(o.report["ktheory"]["k0"]["rational_dim"], 2);
        assert_eq!(o.report["ktheory"]["k1"]["is_zero"], true);
    }

    #[test]
    fn failures_map_to_exit_codes() {
        let bad = json!({"schema_version": 1});
        let o = execute(Command::Check, &bad, &Overrides::default());
        assert_eq!(o.exit_code, EXIT_USAGE);
        assert_eq!(o.report["status"], "error");
        assert!(o.report.get("classification").is_none());

        let s = spec(
            json!([{"type": "SU", "n": 3}]),
            json!("maximal"),
            json!("maximal"),
        );
        let tight = Overrides {
            max_spairs: Some(1),
            ..Default::default()
        };
        let o = execute(Command::Tor, &s, &tight);
        assert_eq!(o.exit_code, EXIT_BUDGET);
        assert_eq!(o.report["status"], "inconclusive");

        let lax = spec(
            json!([{"type": "torus", "rank": 2}]),
            json!({"kernel": [[1, 0]]}),
            json!({"kernel": [[1, 0]]}),
        );
        let o = execute(Command::Ktheory, &lax, &Overrides::default());
        assert_eq!(o.exit_code, EXIT_USAGE);
        assert!(o.report["error"].as_str().unwrap().contains("strict"));
    }

    #[test]
    fn reports_are_deterministic() {
        let s = spec(
            json!([{"type": "SU", "n": 3}]),
            json!("trivial"),
            json!({"kernel": [[1, 1]]}),
        );
        for c in [Command::Check, Command::Tor, Command::Enlarge] {
            let a = serde_json::to_string(&execute(c, &s, &Overrides::default()).report).unwrap();
            let b = serde_json::to_string(&execute(c, &s, &Overrides::default()).report).unwrap();
            assert_eq!(a, b);
        }
    }
}
