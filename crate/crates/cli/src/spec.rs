//! Problem specification files.

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use reptor::charlat::{subgroup_from_cocharacters, TorusSubgroup};
use reptor::grob::GrobConfig;
use reptor::intlin::{IntMatrix, Sublattice};
use reptor::weyl::{build_root_datum, Factor, GroupSpec, RootDatum};

pub const SCHEMA_VERSION: u32 = 1;

/// An integer given as a JSON number or, when large, as a decimal string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum IntLit {
    Num(i64),
    Str(String),
}

impl IntLit {
    fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            IntLit::Num(n) => Ok(BigInt::from(*n)),
            IntLit::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum FactorSpec {
    SU {
        n: usize,
    },
    Sp {
        n: usize,
    },
    #[serde(rename = "torus")]
    Torus {
        rank: usize,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SubgroupSpec {
    /// Rows are cocharacters; the subgroup is the closure of their image.
    Cocharacters(Vec<Vec<IntLit>>),
    /// Rows span the characters that vanish on the subgroup.
    Kernel(Vec<Vec<IntLit>>),
    Trivial,
    /// The maximal torus.
    Maximal,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// `"q"` or `"fp:<p>"`.
    pub field: Option<String>,
    pub seed: Option<u64>,
    pub max_spairs: Option<u64>,
    pub max_degree: Option<u32>,
    pub certify: Option<bool>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub schema_version: u32,
    #[serde(default)]
    pub description: Option<String>,
    pub group: Vec<FactorSpec>,
    pub subgroup1: SubgroupSpec,
    pub subgroup2: SubgroupSpec,
    #[serde(default)]
    pub options: Options,
    /// Regression corpus only: the command to run.
    #[serde(default)]
    pub command: Option<String>,
    /// Regression corpus only: a JSON object the report must contain.
    #[serde(default)]
    pub expect: Option<Value>,
    #[serde(default)]
    pub expect_exit: Option<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

impl FieldChoice {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" => Ok(FieldChoice::Rationals),
            other => match other.strip_prefix("fp:") {
                Some(p) => p
                    .parse()
                    .map(FieldChoice::Prime)
                    .map_err(|_| format!("bad prime in field {s:?}")),
                None => Err(format!("unknown field {s:?}; use q or fp:<p>")),
            },
        }
    }
}

/// Command-line settings that take precedence over the spec's options.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub field: Option<FieldChoice>,
    pub seed: Option<u64>,
    pub max_spairs: Option<u64>,
    pub max_degree: Option<u32>,
    pub certify: bool,
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub field: FieldChoice,
    pub seed: u64,
    pub grob: GrobConfig,
    pub timing: bool,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub datum: RootDatum,
    pub s1: TorusSubgroup,
    pub s2: TorusSubgroup,
    pub settings: Settings,
}

fn matrix(cols: usize, rows: &[Vec<IntLit>], what: &str) -> Result<IntMatrix, String> {
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != cols {
            return Err(format!(
                "{what}: row of length {} in a rank-{cols} group",
                row.len()
            ));
        }
        parsed.push(
            row.iter()
                .map(IntLit::to_bigint)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    IntMatrix::from_rows(cols, &parsed).map_err(|e| format!("{what}: {e}"))
}

fn subgroup(r: usize, spec: &SubgroupSpec, what: &str) -> Result<TorusSubgroup, String> {
    match spec {
        SubgroupSpec::Trivial => Ok(TorusSubgroup::trivial(r)),
        SubgroupSpec::Maximal => Ok(TorusSubgroup::full(r)),
        SubgroupSpec::Kernel(rows) => Ok(TorusSubgroup::from_kernel(Sublattice::from_generators(
            &matrix(r, rows, what)?,
        ))),
        SubgroupSpec::Cocharacters(rows) => subgroup_from_cocharacters(r, &matrix(r, rows, what)?)
            .map_err(|e| format!("{what}: {e}")),
    }
}

pub fn group_spec(factors: &[FactorSpec]) -> GroupSpec {
    GroupSpec::new(
        factors
            .iter()
            .map(|f| match *f {
                FactorSpec::SU { n } => Factor::SpecialUnitary(n),
                FactorSpec::Sp { n } => Factor::Symplectic(n),
                FactorSpec::Torus { rank } => Factor::Torus(rank),
            })
            .collect(),
    )
}

impl SpecFile {
    pub fn from_value(v: &Value) -> Result<Self, String> {
        let spec: SpecFile =
            serde_json::from_value(v.clone()).map_err(|e| format!("invalid spec: {e}"))?;
        if spec.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                spec.schema_version
            ));
        }
        Ok(spec)
    }

    pub fn problem(&self, overrides: &Overrides) -> Result<Problem, String> {
        let datum = build_root_datum(&group_spec(&self.group)).map_err(|e| e.to_string())?;
        let r = datum.rank();
        let s1 = subgroup(r, &self.subgroup1, "subgroup1")?;
        let s2 = subgroup(r, &self.subgroup2, "subgroup2")?;
        let field = match (overrides.field, &self.options.field) {
            (Some(f), _) => f,
            (None, Some(s)) => FieldChoice::parse(s)?,
            (None, None) => FieldChoice::Rationals,
        };
        let defaults = GrobConfig::default();
        let grob = GrobConfig {
            max_spairs: overrides
                .max_spairs
                .or(self.options.max_spairs)
                .unwrap_or(defaults.max_spairs),
            max_degree: overrides
                .max_degree
                .or(self.options.max_degree)
                .unwrap_or(defaults.max_degree),
            certify: overrides.certify || self.options.certify.unwrap_or(false),
        };
        let settings = Settings {
            field,
            seed: overrides.seed.or(self.options.seed).unwrap_or(0),
            grob,
            timing: overrides.timing,
        };
        Ok(Problem {
            datum,
            s1,
            s2,
            settings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_minimal_spec() {
        let v = json!({
            "schema_version": 1,
            "group": [{"type": "SU", "n": 3}],
            "subgroup1": "trivial",
            "subgroup2": {"cocharacters": [[1, -1]]}
        });
        let p = SpecFile::from_value(&v)
            .unwrap()
            .problem(&Overrides::default())
            .unwrap();
        assert_eq!(p.datum.rank(), 2);
        assert_eq!(p.s2.kernel(), &Sublattice::from_i64(2, &[&[1, 1]]));
        assert_eq!(p.settings.field, FieldChoice::Rationals);
    }

    #[test]
    fn big_integers_as_strings() {
        let v = json!({
            "schema_version": 1,
            "group": [{"type": "torus", "rank": 1}],
            "subgroup1": {"kernel": [["123456789012345678901234567890"]]},
            "subgroup2": "maximal"
        });
        let p = SpecFile::from_value(&v)
            .unwrap()
            .problem(&Overrides::default())
            .unwrap();
        assert_eq!(p.s1.rank(), 0);
        assert!(!p.s1.is_subtorus());
    }

    #[test]
    fn rejects_bad_input() {
        let wrong_version = json!({"schema_version": 2, "group": [], "subgroup1": "trivial", "subgroup2": "trivial"});
        assert!(SpecFile::from_value(&wrong_version).is_err());
        let bad_row = json!({
            "schema_version": 1, "group": [{"type": "SU", "n": 3}],
            "subgroup1": {"kernel": [[1]]}, "subgroup2": "trivial"
        });
        assert!(SpecFile::from_value(&bad_row)
            .unwrap()
            .problem(&Overrides::default())
            .is_err());
        let unknown = json!({"schema_version": 1, "group": [], "subgroup1": "trivial", "subgroup2": "trivial", "extra": 1});
        assert!(SpecFile::from_value(&unknown).is_err());
    }

    #[test]
    fn field_choices() {
        assert_eq!(FieldChoice::parse("Q").unwrap(), FieldChoice::Rationals);
        assert_eq!(
            FieldChoice::parse("fp:101").unwrap(),
            FieldChoice::Prime(101)
        );
        assert!(FieldChoice::parse("r").is_err());
    }
}
