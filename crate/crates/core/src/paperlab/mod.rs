//! Named, reproducible checks with pass/fail verdicts and witnesses.
//!
//! Every check is deterministic: rerunning it gives the same result apart
//! from `elapsed_ms`. Checks of open conjectures report
//! `conjecture-consistent` or `conjecture-violated`, never `pass`.

mod checks;
pub mod families;

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::perm::PatternSet;

pub use checks::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ConjectureConsistent,
    ConjectureViolated,
}

impl Status {
    /// `fail` and `conjecture-violated`.
    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::ConjectureViolated)
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ConjectureConsistent => "conjecture-consistent",
            Status::ConjectureViolated => "conjecture-violated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub parameters: Value,
    pub status: Status,
    #[serde(default)]
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckResult {
    pub fn is_failure(&self) -> bool {
        self.status.is_failure()
    }
}

/// What a check body produces; the runner adds id, parameters and timing.
#[derive(Clone, Debug, Default)]
pub(crate) struct Verdict {
    pub(crate) witness: Option<Value>,
    pub(crate) conjecture: bool,
    pub(crate) proved_violation: bool,
    pub(crate) notes: Vec<String>,
}

impl Verdict {
    pub(crate) fn theorem() -> Verdict {
        Verdict::default()
    }

    pub(crate) fn conjecture() -> Verdict {
        Verdict {
            conjecture: true,
            ..Verdict::default()
        }
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn status(&self) -> Status {
        match (
            self.witness.is_some(),
            self.conjecture && !self.proved_violation,
        ) {
            (false, false) => Status::Pass,
            (false, true) => Status::ConjectureConsistent,
            (true, false) => Status::Fail,
            (true, true) => Status::ConjectureViolated,
        }
    }
}

pub(crate) fn timed(
    check_id: &str,
    parameters: Value,
    body: impl FnOnce() -> Result<Verdict>,
) -> Result<CheckResult> {
    let start = Instant::now();
    let verdict = body()?;
    Ok(CheckResult {
        check_id: check_id.to_string(),
        parameters,
        status: verdict.status(),
        witness: verdict.witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
        notes: verdict.notes,
    })
}

/// One entry of a suite manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub check_id: String,
    #[serde(default)]
    pub parameters: Value,
}

impl CheckSpec {
    pub fn new(check_id: &str, parameters: Value) -> CheckSpec {
        CheckSpec {
            check_id: check_id.to_string(),
            parameters,
        }
    }
}

/// Check ids understood by [`run_check`], with a one-line description.
pub const CHECKS: &[(&str, &str)] = &[
    (
        "table-s3",
        "expansions of the symmetric pattern sets inside S_3",
    ),
    (
        "non-table-asymmetry",
        "every other subset of S_3 is eventually not symmetric",
    ),
    (
        "shuffle-recursion",
        "Q_n of a shuffle set from the recursion in Q_k of its factors",
    ),
    (
        "shuffle-positivity",
        "shuffles of Schur-nonnegative sets stay nonnegative (conjecture)",
    ),
    (
        "partial-shuffle",
        "fattened-hook expansion of partial shuffles, optionally with δ_m",
    ),
    (
        "run-lengths",
        "run structure of avoiders of {1243,1324,3124,4321}",
    ),
    (
        "knuth-classification",
        "K(P) is pattern-Knuth closed iff P is a superstandard hook",
    ),
    (
        "arc",
        "arc permutations and the shuffle class with the same Q_n",
    ),
    (
        "exceptional-examples",
        "a symmetric non-positive example and a late-symmetry example",
    ),
    (
        "rsk-laws",
        "Robinson–Schensted bijectivity and symmetry laws",
    ),
    (
        "dihedral-laws",
        "complement and reversal transpose the Schur expansion",
    ),
    (
        "fine-characters",
        "signed comodal sums of Knuth classes are irreducible characters",
    ),
];

struct Params<'a> {
    given: &'a Map<String, Value>,
    used: Map<String, Value>,
}

impl<'a> Params<'a> {
    fn new(v: &'a Value, empty: &'a Map<String, Value>) -> Result<Params<'a>> {
        let given = match v {
            Value::Null => empty,
            Value::Object(m) => m,
            other => {
                return Err(Error::InvalidInput(format!(
                    "parameters must be an object, got {other}"
                )))
            }
        };
        Ok(Params {
            given,
            used: Map::new(),
        })
    }

    fn usize(&mut self, key: &str, default: usize) -> Result<usize> {
        let v = match self.given.get(key) {
            None | Some(Value::Null) => default,
            Some(v) => v.as_u64().ok_or_else(|| {
                Error::InvalidInput(format!("parameter {key} must be a non-negative integer"))
            })? as usize,
        };
        self.used.insert(key.into(), json!(v));
        Ok(v)
    }

    fn opt_usize(&mut self, key: &str) -> Result<Option<usize>> {
        let v = match self.given.get(key) {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| {
                Error::InvalidInput(format!("parameter {key} must be a non-negative integer"))
            })? as usize),
        };
        self.used.insert(key.into(), json!(v));
        Ok(v)
    }

    fn patterns(&mut self, key: &str) -> Result<Option<PatternSet>> {
        let v = match self.given.get(key) {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                serde_json::from_value::<PatternSet>(v.clone()).or_else(|_| {
                    v.as_str()
                        .ok_or_else(|| {
                            Error::InvalidInput(format!("parameter {key} must be a pattern set"))
                        })?
                        .parse::<PatternSet>()
                })?,
            ),
        };
        if let Some(p) = &v {
            self.used.insert(key.into(), serde_json::to_value(p)?);
        }
        Ok(v)
    }

    fn pairs(&mut self, key: &str) -> Result<Option<Vec<(PatternSet, PatternSet)>>> {
        let v = match self.given.get(key) {
            None | Some(Value::Null) => None,
            Some(v) => Some(serde_json::from_value::<Vec<(PatternSet, PatternSet)>>(
                v.clone(),
            )?),
        };
        if let Some(p) = &v {
            self.used.insert(key.into(), serde_json::to_value(p)?);
        }
        Ok(v)
    }

    fn finish(self) -> Result<Value> {
        if let Some(extra) = self.given.keys().find(|k| !self.used.contains_key(*k)) {
            return Err(Error::InvalidInput(format!("unknown parameter {extra}")));
        }
        Ok(Value::Object(self.used))
    }
}

/// Runs the check `spec.check_id`, filling in default parameters.
pub fn run_check(spec: &CheckSpec) -> Result<CheckResult> {
    let empty = Map::new();
    let mut p = Params::new(&spec.parameters, &empty)?;
    match spec.check_id.as_str() {
        "table-s3" => {
            let n_max = p.usize("n_max", 8)?;
            p.finish()?;
            check_table_s3(n_max)
        }
        "non-table-asymmetry" => {
            let n_max = p.usize("n_max", 8)?;
            p.finish()?;
            check_non_table_asymmetry(n_max)
        }
        "shuffle-recursion" => {
            let n_max = p.usize("n_max", 7)?;
            let left = p.patterns("left")?;
            let right = p.patterns("right")?;
            p.finish()?;
            match (left, right) {
                (Some(l), Some(r)) => check_shuffle_recursion(&l, &r, n_max),
                (None, None) => check_shuffle_recursion_sample(&families::recursion_pairs(), n_max),
                _ => Err(Error::InvalidInput(
                    "give both left and right, or neither".into(),
                )),
            }
        }
        "shuffle-positivity" => {
            let n_max = p.usize("n_max", 7)?;
            let pairs = p.pairs("pairs")?;
            p.finish()?;
            let pairs = pairs.unwrap_or_else(families::positivity_pairs);
            check_conjecture_shuffle_nonneg(&pairs, n_max)
        }
        "partial-shuffle" => {
            let j = p.usize("j", 4)?;
            let m = p.opt_usize("m")?;
            let n_max = p.usize("n_max", 10)?;
            p.finish()?;
            check_partial_shuffle(j, m, n_max)
        }
        "run-lengths" => {
            let m_max = p.usize("m_max", 12)?;
            let n_max = p.usize("n_max", 10)?;
            p.finish()?;
            check_runlength_support(m_max, n_max)
        }
        "knuth-classification" => {
            let size_max = p.usize("size_max", 5)?;
            p.finish()?;
            check_knuth_classification(size_max)
        }
        "arc" => {
            let n_max = p.usize("n_max", 8)?;
            p.finish()?;
            check_arc(n_max)
        }
        "exceptional-examples" => {
            let n_max = p.usize("n_max", 8)?;
            p.finish()?;
            check_exceptional_examples(n_max)
        }
        "rsk-laws" => {
            let n_max = p.usize("n_max", 7)?;
            let laws_n = p.usize("laws_n", 6)?;
            p.finish()?;
            check_rsk_laws(n_max, laws_n)
        }
        "dihedral-laws" => {
            let n_max = p.usize("n_max", 8)?;
            p.finish()?;
            check_dihedral_laws(n_max)
        }
        "fine-characters" => {
            let size_max = p.usize("size_max", 5)?;
            p.finish()?;
            check_fine_characters(size_max)
        }
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

/// Runs `specs` concurrently. Results are returned in manifest order.
pub fn run_suite(specs: &[CheckSpec]) -> Vec<Result<CheckResult>> {
    specs.par_iter().map(run_check).collect()
}

/// Every check at its full parameters.
pub fn full_suite() -> Vec<CheckSpec> {
    vec![
        CheckSpec::new("table-s3", json!({"n_max": 8})),
        CheckSpec::new("non-table-asymmetry", json!({"n_max": 8})),
        CheckSpec::new("shuffle-recursion", json!({"n_max": 7})),
        CheckSpec::new("shuffle-positivity", json!({"n_max": 7})),
        CheckSpec::new("partial-shuffle", json!({"j": 3, "n_max": 10})),
        CheckSpec::new("partial-shuffle", json!({"j": 3, "m": 3, "n_max": 10})),
        CheckSpec::new("partial-shuffle", json!({"j": 4, "m": 4, "n_max": 10})),
        CheckSpec::new("partial-shuffle", json!({"j": 4, "n_max": 9})),
        CheckSpec::new("partial-shuffle", json!({"j": 5, "n_max": 8})),
        CheckSpec::new("partial-shuffle", json!({"j": 5, "m": 3, "n_max": 8})),
        CheckSpec::new("partial-shuffle", json!({"j": 5, "m": 4, "n_max": 8})),
        CheckSpec::new("run-lengths", json!({"m_max": 12, "n_max": 10})),
        CheckSpec::new("knuth-classification", json!({"size_max": 5})),
        CheckSpec::new("arc", json!({"n_max": 8})),
        CheckSpec::new("exceptional-examples", json!({"n_max": 8})),
        CheckSpec::new("rsk-laws", json!({"n_max": 7, "laws_n": 6})),
        CheckSpec::new("dihedral-laws", json!({"n_max": 8})),
        CheckSpec::new("fine-characters", json!({"size_max": 5})),
    ]
}

/// Every check at reduced sizes; finishes in seconds.
pub fn quick_suite() -> Vec<CheckSpec> {
    vec![
        CheckSpec::new("table-s3", json!({"n_max": 6})),
        CheckSpec::new("non-table-asymmetry", json!({"n_max": 6})),
        CheckSpec::new("shuffle-recursion", json!({"n_max": 5})),
        CheckSpec::new("shuffle-positivity", json!({"n_max": 5})),
        CheckSpec::new("partial-shuffle", json!({"j": 3, "n_max": 7})),
        CheckSpec::new("partial-shuffle", json!({"j": 4, "m": 4, "n_max": 8})),
        CheckSpec::new("partial-shuffle", json!({"j": 5, "n_max": 6})),
        CheckSpec::new("run-lengths", json!({"m_max": 10, "n_max": 8})),
        CheckSpec::new("knuth-classification", json!({"size_max": 4})),
        CheckSpec::new("arc", json!({"n_max": 6})),
        CheckSpec::new("exceptional-examples", json!({"n_max": 8})),
        CheckSpec::new("rsk-laws", json!({"n_max": 6, "laws_n": 5})),
        CheckSpec::new("dihedral-laws", json!({"n_max": 6})),
        CheckSpec::new("fine-characters", json!({"size_max": 4})),
    ]
}

/// Reads a manifest: a JSON array of `{check_id, parameters}`.
pub fn load_manifest(text: &str) -> Result<Vec<CheckSpec>> {
    Ok(serde_json::from_str(text)?)
}

/// Writes one JSON object per line.
pub fn write_jsonl<W: Write>(out: &mut W, results: &[CheckResult]) -> Result<()> {
    for r in results {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
