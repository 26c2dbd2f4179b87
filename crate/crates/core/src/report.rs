//! Verification reports and their three renderings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Where an expected value comes from: a published number, a value that is immediate
/// from the definitions, or one produced by an independent computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Published,
    Immediate,
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub reference: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub provenance: Provenance,
}

impl Check {
    /// Passes iff `computed` renders to `expected`; an error fails the check with its message.
    pub fn equal(
        id: &str,
        reference: &str,
        provenance: Provenance,
        expected: impl fmt::Display,
        computed: Result<String>,
    ) -> Check {
        let expected = expected.to_string();
        let (status, computed) = match computed {
            Ok(c) if c == expected => (Status::Pass, c),
            Ok(c) => (Status::Fail, c),
            Err(e) => (Status::Fail, format!("error: {}", e)),
        };
        Check {
            id: id.into(),
            reference: reference.into(),
            status,
            computed,
            expected,
            provenance,
        }
    }

    pub fn skip(
        id: &str,
        reference: &str,
        provenance: Provenance,
        expected: impl fmt::Display,
        reason: &str,
    ) -> Check {
        Check {
            id: id.into(),
            reference: reference.into(),
            status: Status::Skip,
            computed: format!("skipped: {}", reason),
            expected: expected.to_string(),
            provenance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub wall_time_ms: u64,
    pub version: String,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!("unknown format `{}`", other))),
        }
    }
}

fn tsv_field(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skip => "skip",
    }
}

fn provenance_word(p: Provenance) -> &'static str {
    match p {
        Provenance::Published => "published",
        Provenance::Immediate => "immediate",
        Provenance::Computed => "computed",
    }
}

pub fn emit(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("serialisable") + "\n",
        Format::Tsv => {
            let mut out = String::from("id\tstatus\tcomputed\texpected\tprovenance\treference\n");
            for c in &r.checks {
                let row = [
                    &c.id,
                    status_word(c.status),
                    &c.computed,
                    &c.expected,
                    provenance_word(c.provenance),
                    &c.reference,
                ];
                out += &row
                    .iter()
                    .map(|f| tsv_field(f))
                    .collect::<Vec<_>>()
                    .join("\t");
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "suite {} (olab {}, {} ms)\n",
                r.suite, r.version, r.wall_time_ms
            );
            for c in &r.checks {
                out += &format!(
                    "[{}] {}: {} (expected {}, {}) {}\n",
                    status_word(c.status).to_uppercase(),
                    c.id,
                    c.computed,
                    c.expected,
                    provenance_word(c.provenance),
                    c.reference
                );
            }
            let pass = r.checks.iter().filter(|c| c.status == Status::Pass).count();
            out += &format!(
                "{} passed, {} failed, {} skipped\n",
                pass,
                r.failures(),
                r.checks.len() - pass - r.failures()
            );
            out
        }
    }
}
