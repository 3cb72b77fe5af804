//! Config-driven verification: the conjecture pipelines, the randomized
//! degree harness, the property suites and report serialization.

mod claims;
mod degrees;
mod pipeline;
mod props;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::families::Family;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::sets::IndexSet;

pub use claims::{claims_report, ClaimsReport};
pub use degrees::{degree_property_harness, lemma_det, lemma_u_sum, DegreeInstance};
pub use pipeline::{verify_conjecture, Setup};
pub use props::{run_suite, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    SetTransforms,
    CasoratianNonvanishing,
    Orthogonality,
    Eigenfunction,
    Order,
    InternalClaims,
    DegreeLemmas,
    /// Property suites only.
    StructuralIdentities,
    PairingFormulas,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::SetTransforms,
        CheckName::CasoratianNonvanishing,
        CheckName::Orthogonality,
        CheckName::Eigenfunction,
        CheckName::Order,
        CheckName::InternalClaims,
        CheckName::DegreeLemmas,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::SetTransforms => "set_transforms",
            CheckName::CasoratianNonvanishing => "casoratian_nonvanishing",
            CheckName::Orthogonality => "orthogonality",
            CheckName::Eigenfunction => "eigenfunction",
            CheckName::Order => "order",
            CheckName::InternalClaims => "internal_claims",
            CheckName::DegreeLemmas => "degree_lemmas",
            CheckName::StructuralIdentities => "structural_identities",
            CheckName::PairingFormulas => "pairing_formulas",
        }
    }

    pub fn parse(s: &str) -> crate::Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| crate::Error::Parse(format!("unknown check {s:?}")))
    }
}

fn default_n_max() -> usize {
    10
}

fn default_checks() -> Vec<CheckName> {
    vec![
        CheckName::SetTransforms,
        CheckName::CasoratianNonvanishing,
        CheckName::Orthogonality,
        CheckName::Eigenfunction,
        CheckName::Order,
    ]
}

fn default_trials() -> usize {
    60
}

/// Input of [`verify_conjecture`]. `F1`/`F2` are the root sets of the
/// measure in the conjecture; the derived Casorati sets are computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub family: Family,
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    #[serde(default, with = "crate::rational::serde_str::option", skip_serializing_if = "Option::is_none")]
    pub c: Option<Rational>,
    #[serde(rename = "N", default, with = "crate::rational::serde_str::option", skip_serializing_if = "Option::is_none")]
    pub n: Option<Rational>,
    #[serde(rename = "F1", default)]
    pub f1: IndexSet,
    #[serde(rename = "F2", default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<IndexSet>,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(rename = "S", default = "Polynomial::one")]
    pub s: Polynomial,
    #[serde(default = "default_checks")]
    pub checks: Vec<CheckName>,
    #[serde(default)]
    pub seed: u64,
    /// Trials of the randomized degree harness when `degree_lemmas` is requested.
    #[serde(default = "default_trials")]
    pub trials: usize,
}

impl VerifyConfig {
    pub fn new(family: Family, a: Rational) -> Self {
        VerifyConfig {
            family,
            a,
            c: None,
            n: None,
            f1: IndexSet::empty(),
            f2: None,
            n_max: default_n_max(),
            s: Polynomial::one(),
            checks: default_checks(),
            seed: 0,
            trials: default_trials(),
        }
    }

    pub fn wants(&self, check: CheckName) -> bool {
        self.checks.contains(&check)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// The configuration or a hypothesis of the construction is violated.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<Polynomial>,
}

impl Witness {
    pub fn note(detail: impl Into<String>) -> Self {
        Witness { n: None, detail: detail.into(), residual: None }
    }

    pub fn at(n: i64, detail: impl Into<String>) -> Self {
        Witness { n: Some(n), detail: detail.into(), residual: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: CheckName,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub data: serde_json::Value,
}

impl CheckEntry {
    pub fn skipped(name: CheckName) -> Self {
        CheckEntry { name, status: Status::Skipped, witnesses: Vec::new(), data: serde_json::Value::Null }
    }

    pub fn error(name: CheckName, err: &crate::Error) -> Self {
        CheckEntry {
            name,
            status: Status::Error,
            witnesses: vec![Witness::note(err.to_string())],
            data: serde_json::Value::Null,
        }
    }

    /// Pass iff there are no witnesses.
    pub fn judged(name: CheckName, witnesses: Vec<Witness>, data: serde_json::Value) -> Self {
        let status = if witnesses.is_empty() { Status::Pass } else { Status::Fail };
        CheckEntry { name, status, witnesses, data }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    /// Omitted unless timing is requested, so reports stay byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: serde_json::Value,
    pub checks: Vec<CheckEntry>,
    pub meta: Meta,
}

impl VerifyReport {
    pub fn new(config: serde_json::Value, checks: Vec<CheckEntry>) -> Self {
        VerifyReport {
            config,
            checks,
            meta: Meta { version: env!("CARGO_PKG_VERSION").into(), runtime_ms: None },
        }
    }

    pub fn check(&self, name: CheckName) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 2 on any error entry, else 1 on any failure, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Error) {
            2
        } else if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skipped))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(crate::Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn emit_report(report: &VerifyReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("reports serialize");
            out.push(b'\n');
            out
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let _ = writeln!(s, "{:<24} {:?}", c.name.as_str(), c.status);
                for w in &c.witnesses {
                    match w.n {
                        Some(n) => {
                            let _ = writeln!(s, "    n={n}: {}", w.detail);
                        }
                        None => {
                            let _ = writeln!(s, "    {}", w.detail);
                        }
                    }
                    if let Some(r) = &w.residual {
                        let _ = writeln!(s, "    residual: {r}");
                    }
                }
            }
            if let Some(ms) = report.meta.runtime_ms {
                let _ = writeln!(s, "runtime_ms {ms}");
            }
            s.into_bytes()
        }
    }
}

pub fn parse_report(bytes: &[u8]) -> crate::Result<VerifyReport> {
    serde_json::from_slice(bytes).map_err(|e| crate::Error::Parse(e.to_string()))
}

/// Renders rationals as report strings.
pub(crate) fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(crate::rational::to_string).collect()
}
