//! CSV and JSON serialisation of census results. Counts are exact; the
//! percentage column is the only rounded value.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::candidates::Candidates;
use crate::error::{Error, Result};
use crate::manipulation::{Notion, UncertaintySet, Weights};
use crate::DominanceKind;

use super::{CensusResult, CensusSpec, Source};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub set: String,
    pub notion: String,
    pub kind: String,
    pub n: usize,
    pub m: usize,
    pub total: u64,
    pub witness_profiles: u64,
    pub witness_pointed: u64,
    pub percentage: String,
}

impl CsvRow {
    pub fn new(spec: &CensusSpec, result: &CensusResult) -> Result<Self> {
        let labels = Candidates::default_labels(spec.n)?;
        Ok(CsvRow {
            set: result.set.name(&labels),
            notion: spec.notion.name().into(),
            kind: spec.kind.name().into(),
            n: spec.n,
            m: spec.m,
            total: result.total_profiles,
            witness_profiles: result.witnessing_profiles,
            witness_pointed: result.witnessing_pointed,
            percentage: format!("{:.4}", result.percentage()),
        })
    }
}

pub fn write_csv<W: Write>(out: W, spec: &CensusSpec, results: &[&CensusResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        w.serialize(CsvRow::new(spec, r)?).map_err(|e| Error::Json(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Json(e.to_string()))
}

/// The resolved configuration embedded in every JSON report; parsing it back
/// with [`ReportEcho::to_spec`] reproduces the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEcho {
    pub n: usize,
    pub m: usize,
    #[serde(flatten)]
    pub source: Source,
    pub notion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    pub kind: String,
    pub budget: u64,
    pub sets: Vec<String>,
}

impl ReportEcho {
    pub fn new(spec: &CensusSpec) -> Result<Self> {
        let labels = Candidates::default_labels(spec.n)?;
        Ok(ReportEcho {
            n: spec.n,
            m: spec.m,
            source: spec.source,
            notion: spec.notion.name().into(),
            weights: match &spec.notion {
                Notion::Expected(Weights::Explicit(w)) => Some(w.iter().map(ToString::to_string).collect()),
                _ => None,
            },
            kind: spec.kind.name().into(),
            budget: spec.budget,
            sets: spec.sets.iter().map(|s| s.name(&labels)).collect(),
        })
    }

    pub fn to_spec(&self) -> Result<CensusSpec> {
        let labels = Candidates::default_labels(self.n)?;
        let weights = self.weights.as_ref().map(|w| w.join(","));
        let kind: DominanceKind = self.kind.parse()?;
        Ok(CensusSpec {
            n: self.n,
            m: self.m,
            source: self.source,
            notion: Notion::parse(&self.notion, weights.as_deref())?,
            kind,
            sets: self
                .sets
                .iter()
                .map(|s| UncertaintySet::parse(s, &labels))
                .collect::<Result<_>>()?,
            budget: self.budget,
        })
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    spec: ReportEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    results: Vec<CsvRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra: Option<&'a serde_json::Value>,
}

/// Writes results with the spec echo; `extra` carries command-specific data
/// such as a pair-table layout.
pub fn write_json<W: Write>(
    out: W,
    spec: &CensusSpec,
    results: &[&CensusResult],
    extra: Option<&serde_json::Value>,
) -> Result<()> {
    let report = JsonReport {
        spec: ReportEcho::new(spec)?,
        seed: match spec.source {
            Source::Sample { seed, .. } => Some(seed),
            Source::Exhaustive => None,
        },
        results: results.iter().map(|r| CsvRow::new(spec, r)).collect::<Result<_>>()?,
        extra,
    };
    serde_json::to_writer_pretty(out, &report).map_err(|e| Error::Json(e.to_string()))
}
