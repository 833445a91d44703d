//! Seeded sweeps of every bound over graph corpora.
//!
//! [`generate_corpus`] builds the graphs, [`run_sweep`] evaluates every
//! `(graph, α, distribution family, theorem, variant)` cell and aggregates the
//! verdicts, and [`summarize_report`] renders the result as JSON, CSV or text.
//! Runs are reproducible: the same [`SweepConfig`] always gives byte-identical
//! JSON, whatever the thread count.

mod config;
mod corpus;
mod summary;
mod sweep;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::inequalities::{BoundReport, Direction, TheoremId, Variant};

pub use config::{SpecTemplate, SweepConfig, DEFAULT_ALPHA_GRID};
pub use corpus::{generate_corpus, gnp_seed, Corpus, CorpusEntry, CorpusGraph, SkippedSample};
pub use summary::{summarize_report, ReportFormat};
pub use sweep::{run_sweep, Aggregate, Exemplar, SweepReport};

/// One evaluated cell of a sweep, or a cell whose evaluation failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub theorem: TheoremId,
    pub variant: Variant,
    #[serde(with = "real")]
    pub alpha: f64,
    pub graph_id: String,
    /// Distribution family: `orbits` or a functional template label.
    pub family: String,
    pub holds: Option<bool>,
    pub precondition_met: bool,
    #[serde(with = "real")]
    pub lhs: f64,
    #[serde(with = "real")]
    pub bound: f64,
    #[serde(with = "real")]
    pub slack: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    #[serde(with = "real_map")]
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Cell {
    pub fn from_report(r: &BoundReport<f64>, graph_id: &str, family: &str) -> Self {
        Self {
            theorem: r.theorem,
            variant: r.variant,
            alpha: r.alpha,
            graph_id: graph_id.to_string(),
            family: family.to_string(),
            holds: r.holds,
            precondition_met: r.precondition_met,
            lhs: r.lhs,
            bound: r.bound,
            slack: r.slack,
            direction: Some(r.direction),
            params: r.params.clone(),
            note: r.note.clone(),
        }
    }

    /// A not-applicable cell recording why evaluation failed.
    pub fn failed(
        theorem: TheoremId,
        variant: Variant,
        alpha: f64,
        graph_id: &str,
        family: &str,
        reason: String,
    ) -> Self {
        Self {
            theorem,
            variant,
            alpha,
            graph_id: graph_id.to_string(),
            family: family.to_string(),
            holds: None,
            precondition_met: false,
            lhs: f64::NAN,
            bound: f64::NAN,
            slack: f64::NAN,
            direction: None,
            params: BTreeMap::new(),
            note: Some(reason),
        }
    }
}

/// JSON has no infinities or NaN; those are written as the strings
/// `"inf"`, `"-inf"` and `"nan"` so reports stay lossless.
pub(crate) mod real {
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "nan" => Ok(f64::NAN),
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(serde::de::Error::custom(format!("not a number: {other:?}"))),
            },
        }
    }

    #[derive(serde::Serialize, serde::Deserialize)]
    #[serde(transparent)]
    pub struct Real(#[serde(with = "crate::harness::real")] pub f64);
}

pub(crate) mod real_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::real::Real;

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
        let wrapped: BTreeMap<&str, Real> = m.iter().map(|(k, v)| (k.as_str(), Real(*v))).collect();
        wrapped.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
        let wrapped = BTreeMap::<String, Real>::deserialize(d)?;
        Ok(wrapped.into_iter().map(|(k, v)| (k, v.0)).collect())
    }
}

pub(crate) mod real_opt {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::real::Real;

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        x.map(Real).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Ok(Option::<Real>::deserialize(d)?.map(|r| r.0))
    }
}
