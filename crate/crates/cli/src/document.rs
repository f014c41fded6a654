//! The versioned JSON report document emitted by every command.
//!
//! Rationals appear as exact `p/q` strings throughout; a document parsed
//! back yields identical in-memory values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use tiltwall::cohom::ExtDims;
use tiltwall::report::{rational_string, SurdRecord};
use tiltwall::scenarios::{CandidateRecord, WallReport};
use tiltwall::walls::WallLocus;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    /// Echo of the query arguments, keyed by flag name.
    pub query: BTreeMap<String, String>,
    pub results: Results,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub citations: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, query: BTreeMap<String, String>, results: Results) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            query,
            results,
            citations: Vec::new(),
        }
    }

    pub fn with_citations(mut self, citations: Vec<String>) -> Self {
        self.citations = citations;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents always serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Results {
    Wall(WallResult),
    Candidates(CandidatesResult),
    Ext(ExtResult),
    Cohom(CohomResult),
    Report(Box<WallReport>),
    Oracle(OracleResult),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WallResult {
    pub locus: WallLocus,
    /// Beta-axis abscissae `center -/+ sqrt(radius_sq)` for semicircles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<(SurdRecord, SurdRecord)>,
    /// `(beta, alpha_sq)` of the top point for semicircles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_point: Option<TopPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopPoint {
    #[serde(with = "rational_string")]
    pub beta: tiltwall::arith::Rational,
    #[serde(with = "rational_string")]
    pub alpha_sq: tiltwall::arith::Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidatesResult {
    #[serde(with = "rational_string")]
    pub min_radius_sq: tiltwall::arith::Rational,
    pub include_equal_radius: bool,
    pub candidates: Vec<CandidateRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtResult {
    pub source: String,
    pub target: String,
    pub dims: ExtDims,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomResult {
    pub line_bundle: String,
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub r_max: i64,
    pub d_max: i64,
    pub c_max: i64,
    pub candidates: Vec<CandidateRecord>,
    /// Present when the sweep was checked against the enumeration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matches_enumeration: Option<bool>,
}
