//! JSON report document shared by the CLI and library callers.
//!
//! Exact integers are written as decimal strings so deep rows survive any
//! JSON consumer that would squeeze numbers through a 64-bit float.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::identities::{IdentityReport, SweepReport};
use crate::oracle::CrossCheck;

pub const SCHEMA_VERSION: &str = "hosoya-report/1";

/// Serde adapter: `BigInt` <-> decimal string.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }

    /// Same, for `Vec<BigInt>`.
    pub mod vec {
        use num_bigint::BigInt;
        use serde::{de, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(
            values: &[BigInt],
            serializer: S,
        ) -> Result<S::Ok, S::Error> {
            serializer.collect_seq(values.iter().map(ToString::to_string))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            deserializer: D,
        ) -> Result<Vec<BigInt>, D::Error> {
            Vec::<String>::deserialize(deserializer)?
                .iter()
                .map(|s| s.parse().map_err(de::Error::custom))
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ReportResult {
    Identity(IdentityReport),
    Sweep(SweepReport),
    OracleCheck(CrossCheck),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Vec<ReportResult>,
    pub generated_at: String,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, inputs: BTreeMap<String, String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.into(),
            inputs,
            results: Vec::new(),
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Number of failing checks across all results.
    pub fn failure_count(&self) -> usize {
        self.results
            .iter()
            .map(|r| match r {
                ReportResult::Identity(rep) => usize::from(!rep.holds),
                ReportResult::Sweep(s) => s.failure_count,
                ReportResult::OracleCheck(c) => c.mismatches.len(),
            })
            .sum()
    }
}
