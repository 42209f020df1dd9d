use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Produced by this run.
    Computed,
    /// A formula or constant taken from the literature.
    PaperCited,
    /// Depends on an assumption that the run does not check.
    AssumptionFlagged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    /// Stopped at a resource cap; the result holds what was computed.
    Truncated,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Complete => 0,
            Status::Truncated => 2,
        }
    }
}

/// Every report: the result together with the provenance of each of its fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub command: String,
    pub status: Status,
    pub provenance: BTreeMap<String, Provenance>,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, result: T) -> Self {
        Envelope { command: command.to_string(), status: Status::Complete, provenance: BTreeMap::new(), result }
    }

    pub fn tag(mut self, field: &str, p: Provenance) -> Self {
        self.provenance.insert(field.to_string(), p);
        self
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Exit status recorded in a serialized envelope.
pub fn status_of(json: &str) -> Status {
    serde_json::from_str::<serde_json::Value>(json)
        .ok()
        .and_then(|v| serde_json::from_value(v["status"].clone()).ok())
        .unwrap_or(Status::Complete)
}
