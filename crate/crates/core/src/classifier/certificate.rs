use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::knowledgebase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Computed,
    Axiom,
}

/// One certificate entry: a computed fact with its inputs and outputs, or
/// a citation of a knowledge-base axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    pub description: String,
    #[serde(default)]
    pub values: BTreeMap<String, Value>,
}

impl Step {
    pub fn computed(name: &str, description: impl Into<String>) -> Self {
        Step {
            kind: StepKind::Computed,
            name: name.to_string(),
            axiom: None,
            description: description.into(),
            values: BTreeMap::new(),
        }
    }

    /// Panics on an id missing from the knowledge base: citations are
    /// built from its constants.
    pub fn axiom(id: &str, description: impl Into<String>) -> Self {
        let rec = knowledgebase::axiom(id).expect("certificate cites a known axiom");
        Step {
            kind: StepKind::Axiom,
            name: "cite".to_string(),
            axiom: Some(rec.id.to_string()),
            description: description.into(),
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    pub fn cites(&self, id: &str) -> bool {
        self.axiom.as_deref() == Some(id)
    }
}

pub type Certificate = Vec<Step>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Heavenly,
    NotHeavenly,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScreenOutcome {
    Plausible,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub kind: String,
    pub base_field: String,
    /// `[T : K₀]` for the 2-torsion field `T`.
    pub torsion_field_degree: Option<u64>,
    /// `[T : ℚ]`.
    pub torsion_field_absolute_degree: Option<u64>,
    /// Minimal polynomial over ℚ of a primitive element of `T`, ascending.
    pub torsion_field_polynomial: Option<Vec<String>>,
    /// Degree over ℚ of the Galois closure of `T`.
    pub closure_degree: Option<u64>,
    pub odd_ramified_primes: Option<Vec<String>>,
    pub screen: ScreenOutcome,
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resource_cap: Option<String>,
}

impl Verdict {
    pub fn step(&self, name: &str) -> Option<&Step> {
        self.certificate.iter().find(|s| s.name == name)
    }

    pub fn cites(&self, id: &str) -> bool {
        self.certificate.iter().any(|s| s.cites(id))
    }

    pub fn render(&self) -> String {
        let mut out = format!("status: {}\n", status_str(self.status));
        out.push_str(&format!("kind: {} over {}\n", self.kind, self.base_field));
        if let Some(d) = self.torsion_field_degree {
            out.push_str(&format!("2-torsion field degree over base: {d}\n"));
        }
        if let Some(p) = &self.odd_ramified_primes {
            out.push_str(&format!("odd ramified primes: {{{}}}\n", p.join(", ")));
        }
        if let Some(c) = self.closure_degree {
            out.push_str(&format!("Galois closure degree: {c}\n"));
        }
        if let Some(r) = &self.resource_cap {
            out.push_str(&format!("resource cap: {r}\n"));
        }
        for (i, s) in self.certificate.iter().enumerate() {
            let tag = match &s.axiom {
                Some(id) => format!("axiom {id}"),
                None => "computed".to_string(),
            };
            out.push_str(&format!("  {:>2}. [{tag}] {}: {}\n", i + 1, s.name, s.description));
        }
        out
    }
}

pub fn status_str(s: Status) -> &'static str {
    match s {
        Status::Heavenly => "heavenly",
        Status::NotHeavenly => "not_heavenly",
        Status::Unknown => "unknown",
    }
}
