//! Step-by-step record of how a solver call produced (or failed to produce) its witness.

use serde::{Deserialize, Serialize};

/// Fixed vocabulary of proof steps a trace may mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    #[serde(rename = "Prop1.C1")]
    Prop1Case1,
    #[serde(rename = "Prop1.C2")]
    Prop1Case2,
    #[serde(rename = "Prop1.C3")]
    Prop1Case3,
    #[serde(rename = "L2.5")]
    Exchange,
    #[serde(rename = "L2.6")]
    Decompose,
    #[serde(rename = "Prop2")]
    Prop2,
    #[serde(rename = "Prop3")]
    Prop3,
    #[serde(rename = "Claim1.C1")]
    Claim1Case1,
    #[serde(rename = "Claim1.C2")]
    Claim1Case2,
    #[serde(rename = "Claim2")]
    Claim2,
    #[serde(rename = "Claim2.1")]
    Claim2Sub1,
    #[serde(rename = "Claim3")]
    Claim3,
    #[serde(rename = "Fallback")]
    Fallback,
}

impl Step {
    pub const ALL: [Step; 13] = [
        Step::Prop1Case1,
        Step::Prop1Case2,
        Step::Prop1Case3,
        Step::Exchange,
        Step::Decompose,
        Step::Prop2,
        Step::Prop3,
        Step::Claim1Case1,
        Step::Claim1Case2,
        Step::Claim2,
        Step::Claim2Sub1,
        Step::Claim3,
        Step::Fallback,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Step::Prop1Case1 => "Prop1.C1",
            Step::Prop1Case2 => "Prop1.C2",
            Step::Prop1Case3 => "Prop1.C3",
            Step::Exchange => "L2.5",
            Step::Decompose => "L2.6",
            Step::Prop2 => "Prop2",
            Step::Prop3 => "Prop3",
            Step::Claim1Case1 => "Claim1.C1",
            Step::Claim1Case2 => "Claim1.C2",
            Step::Claim2 => "Claim2",
            Step::Claim2Sub1 => "Claim2.1",
            Step::Claim3 => "Claim3",
            Step::Fallback => "Fallback",
        }
    }
}

impl std::fmt::Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub label: Step,
    pub vertices: Vec<usize>,
    pub fallback: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveTrace {
    pub steps: Vec<TraceStep>,
}

impl SolveTrace {
    pub(crate) fn push(&mut self, label: Step, vertices: &[usize], detail: impl Into<String>) {
        self.steps.push(TraceStep {
            label,
            vertices: vertices.to_vec(),
            fallback: label == Step::Fallback,
            detail: detail.into(),
        });
    }

    pub fn used_fallback(&self) -> bool {
        self.steps.iter().any(|s| s.fallback)
    }

    pub fn first_label(&self) -> Option<Step> {
        self.steps.first().map(|s| s.label)
    }

    pub fn contains(&self, label: Step) -> bool {
        self.steps.iter().any(|s| s.label == label)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("trace serializes")
    }
}
