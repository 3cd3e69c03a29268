//! JSON rendering of sweep curves, mirroring the CSV columns.

use serde::{Deserialize, Serialize};

use onpp_core::SweepCurve;

use crate::csv::SweepDocument;

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SweepJson {
    pub model: String,
    pub param_kind: String,
    pub param_value: f64,
    pub working_b1: f64,
    pub convention: String,
    pub points: Vec<PointJson>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PointJson {
    pub l: u32,
    pub chain_b1: f64,
    pub m: u32,
    #[serde(rename = "M")]
    pub pairs: u128,
    pub converged: bool,
    pub growth_class: Option<String>,
}

pub fn render(doc: &SweepDocument) -> String {
    let curve: &SweepCurve = &doc.curve;
    let points = curve
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| PointJson {
            l: p.l,
            chain_b1: p.chain_b1,
            m: p.rounds_m,
            pairs: p.pairs,
            converged: p.converged,
            growth_class: curve.growth_class_at(i).map(|c| c.label().to_string()),
        })
        .collect();
    let json = SweepJson {
        model: curve.model.label().to_string(),
        param_kind: doc.param_kind.label().to_string(),
        param_value: doc.param_value,
        working_b1: curve.working_b1,
        convention: curve.convention.label().to_string(),
        points,
    };
    let mut text = serde_json::to_string_pretty(&json)
        .expect("sweep document serialization cannot fail");
    text.push('\n');
    text
}
