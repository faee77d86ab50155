//! JSON and DOT renderings of glued skeletons.

use super::glue::GluedSkeleton;
use super::skeleton::PointKind;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionJson {
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "K")]
    pub k: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub id: usize,
    pub section: SectionJson,
    pub ideal: Vec<String>,
    pub kind: PointKind,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub section: String,
    pub generic: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub components: Vec<ComponentJson>,
    /// For every point, the `(component, local point)` pairs glued into it.
    pub members: Vec<Vec<(usize, usize)>>,
    pub relations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonJson {
    pub points: Vec<PointJson>,
    /// Covering specializations `[from, to]`.
    pub edges: Vec<(usize, usize)>,
    pub provenance: ProvenanceJson,
}

impl<'de> Deserialize<'de> for PointKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(match s.as_str() {
            "VeryClosed" => PointKind::VeryClosed,
            "StratumGeneric" => PointKind::StratumGeneric,
            "Rational" => PointKind::Rational,
            "GenericFamily" => PointKind::GenericFamily,
            "Custom" => PointKind::Custom,
            _ => return Err(serde::de::Error::custom(format!("unknown point kind `{s}`"))),
        })
    }
}

impl GluedSkeleton {
    pub fn to_json_value(&self) -> SkeletonJson {
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(id, p)| PointJson {
                id,
                section: SectionJson { h: p.section.0.clone(), k: p.section.1.clone() },
                ideal: p.ideal.clone(),
                kind: p.kind,
                label: p.label.clone(),
            })
            .collect();
        let components = self
            .components
            .iter()
            .zip(self.component_generics())
            .map(|(c, generic)| ComponentJson { section: c.label.clone(), generic })
            .collect();
        SkeletonJson {
            points,
            edges: self.covering_edges(),
            provenance: ProvenanceJson {
                components,
                members: self.points.iter().map(|p| p.members.clone()).collect(),
                relations: self.relations.len(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    /// Closed points at the top; green marks rational points of the
    /// cohomological open and brown the generic points of nontrivial strata.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph spectrum {\n  rankdir=BT;\n  edge [arrowhead=none];\n");
        for (i, p) in self.points.iter().enumerate() {
            let style = match p.kind {
                PointKind::VeryClosed => "shape=box".to_string(),
                PointKind::StratumGeneric if !p.local_open => "color=brown, fontcolor=brown".into(),
                PointKind::Rational if p.local_open => "color=green, fontcolor=green".into(),
                PointKind::GenericFamily => "style=dashed, color=gray".into(),
                PointKind::Custom => "color=blue".into(),
                _ => "shape=ellipse".into(),
            };
            let _ = writeln!(out, "  p{i} [label=\"{}\", {style}];", p.label.replace('"', "'"));
        }
        for (i, j) in self.covering_edges() {
            let _ = writeln!(out, "  p{i} -> p{j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.points.iter().enumerate() {
            let closure: Vec<String> =
                self.closure(i).into_iter().filter(|&j| j != i).map(|j| self.points[j].label.clone()).collect();
            let _ = writeln!(out, "{i}\t{}\t{:?}\t-> {}", p.label, p.kind, closure.join(", "));
        }
        out
    }
}

pub fn parse_json(text: &str) -> Result<SkeletonJson> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))
}
