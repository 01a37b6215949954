//! Serialization of proofs, models, and run reports.
//!
//! Proof JSON: nodes carry `{kind, rule, added, children}`, where an added
//! fact is either `{label: {id, polarity}, formula}` or
//! `{lhs, rhs, relation}` with relation `"eq"` or `"neq"`.
//! Model JSON: `{universe, designated, neg, impl, ident, valuation}` with the
//! tables as `[a, result]` / `[a, b, result]` rows.

use crate::equality::{Label, Polarity};
use crate::formula::render;
use crate::model::{SciModel, Valuation};
use crate::tableau::{Fact, ProofNode, ProofTree};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct LabelJson {
    pub id: u32,
    pub polarity: &'static str,
}

impl From<Label> for LabelJson {
    fn from(label: Label) -> LabelJson {
        LabelJson {
            id: label.id,
            polarity: match label.polarity {
                Polarity::Plus => "plus",
                Polarity::Minus => "minus",
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum FactJson {
    Formula {
        label: LabelJson,
        formula: String,
    },
    Relation {
        lhs: LabelJson,
        rhs: LabelJson,
        relation: &'static str,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofNodeJson {
    pub kind: &'static str,
    pub rule: &'static str,
    pub added: Vec<FactJson>,
    pub children: Vec<ProofNodeJson>,
}

fn fact_json(fact: &Fact) -> FactJson {
    match fact {
        Fact::Formula(lf) => FactJson::Formula {
            label: lf.label.into(),
            formula: render(&lf.formula),
        },
        Fact::Equal(w, v) => FactJson::Relation {
            lhs: (*w).into(),
            rhs: (*v).into(),
            relation: "eq",
        },
        Fact::Distinct(w, v) => FactJson::Relation {
            lhs: (*w).into(),
            rhs: (*v).into(),
            relation: "neq",
        },
    }
}

fn node_json(node: &ProofNode) -> ProofNodeJson {
    ProofNodeJson {
        kind: node.kind.as_str(),
        rule: node.rule.as_str(),
        added: node.added.iter().map(fact_json).collect(),
        children: node.children.iter().map(node_json).collect(),
    }
}

/// The proof tree in its JSON shape.
pub fn proof_to_json(tree: &ProofTree) -> ProofNodeJson {
    node_json(&tree.root)
}

fn dot_escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

fn fact_line(fact: &Fact) -> String {
    match fact {
        Fact::Formula(lf) => lf.to_string(),
        Fact::Equal(w, v) => format!("{w} = {v}"),
        Fact::Distinct(w, v) => format!("{w} != {v}"),
    }
}

/// The proof tree as a DOT digraph, one node per rule application.
pub fn proof_to_dot(tree: &ProofTree) -> String {
    fn emit(node: &ProofNode, next: &mut usize, out: &mut String) -> usize {
        let id = *next;
        *next += 1;
        let mut label = node.rule.as_str().to_string();
        for fact in &node.added {
            label.push_str("\\n");
            label.push_str(&dot_escape(&fact_line(fact)));
        }
        if node.added.is_empty() {
            label.push_str("\\n");
            label.push_str(node.kind.as_str());
        }
        out.push_str(&format!("  n{id} [label=\"{label}\"];\n"));
        for child in &node.children {
            let child_id = emit(child, next, out);
            out.push_str(&format!("  n{id} -> n{child_id};\n"));
        }
        id
    }
    let mut out = String::from("digraph proof {\n  node [shape=box];\n");
    let mut next = 0;
    emit(&tree.root, &mut next, &mut out);
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelJson {
    pub universe: Vec<u32>,
    pub designated: Vec<u32>,
    pub neg: Vec<[u32; 2]>,
    #[serde(rename = "impl")]
    pub implication: Vec<[u32; 3]>,
    pub ident: Vec<[u32; 3]>,
    pub valuation: BTreeMap<String, u32>,
}

/// The model plus the atom part of its valuation, in the JSON shape.
pub fn model_to_json(model: &SciModel, valuation: &Valuation) -> ModelJson {
    ModelJson {
        universe: model.universe.clone(),
        designated: model.designated.iter().copied().collect(),
        neg: model.neg.iter().map(|(&a, &r)| [a, r]).collect(),
        implication: model
            .implication
            .iter()
            .map(|(&(a, b), &r)| [a, b, r])
            .collect(),
        ident: model
            .identity
            .iter()
            .map(|(&(a, b), &r)| [a, b, r])
            .collect(),
        valuation: valuation.atom_assignments(),
    }
}

/// One decision run, summarized.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub formula: String,
    pub mode: &'static str,
    pub urfather_blocking: bool,
    pub transform_t: bool,
    pub verdict: &'static str,
    pub depth: usize,
    pub size: usize,
    pub branch_rule_applications: Vec<u64>,
    pub rule_application_bound: u64,
    pub wall_time_ms: f64,
}
