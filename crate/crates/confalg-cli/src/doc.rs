//! Output documents and their renderers.
//!
//! The JSON schema is the contract: dimensions, degrees and weights are
//! integers (rationals never appear in output), field order is fixed, and
//! the table and CSV renderers derive deterministically from the same
//! document, so cache hits are byte-identical to cold runs.

use confalg::cdga::SpaceMeta;
use confalg::confspace::{ConfResult, StabilityReport};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaDoc {
    pub name: String,
    pub dimension: Option<u32>,
    pub smooth: bool,
    pub proper: bool,
    pub connected: bool,
    pub unital: bool,
}

impl From<&SpaceMeta> for MetaDoc {
    fn from(meta: &SpaceMeta) -> Self {
        MetaDoc {
            name: meta.name.clone(),
            dimension: meta.dimension,
            smooth: meta.smooth,
            proper: meta.proper,
            connected: meta.connected,
            unital: meta.unital,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub degree: i64,
    pub weight: i64,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Card {
    pub k: u32,
    pub betti: Vec<BettiRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDoc {
    pub space: MetaDoc,
    pub normalization: String,
    pub associated_graded: bool,
    pub cards: Vec<Card>,
}

/// Which normalizations to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    Constant,
    Dualizing,
    Both,
}

impl Normalization {
    pub fn as_str(&self) -> &'static str {
        match self {
            Normalization::Constant => "constant",
            Normalization::Dualizing => "dualizing",
            Normalization::Both => "both",
        }
    }
}

fn cards_of(r: &ConfResult, dualizing: bool) -> Vec<Card> {
    (1..=r.max_k())
        .map(|k| {
            let table = if dualizing {
                r.dualizing(k).expect("caller checked availability")
            } else {
                r.constant(k)
            };
            Card {
                k,
                betti: table
                    .iter()
                    .map(|(degree, weight, dim)| BettiRow {
                        degree,
                        weight,
                        dim: dim as u64,
                    })
                    .collect(),
            }
        })
        .collect()
}

/// One document per requested normalization, in a fixed order.
pub fn documents(r: &ConfResult, normalization: Normalization) -> Vec<OutputDoc> {
    let doc = |which: &str, dualizing: bool| OutputDoc {
        space: MetaDoc::from(r.meta()),
        normalization: which.to_string(),
        associated_graded: r.associated_graded(),
        cards: cards_of(r, dualizing),
    };
    match normalization {
        Normalization::Constant => vec![doc("constant", false)],
        Normalization::Dualizing => vec![doc("dualizing", true)],
        Normalization::Both => vec![doc("constant", false), doc("dualizing", true)],
    }
}

pub fn render_json(docs: &[OutputDoc]) -> String {
    let mut s = if docs.len() == 1 {
        serde_json::to_string_pretty(&docs[0]).expect("plain structs serialize")
    } else {
        serde_json::to_string_pretty(docs).expect("plain structs serialize")
    };
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Option<Vec<OutputDoc>> {
    if let Ok(one) = serde_json::from_str::<OutputDoc>(text) {
        return Some(vec![one]);
    }
    serde_json::from_str::<Vec<OutputDoc>>(text).ok()
}

fn meta_summary(m: &MetaDoc) -> String {
    let mut attrs = Vec::new();
    if let Some(d) = m.dimension {
        attrs.push(format!("dimension {d}"));
    }
    attrs.push(if m.smooth { "smooth" } else { "non-smooth" }.to_string());
    attrs.push(if m.proper { "proper" } else { "non-proper" }.to_string());
    attrs.push(
        if m.connected {
            "connected"
        } else {
            "disconnected"
        }
        .to_string(),
    );
    attrs.push(if m.unital { "unital" } else { "non-unital" }.to_string());
    format!("{} ({})", m.name, attrs.join(", "))
}

pub fn render_table(docs: &[OutputDoc]) -> String {
    let mut out = String::new();
    for doc in docs {
        out.push_str(&format!("# space: {}\n", meta_summary(&doc.space)));
        out.push_str(&format!("# normalization: {}\n", doc.normalization));
        if doc.associated_graded {
            out.push_str("# associated_graded: true\n");
        } else {
            out.push_str("# associated_graded: false (exact: dimension-forced)\n");
        }
        out.push_str("k\tdegree\tweight\tdim\n");
        for card in &doc.cards {
            for row in &card.betti {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    card.k, row.degree, row.weight, row.dim
                ));
            }
        }
    }
    out
}

pub fn render_csv(docs: &[OutputDoc]) -> String {
    let mut out = String::from("normalization,k,degree,weight,dim\n");
    for doc in docs {
        for card in &doc.cards {
            for row in &card.betti {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    doc.normalization, card.k, row.degree, row.weight, row.dim
                ));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityRowDoc {
    pub k: u32,
    pub degree: i64,
    pub dim_k: u64,
    pub dim_next: u64,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityDoc {
    pub space: MetaDoc,
    pub note: String,
    pub max_card: u32,
    pub rows: Vec<StabilityRowDoc>,
}

pub fn stability_document(r: &ConfResult, report: &StabilityReport) -> StabilityDoc {
    StabilityDoc {
        space: MetaDoc::from(r.meta()),
        note: StabilityReport::NOTE.to_string(),
        max_card: r.max_k(),
        rows: report
            .rows()
            .iter()
            .map(|row| StabilityRowDoc {
                k: row.k,
                degree: row.degree,
                dim_k: row.dim_k as u64,
                dim_next: row.dim_next as u64,
                verdict: row.verdict.as_str().to_string(),
            })
            .collect(),
    }
}

pub fn render_stability_json(doc: &StabilityDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain structs serialize");
    s.push('\n');
    s
}

pub fn render_stability_table(doc: &StabilityDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("# space: {}\n", meta_summary(&doc.space)));
    out.push_str(&format!("# note: {}\n", doc.note));
    out.push_str("k\tdegree\tdim_k\tdim_k+1\tverdict\n");
    for row in &doc.rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            row.k, row.degree, row.dim_k, row.dim_next, row.verdict
        ));
    }
    out
}

pub fn render_stability_csv(doc: &StabilityDoc) -> String {
    let mut out = String::from("k,degree,dim_k,dim_next,verdict\n");
    for row in &doc.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.k, row.degree, row.dim_k, row.dim_next, row.verdict
        ));
    }
    out
}
