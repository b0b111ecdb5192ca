//! JSON exchange format: elements with ranks and labels, plus cover pairs.
//!
//! ```json
//! {"trunc_rank": 2,
//!  "elements": [{"id": 0, "rank": 0, "label": "(0,0)"}, ...],
//!  "covers": [[0, 1], ...]}
//! ```
//!
//! Only covers are stored; loading recomputes the transitive closure and
//! validates. Labels carry no meaning.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Element, ElementId, GradedPoset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub id: ElementId,
    pub rank: u32,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub trunc_rank: u32,
    pub elements: Vec<ElementRecord>,
    pub covers: Vec<[ElementId; 2]>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed poset JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid poset: {0}")]
    Poset(#[from] PosetError),
}

impl PosetDocument {
    pub fn into_poset(self) -> Result<GradedPoset, PosetError> {
        let len = self.elements.len();
        let mut slots: Vec<Option<Element>> = vec![None; len];
        for rec in self.elements {
            let slot = slots
                .get_mut(rec.id as usize)
                .ok_or_else(|| PosetError::BadElementIds { len, detail: format!("id {} out of range", rec.id) })?;
            if slot.is_some() {
                return Err(PosetError::BadElementIds { len, detail: format!("id {} repeated", rec.id) });
            }
            *slot = Some(Element::new(rec.rank, rec.label));
        }
        let elements = slots.into_iter().map(|e| e.expect("every slot filled")).collect();
        let covers: Vec<(ElementId, ElementId)> = self.covers.iter().map(|&[a, b]| (a, b)).collect();
        GradedPoset::from_covers(self.trunc_rank, elements, &covers)
    }
}

impl GradedPoset {
    pub fn to_document(&self) -> PosetDocument {
        PosetDocument {
            trunc_rank: self.trunc_rank(),
            elements: (0..self.len() as ElementId)
                .map(|id| ElementRecord { id, rank: self.rank(id), label: self.label(id).to_owned() })
                .collect(),
            covers: self.cover_pairs().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("poset documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<GradedPoset, LoadError> {
        let doc: PosetDocument = serde_json::from_str(text)?;
        Ok(doc.into_poset()?)
    }
}
