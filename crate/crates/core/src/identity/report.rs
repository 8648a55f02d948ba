use serde_json::{json, Value};

use crate::exact::Scalar;

/// First failing tuple of a check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub indices: Vec<i64>,
    pub labels: Vec<String>,
    /// Nonzero coordinates of the defect.
    pub defect: Vec<(i64, Scalar)>,
    pub rendered: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub id: String,
    pub holds: bool,
    /// Tuples evaluated; on failure, up to and including the witness.
    pub tuples_checked: u64,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn holds(id: &str, tuples: u64) -> Self {
        CheckReport {
            id: id.to_string(),
            holds: true,
            tuples_checked: tuples,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn fails(id: &str, tuples: u64, witness: Witness) -> Self {
        CheckReport {
            id: id.to_string(),
            holds: false,
            tuples_checked: tuples,
            witness: Some(witness),
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn verdict(&self) -> &'static str {
        if self.holds {
            "holds"
        } else {
            "fails"
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "id": self.id,
            "verdict": self.verdict(),
            "tuples_checked": self.tuples_checked,
        });
        if let Some(w) = &self.witness {
            v["witness"] = json!({
                "tuple": w.labels,
                "indices": w.indices,
                "defect": w.defect.iter().map(|(i, c)| json!([i, c.to_json()])).collect::<Vec<_>>(),
                "defect_text": w.rendered,
            });
        }
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        v
    }

    /// One line, e.g. `jacobi: holds (27 tuples)`.
    pub fn summary(&self) -> String {
        let mut s = format!("{}: {} ({} tuples)", self.id, self.verdict(), self.tuples_checked);
        if let Some(w) = &self.witness {
            s.push_str(&format!(" at ({}) defect {}", w.labels.join(", "), w.rendered));
        }
        s
    }
}
