use std::collections::BTreeSet;

use hbl_core::intlinalg::IntMatrix;
use hbl_core::HblProblem;
use serde::{Deserialize, Serialize};

use crate::{dsl, CliError};

/// One array access: a name and one coefficient row per subscript.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub name: String,
    pub rows: Vec<Vec<i64>>,
}

/// A loop nest as the list of its array access maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<String>>,
    pub maps: Vec<MapEntry>,
}

impl ProblemDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let doc: ProblemDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    /// JSON when the first non-blank character is `{`, the loop-nest language otherwise.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            let doc = dsl::parse_loop_nest(text)?;
            doc.validate()?;
            Ok(doc)
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.dimension == 0 {
            return Err(CliError::Input("dimension must be at least 1".into()));
        }
        if self.maps.is_empty() {
            return Err(CliError::Input("at least one map is required".into()));
        }
        if let Some(idx) = &self.indices {
            if idx.len() != self.dimension {
                return Err(CliError::Input(format!(
                    "{} index names given for dimension {}",
                    idx.len(),
                    self.dimension
                )));
            }
        }
        let mut names = BTreeSet::new();
        for m in &self.maps {
            if !names.insert(m.name.as_str()) {
                return Err(CliError::Input(format!("map name `{}` is used twice", m.name)));
            }
            if m.rows.is_empty() {
                return Err(CliError::Input(format!("map `{}` has no rows", m.name)));
            }
            if let Some(r) = m.rows.iter().find(|r| r.len() != self.dimension) {
                return Err(CliError::Input(format!(
                    "map `{}` has a row with {} coefficients, expected {}",
                    m.name,
                    r.len(),
                    self.dimension
                )));
            }
        }
        Ok(())
    }

    pub fn to_problem(&self) -> Result<HblProblem, CliError> {
        self.validate()?;
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let rows: Vec<&[i64]> = m.rows.iter().map(Vec::as_slice).collect();
                IntMatrix::from_rows_i64(self.dimension, &rows)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let names = self.maps.iter().map(|m| m.name.clone()).collect();
        Ok(HblProblem::with_names(self.dimension, maps, names)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let text = r#"{"dimension": 2, "maps": [{"name": "A", "rows": [[3, -1]]}, {"name": "B", "rows": [[1, -2]]}]}"#;
        let doc = ProblemDocument::parse(text).unwrap();
        assert_eq!(doc.maps[1].rows, vec![vec![1, -2]]);
        let again = ProblemDocument::from_json(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, again);
        assert_eq!(doc.to_problem().unwrap().names(), &["A".to_string(), "B".to_string()]);
    }

    #[test]
    fn rejects_bad_documents() {
        let short = r#"{"dimension": 2, "maps": [{"name": "A", "rows": [[3]]}]}"#;
        assert!(matches!(ProblemDocument::parse(short), Err(CliError::Input(_))));
        let dup = r#"{"dimension": 1, "maps": [{"name": "A", "rows": [[1]]}, {"name": "A", "rows": [[2]]}]}"#;
        assert!(matches!(ProblemDocument::parse(dup), Err(CliError::Input(_))));
        let unknown = r#"{"dimension": 1, "maps": [], "extra": 1}"#;
        assert!(matches!(ProblemDocument::parse(unknown), Err(CliError::Json(_))));
    }
}
