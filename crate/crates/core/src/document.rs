//! JSON input documents.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SpecDocument {
    LinearQuotient(LinearQuotientDoc),
    Quiver(QuiverDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearQuotientDoc {
    pub rank: usize,
    #[serde(default)]
    pub weights: Vec<Vec<i64>>,
    #[serde(default)]
    pub roots: Vec<Vec<i64>>,
    #[serde(default)]
    pub weyl_generators: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<[usize; 2]>,
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Compact serialization with fixed field order, hashed into a report's
    /// `spec_digest`.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_kinds() {
        let lq = SpecDocument::parse(
            r#"{"type":"linear_quotient","rank":2,"weights":[[1,0],[0,1]],
                "roots":[[1,-1],[-1,1]],"weyl_generators":[[[0,1],[1,0]]]}"#,
        )
        .unwrap();
        assert!(matches!(lq, SpecDocument::LinearQuotient(ref d) if d.rank == 2));
        let q = SpecDocument::parse(r#"{"type":"quiver","vertices":2,"arrows":[[0,1]]}"#).unwrap();
        assert_eq!(
            q,
            SpecDocument::Quiver(QuiverDoc {
                vertices: 2,
                arrows: vec![[0, 1]]
            })
        );
    }

    #[test]
    fn rejects_unknown_fields_and_types() {
        assert!(SpecDocument::parse(r#"{"type":"quiver","vertices":1,"colour":3}"#).is_err());
        assert!(SpecDocument::parse(r#"{"type":"sheaf","rank":1}"#).is_err());
        assert!(SpecDocument::parse("{not json").is_err());
    }
}
