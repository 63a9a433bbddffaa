//! Relation reports shared by the symbolic and matrix verifiers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEntry {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// One verification run: every checked relation plus the parameters it was
/// run at. `metadata` carries conventions that the relations depend on and is
/// omitted from JSON when empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relations: Vec<RelationEntry>,
    pub params: BTreeMap<String, String>,
    pub all_pass: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl RelationReport {
    /// Sorts entries by name and computes `all_pass`.
    pub fn new(mut relations: Vec<RelationEntry>, params: BTreeMap<String, String>) -> Self {
        relations.sort_by(|a, b| a.name.cmp(&b.name));
        let all_pass = relations.iter().all(|r| r.pass);
        Self {
            relations,
            params,
            all_pass,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn entry(&self, name: &str) -> Option<&RelationEntry> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationEntry> {
        self.relations.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Builds an entry whose `pass` is structural equality of the two sides.
pub fn compare<T: PartialEq>(name: impl Into<String>, lhs: &T, rhs: &T, show: impl Fn(&T) -> String) -> RelationEntry {
    RelationEntry {
        name: name.into(),
        lhs: show(lhs),
        rhs: show(rhs),
        pass: lhs == rhs,
    }
}
