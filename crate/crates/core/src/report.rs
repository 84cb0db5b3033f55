//! Deterministic run reports: named checks with witnesses, plus homology
//! tables. Reports serialize to JSON and round-trip exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chains::HomologyResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub rows: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            ..Report::default()
        }
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            witness: if passed { None } else { witness },
        });
    }

    pub fn table(&mut self, title: impl Into<String>, rows: Vec<(String, String)>) {
        self.tables.push(Table {
            title: title.into(),
            rows,
        });
    }

    pub fn homology_table(&mut self, title: impl Into<String>, h: &HomologyResult) {
        self.table(
            title,
            h.groups
                .iter()
                .enumerate()
                .map(|(k, g)| (format!("H_{k}"), g.to_string()))
                .collect(),
        );
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.tables.extend(other.tables);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.command));
        for (k, v) in &self.params {
            out.push_str(&format!("   {k} = {v}\n"));
        }
        for t in &self.tables {
            out.push_str(&format!("-- {}\n", t.title));
            for (k, v) in &t.rows {
                out.push_str(&format!("   {k:<10} {v}\n"));
            }
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("       witness: {w}\n"));
            }
        }
        let (ok, total) = (
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len(),
        );
        if total > 0 {
            out.push_str(&format!("{ok}/{total} checks passed\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_is_identity() {
        let mut r = Report::new("demo");
        r.param("n", 2);
        r.check("something", true, None);
        r.check("failing", false, Some("cell x".into()));
        r.table("t", vec![("H_0".into(), "Z".into())]);
        let json = r.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), json);
        assert!(!r.passed());
    }
}
