//! Rows of checked inequalities.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// value ≤ bound·(1 + tol)
    Le,
    /// value ≥ bound·(1 − tol)
    Ge,
    /// |value − bound| ≤ tol·max(1, |bound|)
    Eq,
    /// Reported only.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub value: f64,
    pub bound: Option<f64>,
    pub relation: Relation,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub note: String,
}

impl Row {
    pub fn check(name: impl Into<String>, value: f64, relation: Relation, bound: f64, tolerance: f64) -> Self {
        let passed = match relation {
            Relation::Le => value <= bound + tolerance * bound.abs(),
            Relation::Ge => value >= bound - tolerance * bound.abs(),
            Relation::Eq => (value - bound).abs() <= tolerance * bound.abs().max(1.0),
            Relation::Info => true,
        };
        Self {
            name: name.into(),
            value,
            bound: Some(bound),
            relation,
            tolerance,
            passed,
            note: String::new(),
        }
    }

    pub fn le(name: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Self {
        Self::check(name, value, Relation::Le, bound, tolerance)
    }

    pub fn ge(name: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Self {
        Self::check(name, value, Relation::Ge, bound, tolerance)
    }

    pub fn eq(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        Self::check(name, value, Relation::Eq, expected, tolerance)
    }

    pub fn info(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: None,
            relation: Relation::Info,
            tolerance: 0.0,
            passed: true,
            note: String::new(),
        }
    }

    /// A pass/fail row without a numeric bound; value is 1 or 0.
    pub fn flag(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            value: if passed { 1.0 } else { 0.0 },
            bound: None,
            relation: Relation::Info,
            tolerance: 0.0,
            passed,
            note: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn failed(mut self) -> Self {
        self.passed = false;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Row) -> &mut Self {
        self.rows.push(row);
        self
    }

    pub fn warn(&mut self, w: impl Into<String>) {
        self.warnings.push(w.into());
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = other.title;
        for mut row in other.rows {
            if !prefix.is_empty() {
                row.name = format!("{prefix}: {}", row.name);
            }
            self.rows.push(row);
        }
        self.warnings.extend(other.warnings);
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.passed)
    }

    pub fn row(&self, name: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Row::le("a", 1.0, 1.0, 0.0).passed);
        assert!(!Row::le("a", 1.0 + 1e-6, 1.0, 1e-9).passed);
        assert!(Row::ge("a", 2.0, 1.0, 0.0).passed);
        assert!(Row::eq("a", 1.0 + 1e-10, 1.0, 1e-9).passed);
        let mut r = Report::new("x");
        r.push(Row::info("i", 3.0));
        assert!(r.passed());
        r.push(Row::flag("f", false));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
