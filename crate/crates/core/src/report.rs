//! Residual tensors and pass/fail reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::exactmath::Scalar;

/// Number of violating entries listed in a report.
pub const REPORT_LIMIT: usize = 32;

/// Sparse residual tensor: only nonzero entries are stored, keyed by the
/// index tuple named by `labels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    labels: Vec<String>,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

impl Residual {
    pub fn new(labels: &[&str], entries: BTreeMap<Vec<usize>, Scalar>) -> Self {
        Self {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: &[usize]) -> Scalar {
        self.entries.get(index).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> BTreeMap<Vec<usize>, Scalar> {
        self.entries
    }

    /// Entrywise difference, used to compare two routes to the same tensor.
    pub fn difference(&self, other: &Residual) -> Residual {
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let slot = entries.entry(k.clone()).or_default();
            *slot -= v;
        }
        Residual {
            labels: self.labels.clone(),
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn summary(&self) -> ResidualSummary {
        ResidualSummary {
            labels: self.labels.clone(),
            nonzero: self.entries.len(),
            shown: self
                .entries
                .iter()
                .take(REPORT_LIMIT)
                .map(|(k, v)| ResidualEntry {
                    index: k.clone(),
                    value: v.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualEntry {
    pub index: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualSummary {
    pub labels: Vec<String>,
    pub nonzero: usize,
    pub shown: Vec<ResidualEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<ResidualSummary>,
}

impl Stage {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Self {
            name: name.into(),
            status,
            notes: Vec::new(),
            residual: None,
        }
    }

    pub fn info(name: impl Into<String>) -> Self {
        Self::new(name, Status::Info)
    }

    /// Pass iff the residual vanishes; a failing stage carries the listing.
    pub fn from_residual(name: impl Into<String>, residual: &Residual) -> Self {
        let mut stage = Self::new(name, if residual.is_zero() { Status::Pass } else { Status::Fail });
        if !residual.is_zero() {
            stage.residual = Some(residual.summary());
        }
        stage
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub status: Status,
    pub stages: Vec<Stage>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            status: Status::Pass,
            stages: Vec::new(),
        }
    }

    pub fn push(&mut self, stage: Stage) {
        if stage.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.stages.push(stage);
    }

    /// Appends another report's stages, prefixing their names.
    pub fn absorb(&mut self, other: Report) {
        for mut stage in other.stages {
            stage.name = format!("{}: {}", other.title, stage.name);
            self.push(stage);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.title, self.status.to_string().to_uppercase())?;
        for stage in &self.stages {
            writeln!(f, "  [{}] {}", stage.status, stage.name)?;
            for note in &stage.notes {
                for line in note.lines() {
                    writeln!(f, "      {line}")?;
                }
            }
            if let Some(res) = &stage.residual {
                writeln!(
                    f,
                    "      {} nonzero residual entries over ({}); showing {}:",
                    res.nonzero,
                    res.labels.join(","),
                    res.shown.len()
                )?;
                for entry in &res.shown {
                    let idx: Vec<String> = entry.index.iter().map(usize::to_string).collect();
                    writeln!(f, "        ({}) = {}", idx.join(","), entry.value)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncates_listing() {
        let entries = (1..=40).map(|i| (vec![i], Scalar::from_int(i as i64))).collect();
        let r = Residual::new(&["x"], entries);
        let s = r.summary();
        assert_eq!(s.nonzero, 40);
        assert_eq!(s.shown.len(), REPORT_LIMIT);
    }

    #[test]
    fn failing_stage_fails_report() {
        let mut report = Report::new("t");
        report.push(Stage::info("note"));
        assert!(report.passed());
        let r = Residual::new(&["x"], BTreeMap::from([(vec![1], Scalar::one())]));
        report.push(Stage::from_residual("identity", &r));
        assert!(!report.passed());
        assert!(report.to_string().contains("(1) = 1"));
    }
}
