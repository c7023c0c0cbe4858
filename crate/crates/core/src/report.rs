//! Structured analysis verdicts.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Which condition a finding violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Transparency,
    DuplicateDeclaration,
    UnknownConstructor,
    ConstructorArity,
    Untypable,
    PartitionArity,
    HeadCondition,
    #[serde(rename = "semi-generic-1")]
    SemiGeneric1,
    #[serde(rename = "semi-generic-2")]
    SemiGeneric2,
    #[serde(rename = "semi-generic-3")]
    SemiGeneric3,
    TypeSkeletonNonproper,
    QueryUntypable,
}

impl Condition {
    pub fn id(self) -> &'static str {
        match self {
            Condition::Transparency => "transparency",
            Condition::DuplicateDeclaration => "duplicate-declaration",
            Condition::UnknownConstructor => "unknown-constructor",
            Condition::ConstructorArity => "constructor-arity",
            Condition::Untypable => "untypable",
            Condition::PartitionArity => "partition-arity",
            Condition::HeadCondition => "head-condition",
            Condition::SemiGeneric1 => "semi-generic-1",
            Condition::SemiGeneric2 => "semi-generic-2",
            Condition::SemiGeneric3 => "semi-generic-3",
            Condition::TypeSkeletonNonproper => "type-skeleton-nonproper",
            Condition::QueryUntypable => "query-untypable",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    /// Clause index in the program, when the finding concerns a clause.
    pub clause: Option<usize>,
    pub condition: Condition,
    pub witness: String,
}

impl Finding {
    pub fn new(clause: Option<usize>, condition: Condition, witness: impl Into<String>) -> Finding {
        Finding {
            clause,
            condition,
            witness: witness.into(),
        }
    }
}

/// Verdict plus findings. The verdict is `pass` exactly when there are no
/// findings; the fields are kept private so the two cannot drift apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    verdict: Verdict,
    findings: Vec<Finding>,
    #[serde(rename = "depthBound", default, skip_serializing_if = "Option::is_none")]
    depth_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl Default for CheckReport {
    fn default() -> Self {
        CheckReport {
            verdict: Verdict::Pass,
            findings: Vec::new(),
            depth_bound: None,
            notes: Vec::new(),
        }
    }
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_findings(findings: Vec<Finding>) -> Self {
        let mut r = CheckReport::new();
        for f in findings {
            r.push(f);
        }
        r
    }

    pub fn push(&mut self, finding: Finding) {
        self.findings.push(finding);
        self.verdict = Verdict::Fail;
    }

    /// Appends all findings and notes of `other`, ordered by clause index.
    pub fn merge(&mut self, other: CheckReport) {
        for f in other.findings {
            self.push(f);
        }
        self.findings.sort_by_key(|f| f.clause.map_or(usize::MAX, |c| c));
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
        if self.depth_bound.is_none() {
            self.depth_bound = other.depth_bound;
        }
    }

    pub fn with_depth_bound(mut self, depth: usize) -> Self {
        self.depth_bound = Some(depth);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    pub fn depth_bound(&self) -> Option<usize> {
        self.depth_bound
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.findings.iter().any(|f| f.condition == condition)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Pass => f.write_str("pass")?,
            Verdict::Fail => write!(f, "fail ({} finding(s))", self.findings.len())?,
        }
        if let Some(d) = self.depth_bound {
            write!(f, " [depth bound {d}]")?;
        }
        for finding in &self.findings {
            match finding.clause {
                Some(c) => write!(f, "\n  clause {c}: {}: {}", finding.condition, finding.witness)?,
                None => write!(f, "\n  {}: {}", finding.condition, finding.witness)?,
            }
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}
