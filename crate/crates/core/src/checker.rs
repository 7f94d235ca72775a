//! Phase 2: check the mapped symbols against the solution space and collect
//! feedback.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::condition::BoolCondition;
use crate::spec::{render_template, TaskSpec};
use crate::matcher::{map_attempt, MatchError};
use crate::similarity::Scorer;
use crate::vocab::{Attempt, Category, Mapping, MappingEntry, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Accepted,
    RejectedPhase1,
    RejectedPhase2,
}

impl Status {
    pub fn is_accepted(self) -> bool {
        self == Status::Accepted
    }
}

/// Outcome for one student symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolVerdict {
    pub name: String,
    pub matched: Option<String>,
    pub category: Category,
    pub positive: bool,
    pub score: f64,
    pub matched_description: Option<usize>,
    pub applied_permutation: Option<Permutation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feedback: Option<String>,
}

impl SymbolVerdict {
    pub fn entry(&self) -> MappingEntry {
        MappingEntry {
            student: self.name.clone(),
            matched: self.matched.clone(),
            category: self.category,
            score: self.score,
            matched_description: self.matched_description,
            applied_permutation: self.applied_permutation.clone(),
        }
    }
}

/// A potential symbol matched by several student symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duplicate {
    pub symbol: String,
    pub students: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub per_symbol: Vec<SymbolVerdict>,
    pub faults_fired: Vec<String>,
    pub suggestions_fired: Vec<String>,
    pub duplicates: Vec<Duplicate>,
    /// Engine-generated messages: duplicate and incompleteness notes.
    pub diagnostics: Vec<String>,
    /// Student name to potential symbol, present on acceptance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_mapping: Option<BTreeMap<String, String>>,
}

impl Verdict {
    pub fn mapping(&self) -> Mapping {
        Mapping {
            entries: self.per_symbol.iter().map(SymbolVerdict::entry).collect(),
        }
    }

    /// Every feedback text, in display order.
    pub fn messages(&self) -> Vec<&str> {
        self.per_symbol
            .iter()
            .filter_map(|s| s.feedback.as_deref())
            .chain(self.diagnostics.iter().map(String::as_str))
            .chain(self.faults_fired.iter().map(String::as_str))
            .chain(self.suggestions_fired.iter().map(String::as_str))
            .collect()
    }
}

/// Evaluates `c` with every name in `present` true and all others false.
pub fn evaluate_condition(c: &BoolCondition, present: &BTreeSet<String>) -> bool {
    c.evaluate(&|name| present.contains(name))
}

fn symbol_feedback(entry: &MappingEntry, spec: &TaskSpec) -> Option<String> {
    match (entry.category, &entry.matched) {
        (Category::C4, Some(candidate)) => Some(render_template(
            &spec.feedback.vague,
            &[("student", &entry.student), ("candidate", candidate)],
        )),
        (c, _) if !c.is_positive() => Some(render_template(
            &spec.feedback.no_match,
            &[("student", &entry.student)],
        )),
        _ => None,
    }
}

/// Checks a complete mapping of an attempt.
pub fn check_solution(mapping: &Mapping, spec: &TaskSpec) -> Verdict {
    let per_symbol: Vec<SymbolVerdict> = mapping
        .entries
        .iter()
        .map(|e| SymbolVerdict {
            name: e.student.clone(),
            matched: e.matched.clone(),
            category: e.category,
            positive: e.category.is_positive(),
            score: e.score,
            matched_description: e.matched_description,
            applied_permutation: e.applied_permutation.clone(),
            feedback: symbol_feedback(e, spec),
        })
        .collect();
    let mut verdict = Verdict {
        status: Status::Accepted,
        per_symbol,
        faults_fired: Vec::new(),
        suggestions_fired: Vec::new(),
        duplicates: Vec::new(),
        diagnostics: Vec::new(),
        canonical_mapping: None,
    };

    if mapping.entries.iter().any(|e| !e.category.is_positive()) {
        verdict.status = Status::RejectedPhase1;
        return verdict;
    }

    let mut by_symbol: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for e in &mapping.entries {
        if let Some(m) = &e.matched {
            by_symbol.entry(m).or_default().push(e.student.clone());
        }
    }
    let present: BTreeSet<String> = by_symbol.keys().map(|s| s.to_string()).collect();

    for p in &spec.symbols {
        if let Some(students) = by_symbol.get(p.name.as_str()).filter(|s| s.len() > 1) {
            verdict.diagnostics.push(render_template(
                &spec.feedback.duplicate,
                &[("student", &students.join(", ")), ("candidate", &p.name)],
            ));
            verdict.duplicates.push(Duplicate {
                symbol: p.name.clone(),
                students: students.clone(),
            });
        }
    }
    if !verdict.duplicates.is_empty() {
        verdict.status = Status::RejectedPhase2;
        return verdict;
    }

    verdict.faults_fired = spec
        .faults
        .iter()
        .filter(|f| evaluate_condition(&f.when, &present))
        .map(|f| f.text.clone())
        .collect();
    if !verdict.faults_fired.is_empty() {
        verdict.status = Status::RejectedPhase2;
        return verdict;
    }
    if !evaluate_condition(&spec.completeness, &present) {
        verdict.status = Status::RejectedPhase2;
        verdict.diagnostics.push(spec.feedback.incomplete.clone());
        return verdict;
    }

    verdict.suggestions_fired = spec
        .suggestions
        .iter()
        .filter(|s| evaluate_condition(&s.when, &present))
        .map(|s| s.text.clone())
        .collect();
    for set in &spec.redundancies {
        let members: Vec<&str> = set
            .iter()
            .filter(|m| present.contains(*m))
            .map(String::as_str)
            .collect();
        if members.len() >= 2 {
            verdict.suggestions_fired.push(render_template(
                &spec.feedback.redundant,
                &[("symbols", &members.join(", "))],
            ));
        }
    }
    verdict.canonical_mapping = Some(
        mapping
            .entries
            .iter()
            .filter_map(|e| e.matched.clone().map(|m| (e.student.clone(), m)))
            .collect(),
    );
    verdict
}

/// Runs both phases with the task's configured scorer and thresholds.
pub fn check_attempt(attempt: &Attempt, spec: &TaskSpec) -> Result<Verdict, MatchError> {
    let scorer = Scorer::new(&spec.scorer);
    let mapping = map_attempt(attempt, spec, &scorer, &spec.thresholds)?;
    Ok(check_solution(&mapping, spec))
}
