//! Instructor task specifications.
//!
//! A task document is XML with a `<Task id logic>` root holding the scenario,
//! the solution-space symbols, completeness condition, faults, suggestions and
//! redundancy sets. Beyond those, a few optional elements configure the
//! engine:
//!
//! * `<Grammar category="C1" src="file.cfg" for="0"/>` (or inline grammar
//!   text) inside a symbol attaches a grammar to one of its descriptions.
//! * `<Solutions><Solution>B,K,W</Solution></Solutions>` lists solution sets
//!   explicitly; they are compiled into a disjunction of full conjunctions.
//! * `<Scorer kind="grammar|lexical|remote" endpoint="..."/>` and
//!   `<Thresholds binary="0.45" multiclass="0.9,0.7,0.45,0.15"/>`.
//! * `<FeedbackTemplates>` with `<Vague>`, `<NoMatch>`, `<Incomplete>`,
//!   `<Duplicate>` and `<Redundant>` children overriding the built-in texts.
//!
//! Symbol elements may carry `params="a,b"` to rename placeholders (default
//! `u, v, w, ...`) and `canonical="false"`; a symbol with a `<Translation>`
//! is non-canonical.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use roxmltree::{Document, Node};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use url::Url;

use crate::condition::{parse_condition, BoolCondition, ConditionError};
use crate::fo::{FormulaError, Signature, TranslationTemplate};
use crate::grammar::{parse_grammar, GrammarError};
use crate::similarity::{ScorerKind, Thresholds};
use crate::vocab::{
    default_placeholders, Category, Description, GrammarRef, Permutation, PotentialSymbol,
    SymbolKind, VocabError,
};

/// Exhaustive satisfiability checks are limited to this many symbols.
pub const MAX_EXHAUSTIVE_SYMBOLS: usize = 20;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("XML error: {0}")]
    Xml(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("arity mismatch for symbol `{0}`")]
    ArityMismatch(String),
    #[error("bad permutation on symbol `{symbol}`, description {description}")]
    BadPermutation { symbol: String, description: usize },
    #[error("description {description} of `{symbol}`: {source}")]
    Description {
        symbol: String,
        description: usize,
        source: VocabError,
    },
    #[error("condition `{text}`: {source}")]
    Condition {
        text: String,
        source: ConditionError,
    },
    #[error("grammar for `{symbol}` ({category}): {source}")]
    Grammar {
        symbol: String,
        category: Category,
        source: GrammarError,
    },
    #[error("grammar for `{symbol}` refers to missing description {description}")]
    GrammarIndex { symbol: String, description: usize },
    #[error("cannot read grammar file {path}: {message}")]
    GrammarFile { path: PathBuf, message: String },
    #[error("translation for `{symbol}`: {source}")]
    Translation {
        symbol: String,
        source: FormulaError,
    },
    #[error("symbol `{0}` is not allowed in a propositional task")]
    LogicMismatch(String),
    #[error("task declares neither a completeness condition nor solutions")]
    MissingCompleteness,
    #[error("invalid value for `{attribute}`: {value}")]
    InvalidAttribute { attribute: String, value: String },
    #[error("cannot read task file {path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl SpecError {
    fn attr(attribute: &str, value: &str) -> Self {
        SpecError::InvalidAttribute {
            attribute: attribute.to_string(),
            value: value.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Logic {
    Propositional,
    FirstOrder,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Propositional => "propositional",
            Logic::FirstOrder => "first-order",
        })
    }
}

/// A condition paired with the text shown when it holds.
#[derive(Debug, Clone, PartialEq)]
pub struct Feedback {
    pub when: BoolCondition,
    pub text: String,
}

/// Built-in feedback texts. `{student}`, `{candidate}` and `{symbols}` are
/// substituted when rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct FeedbackTemplates {
    pub vague: String,
    pub no_match: String,
    pub incomplete: String,
    pub duplicate: String,
    pub redundant: String,
}

impl Default for FeedbackTemplates {
    fn default() -> Self {
        FeedbackTemplates {
            vague: "The description of {student} is related to {candidate}, but it is too vague \
                    or not quite a match."
                .into(),
            no_match: "No symbol in this scenario matches the description of {student}.".into(),
            incomplete: "Your vocabulary is not yet sufficient to model the scenario.".into(),
            duplicate: "The symbols {student} all describe the same thing.".into(),
            redundant: "You only need one of the symbols {symbols}; they can express each other."
                .into(),
        }
    }
}

/// Replaces `{key}` by its value for every pair.
pub fn render_template(template: &str, values: &[(&str, &str)]) -> String {
    values.iter().fold(template.to_string(), |acc, (k, v)| {
        acc.replace(&format!("{{{k}}}"), v)
    })
}

#[derive(Debug, Clone)]
pub struct TaskSpec {
    pub id: String,
    pub logic: Logic,
    pub scenario: String,
    pub symbols: Vec<PotentialSymbol>,
    pub completeness: BoolCondition,
    pub faults: Vec<Feedback>,
    pub suggestions: Vec<Feedback>,
    pub redundancies: Vec<Vec<String>>,
    pub scorer: ScorerKind,
    pub thresholds: Thresholds,
    pub feedback: FeedbackTemplates,
}

impl TaskSpec {
    pub fn symbol(&self, name: &str) -> Option<&PotentialSymbol> {
        self.symbols.iter().find(|s| s.name == name)
    }

    pub fn symbol_names(&self) -> Vec<&str> {
        self.symbols.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn signature(&self) -> Signature {
        self.symbols.iter().map(|s| (s.name.clone(), s.kind)).collect()
    }

    pub fn solution_set(&self) -> SolutionSet<'_> {
        SolutionSet { spec: self }
    }

    /// Grammar files not loaded yet.
    pub fn pending_grammars(&self) -> Vec<&str> {
        self.symbols
            .iter()
            .flat_map(|s| s.grammars.values())
            .filter_map(|g| match g {
                GrammarRef::Pending(path) => Some(path.as_str()),
                GrammarRef::Loaded(_) => None,
            })
            .collect()
    }

    pub fn has_grammars(&self) -> bool {
        self.symbols.iter().any(|s| !s.grammars.is_empty())
    }

    /// Loads pending grammar files relative to `base`.
    pub fn resolve_grammars(&mut self, base: &Path) -> Result<(), SpecError> {
        for symbol in &mut self.symbols {
            for (&(_, category), grammar) in symbol.grammars.iter_mut() {
                if let GrammarRef::Pending(rel) = grammar {
                    let path = base.join(&*rel);
                    let text = std::fs::read_to_string(&path).map_err(|e| SpecError::GrammarFile {
                        path: path.clone(),
                        message: e.to_string(),
                    })?;
                    let parsed = parse_grammar(&text).map_err(|source| SpecError::Grammar {
                        symbol: symbol.name.clone(),
                        category,
                        source,
                    })?;
                    *grammar = GrammarRef::Loaded(parsed);
                }
            }
        }
        Ok(())
    }
}

/// The solution sets induced by the completeness condition.
pub struct SolutionSet<'a> {
    spec: &'a TaskSpec,
}

impl SolutionSet<'_> {
    pub fn contains(&self, present: &BTreeSet<String>) -> bool {
        self.spec.completeness.evaluate(&|n| present.contains(n))
    }

    /// All subsets of the declared symbols satisfying the completeness
    /// condition, each listed in declaration order. `None` if there are more
    /// than [`MAX_EXHAUSTIVE_SYMBOLS`] symbols.
    pub fn enumerate(&self) -> Option<Vec<Vec<String>>> {
        let names = self.spec.symbol_names();
        if names.len() > MAX_EXHAUSTIVE_SYMBOLS {
            return None;
        }
        let mut out = Vec::new();
        for mask in 0u32..(1 << names.len()) {
            let present: BTreeSet<String> = names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, n)| n.to_string())
                .collect();
            if self.contains(&present) {
                out.push(
                    names
                        .iter()
                        .filter(|n| present.contains(**n))
                        .map(|n| n.to_string())
                        .collect(),
                );
            }
        }
        Some(out)
    }

    /// Solutions using at most one member of every redundancy set.
    pub fn redundancy_free(&self) -> Option<Vec<Vec<String>>> {
        let all = self.enumerate()?;
        Some(
            all.into_iter()
                .filter(|s| {
                    self.spec.redundancies.iter().all(|set| {
                        set.iter().filter(|m| s.contains(m)).count() <= 1
                    })
                })
                .collect(),
        )
    }
}

/// Problems reported by [`validate_spec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    UnknownConditionSymbol { context: String, name: String },
    UnknownRedundancyMember { name: String },
    RedundancySetTooSmall { members: Vec<String> },
    TemplateVariables { symbol: String, variables: Vec<String> },
    QuantifiedTemplate { symbol: String },
    MissingTranslation { symbol: String },
    Unsatisfiable,
    TooManySymbols { count: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UnknownConditionSymbol { context, name } => {
                write!(f, "{context} refers to undeclared symbol `{name}`")
            }
            Diagnostic::UnknownRedundancyMember { name } => {
                write!(f, "redundancy set refers to undeclared symbol `{name}`")
            }
            Diagnostic::RedundancySetTooSmall { members } => {
                write!(f, "redundancy set {{{}}} has fewer than two members", members.join(","))
            }
            Diagnostic::TemplateVariables { symbol, variables } => write!(
                f,
                "translation of `{symbol}` has free variables {} that are not parameters",
                variables.join(", ")
            ),
            Diagnostic::QuantifiedTemplate { symbol } => {
                write!(f, "translation of `{symbol}` contains quantifiers")
            }
            Diagnostic::MissingTranslation { symbol } => {
                write!(f, "`{symbol}` is not canonical and has no translation")
            }
            Diagnostic::Unsatisfiable => f.write_str("completeness condition is unsatisfiable"),
            Diagnostic::TooManySymbols { count } => write!(
                f,
                "{count} symbols exceed the limit of {MAX_EXHAUSTIVE_SYMBOLS} for the satisfiability check"
            ),
        }
    }
}

/// Checks a parsed spec for consistency. An empty result means the spec is
/// usable as is.
pub fn validate_spec(spec: &TaskSpec) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let declared: BTreeSet<&str> = spec.symbol_names().into_iter().collect();
    let mut conditions = vec![("completeness condition".to_string(), &spec.completeness)];
    for (i, f) in spec.faults.iter().enumerate() {
        conditions.push((format!("fault {}", i + 1), &f.when));
    }
    for (i, s) in spec.suggestions.iter().enumerate() {
        conditions.push((format!("suggestion {}", i + 1), &s.when));
    }
    for (context, cond) in conditions {
        for name in cond.symbols() {
            if !declared.contains(name) {
                out.push(Diagnostic::UnknownConditionSymbol {
                    context: context.clone(),
                    name: name.to_string(),
                });
            }
        }
    }
    for set in &spec.redundancies {
        for m in set {
            if !declared.contains(m.as_str()) {
                out.push(Diagnostic::UnknownRedundancyMember { name: m.clone() });
            }
        }
        let distinct: BTreeSet<&String> = set.iter().collect();
        if distinct.len() < 2 {
            out.push(Diagnostic::RedundancySetTooSmall { members: set.clone() });
        }
    }
    for symbol in &spec.symbols {
        match &symbol.translation {
            Some(t) => {
                let stray = t.stray_variables();
                if !stray.is_empty() {
                    out.push(Diagnostic::TemplateVariables {
                        symbol: symbol.name.clone(),
                        variables: stray,
                    });
                }
                if !t.formula.is_quantifier_free() {
                    out.push(Diagnostic::QuantifiedTemplate {
                        symbol: symbol.name.clone(),
                    });
                }
            }
            None if !symbol.canonical => out.push(Diagnostic::MissingTranslation {
                symbol: symbol.name.clone(),
            }),
            None => {}
        }
    }
    match spec.solution_set().enumerate() {
        Some(solutions) if solutions.is_empty() => out.push(Diagnostic::Unsatisfiable),
        Some(_) => {}
        None => out.push(Diagnostic::TooManySymbols {
            count: spec.symbols.len(),
        }),
    }
    out
}

/// Reads a task file and loads its grammar files relative to it.
pub fn load_task_spec(path: &Path) -> Result<TaskSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut spec = parse_task_spec(&text)?;
    spec.resolve_grammars(path.parent().unwrap_or(Path::new(".")))?;
    Ok(spec)
}

/// Text content of an element and all its descendants, whitespace collapsed.
fn element_text(node: Node<'_, '_>) -> String {
    let raw: Vec<&str> = node
        .descendants()
        .filter(|n| n.is_text())
        .filter_map(|n| n.text())
        .collect();
    raw.join(" ").split_whitespace().collect::<Vec<_>>().join(" ")
}

fn children<'a, 'input>(
    node: Node<'a, 'input>,
    name: &'a str,
) -> impl Iterator<Item = Node<'a, 'input>> + 'a {
    node.children()
        .filter(move |c| c.is_element() && c.tag_name().name() == name)
}

fn child<'a, 'input>(node: Node<'a, 'input>, name: &'a str) -> Option<Node<'a, 'input>> {
    children(node, name).next()
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn condition(text: &str) -> Result<BoolCondition, SpecError> {
    parse_condition(text).map_err(|source| SpecError::Condition {
        text: text.to_string(),
        source,
    })
}

fn parse_permutation(
    raw: &str,
    placeholders: &[String],
    symbol: &str,
    description: usize,
) -> Result<Permutation, SpecError> {
    let bad = || SpecError::BadPermutation {
        symbol: symbol.to_string(),
        description,
    };
    let positions = split_list(raw)
        .iter()
        .map(|tok| match placeholders.iter().position(|p| p == tok) {
            Some(i) => Ok(i + 1),
            None => tok.parse::<usize>().map_err(|_| bad()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if positions.len() != placeholders.len() {
        return Err(bad());
    }
    Permutation::new(positions).map_err(|_| bad())
}

fn parse_symbol(node: Node<'_, '_>, logic: Logic) -> Result<(PotentialSymbol, Option<String>), SpecError> {
    let name = node
        .attribute("symbol")
        .ok_or_else(|| SpecError::Xml(format!("<{}> without symbol attribute", node.tag_name().name())))?
        .trim()
        .to_string();
    let arity = match node.attribute("arity") {
        Some(a) => Some(
            a.trim()
                .parse::<usize>()
                .map_err(|_| SpecError::ArityMismatch(name.clone()))?,
        ),
        None => None,
    };
    let tag = node.tag_name().name();
    let kind = match (tag, arity) {
        ("Proposition", None | Some(0)) => SymbolKind::Proposition,
        ("Constant", None | Some(0)) => SymbolKind::Constant,
        ("Relation", Some(k)) if k > 0 => SymbolKind::Relation(k),
        ("Function", Some(k)) if k > 0 => SymbolKind::Function(k),
        _ => return Err(SpecError::ArityMismatch(name)),
    };
    if logic == Logic::Propositional && kind != SymbolKind::Proposition {
        return Err(SpecError::LogicMismatch(name));
    }
    let placeholders = match node.attribute("params") {
        Some(p) => split_list(p),
        None => default_placeholders(kind.arity()),
    };
    if placeholders.len() != kind.arity() {
        return Err(SpecError::ArityMismatch(name));
    }

    let mut descriptions = Vec::new();
    for (i, d) in children(node, "Description").enumerate() {
        let permutation = match d.attribute("permutation") {
            Some(raw) => Some(parse_permutation(raw, &placeholders, &name, i)?),
            None => None,
        };
        let text = element_text(d);
        let description = Description::new(text, placeholders.clone(), permutation).map_err(
            |source| SpecError::Description {
                symbol: name.clone(),
                description: i,
                source,
            },
        )?;
        descriptions.push(description);
    }
    if descriptions.is_empty() {
        return Err(SpecError::Description {
            symbol: name,
            description: 0,
            source: VocabError::EmptyDescription,
        });
    }

    let mut symbol = PotentialSymbol::new(name.clone(), kind, descriptions);
    for g in children(node, "Grammar") {
        let category: Category = g
            .attribute("category")
            .ok_or_else(|| SpecError::Xml(format!("<Grammar> of `{name}` without category")))?
            .trim()
            .parse()
            .map_err(|_| SpecError::attr("category", g.attribute("category").unwrap_or("")))?;
        let index = match g.attribute("for") {
            Some(v) => v.trim().parse::<usize>().map_err(|_| SpecError::attr("for", v))?,
            None => 0,
        };
        if index >= symbol.descriptions.len() {
            return Err(SpecError::GrammarIndex {
                symbol: name,
                description: index,
            });
        }
        let grammar = match g.attribute("src") {
            Some(src) => GrammarRef::Pending(src.trim().to_string()),
            None => {
                let text = g.text().unwrap_or("");
                GrammarRef::Loaded(parse_grammar(text).map_err(|source| SpecError::Grammar {
                    symbol: name.clone(),
                    category,
                    source,
                })?)
            }
        };
        symbol.grammars.insert((index, category), grammar);
    }

    let translation = child(node, "Translation").map(element_text);
    symbol.canonical = translation.is_none() && node.attribute("canonical") != Some("false");
    Ok((symbol, translation))
}

fn parse_unit_interval(attribute: &str, raw: &str) -> Result<f64, SpecError> {
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| (0.0..=1.0).contains(v))
        .ok_or_else(|| SpecError::attr(attribute, raw))
}

/// Parses a task document. Grammar `src` references stay pending; see
/// [`TaskSpec::resolve_grammars`] and [`load_task_spec`].
pub fn parse_task_spec(document: &str) -> Result<TaskSpec, SpecError> {
    let doc = Document::parse(document).map_err(|e| SpecError::Xml(e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != "Task" {
        return Err(SpecError::Xml(format!(
            "expected <Task> root, found <{}>",
            root.tag_name().name()
        )));
    }
    let id = root
        .attribute("id")
        .ok_or_else(|| SpecError::Xml("<Task> without id".into()))?
        .trim()
        .to_string();
    let logic = match root.attribute("logic").map(str::trim) {
        Some("propositional") => Logic::Propositional,
        Some("first-order") => Logic::FirstOrder,
        other => return Err(SpecError::attr("logic", other.unwrap_or(""))),
    };
    let scenario = child(root, "Scenario").map(element_text).unwrap_or_default();

    let mut symbols: Vec<PotentialSymbol> = Vec::new();
    let mut translations = Vec::new();
    if let Some(list) = child(root, "Symbols") {
        for node in list.children().filter(|c| c.is_element()) {
            if !matches!(
                node.tag_name().name(),
                "Proposition" | "Relation" | "Function" | "Constant"
            ) {
                return Err(SpecError::Xml(format!(
                    "unexpected <{}> in <Symbols>",
                    node.tag_name().name()
                )));
            }
            let (symbol, translation) = parse_symbol(node, logic)?;
            if symbols.iter().any(|s| s.name == symbol.name) {
                return Err(SpecError::DuplicateSymbol(symbol.name));
            }
            translations.push(translation);
            symbols.push(symbol);
        }
    }

    let signature: Signature = symbols.iter().map(|s| (s.name.clone(), s.kind)).collect();
    for (symbol, text) in symbols.iter_mut().zip(translations) {
        if let Some(text) = text {
            let params = symbol.descriptions[0].placeholders.clone();
            let template = TranslationTemplate::parse(&text, &params, &signature).map_err(
                |source| SpecError::Translation {
                    symbol: symbol.name.clone(),
                    source,
                },
            )?;
            symbol.translation = Some(template);
        }
    }

    let declared: BTreeSet<String> = symbols.iter().map(|s| s.name.clone()).collect();
    let known = |c: &BoolCondition, text: &str| {
        c.check_symbols(|s| declared.contains(s))
            .map_err(|source| SpecError::Condition {
                text: text.to_string(),
                source,
            })
    };

    let mut completeness = None;
    if let Some(node) = child(root, "CompletenessCondition") {
        let text = element_text(node);
        let c = condition(&text)?;
        known(&c, &text)?;
        completeness = Some(c);
    }
    if let Some(node) = child(root, "Solutions") {
        let mut alternatives = Vec::new();
        for s in children(node, "Solution") {
            let members: BTreeSet<String> = split_list(&element_text(s)).into_iter().collect();
            for m in &members {
                if !declared.contains(m) {
                    return Err(SpecError::Condition {
                        text: element_text(s),
                        source: ConditionError::UnknownSymbol(m.clone()),
                    });
                }
            }
            let literals = symbols.iter().map(|sym| {
                let v = BoolCondition::var(sym.name.clone());
                if members.contains(&sym.name) {
                    v
                } else {
                    BoolCondition::not(v)
                }
            });
            if let Some(conj) = BoolCondition::conjunction(literals) {
                alternatives.push(conj);
            }
        }
        if let Some(disj) = BoolCondition::disjunction(alternatives) {
            completeness = Some(match completeness {
                Some(c) => BoolCondition::and(c, disj),
                None => disj,
            });
        }
    }
    let completeness = completeness.ok_or(SpecError::MissingCompleteness)?;

    let feedback_list = |section: &str, item: &'static str| -> Result<Vec<Feedback>, SpecError> {
        let mut out = Vec::new();
        if let Some(node) = child(root, section) {
            for f in children(node, item) {
                let when = f
                    .attribute("when")
                    .ok_or_else(|| SpecError::Xml(format!("<{item}> without when")))?;
                let c = condition(when)?;
                known(&c, when)?;
                out.push(Feedback {
                    when: c,
                    text: element_text(f),
                });
            }
        }
        Ok(out)
    };
    let faults = feedback_list("Faults", "Fault")?;
    let suggestions = feedback_list("Suggestions", "Suggestion")?;

    let redundancies = child(root, "Redundancies")
        .map(|node| {
            children(node, "Set")
                .map(|s| split_list(&element_text(s)))
                .collect()
        })
        .unwrap_or_default();

    let has_grammars = symbols.iter().any(|s| !s.grammars.is_empty());
    let scorer = match child(root, "Scorer") {
        Some(node) => match node.attribute("kind").map(str::trim) {
            Some("lexical") => ScorerKind::Lexical,
            Some("grammar") => ScorerKind::Grammar,
            Some("remote") => {
                let raw = node
                    .attribute("endpoint")
                    .ok_or_else(|| SpecError::attr("endpoint", ""))?;
                let url = Url::parse(raw.trim()).map_err(|_| SpecError::attr("endpoint", raw))?;
                ScorerKind::Remote(url)
            }
            other => return Err(SpecError::attr("kind", other.unwrap_or(""))),
        },
        None if has_grammars => ScorerKind::Grammar,
        None => ScorerKind::Lexical,
    };

    let mut thresholds = Thresholds::default();
    if let Some(node) = child(root, "Thresholds") {
        if let Some(b) = node.attribute("binary") {
            thresholds.binary = parse_unit_interval("binary", b)?;
        }
        if let Some(m) = node.attribute("multiclass") {
            let values = m
                .split(',')
                .map(|v| parse_unit_interval("multiclass", v))
                .collect::<Result<Vec<_>, _>>()?;
            thresholds.multiclass = values
                .try_into()
                .map_err(|_| SpecError::attr("multiclass", m))?;
        }
        thresholds
            .validate()
            .map_err(|_| SpecError::attr("Thresholds", "not monotone"))?;
    }

    let mut feedback = FeedbackTemplates::default();
    if let Some(node) = child(root, "FeedbackTemplates") {
        let slots: [(&str, &mut String); 5] = [
            ("Vague", &mut feedback.vague),
            ("NoMatch", &mut feedback.no_match),
            ("Incomplete", &mut feedback.incomplete),
            ("Duplicate", &mut feedback.duplicate),
            ("Redundant", &mut feedback.redundant),
        ];
        for (tag, slot) in slots {
            if let Some(n) = child(node, tag) {
                *slot = element_text(n);
            }
        }
    }

    Ok(TaskSpec {
        id,
        logic,
        scenario,
        symbols,
        completeness,
        faults,
        suggestions,
        redundancies,
        scorer,
        thresholds,
        feedback,
    })
}
