//! Domain types shared across the engine: symbol kinds, descriptions,
//! potential and student symbols, the category scale and mappings.
//!
//! Also hosts the two text transformations every comparison goes through:
//! description normalization and parameter canonicalization.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fo::TranslationTemplate;
use crate::grammar::Grammar;

/// Characters removed by [`normalize_description`].
pub const STRIPPED_CHARS: &[char] = &['"', '\'', '`', '´', '“', '”', '„'];

/// Errors raised while building vocabulary values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("parameter `{0}` does not occur in the description")]
    ParameterUnused(String),
    #[error("parameters must be pairwise distinct, `{0}` repeats")]
    DuplicateParameter(String),
    #[error("{kind} symbols need an arity of at least 1")]
    ZeroArity { kind: &'static str },
    #[error("expected {expected} parameters, found {found}")]
    ParameterCount { expected: usize, found: usize },
    #[error("invalid permutation {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("unknown symbol kind `{0}`")]
    UnknownKind(String),
    #[error("description is empty after normalization")]
    EmptyDescription,
    #[error("duplicate symbol name `{0}`")]
    DuplicateSymbol(String),
    #[error("an attempt needs at least one symbol")]
    EmptyAttempt,
}

/// The kind of a vocabulary symbol together with its arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Proposition,
    Relation(usize),
    Function(usize),
    Constant,
}

impl SymbolKind {
    pub fn relation(arity: usize) -> Result<Self, VocabError> {
        if arity == 0 {
            return Err(VocabError::ZeroArity { kind: "relation" });
        }
        Ok(SymbolKind::Relation(arity))
    }

    pub fn function(arity: usize) -> Result<Self, VocabError> {
        if arity == 0 {
            return Err(VocabError::ZeroArity { kind: "function" });
        }
        Ok(SymbolKind::Function(arity))
    }

    /// Builds a kind from its wire name and an optional arity.
    ///
    /// Propositions and constants ignore a zero arity and reject anything else.
    pub fn from_parts(kind: &str, arity: Option<usize>) -> Result<Self, VocabError> {
        match kind {
            "proposition" | "constant" => match arity {
                None | Some(0) => Ok(if kind == "proposition" {
                    SymbolKind::Proposition
                } else {
                    SymbolKind::Constant
                }),
                Some(found) => Err(VocabError::ParameterCount { expected: 0, found }),
            },
            "relation" => SymbolKind::relation(arity.unwrap_or(0)),
            "function" => SymbolKind::function(arity.unwrap_or(0)),
            other => Err(VocabError::UnknownKind(other.to_string())),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            SymbolKind::Proposition | SymbolKind::Constant => 0,
            SymbolKind::Relation(k) | SymbolKind::Function(k) => *k,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SymbolKind::Proposition => "proposition",
            SymbolKind::Relation(_) => "relation",
            SymbolKind::Function(_) => "function",
            SymbolKind::Constant => "constant",
        }
    }
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolKind::Relation(k) | SymbolKind::Function(k) => write!(f, "{}/{}", self.name(), k),
            _ => f.write_str(self.name()),
        }
    }
}

/// Default placeholder tokens for a symbol of the given arity: `u, v, w, ...`.
pub fn default_placeholders(arity: usize) -> Vec<String> {
    const NAMES: &[&str] = &["u", "v", "w", "x", "y", "z"];
    (0..arity)
        .map(|i| match NAMES.get(i) {
            Some(n) => n.to_string(),
            None => format!("u{}", i + 1),
        })
        .collect()
}

/// A permutation of argument positions, stored 1-based.
///
/// Position `j` of the canonical symbol is filled by the description's
/// `self.0[j - 1]`-th placeholder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(positions: Vec<usize>) -> Result<Self, VocabError> {
        let k = positions.len();
        let mut seen = vec![false; k];
        for &p in &positions {
            if p == 0 || p > k || seen[p - 1] {
                return Err(VocabError::BadPermutation(positions));
            }
            seen[p - 1] = true;
        }
        Ok(Permutation(positions))
    }

    pub fn identity(arity: usize) -> Self {
        Permutation((1..=arity).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| p == i + 1)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    /// Reorders `args` so that the result's `j`-th entry is `args[self[j] - 1]`.
    pub fn apply<T: Clone>(&self, args: &[T]) -> Vec<T> {
        assert_eq!(args.len(), self.0.len(), "permutation arity mismatch");
        self.0.iter().map(|&p| args[p - 1].clone()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One admissible natural-language description of a potential symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct Description {
    pub text: String,
    pub placeholders: Vec<String>,
    pub permutation: Option<Permutation>,
    canonical: String,
}

impl Description {
    pub fn new(
        text: impl Into<String>,
        placeholders: Vec<String>,
        permutation: Option<Permutation>,
    ) -> Result<Self, VocabError> {
        let text = text.into();
        if let Some(p) = &permutation {
            if p.len() != placeholders.len() {
                return Err(VocabError::BadPermutation(p.positions().to_vec()));
            }
        }
        let normalized = normalize_description(&text);
        if normalized.is_empty() {
            return Err(VocabError::EmptyDescription);
        }
        let canonical = canonicalize_parameters(&normalized, &placeholders)?;
        Ok(Description {
            text,
            placeholders,
            permutation,
            canonical,
        })
    }

    /// The normalized text with placeholders replaced by `#1..#k`.
    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    pub fn arity(&self) -> usize {
        self.placeholders.len()
    }

    /// The declared permutation, or the identity.
    pub fn effective_permutation(&self) -> Permutation {
        self.permutation
            .clone()
            .unwrap_or_else(|| Permutation::identity(self.arity()))
    }
}

/// A grammar attached to a potential symbol, either loaded or still pointing
/// at a file relative to the task document.
#[derive(Debug, Clone)]
pub enum GrammarRef {
    Loaded(Grammar),
    Pending(String),
}

impl GrammarRef {
    pub fn loaded(&self) -> Option<&Grammar> {
        match self {
            GrammarRef::Loaded(g) => Some(g),
            GrammarRef::Pending(_) => None,
        }
    }
}

/// A symbol of the solution space.
#[derive(Debug, Clone)]
pub struct PotentialSymbol {
    pub name: String,
    pub kind: SymbolKind,
    pub descriptions: Vec<Description>,
    /// Grammars keyed by (description index, category).
    pub grammars: BTreeMap<(usize, Category), GrammarRef>,
    pub translation: Option<TranslationTemplate>,
    /// Whether the symbol belongs to the canonical vocabulary.
    pub canonical: bool,
}

impl PotentialSymbol {
    pub fn new(name: impl Into<String>, kind: SymbolKind, descriptions: Vec<Description>) -> Self {
        PotentialSymbol {
            name: name.into(),
            kind,
            descriptions,
            grammars: BTreeMap::new(),
            translation: None,
            canonical: true,
        }
    }

    pub fn grammar(&self, description: usize, category: Category) -> Option<&Grammar> {
        self.grammars
            .get(&(description, category))
            .and_then(GrammarRef::loaded)
    }

    /// Index of the description whose canonical text equals `canonical`.
    pub fn description_index(&self, canonical: &str) -> Option<usize> {
        self.descriptions.iter().position(|d| d.canonical() == canonical)
    }
}

/// A symbol proposed by a student.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudentSymbol {
    pub name: String,
    #[serde(with = "kind_serde", flatten)]
    pub kind: SymbolKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    pub description: String,
}

impl StudentSymbol {
    /// Validates and builds a student symbol. Missing parameters default to
    /// `u, v, ...`.
    pub fn new(
        name: impl Into<String>,
        kind: SymbolKind,
        params: Vec<String>,
        description: impl Into<String>,
    ) -> Result<Self, VocabError> {
        let params = if params.is_empty() {
            default_placeholders(kind.arity())
        } else {
            params
        };
        let symbol = StudentSymbol {
            name: name.into(),
            kind,
            params,
            description: description.into(),
        };
        symbol.validate()?;
        Ok(symbol)
    }

    pub fn validate(&self) -> Result<(), VocabError> {
        if self.params.len() != self.kind.arity() {
            return Err(VocabError::ParameterCount {
                expected: self.kind.arity(),
                found: self.params.len(),
            });
        }
        let mut seen = HashSet::new();
        for p in &self.params {
            if !seen.insert(p.as_str()) {
                return Err(VocabError::DuplicateParameter(p.clone()));
            }
        }
        if normalize_description(&self.description).is_empty() {
            return Err(VocabError::EmptyDescription);
        }
        Ok(())
    }

    /// The description normalized and with this symbol's parameters replaced
    /// by `#1..#k`. Unused parameters are tolerated here.
    pub fn canonical_description(&self) -> String {
        replace_parameters(&normalize_description(&self.description), &self.params)
    }
}

mod kind_serde {
    use super::SymbolKind;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wire {
        kind: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arity: Option<usize>,
    }

    pub fn serialize<S: Serializer>(kind: &SymbolKind, s: S) -> Result<S::Ok, S::Error> {
        let arity = match kind {
            SymbolKind::Relation(k) | SymbolKind::Function(k) => Some(*k),
            _ => None,
        };
        Wire {
            kind: kind.name().to_string(),
            arity,
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SymbolKind, D::Error> {
        let wire = Wire::deserialize(d)?;
        SymbolKind::from_parts(&wire.kind, wire.arity).map_err(serde::de::Error::custom)
    }
}

/// A student's proposed vocabulary, in submission order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub symbols: Vec<StudentSymbol>,
}

impl Attempt {
    pub fn new(symbols: Vec<StudentSymbol>) -> Result<Self, VocabError> {
        let attempt = Attempt { symbols };
        attempt.validate()?;
        Ok(attempt)
    }

    pub fn validate(&self) -> Result<(), VocabError> {
        if self.symbols.is_empty() {
            return Err(VocabError::EmptyAttempt);
        }
        let mut seen = HashSet::new();
        for s in &self.symbols {
            if !seen.insert(s.name.as_str()) {
                return Err(VocabError::DuplicateSymbol(s.name.clone()));
            }
            s.validate()?;
        }
        Ok(())
    }

    pub fn symbol(&self, name: &str) -> Option<&StudentSymbol> {
        self.symbols.iter().find(|s| s.name == name)
    }
}

/// Polarity of a category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

/// The five-level quality scale. C1 is the best match, C5 unrelated.
///
/// The derived `Ord` follows the declaration order, so `C1 < C5`; use
/// [`Category::is_better_than`] when comparing quality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::C1,
        Category::C2,
        Category::C3,
        Category::C4,
        Category::C5,
    ];

    /// 1 for C1 up to 5 for C5; lower is better.
    pub fn rank(self) -> u8 {
        self as u8 + 1
    }

    pub fn polarity(self) -> Polarity {
        if self.rank() <= Category::C3.rank() {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    pub fn is_positive(self) -> bool {
        self.polarity() == Polarity::Positive
    }

    pub fn is_better_than(self, other: Category) -> bool {
        self.rank() < other.rank()
    }

    /// Score used when a scorer assigns this category directly.
    pub fn canonical_score(self) -> f64 {
        match self {
            Category::C1 => 1.0,
            Category::C2 => 0.8,
            Category::C3 => 0.6,
            Category::C4 => 0.3,
            Category::C5 => 0.0,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.rank())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "C1" | "c1" => Ok(Category::C1),
            "C2" | "c2" => Ok(Category::C2),
            "C3" | "c3" => Ok(Category::C3),
            "C4" | "c4" => Ok(Category::C4),
            "C5" | "c5" => Ok(Category::C5),
            other => Err(format!("unknown category `{other}`")),
        }
    }
}

/// Where one student symbol landed in the solution space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappingEntry {
    pub student: String,
    pub matched: Option<String>,
    pub category: Category,
    pub score: f64,
    pub matched_description: Option<usize>,
    pub applied_permutation: Option<Permutation>,
}

impl MappingEntry {
    pub fn unmatched(student: impl Into<String>) -> Self {
        MappingEntry {
            student: student.into(),
            matched: None,
            category: Category::C5,
            score: 0.0,
            matched_description: None,
            applied_permutation: None,
        }
    }
}

/// One entry per attempt symbol, in attempt order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mapping {
    pub entries: Vec<MappingEntry>,
}

impl Mapping {
    pub fn entry(&self, student: &str) -> Option<&MappingEntry> {
        self.entries.iter().find(|e| e.student == student)
    }
}

/// Lower-cases, strips quotation characters and collapses whitespace.
///
/// Lower-casing is per character and keeps only the first character of a
/// multi-character mapping, so the result never has more characters than
/// the input.
pub fn normalize_description(raw: &str) -> String {
    let lowered: String = raw
        .chars()
        .filter(|c| !STRIPPED_CHARS.contains(c))
        .map(|c| c.to_lowercase().next().unwrap_or(c))
        .collect();
    lowered.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Splits `text` into alternating runs of word and non-word characters.
fn word_runs(text: &str) -> impl Iterator<Item = (bool, &str)> {
    let mut rest = text;
    std::iter::from_fn(move || {
        let first = rest.chars().next()?;
        let word = is_word_char(first);
        let end = rest
            .char_indices()
            .find(|&(_, c)| is_word_char(c) != word)
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let (run, tail) = rest.split_at(end);
        rest = tail;
        Some((word, run))
    })
}

/// Replaces every standalone occurrence of the `i`-th parameter by `#i`.
///
/// Fails with [`VocabError::ParameterUnused`] if a parameter never occurs.
pub fn canonicalize_parameters(text: &str, params: &[String]) -> Result<String, VocabError> {
    let mut seen = HashSet::new();
    for p in params {
        if !seen.insert(p.as_str()) {
            return Err(VocabError::DuplicateParameter(p.clone()));
        }
    }
    let mut used = vec![false; params.len()];
    let out = substitute_words(text, |word| {
        params.iter().position(|p| p == word).map(|i| {
            used[i] = true;
            format!("#{}", i + 1)
        })
    });
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(VocabError::ParameterUnused(params[i].clone()));
    }
    Ok(out)
}

/// Like [`canonicalize_parameters`] but tolerates unused parameters.
pub fn replace_parameters(text: &str, params: &[String]) -> String {
    substitute_words(text, |word| {
        params
            .iter()
            .position(|p| p == word)
            .map(|i| format!("#{}", i + 1))
    })
}

fn substitute_words(text: &str, mut replace: impl FnMut(&str) -> Option<String>) -> String {
    let mut out = String::with_capacity(text.len());
    for (word, run) in word_runs(text) {
        match word.then(|| replace(run)).flatten() {
            Some(r) => out.push_str(&r),
            None => out.push_str(run),
        }
    }
    out
}

/// True iff kinds and arities agree exactly.
pub fn signature_compatible(student: &StudentSymbol, potential: &PotentialSymbol) -> bool {
    student.kind == potential.kind
}
