//! Description-pair scorers, score classification and threshold fitting.

mod fit;
mod lexical;
mod remote;

pub use fit::{fit_thresholds, fit_thresholds_scored, midpoint_scan, FitResult};
pub use lexical::{jaccard, levenshtein, lexical_score};
pub use remote::{RemoteScorer, ScorePair, ScoreRequest, ScoreResponse, REMOTE_TIMEOUT};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use url::Url;

use crate::dataset::LabeledPair;
use crate::grammar::membership;
use crate::spec::TaskSpec;
use crate::vocab::{Category, Polarity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimilarityError {
    #[error("scorer unavailable at {endpoint}: {reason}")]
    ScorerUnavailable { endpoint: String, reason: String },
    #[error("empty dataset")]
    EmptyDataset,
    #[error("the grammar scorer needs a task spec")]
    GrammarNeedsSpec,
    #[error("`{symbol}` has no description `{d_star}`")]
    UnknownDescription { symbol: String, d_star: String },
    #[error("invalid thresholds: {0}")]
    InvalidThresholds(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScorerKind {
    Lexical,
    Grammar,
    Remote(Url),
}

impl fmt::Display for ScorerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScorerKind::Lexical => f.write_str("lexical"),
            ScorerKind::Grammar => f.write_str("grammar"),
            ScorerKind::Remote(url) => write!(f, "remote({url})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreResult {
    pub score: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct_category: Option<Category>,
}

impl ScoreResult {
    pub fn numeric(score: f64) -> Self {
        ScoreResult {
            score,
            direct_category: None,
        }
    }

    pub fn direct(category: Category) -> Self {
        ScoreResult {
            score: category.canonical_score(),
            direct_category: Some(category),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Binary,
    #[serde(alias = "multi")]
    Multiclass,
}

/// Classification thresholds; a score `s` falls into the first category
/// whose threshold it reaches (`s >= t`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub binary: f64,
    pub multiclass: [f64; 4],
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            binary: 0.45,
            multiclass: [0.9, 0.7, 0.45, 0.15],
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<(), SimilarityError> {
        let all = std::iter::once(self.binary).chain(self.multiclass);
        if all.clone().any(|t| !(0.0..=1.0).contains(&t)) {
            return Err(SimilarityError::InvalidThresholds(
                "values must lie in [0, 1]".into(),
            ));
        }
        if self.multiclass.windows(2).any(|w| w[0] < w[1]) {
            return Err(SimilarityError::InvalidThresholds(
                "multiclass thresholds must be non-increasing".into(),
            ));
        }
        Ok(())
    }

    pub fn category(&self, score: f64) -> Category {
        let [t1, t2, t3, t4] = self.multiclass;
        if score >= t1 {
            Category::C1
        } else if score >= t2 {
            Category::C2
        } else if score >= t3 {
            Category::C3
        } else if score >= t4 {
            Category::C4
        } else {
            Category::C5
        }
    }

    pub fn polarity(&self, score: f64) -> Polarity {
        if score >= self.binary {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Category(Category),
    Polarity(Polarity),
}

pub fn classify(result: &ScoreResult, thresholds: &Thresholds, mode: Mode) -> Classification {
    match mode {
        Mode::Multiclass => Classification::Category(classify_category(result, thresholds)),
        Mode::Binary => Classification::Polarity(classify_polarity(result, thresholds)),
    }
}

pub fn classify_category(result: &ScoreResult, thresholds: &Thresholds) -> Category {
    result
        .direct_category
        .unwrap_or_else(|| thresholds.category(result.score))
}

pub fn classify_polarity(result: &ScoreResult, thresholds: &Thresholds) -> Polarity {
    match result.direct_category {
        Some(c) => c.polarity(),
        None => thresholds.polarity(result.score),
    }
}

/// Direct category of `d` against one description's grammars: the best
/// category whose grammar contains `d`, C5 if none does.
pub fn grammar_classify(spec: &TaskSpec, d: &str, symbol: &str, description: usize) -> ScoreResult {
    let Some(p) = spec.symbol(symbol) else {
        return ScoreResult::direct(Category::C5);
    };
    Category::ALL
        .into_iter()
        .find(|&c| p.grammar(description, c).is_some_and(|g| membership(g, d)))
        .map(ScoreResult::direct)
        .unwrap_or(ScoreResult::direct(Category::C5))
}

/// One comparison: a canonicalized student text against one description.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Query {
    pub d: String,
    pub d_star: String,
    pub symbol: String,
    pub description: usize,
}

/// A configured scorer. Batches are answered in order.
#[derive(Debug, Clone)]
pub enum Scorer {
    Lexical,
    Grammar,
    Remote(RemoteScorer),
}

impl Scorer {
    pub fn new(kind: &ScorerKind) -> Self {
        match kind {
            ScorerKind::Lexical => Scorer::Lexical,
            ScorerKind::Grammar => Scorer::Grammar,
            ScorerKind::Remote(url) => Scorer::Remote(RemoteScorer::new(url.clone())),
        }
    }

    pub fn kind(&self) -> ScorerKind {
        match self {
            Scorer::Lexical => ScorerKind::Lexical,
            Scorer::Grammar => ScorerKind::Grammar,
            Scorer::Remote(r) => ScorerKind::Remote(r.endpoint().clone()),
        }
    }

    /// Scores each query once; duplicates in the batch are answered from the
    /// first occurrence.
    pub fn score_batch(
        &self,
        spec: Option<&TaskSpec>,
        queries: &[Query],
    ) -> Result<Vec<ScoreResult>, SimilarityError> {
        let mut index: HashMap<&Query, usize> = HashMap::new();
        let mut unique: Vec<&Query> = Vec::new();
        let slots: Vec<usize> = queries
            .iter()
            .map(|q| {
                *index.entry(q).or_insert_with(|| {
                    unique.push(q);
                    unique.len() - 1
                })
            })
            .collect();
        let scored: Vec<ScoreResult> = match self {
            Scorer::Lexical => unique.iter().map(|q| lexical_score(&q.d, &q.d_star)).collect(),
            Scorer::Grammar => {
                let spec = spec.ok_or(SimilarityError::GrammarNeedsSpec)?;
                unique
                    .iter()
                    .map(|q| grammar_classify(spec, &q.d, &q.symbol, q.description))
                    .collect()
            }
            Scorer::Remote(remote) => {
                let pairs: Vec<(String, String)> =
                    unique.iter().map(|q| (q.d.clone(), q.d_star.clone())).collect();
                remote.score_pairs(&pairs)?
            }
        };
        Ok(slots.into_iter().map(|i| scored[i]).collect())
    }

    /// Scores dataset pairs. The grammar scorer looks up the description
    /// index of each pair's `d_star`.
    pub fn score_pairs(
        &self,
        spec: Option<&TaskSpec>,
        pairs: &[LabeledPair],
    ) -> Result<Vec<ScoreResult>, SimilarityError> {
        let queries = pairs
            .iter()
            .map(|p| {
                let description = match (self, spec) {
                    (Scorer::Grammar, Some(spec)) => spec
                        .symbol(&p.symbol)
                        .and_then(|s| s.description_index(&p.d_star))
                        .ok_or_else(|| SimilarityError::UnknownDescription {
                            symbol: p.symbol.clone(),
                            d_star: p.d_star.clone(),
                        })?,
                    _ => 0,
                };
                Ok(Query {
                    d: p.d.clone(),
                    d_star: p.d_star.clone(),
                    symbol: p.symbol.clone(),
                    description,
                })
            })
            .collect::<Result<Vec<_>, SimilarityError>>()?;
        self.score_batch(spec, &queries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn threshold_rule() {
        let t = Thresholds {
            binary: 0.5,
            multiclass: [0.9, 0.75, 0.6, 0.4],
        };
        let r = ScoreResult::numeric(0.8);
        assert_eq!(classify(&r, &t, Mode::Multiclass), Classification::Category(Category::C2));
        assert_eq!(
            classify(&ScoreResult::numeric(0.95), &t, Mode::Binary),
            Classification::Polarity(Polarity::Positive)
        );
        assert_eq!(
            classify(&ScoreResult::direct(Category::C3), &t, Mode::Binary),
            Classification::Polarity(Polarity::Positive)
        );
        // ties classify upward
        assert_eq!(t.category(0.75), Category::C2);
        assert_eq!(t.polarity(0.5), Polarity::Positive);
    }

    #[test]
    fn threshold_validation() {
        assert!(Thresholds::default().validate().is_ok());
        let bad = Thresholds {
            binary: 0.5,
            multiclass: [0.5, 0.7, 0.3, 0.1],
        };
        assert!(bad.validate().is_err());
        let out_of_range = Thresholds {
            binary: 1.5,
            ..Thresholds::default()
        };
        assert!(out_of_range.validate().is_err());
    }

    fn arb_thresholds() -> impl Strategy<Value = Thresholds> {
        (prop::array::uniform4(0.0..=1.0f64), 0.0..=1.0f64).prop_map(|(mut m, b)| {
            m.sort_by(|a, b| b.partial_cmp(a).unwrap());
            Thresholds {
                binary: b,
                multiclass: m,
            }
        })
    }

    proptest! {
        #[test]
        fn classification_is_monotone(t in arb_thresholds(), a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(t.category(hi).rank() <= t.category(lo).rank());
        }

        #[test]
        fn binary_collapses_multiclass(t in arb_thresholds(), s in 0.0..=1.0f64, direct in prop::option::of(0usize..5)) {
            let t = Thresholds { binary: t.multiclass[2], ..t };
            let r = match direct {
                Some(i) => ScoreResult::direct(Category::ALL[i]),
                None => ScoreResult::numeric(s),
            };
            prop_assert_eq!(classify_polarity(&r, &t), classify_category(&r, &t).polarity());
        }
    }
}
