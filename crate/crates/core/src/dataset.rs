//! Labelled `(d, d*, category)` datasets generated from task grammars.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::membership;
use crate::spec::TaskSpec;
use crate::vocab::{Category, GrammarRef};

/// Distinct strings taken from each grammar.
pub const ENUMERATION_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("no grammar for symbol `{symbol}`, description {description}, category {category}")]
    MissingGrammar {
        symbol: String,
        description: usize,
        category: Category,
    },
    #[error("grammar file `{0}` has not been loaded")]
    PendingGrammar(String),
    #[error("eval fraction must lie strictly between 0 and 1, got {0}")]
    EvalFraction(f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Eval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPair {
    pub d: String,
    pub d_star: String,
    pub symbol: String,
    pub category: Category,
    pub split: Split,
}

/// Generates the dataset of a spec whose grammars are loaded.
///
/// Every string of a (description, category) grammar yields a pair with that
/// description; a string found in several categories of the same description
/// keeps the best one. With `cross_pair`, every string of a symbol's positive
/// grammars is also paired as C5 with the first description of each other
/// symbol unless one of that symbol's grammars contains it.
pub fn generate_dataset(
    spec: &TaskSpec,
    seed: u64,
    eval_fraction: f64,
    cross_pair: bool,
) -> Result<Vec<LabeledPair>, DatasetError> {
    if !(eval_fraction > 0.0 && eval_fraction < 1.0) {
        return Err(DatasetError::EvalFraction(eval_fraction));
    }
    if let Some(path) = spec.pending_grammars().first() {
        return Err(DatasetError::PendingGrammar(path.to_string()));
    }
    let has_positive = spec
        .symbols
        .iter()
        .any(|s| s.grammars.keys().any(|(_, c)| c.is_positive()));
    if !has_positive {
        let symbol = spec.symbols.first().map(|s| s.name.clone()).unwrap_or_default();
        return Err(DatasetError::MissingGrammar {
            symbol,
            description: 0,
            category: Category::C1,
        });
    }

    // (d, d_star, symbol, category) without split
    let mut rows: Vec<(String, String, String, Category)> = Vec::new();
    // positive strings per symbol, in generation order
    let mut positives: Vec<Vec<String>> = Vec::new();
    for symbol in &spec.symbols {
        let mut symbol_positive = Vec::new();
        let mut seen_positive = HashSet::new();
        for (index, description) in symbol.descriptions.iter().enumerate() {
            let mut best: BTreeMap<String, Category> = BTreeMap::new();
            let mut order: Vec<String> = Vec::new();
            for category in Category::ALL {
                let Some(GrammarRef::Loaded(g)) = symbol.grammars.get(&(index, category)) else {
                    continue;
                };
                for d in g.enumerate(ENUMERATION_CAP) {
                    if category.is_positive() && seen_positive.insert(d.clone()) {
                        symbol_positive.push(d.clone());
                    }
                    if !best.contains_key(&d) {
                        best.insert(d.clone(), category);
                        order.push(d);
                    }
                }
            }
            for d in order {
                let category = best[&d];
                rows.push((d, description.canonical().to_string(), symbol.name.clone(), category));
            }
        }
        positives.push(symbol_positive);
    }

    if cross_pair {
        for (a, strings) in spec.symbols.iter().zip(&positives) {
            for d in strings {
                for b in &spec.symbols {
                    if b.name == a.name {
                        continue;
                    }
                    let claimed = b
                        .grammars
                        .values()
                        .filter_map(GrammarRef::loaded)
                        .any(|g| membership(g, d));
                    if claimed {
                        continue;
                    }
                    rows.push((
                        d.clone(),
                        b.descriptions[0].canonical().to_string(),
                        b.name.clone(),
                        Category::C5,
                    ));
                }
            }
        }
        let mut seen = HashSet::new();
        rows.retain(|(d, d_star, symbol, _)| seen.insert((d.clone(), d_star.clone(), symbol.clone())));
    }

    let eval = eval_set(rows.iter().map(|r| r.0.as_str()), seed, eval_fraction);
    Ok(rows
        .into_iter()
        .map(|(d, d_star, symbol, category)| {
            let split = if eval.contains(&d) {
                Split::Eval
            } else {
                Split::Train
            };
            LabeledPair {
                d,
                d_star,
                symbol,
                category,
                split,
            }
        })
        .collect())
}

/// The distinct descriptions assigned to the eval split: sorted, shuffled
/// with a seeded ChaCha8 generator, then the first `round(f * n)` taken.
pub fn eval_set<'a>(
    descriptions: impl IntoIterator<Item = &'a str>,
    seed: u64,
    eval_fraction: f64,
) -> BTreeSet<String> {
    let distinct: BTreeSet<&str> = descriptions.into_iter().collect();
    let mut order: Vec<&str> = distinct.into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let take = (eval_fraction * order.len() as f64).round() as usize;
    order.into_iter().take(take).map(str::to_string).collect()
}

pub fn write_jsonl<W: Write>(pairs: &[LabeledPair], mut out: W) -> Result<(), DatasetError> {
    for p in pairs {
        serde_json::to_writer(&mut out, p).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<LabeledPair>, DatasetError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let pair = serde_json::from_str(&line).map_err(|e| DatasetError::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push(pair);
    }
    Ok(out)
}

pub fn split_of(pairs: &[LabeledPair], split: Split) -> Vec<LabeledPair> {
    pairs.iter().filter(|p| p.split == split).cloned().collect()
}
