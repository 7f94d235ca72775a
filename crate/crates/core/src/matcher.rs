//! Phase 1: map every student symbol to its best-fitting potential symbol.

use thiserror::Error;

use crate::similarity::{classify_category, Query, Scorer, SimilarityError, Thresholds};
use crate::spec::TaskSpec;
use crate::vocab::{signature_compatible, Attempt, Mapping, MappingEntry, StudentSymbol, VocabError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatchError {
    #[error(transparent)]
    Invalid(#[from] VocabError),
    #[error(transparent)]
    Scorer(#[from] SimilarityError),
}

struct Candidate {
    symbol: usize,
    description: usize,
}

fn candidates(s: &StudentSymbol, spec: &TaskSpec) -> Vec<Candidate> {
    spec.symbols
        .iter()
        .enumerate()
        .filter(|(_, p)| signature_compatible(s, p))
        .flat_map(|(i, p)| {
            (0..p.descriptions.len()).map(move |d| Candidate {
                symbol: i,
                description: d,
            })
        })
        .collect()
}

fn query(s: &StudentSymbol, spec: &TaskSpec, c: &Candidate) -> Query {
    let p = &spec.symbols[c.symbol];
    Query {
        d: s.canonical_description(),
        d_star: p.descriptions[c.description].canonical().to_string(),
        symbol: p.name.clone(),
        description: c.description,
    }
}

fn pick(
    s: &StudentSymbol,
    spec: &TaskSpec,
    cands: &[Candidate],
    results: &[crate::similarity::ScoreResult],
    thresholds: &Thresholds,
) -> MappingEntry {
    let mut best: Option<MappingEntry> = None;
    for (c, r) in cands.iter().zip(results) {
        let category = classify_category(r, thresholds);
        let better = match &best {
            None => true,
            Some(b) => {
                category.is_better_than(b.category) || (category == b.category && r.score > b.score)
            }
        };
        if better {
            let p = &spec.symbols[c.symbol];
            best = Some(MappingEntry {
                student: s.name.clone(),
                matched: Some(p.name.clone()),
                category,
                score: r.score,
                matched_description: Some(c.description),
                applied_permutation: Some(p.descriptions[c.description].effective_permutation()),
            });
        }
    }
    best.unwrap_or_else(|| MappingEntry::unmatched(s.name.clone()))
}

/// Best match of one student symbol.
pub fn best_match(
    s: &StudentSymbol,
    spec: &TaskSpec,
    scorer: &Scorer,
    thresholds: &Thresholds,
) -> Result<MappingEntry, MatchError> {
    s.validate()?;
    let cands = candidates(s, spec);
    let queries: Vec<Query> = cands.iter().map(|c| query(s, spec, c)).collect();
    let results = scorer.score_batch(Some(spec), &queries)?;
    Ok(pick(s, spec, &cands, &results, thresholds))
}

/// Maps every symbol of the attempt, scoring all candidates in one batch.
pub fn map_attempt(
    attempt: &Attempt,
    spec: &TaskSpec,
    scorer: &Scorer,
    thresholds: &Thresholds,
) -> Result<Mapping, MatchError> {
    attempt.validate()?;
    let per_symbol: Vec<Vec<Candidate>> =
        attempt.symbols.iter().map(|s| candidates(s, spec)).collect();
    let queries: Vec<Query> = attempt
        .symbols
        .iter()
        .zip(&per_symbol)
        .flat_map(|(s, cands)| cands.iter().map(move |c| query(s, spec, c)))
        .collect();
    let results = scorer.score_batch(Some(spec), &queries)?;
    let mut offset = 0;
    let entries = attempt
        .symbols
        .iter()
        .zip(&per_symbol)
        .map(|(s, cands)| {
            let slice = &results[offset..offset + cands.len()];
            offset += cands.len();
            pick(s, spec, cands, slice, thresholds)
        })
        .collect();
    Ok(Mapping { entries })
}
